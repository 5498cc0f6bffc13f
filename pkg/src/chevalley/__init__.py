"""Adjoint Chevalley groups over small commutative rings: root systems,
structure constants, Gauss decomposition, root-element extraction and
normal-subgroup structure."""

from .rings import Ring, Ideal, ideal, all_ideals, jacobson_radical
from .roots import RootSystem, WeylElement, build as root_system
from .group import ChevalleyGroup, GroupElement, GroupWord, Generator, X, H, Wg, group, integer_group, word
from .words import Cert, SEED, Elem, Prod, Inv, Conj, Comm, check_certificate

__version__ = "0.1.0"
