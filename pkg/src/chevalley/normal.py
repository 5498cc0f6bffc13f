"""
Subgroup enumeration, levels, congruence subgroups and the sandwich check.

"Centre" means the operational centre throughout: elements commuting with
every x_a(t). G(R) is modelled by E(R) (the group generated by root elements),
and congruence subgroups are cut out of E(R) by reduction of matrix entries.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .group import ChevalleyGroup, GroupElement
from .rings import Ideal, Ring, all_ideals, check_condition, has_residue_field_f2, ideal

log = logging.getLogger(__name__)

CAP = 2 ** 20


class ClosureTooLarge(Exception):
    pass


class ConditionViolated(Exception):
    pass


class LevelInconsistent(Exception):
    pass


class SandwichFails(Exception):
    pass


class HypothesisViolated(Exception):
    pass


def _keys(G: ChevalleyGroup, arr: np.ndarray) -> list:
    flat = arr.astype(np.int16).reshape(arr.shape[0], -1)
    return [row.tobytes() for row in flat]


class SubgroupHandle:
    """Generators plus a lazily enumerated closure inside a finite G(R).

    With normalized_by_E the closure is also closed under conjugation by
    every x_a(1), which generate E(R) over Z/n.
    """

    def __init__(self, G: ChevalleyGroup, generators, normalized_by_E=False, cap=CAP):
        assert G.ring.is_finite
        self.G = G
        self.generators = list(generators)
        self.normalized_by_E = normalized_by_E
        self.cap = cap
        self._elements = None
        self._index = None

    # enumeration

    def _extend(self, elems, index, gens, frontier):
        n = self.G.ring.modulus
        gm = [g.m for g in gens]
        while len(frontier):
            new = []
            for g in gm:
                prod = np.matmul(frontier, g) % n
                for k, m in zip(_keys(self.G, prod), prod):
                    if k not in index:
                        index[k] = len(elems)
                        elems.append(m)
                        new.append(m)
            if len(elems) > self.cap:
                raise ClosureTooLarge("closure exceeds %d elements" % self.cap)
            frontier = np.array(new) if new else []
        return elems, index

    def _compute(self):
        G = self.G
        e = G.identity.m
        elems = [e]
        index = {G.key(e): 0}
        gens = [g for g in self.generators if not g.is_identity()]
        if gens:
            self._extend(elems, index, gens, np.array([e]))
        if self.normalized_by_E:
            conj = [(x.inv(), x) for x in G.generators()]
            queue = list(gens)
            while queue:
                g = queue.pop()
                for xi, x in conj:
                    c = xi * g * x
                    if c.key() in index:
                        continue
                    gens.append(c)
                    queue.append(c)
                    start = np.matmul(np.array(elems), c.m) % G.ring.modulus
                    fresh = []
                    for k, m in zip(_keys(G, start), start):
                        if k not in index:
                            index[k] = len(elems)
                            elems.append(m)
                            fresh.append(m)
                    if fresh:
                        self._extend(elems, index, gens, np.array(fresh))
        self._elements = elems
        self._index = index

    @property
    def elements(self) -> list:
        if self._elements is None:
            self._compute()
        return self._elements

    @property
    def index(self) -> dict:
        if self._index is None:
            self._compute()
        return self._index

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g.key() in self.index

    def __iter__(self):
        for m in self.elements:
            yield GroupElement(self.G, m)

    def keyset(self) -> frozenset:
        return frozenset(self.index)

    def array(self) -> np.ndarray:
        return np.array(self.elements)

    def issubset(self, other: SubgroupHandle) -> bool:
        return all(k in other.index for k in self.index)

    def __eq__(self, other):
        return isinstance(other, SubgroupHandle) and self.keyset() == other.keyset()

    def __hash__(self):
        return hash(self.keyset())


def from_keys(G, elems) -> SubgroupHandle:
    """Handle over an explicitly given element list (assumed a subgroup)."""
    H = SubgroupHandle(G, [])
    H._elements = list(elems)
    H._index = {G.key(m): i for i, m in enumerate(H._elements)}
    return H


# ---------------------------------------------------------------------------


_E_CACHE: dict = {}


def elementary(G: ChevalleyGroup) -> SubgroupHandle:
    if G not in _E_CACHE:
        _E_CACHE[G] = SubgroupHandle(G, G.generators())
    return _E_CACHE[G]


def normal_closure(G: ChevalleyGroup, gens) -> SubgroupHandle:
    return SubgroupHandle(G, gens, normalized_by_E=True)


def central_mask(G: ChevalleyGroup, arr: np.ndarray, ring: Ring | None = None) -> np.ndarray:
    """Which matrices of arr (k, d, d) commute with all x_a(t) over `ring`.

    `ring` is a quotient Z/d of G.ring; entries are reduced mod d first.
    """
    ring = ring or G.ring
    n = ring.modulus
    a = arr % n
    ok = np.ones(len(arr), dtype=bool)
    for r in G.phi.roots:
        for t in range(1, n):
            x = G.x(r, t).m % n
            diff = (np.matmul(x, a) - np.matmul(a, x)) % n
            ok &= ~diff.reshape(len(arr), -1).any(axis=1)
    return ok


_CENTRE: dict = {}
_CONG: dict = {}


def centre(G: ChevalleyGroup) -> SubgroupHandle:
    if G not in _CENTRE:
        _CENTRE[G] = _centre(G)
    return _CENTRE[G]


def _centre(G: ChevalleyGroup) -> SubgroupHandle:
    E = elementary(G)
    arr = E.array()
    mask = central_mask(G, arr)
    return from_keys(G, [m for m, c in zip(E.elements, mask) if c])


def _check_condition(G):
    ok, why = check_condition(G.phi.label, G.ring)
    if not ok:
        raise ConditionViolated(why)


# levels


@dataclass
class LevelData:
    per_root: dict
    ideal: Ideal | None
    consistent: bool

    def to_json(self):
        return {
            "per_root": {str(list(r)): sorted(v) for r, v in self.per_root.items()},
            "ideal": self.ideal.to_json() if self.ideal is not None else None,
            "root_independent": self.consistent,
        }


def level(H: SubgroupHandle, check=True) -> LevelData:
    G = H.G
    if check:
        _check_condition(G)
    R = G.ring
    per = {}
    for r in G.phi.roots:
        per[r] = frozenset(t for t in R.elements() if G.x(r, t) in H)
    sets = set(per.values())
    consistent = len(sets) == 1
    q = None
    if consistent:
        s = next(iter(sets))
        for I in all_ideals(R):
            if frozenset(I.elements()) == s:
                q = I
                break
        if q is None:
            consistent = False
    if check and not consistent:
        raise LevelInconsistent("q_a(H) depends on a or is not an ideal: %s" % per)
    return LevelData(per, q, consistent)


# relative elementary and congruence subgroups

_REL_CACHE: dict = {}


def relative_elementary(G: ChevalleyGroup, a: Ideal) -> SubgroupHandle:
    key = (G, a.gen)
    if key not in _REL_CACHE:
        gens = [G.x(r, t) for r in G.phi.roots for t in a.elements() if t]
        _REL_CACHE[key] = normal_closure(G, gens)
    return _REL_CACHE[key]


def _reduce_mask(arr, d):
    eye = np.eye(arr.shape[1], dtype=arr.dtype)
    return ~((arr - eye) % d).reshape(len(arr), -1).any(axis=1)


def congruence(G: ChevalleyGroup, a: Ideal) -> tuple[SubgroupHandle, SubgroupHandle]:
    """(G(R, a), C(R, a)) inside E(R)."""
    key = (G, a.gen)
    if key not in _CONG:
        _CONG[key] = _congruence(G, a)
    return _CONG[key]


def _congruence(G: ChevalleyGroup, a: Ideal):
    E = elementary(G)
    arr = E.array()
    d = a.gen
    if d == 1:
        return E, E
    if d == G.ring.modulus or d == 0:
        triv = from_keys(G, [G.identity.m])
        return triv, centre(G)
    kernel = _reduce_mask(arr, d)
    Rbar = a.quotient()
    full = central_mask(G, arr, Rbar)
    K = from_keys(G, [m for m, c in zip(E.elements, kernel) if c])
    C = from_keys(G, [m for m, c in zip(E.elements, full) if c])
    return K, C


@dataclass
class SandwichReport:
    ideal: Ideal
    lower_ok: bool
    upper_ok: bool
    unique: bool
    level: LevelData
    order: int
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok and self.unique and self.level.consistent

    def to_json(self):
        return {
            "ideal": self.ideal.to_json(),
            "order": self.order,
            "lower_inclusion": self.lower_ok,
            "upper_inclusion": self.upper_ok,
            "unique": self.unique,
            "level": self.level.to_json(),
            "counterexamples": self.counterexamples,
            "ok": self.ok,
        }


def sandwiched(G, H: SubgroupHandle, a: Ideal) -> tuple[bool, bool]:
    lower = relative_elementary(G, a).issubset(H)
    _, C = congruence(G, a)
    upper = H.issubset(C)
    return lower, upper


def sandwich_check(H: SubgroupHandle, strict=True) -> SandwichReport:
    G = H.G
    _check_condition(G)
    lev = level(H, check=strict)
    if lev.ideal is None:
        raise LevelInconsistent(str(lev.per_root))
    a = lev.ideal
    lower, upper = sandwiched(G, H, a)
    others = []
    for b in all_ideals(G.ring):
        if b == a:
            continue
        if all(sandwiched(G, H, b)):
            others.append(b.gen)
    rep = SandwichReport(a, lower, upper, not others, lev, len(H), [{"also_sandwiched_by": d} for d in others])
    if strict and not rep.ok:
        raise SandwichFails(str(rep.to_json()))
    return rep


# commutator subgroups


def mutual_commutator(G: ChevalleyGroup, normal_gens) -> SubgroupHandle:
    """[N, E] for N = <normal_gens>^E, as a normal closure of [x, g_i]."""
    gens = [x.comm(g) for x in normal_gens for g in G.generators()]
    return normal_closure(G, gens)


def normal_generators(G: ChevalleyGroup, H: SubgroupHandle) -> list:
    """A short list S with <S>^E = H (H normal), picked greedily."""
    gens = []
    N = normal_closure(G, [])
    for m in H.elements:
        if len(N) == len(H):
            break
        x = G.element(m)
        if x not in N:
            gens.append(x)
            N = normal_closure(G, gens)
    return gens


def derived_subgroup(G: ChevalleyGroup) -> SubgroupHandle:
    gs = G.generators()
    return normal_closure(G, [a.comm(b) for a in gs for b in gs])


@dataclass
class HallWittReport:
    perfect: bool
    order_E: int
    order_commutant: int
    samples: list

    @property
    def ok(self):
        return self.perfect and all(s["equal"] for s in self.samples)

    def to_json(self):
        return {
            "perfect": self.perfect,
            "order_E": self.order_E,
            "order_commutant": self.order_commutant,
            "samples": self.samples,
            "ok": self.ok,
        }


def perfectness_and_hallwitt(G: ChevalleyGroup, seeds=()) -> HallWittReport:
    label = G.phi.label
    if label == "B2" or label == "C2":
        if has_residue_field_f2(G.ring):
            raise HypothesisViolated("C2 over a ring with residue field GF(2)")
    E = elementary(G)
    D = derived_subgroup(G)
    samples = []
    for h in seeds:
        HE = mutual_commutator(G, [h])
        HEE = mutual_commutator(G, list(HE.generators))
        samples.append({"order_HE": len(HE), "order_HEE": len(HEE), "equal": HE == HEE})
    return HallWittReport(len(D) == len(E) and D == E, len(E), len(D), samples)


def commutation_formula_check(G: ChevalleyGroup, q: Ideal) -> dict:
    """[E(R), G(R, q)] = E(R, q), both sides enumerated."""
    K, _ = congruence(G, q)
    lhs = mutual_commutator(G, normal_generators(G, K))
    rhs = relative_elementary(G, q)
    return {"ideal": q.to_json(), "order_lhs": len(lhs), "order_rhs": len(rhs), "equal": lhs == rhs}
