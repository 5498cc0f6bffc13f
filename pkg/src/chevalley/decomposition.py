"""
Big cell, Gauss decomposition and Bruhat cells in the adjoint representation.

Two cell orientations are supported:

    "UBw"   x = u . b . w-dot,  u in U,   b = t v in B^-  (t torus, v in U^-)
    "U-Bw"  x = v . c . w-dot,  v in U^-, c = t u in B

Because the basis is ordered by decreasing height, the big cell U T U^- is
detected by a UDL factorization with unit pivots, and U^- T U by LDU.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import ChevalleyGroup, GroupElement, GroupWord, NotUnipotent, X
from .roots import WeylElement


class NotAField(Exception):
    pass


ORIENTATIONS = ("UBw", "U-Bw")


def _ldu(M, R):
    """M = L D U with unit pivots, or None. Entries as Python ints."""
    d = M.shape[0]
    A = [[R.reduce(int(x)) for x in row] for row in M]
    L = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    D = [0] * d
    for k in range(d):
        piv = A[k][k]
        if not R.is_unit(piv):
            return None
        D[k] = piv
        ip = R.inv(piv)
        for i in range(k + 1, d):
            f = R.mul(A[i][k], ip)
            L[i][k] = f
            if f:
                Ak = A[k]
                Ai = A[i]
                for j in range(k, d):
                    Ai[j] = R.sub(Ai[j], R.mul(f, Ak[j]))
    U = [[0] * d for _ in range(d)]
    for k in range(d):
        ip = R.inv(D[k])
        for j in range(k, d):
            U[k][j] = R.mul(A[k][j], ip)
    return L, D, U


def _udl(M, R):
    """M = U D L (upper unit, diagonal, lower unit) with unit pivots, or None."""
    rev = M[::-1, ::-1]
    res = _ldu(rev, R)
    if res is None:
        return None
    L, D, U = res
    # J L J is upper, J U J is lower
    Up = np.array(L, dtype=object)[::-1, ::-1]
    Lo = np.array(U, dtype=object)[::-1, ::-1]
    return Up, D[::-1], Lo


@dataclass
class BigCellFactor:
    first: list  # unipotent parameters of the left factor
    chars: tuple  # torus characters on simple roots
    second: list  # unipotent parameters of the right factor
    orientation: str


def big_cell_factor(x: GroupElement, orientation: str = "UBw") -> BigCellFactor | None:
    """Factor x in U T U^- ("UBw") or U^- T U ("U-Bw"); None if x is outside."""
    G = x.G
    R = G.ring
    if orientation == "UBw":
        res = _udl(x.m, R)
        if res is None:
            return None
        A, D, B = res
        s1, s2 = 1, -1
    elif orientation == "U-Bw":
        res = _ldu(x.m, R)
        if res is None:
            return None
        L, D, U = res
        A, B = np.array(L, dtype=object), np.array(U, dtype=object)
        s1, s2 = -1, 1
    else:
        raise ValueError(orientation)
    try:
        first = G.peel_unipotent(G.element(A), s1)
        second = G.peel_unipotent(G.element(B), s2)
    except NotUnipotent:
        return None
    Tm = np.diag([R.reduce(int(v)) for v in D]).astype(G.dtype)
    chars = G.torus_chars(GroupElement(G, Tm))
    if any(not R.is_unit(c) for c in chars):
        return None
    t = G.torus(chars)
    if t.key() != G.key(G.reduce(Tm)):
        return None
    return BigCellFactor(first, chars, second, orientation)


def in_big_cell(x: GroupElement) -> bool:
    return big_cell_factor(x, "UBw") is not None


@dataclass
class GaussFactorization:
    w: WeylElement
    u: GroupElement  # U-part ("UBw") or U^- part ("U-Bw")
    b: GroupElement  # B^- part ("UBw") or B part ("U-Bw")
    wrep: GroupElement
    orientation: str
    u_params: list
    torus: tuple
    v_params: list  # unipotent parameters inside b

    def product(self) -> GroupElement:
        return self.u * self.b * self.wrep

    def u_word(self) -> GroupWord:
        return self.u.G.unipotent_word(self.u_params)

    def to_json(self):
        return {
            "orientation": self.orientation,
            "w": [i + 1 for i in self.w.word],
            "u": [{"root": list(r), "t": str(t)} for r, t in self.u_params],
            "torus": [int(c) for c in self.torus],
            "v": [{"root": list(r), "t": str(t)} for r, t in self.v_params],
        }


def _check_ring(G: ChevalleyGroup):
    R = G.ring
    if not (R.is_field or R.is_local):
        raise NotAField("Gauss decomposition needs a field or local ring, got %s" % R)


def factor_in_cell(x: GroupElement, w: WeylElement, orientation: str = "UBw") -> GaussFactorization | None:
    G = x.G
    wrep = G.weyl_rep(w)
    f = big_cell_factor(x * wrep.inv(), orientation)
    if f is None:
        return None
    u = G.unipotent(f.first)
    b = G.torus(f.chars) * G.unipotent(f.second)
    return GaussFactorization(w, u, b, wrep, orientation, f.first, f.chars, f.second)


def gauss_decompose(x: GroupElement, orientation: str = "UBw") -> GaussFactorization:
    """First Weyl element w (by length, then word) with x in the Gauss cell of w."""
    G = x.G
    _check_ring(G)
    for w in G.phi.weyl_group:
        f = factor_in_cell(x, w, orientation)
        if f is not None:
            assert f.product() == x
            return f
    raise AssertionError("Gauss cells fail to cover: %s" % x)


def peel_unipotent(m: GroupElement) -> list:
    return m.G.peel_unipotent(m, 1)


def bruhat_cell(x: GroupElement) -> WeylElement:
    """The w with x in B w B (fields)."""
    G = x.G
    _check_ring(G)
    phi = G.phi
    for w in phi.weyl_group:
        f = factor_in_cell(x, w, "UBw")
        if f is None:
            continue
        allowed = {d for d in phi.negative if phi.is_positive(phi.act(w, d))}
        if all(r in allowed for r, _ in f.v_params):
            return w
    raise AssertionError("no Bruhat cell found")

