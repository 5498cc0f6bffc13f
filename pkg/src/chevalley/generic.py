"""
The generic element of simply connected type A_l and the construction of c.

A = Z[x_ij]/(det - 1) is the affine algebra of SL_{l+1}; the generic
element g is the matrix of variables. Everything symbolic lives in the
defining representation; the bridge `adjoint` maps an SL matrix to the
adjoint Chevalley group, where centrality over finite rings is decided.

Cells are U B^- w: g w^-1 = u b with u upper unitriangular and b lower
triangular, which (highest weight first) exists iff the trailing principal
minors of g w^-1 are invertible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy

from .extraction import Parabolic
from .group import ChevalleyGroup, GroupWord, integer_group
from .rings import IdentityReport, Ring, polyquot_equal
from .roots import UnsupportedType, WeylElement


class ClearingFailed(Exception):
    pass


K_MAX = 4


def _check_type(label):
    if label[0].upper() != "A":
        raise UnsupportedType("symbolic layer covers type A only, got %s" % label)


# ---------------------------------------------------------------------------
# roots of A_l as matrix units


def root_pair(alpha) -> tuple[int, int]:
    """(i, j) with alpha = e_i - e_j (0-based)."""
    nz = [k for k, c in enumerate(alpha) if c]
    lo, hi = nz[0], nz[-1]
    if alpha[lo] > 0:
        return lo, hi + 1
    return hi + 1, lo


@lru_cache(maxsize=None)
def signs(label: str) -> dict:
    """sigma_a = +-1 with e_a -> sigma_a E_ij matching the adjoint group's x_a.

    Simple roots get +1; sums follow [e_a, e_b] = N_ab e_(a+b); opposite roots
    share a sign since [e_a, e_-a] = h_a maps to the coroot matrix.
    """
    _check_type(label)
    G = integer_group(label)
    phi = G.phi
    N = G.table.N
    sig = {}
    for r in sorted(phi.positive, key=lambda r: (sum(r), r)):
        if sum(r) == 1:
            sig[r] = 1
            continue
        i = next(k for k in range(phi.rank) if tuple(c - (j == k) for j, c in enumerate(r)) in sig)
        a = phi._unit(i)
        b = tuple(c - (j == i) for j, c in enumerate(r))
        Ea, Eb = unit(label, a, 1) - sympy.eye(phi.rank + 1), unit(label, b, 1) - sympy.eye(phi.rank + 1)
        ii, jj = root_pair(r)
        c = (Ea * Eb - Eb * Ea)[ii, jj]
        sig[r] = sig[a] * sig[b] * c * N[(a, b)]
    for r in list(sig):
        sig[phi.neg(r)] = sig[r]
    for r in phi.roots:
        assert adjoint(G, unit(label, r, sig[r]), sig) == G.x(r, 1), "sign mismatch at %s" % (r,)
    return sig


def unit(label, r, t):
    n = int(label[1:]) + 1
    i, j = root_pair(r)
    M = sympy.eye(n)
    M[i, j] = t
    return M


def _basis_mats(G: ChevalleyGroup, sig: dict):
    n = G.phi.rank + 1
    out = []
    for b in G.basis:
        M = sympy.zeros(n, n)
        if b[0] == "h":
            M[b[1], b[1]] = 1
            M[b[1] + 1, b[1] + 1] = -1
        else:
            i, j = root_pair(b)
            M[i, j] = sig.get(b, 1)
        out.append(M)
    return out


def _coords(G: ChevalleyGroup, M, sig: dict) -> list:
    out = []
    for b in G.basis:
        if b[0] == "h":
            out.append(sum(M[k, k] for k in range(b[1] + 1)))
        else:
            i, j = root_pair(b)
            out.append(M[i, j] * sig.get(b, 1))
    return out


def adjoint(G: ChevalleyGroup, M, sig: dict | None = None):
    """Image of an integer SL matrix under Ad, as an element of G."""
    if sig is None:
        sig = signs(G.phi.label)
    M = sympy.Matrix(M)
    Mi = M.adjugate()
    cols = [_coords(G, M * B * Mi, sig) for B in _basis_mats(G, sig)]
    A = np.array([[int(c[i]) for c in cols] for i in range(G.dim)], dtype=object)
    return G.element(A)


def sl_x(label, r, t):
    return unit(label, r, signs(label)[r] * t)


def sl_word(label, word: GroupWord):
    """Evaluate a GroupWord in the defining representation (t may be symbolic)."""
    n = int(label[1:]) + 1
    out = sympy.eye(n)
    for g in word:
        if g.kind == "x":
            m = sl_x(label, g.root, sympy.sympify(g.param))
        else:
            eps = sympy.sympify(g.param)
            neg = tuple(-c for c in g.root)
            wm = sl_x(label, g.root, eps) * sl_x(label, neg, -1 / eps) * sl_x(label, g.root, eps)
            if g.kind == "w":
                m = wm
            else:
                w1 = sl_x(label, g.root, 1) * sl_x(label, neg, -1) * sl_x(label, g.root, 1)
                m = wm * w1.inv()
        if g.inverse:
            m = m.inv()
        out = out * m
    return out.applyfunc(sympy.cancel)


def weyl_sl(label, w: WeylElement):
    return sl_word(label, integer_group(label).weyl_word(w))


# ---------------------------------------------------------------------------
# affine algebra and generic point


@dataclass
class AffineAlgebra:
    l: int = 2

    def __post_init__(self):
        n = self.l + 1
        self.names = ["x%d%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
        self.syms = sympy.symbols(self.names)
        self.g = sympy.Matrix(n, n, self.syms)
        self.ring = Ring.polyquot(self.names, [self.g.det() - 1])

    @property
    def label(self) -> str:
        return "A%d" % self.l

    def equal(self, a, b, method="auto", points=20, seed=0) -> IdentityReport:
        return polyquot_equal(self.ring, a, b, points=points, seed=seed, method=method)


@dataclass
class GenericPoint:
    """The generic element g; a concrete matrix M is the evaluation x_ij -> M_ij."""

    alg: AffineAlgebra

    @property
    def matrix(self):
        return self.alg.g

    def at(self, M) -> dict:
        M = sympy.Matrix(M)
        return {s: M[i, j] for (i, j), s in zip(itertools.product(range(self.alg.l + 1), repeat=2), self.alg.syms)}

    def substitute(self, expr, M, modulus=None):
        v = sympy.Matrix(expr).subs(self.at(M)) if hasattr(expr, "shape") else sympy.sympify(expr).subs(self.at(M))
        if modulus:
            v = v.applyfunc(lambda e: _mod(e, modulus)) if hasattr(v, "shape") else _mod(v, modulus)
        return v


def _mod(e, n):
    num, den = sympy.fraction(sympy.cancel(e))
    return int(num) * pow(int(den), -1, n) % n


# ---------------------------------------------------------------------------
# cells


def _ldu(A):
    """A = L D U symbolically (unit pivots assumed generic)."""
    n = A.shape[0]
    A = A.copy()
    L = sympy.eye(n)
    for k in range(n):
        for i in range(k + 1, n):
            f = sympy.cancel(A[i, k] / A[k, k])
            L[i, k] = f
            for j in range(k, n):
                A[i, j] = sympy.cancel(A[i, j] - f * A[k, j])
    D = sympy.diag(*[A[k, k] for k in range(n)])
    U = sympy.eye(n)
    for k in range(n):
        for j in range(k + 1, n):
            U[k, j] = sympy.cancel(A[k, j] / A[k, k])
    return L, D, U


def _flip(M):
    n = M.shape[0]
    return sympy.Matrix(n, n, lambda i, j: M[n - 1 - i, n - 1 - j])


def ubl(M):
    """M = u b with u unit upper and b lower triangular, over the localization."""
    L, D, U = _ldu(_flip(M))
    u = _flip(L)
    b = (_flip(D) * _flip(U)).applyfunc(sympy.cancel)
    return u, b


def trailing_minors(M) -> list:
    n = M.shape[0]
    return [M[n - k:, n - k:].det() for k in range(1, n)]


def cell_denominator(w: WeylElement, alg: AffineAlgebra | None = None):
    """s in A with the cell U B^- w equal to Spec A_s."""
    alg = alg or AffineAlgebra()
    M = alg.g * weyl_sl(alg.label, w).adjugate()
    return sympy.expand(sympy.Mul(*trailing_minors(M)))


def in_cell(label: str, M, w: WeylElement, modulus: int) -> bool:
    """Cell membership via the adjoint group's big-cell factorization."""
    from .decomposition import big_cell_factor
    from .group import group

    G = group(label, Ring.mod(modulus) if modulus != 2 and modulus != 3 else Ring.gf(modulus))
    x = adjoint(G, M)
    return big_cell_factor(x * G.weyl_rep(w).inv(), "UBw") is not None


def sl_points(l: int, p: int):
    """All of SL_{l+1}(Z/p) as integer matrices (l = 2, p <= 3 in practice)."""
    n = l + 1
    for ent in itertools.product(range(p), repeat=n * n):
        M = sympy.Matrix(n, n, ent)
        if M.det() % p == 1:
            yield M


def validate_cell_denominator(w: WeylElement, p: int, alg: AffineAlgebra | None = None) -> dict:
    """h(s) is a unit iff h lies in the cell, over all of SL_3(GF(p))."""
    alg = alg or AffineAlgebra()
    s = cell_denominator(w, alg)
    pt = GenericPoint(alg)
    bad = []
    total = 0
    for M in sl_points(alg.l, p):
        total += 1
        unit_s = pt.substitute(s, M) % p != 0
        if unit_s != in_cell(alg.label, M, w, p):
            bad.append([int(v) for v in M])
    return {"p": p, "w": [i + 1 for i in w.word], "points": total, "mismatches": bad}


# ---------------------------------------------------------------------------
# good elements


def peel_upper(label, M) -> list:
    """M = prod x_a(t_a) over positive roots in increasing height."""
    G = integer_group(label)
    sig = signs(label)
    M = sympy.Matrix(M)
    out = []
    for r in sorted(G.phi.positive, key=lambda r: (sum(r), r)):
        i, j = root_pair(r)
        t = sympy.cancel(M[i, j] * sig[r])
        out.append((r, t))
        M = (sl_x(label, r, -t) * M).applyfunc(sympy.cancel)
    assert M == sympy.eye(M.shape[0]), "not unitriangular"
    return [(r, t) for r, t in out if t != 0]


def _polynomial(t) -> bool:
    _, den = sympy.fraction(sympy.cancel(t))
    return not den.free_symbols


@dataclass
class GoodElement:
    k: int
    s: object
    u: object
    b: object
    matrix: object
    params: list

    def word(self) -> GroupWord:
        from .group import X

        return GroupWord(tuple(X(r, str(t)) for r, t in self.params))


def good_element(P: Parabolic, w: WeylElement, alpha, alg: AffineAlgebra | None = None, s=None, restrict=None) -> GoodElement:
    """a = x_alpha(s^k)^{u^-1} with minimal k making every parameter polynomial."""
    alg = alg or AffineAlgebra()
    alpha = tuple(alpha)
    assert P.G.phi.is_positive(alpha) and P.degree(alpha) == 0, "X_alpha must lie in U cap L_P"
    wd = weyl_sl(alg.label, w)
    g = alg.g if restrict is None else alg.g.subs(restrict)
    u, b = ubl(g * wd.adjugate())
    if s is None:
        s = cell_denominator(w, alg)
    if restrict is not None:
        s = sympy.expand(sympy.sympify(s).subs(restrict))
    ui = u.inv().applyfunc(sympy.cancel)
    for k in range(K_MAX + 1):
        a = (u * sl_x(alg.label, alpha, s ** k) * ui).applyfunc(sympy.cancel)
        params = peel_upper(alg.label, a)
        if all(_polynomial(t) for _, t in params):
            params = [(r, sympy.expand(t)) for r, t in params]
            return GoodElement(k, s, u, b, a.applyfunc(sympy.expand), params)
    raise ClearingFailed("denominators survive up to k = %d" % K_MAX)


# ---------------------------------------------------------------------------
# the element c


def integer_point(label, w: WeylElement, alpha):
    """Integer point where a specializes to x_alpha(1): x_{-alpha}(1) w-dot if w fixes alpha, else w-dot."""
    phi = integer_group(label).phi
    wd = weyl_sl(label, w)
    if phi.act(w, tuple(alpha)) == tuple(alpha):
        neg = tuple(-c for c in alpha)
        return sl_x(label, neg, 1) * wd, True
    return wd, False


@dataclass
class CElement:
    c: object
    good: GoodElement
    p: object  # x_alpha(s^k)^{b w}, in P^-(A_s)^w
    certificate: object
    fixed: bool  # w(alpha) = alpha

    def to_json(self):
        return {"k": self.good.k, "s": str(self.good.s), "a": [(list(r), str(t)) for r, t in self.good.params]}


def c_element(P: Parabolic, w: WeylElement, alpha, alg: AffineAlgebra | None = None) -> CElement:
    """c = a^g a^-1, i.e. [g^-1, a] for [x, y] = x y x^-1 y^-1; certificate [g, a^-1] here."""
    from .words import SEED, Comm, Elem

    alg = alg or AffineAlgebra()
    pt = GenericPoint(alg)
    h, fixed = integer_point(alg.label, w, alpha)
    s = cell_denominator(w, alg)
    hs = pt.substitute(s, h)
    assert hs in (1, -1), "h(s) = %s is not a unit of Z" % hs
    s = sympy.expand(hs * s)
    ge = good_element(P, w, alpha, alg, s=s)
    g = alg.g
    gi = g.adjugate()
    a = ge.matrix
    ai = a.inv().applyfunc(sympy.expand)
    c = (gi * a * g * ai).applyfunc(sympy.expand)
    wd = weyl_sl(alg.label, w)
    bw = ge.b * wd
    p = (bw.inv() * sl_x(alg.label, tuple(alpha), s ** ge.k) * bw).applyfunc(sympy.cancel)
    cert = Comm(SEED, Elem(ge.word().inv()))
    return CElement(c, ge, p, cert, fixed)


def _in_parabolic(P: Parabolic, q) -> bool:
    """q lies in P: every entry on a root e_i - e_j outside P vanishes."""
    G = P.G
    for r in G.phi.roots:
        if P.degree(r) < 0:
            i, j = root_pair(r)
            if sympy.cancel(q[i, j]) != 0:
                return False
    return True


@dataclass
class GenericReport:
    label: str
    w: list
    alpha: list
    k: int
    witness: dict
    point: list
    point_fixed: bool
    h_of_s: int
    h_of_a_is_x_alpha_1: bool
    h_of_c: list
    closed_form: dict
    rings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.witness["equal"]
            and self.witness["p_in_opposite_parabolic"]
            and self.witness["a_in_U"]
            and self.h_of_a_is_x_alpha_1
            and self.closed_form["match"]
            and all(v["noncentral"] for v in self.rings.values())
        )

    def to_json(self):
        return {
            "type": self.label,
            "w": self.w,
            "alpha": self.alpha,
            "k": self.k,
            "k_bound": K_MAX,
            "witness": self.witness,
            "point": self.point,
            "point_fixes_alpha": self.point_fixed,
            "h_of_s": self.h_of_s,
            "h_of_a_is_x_alpha_1": self.h_of_a_is_x_alpha_1,
            "h_of_c": self.h_of_c,
            "closed_form": self.closed_form,
            "rings": self.rings,
            "ok": self.ok,
        }


TEST_RINGS = ("gf:2", "gf:3", "mod:4")


def default_parabolic(label, alpha) -> Parabolic:
    """Standard parabolic whose Levi is spanned by the support of alpha."""
    G = integer_group(label)
    S = frozenset(i for i, c in enumerate(alpha) if c)
    return Parabolic(G, S, G.phi.identity, 1)


def verify_generic_lemma(w: WeylElement, alpha, P: Parabolic | None = None, alg: AffineAlgebra | None = None,
                         rings=TEST_RINGS, points=20, seed=0) -> GenericReport:
    from .group import group

    alg = alg or AffineAlgebra()
    label = alg.label
    alpha = tuple(alpha)
    P = P or default_parabolic(label, alpha)
    ce = c_element(P, w, alpha, alg)
    pt = GenericPoint(alg)

    # (a) the factorization witness c = p a^-1 with p in P^-(A_s)^w, a in U(A)
    lhs = (ce.c * ce.good.matrix).applyfunc(sympy.expand)
    reps = []
    for i, j in itertools.product(range(alg.l + 1), repeat=2):
        num, den = sympy.fraction(sympy.together(lhs[i, j] - ce.p[i, j]))
        reps.append(alg.equal(num, 0, method="pit", points=points, seed=seed + 7 * i + j))
    wd = weyl_sl(label, w)
    q = (wd * ce.p * wd.adjugate()).applyfunc(sympy.cancel)
    Pm = Parabolic(P.G, P.subset, P.G.phi.identity, -1)
    witness = {
        "equal": all(r.equal for r in reps),
        "path": "pit",
        "points": min(r.points for r in reps),
        "failure_bound": max(r.bound for r in reps),
        "p_in_opposite_parabolic": _in_parabolic(Pm, q),
        "a_in_U": all(_polynomial(t) for _, t in ce.good.params),
    }

    # (b) the integer point
    h, fixed = integer_point(label, w, alpha)
    hs = int(pt.substitute(ce.good.s, h))
    ha = pt.substitute(ce.good.matrix, h)
    hc = pt.substitute(ce.c, h)
    x1 = sl_x(label, alpha, 1)
    x1i = sl_x(label, alpha, -1)
    direct = (h.adjugate() * x1 * h * x1i)
    closed = {"direct_formula": bool(hc == direct)}
    if fixed:
        neg = tuple(-c for c in alpha)
        # [x_{-alpha}(-1), x_alpha(1)] read as x y x^-1 y^-1
        form = sl_x(label, neg, -1) * x1 * sl_x(label, neg, 1) * x1i
        closed.update(kind="[x_{-a}(-1), x_a(1)]", match=bool(hc == form) and closed["direct_formula"])
    else:
        rest = hc * x1
        hit = None
        for r in integer_group(label).phi.roots:
            for e in (1, -1):
                if rest == sl_x(label, r, e):
                    hit = (list(r), e)
        closed.update(kind="x_b(+-1) x_a(-1)", root=hit and hit[0], sign=hit and hit[1],
                      match=hit is not None and closed["direct_formula"])
    out = {}
    for desc in rings:
        R = Ring.parse(desc)
        G = group(label, R)
        n = R.modulus
        x = adjoint(G, hc.applyfunc(lambda e: int(e) % n))
        out[str(R)] = {"noncentral": not G.is_central(x)}
    return GenericReport(
        label, [i + 1 for i in w.word], list(alpha), ce.good.k, witness,
        [int(v) for v in h], fixed, hs, bool(ha == x1), [int(v) for v in hc], closed, out,
    )
