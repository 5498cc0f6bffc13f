"""
Extraction of nontrivial root unipotents from noncentral elements.

Every routine threads a pair (element, certificate) where the certificate
evaluates to the element from the fixed seed h. The final answer x_a(t) is
accepted only after check_certificate, so no step is trusted.

Parabolic subgroups containing the fixed torus are described by a Weyl
element w, a set S of simple roots and a sign: P has root set
w(sign * Psi_S), where Psi_S is the standard parabolic set of S. Membership
is decided by a linear functional f on the root lattice: x is in P iff its
matrix never lowers f-degree.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from . import words
from .decomposition import NotAField, big_cell_factor, gauss_decompose, GaussFactorization
from .group import ChevalleyGroup, GroupElement, GroupWord, X
from .normal import central_mask
from .rings import jacobson_radical
from .roots import WeylElement
from .words import SEED, Cert, Comm, Conj, Elem, Inv, Prod

log = logging.getLogger(__name__)


class ExtractionError(Exception):
    pass


class CentralInput(ExtractionError):
    pass


class HypothesisFails(ExtractionError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotFound(ExtractionError):
    pass


class NoCommonRoot(ExtractionError):
    pass


class SearchExhausted(ExtractionError):
    def __init__(self, msg, trace=()):
        super().__init__(msg)
        self.trace = list(trace)


class NotUnderRadical(ExtractionError):
    pass


# ---------------------------------------------------------------------------
# parabolics


@dataclass(frozen=True)
class Parabolic:
    G: ChevalleyGroup
    subset: frozenset  # simple-root indices (0-based) in the Levi
    w: WeylElement
    sign: int = 1

    def _pull(self, r):
        phi = self.G.phi
        v = phi.act(phi.inverse(self.w), r)
        return tuple(self.sign * x for x in v)

    def degree(self, r) -> int:
        """f(r): coefficient sum of w^-1 r over simple roots outside the Levi."""
        v = self._pull(r)
        return sum(c for i, c in enumerate(v) if i not in self.subset)

    def height(self, r) -> int:
        """Height relative to the Borel w(sign B) contained in P."""
        return sum(self._pull(r))

    @property
    def roots(self) -> list:
        return [r for r in self.G.phi.roots if self.degree(r) >= 0]

    @property
    def levi_roots(self) -> list:
        return [r for r in self.G.phi.roots if self.degree(r) == 0]

    @property
    def radical_roots(self) -> list:
        return [r for r in self.G.phi.roots if self.degree(r) > 0]

    @property
    def borel_roots(self) -> list:
        return [r for r in self.G.phi.roots if self.height(r) > 0]

    @property
    def is_proper(self) -> bool:
        return len(self.subset) < self.G.phi.rank

    def _degrees(self, fn):
        return np.array([0 if b[0] == "h" else fn(b) for b in self.G.basis])

    def _diffs(self, fn):
        d = self._degrees(fn)
        return d[:, None] - d[None, :]

    def contains(self, x: GroupElement) -> bool:
        D = self._diffs(self.degree)
        return not np.asarray(x.m)[D < 0].any()

    def in_radical(self, x: GroupElement) -> bool:
        D = self._diffs(self.degree)
        m = np.asarray(x.m)
        if m[D < 0].any():
            return False
        blk = (D == 0)
        return bool((m[blk] == np.eye(m.shape[0], dtype=m.dtype)[blk]).all())

    def in_levi(self, x: GroupElement) -> bool:
        D = self._diffs(self.degree)
        return not np.asarray(x.m)[D != 0].any()

    def borel_depth(self, x: GroupElement):
        """Largest i with x in U^(i) of the Borel inside P; None if x is not in U."""
        D = self._diffs(self.height)
        m = np.asarray(x.m)
        eye = np.eye(m.shape[0], dtype=m.dtype)
        off = m - eye
        if off[D <= 0].any():
            return None
        nz = D[off != 0]
        if not len(nz):
            return float("inf")
        return int(nz.min()) - 1

    def maximal(self) -> Parabolic:
        """A maximal parabolic containing this one."""
        r = self.G.phi.rank
        if len(self.subset) == r - 1:
            return self
        for i in range(r):
            S = frozenset(range(r)) - {i}
            if self.subset <= S:
                return Parabolic(self.G, S, self.w, self.sign)
        raise AssertionError

    def rootset(self) -> frozenset:
        return frozenset(self.roots)

    def to_json(self):
        return {"subset": sorted(i + 1 for i in self.subset), "w": [i + 1 for i in self.w.word], "sign": self.sign}

    def __repr__(self):
        return "P(S=%s, w=%s, %s)" % (sorted(i + 1 for i in self.subset), self.w, "+" if self.sign > 0 else "-")


def standard(G, subset, sign=1) -> Parabolic:
    return Parabolic(G, frozenset(subset), G.phi.identity, sign)


def parabolic_scan(G: ChevalleyGroup):
    """Proper parabolics: standard first, then Weyl conjugates (w by length,
    then word); within one w, larger Levi first; duplicates by root set skipped."""
    r = G.phi.rank
    seen = set()
    for w in G.phi.weyl_group:
        for k in range(r - 1, -1, -1):
            for S in itertools.combinations(range(r), k):
                P = Parabolic(G, frozenset(S), w, 1)
                rs = P.rootset()
                if rs in seen:
                    continue
                seen.add(rs)
                yield P


# ---------------------------------------------------------------------------
# results


@dataclass
class ExtractionResult:
    root: tuple
    t: int
    certificate: Cert
    trace: list = field(default_factory=list)

    def verify(self, seed: GroupElement) -> bool:
        G = seed.G
        if G.ring.reduce(self.t) == 0:
            return False
        return words.check_certificate(self.certificate, seed, G.x(self.root, self.t))

    def to_json(self):
        return {
            "root": list(self.root),
            "t": str(self.t),
            "certificate": self.certificate.to_json(),
            "trace": self.trace,
        }


class _Ctx:
    def __init__(self, G, trace=None, max_steps=None):
        self.G = G
        self.trace = trace if trace is not None else []
        self._central = {}

    def central(self, x: GroupElement) -> bool:
        k = x.key()
        if k not in self._central:
            self._central[k] = self.G.is_central(x)
        return self._central[k]

    def note(self, msg):
        self.trace.append(msg)

    def params(self):
        return [t for t in self.G.ring.elements() if t]


def _as_root(ctx, x, cert):
    hit = ctx.G.as_root_element(x)
    if hit is not None:
        r, t = hit
        ctx.note("root element x_%s(%s)" % (list(r), t))
        return ExtractionResult(r, t, cert, ctx.trace)
    return None


def _elem(root, t) -> Cert:
    return Elem(GroupWord((X(root, t),)))


# ---------------------------------------------------------------------------
# elements commuting with a root subgroup modulo the centre


def escape_centralizer(a: GroupElement, alpha, ctx=None) -> Parabolic:
    G = a.G
    ctx = ctx or _Ctx(G)
    alpha = tuple(alpha)
    for t in ctx.params():
        c = a.comm(G.x(alpha, t))
        if not ctx.central(c):
            raise HypothesisFails("[a, x_%s(%s)] is not central" % (list(alpha), t), witness=(alpha, t))
    for P in parabolic_scan(G):
        if P.contains(a):
            ctx.note("escape_centralizer: %r" % (P,))
            return P
    raise NotFound("no proper parabolic contains the element")


# ---------------------------------------------------------------------------
# extraction inside a parabolic


def _search(ctx, x, cert, depth=4, breadth=4000):
    """Certified breadth-first search over commutators with x_a(+-1)."""
    G = ctx.G
    R = G.ring
    level = [(x, cert)]
    seen = {x.key()}
    for d in range(depth):
        nxt = []
        for y, cy in level:
            for r in G.phi.roots:
                for t in (1, R.reduce(-1)):
                    z = y.comm(G.x(r, t))
                    if z.is_identity() or z.key() in seen:
                        continue
                    seen.add(z.key())
                    cz = Comm(cy, _elem(r, t))
                    res = _as_root(ctx, z, cz)
                    if res is not None:
                        ctx.note("search hit at depth %d" % (d + 1))
                        return res
                    nxt.append((z, cz))
                    if len(nxt) >= breadth:
                        break
        level = nxt
        if not level:
            break
    raise SearchExhausted("no root element within depth %d" % depth, ctx.trace)


def extract_from_parabolic(h: GroupElement, P: Parabolic, cert: Cert = SEED, ctx=None) -> ExtractionResult:
    G = h.G
    ctx = ctx or _Ctx(G)
    if ctx.central(h):
        raise CentralInput("element is central")
    assert P.contains(h), "element not in %r" % (P,)
    ctx.note("extract_from_parabolic %r" % (P,))
    res = _as_root(ctx, h, cert)
    if res is not None:
        return res
    cur, cc = h, cert
    # enter the unipotent radical of the Borel inside P
    if P.borel_depth(cur) is None:
        entered = False
        cands = P.radical_roots + [r for r in P.borel_roots if P.degree(r) == 0]
        for r in cands:
            for t in ctx.params():
                y = G.x(r, t).comm(cur)
                if y.is_identity() or P.borel_depth(y) is None:
                    continue
                cur, cc = y, Comm(_elem(r, t), cc)
                ctx.note("commutated with x_%s(%s) into U" % (list(r), t))
                entered = True
                break
            if entered:
                break
        if not entered:
            ctx.note("could not enter U; falling back to search")
            return _search(ctx, cur, cc)
        res = _as_root(ctx, cur, cc)
        if res is not None:
            return res
    # descend the lower central series
    for _ in range(G.phi.nilpotency_class + 1):
        moved = False
        for r in sorted(P.borel_roots, key=P.height):
            for t in ctx.params():
                y = cur.comm(G.x(r, t))
                if y.is_identity():
                    continue
                cur, cc = y, Comm(cc, _elem(r, t))
                moved = True
                break
            if moved:
                break
        if not moved:
            ctx.note("element centralizes U but is not a root element; searching")
            return _search(ctx, cur, cc)
        res = _as_root(ctx, cur, cc)
        if res is not None:
            return res
    return _search(ctx, cur, cc)


# ---------------------------------------------------------------------------
# noncentral elements of U_Q P


def extract_from_PUQ(h, P: Parabolic, Q: Parabolic, a=None, b=None, b_cert=None, cert: Cert = SEED, ctx=None) -> ExtractionResult:
    """h = a b with a in U_Q and b in P; b_cert evaluates to b (any shape).

    Descends the lower central series of the unipotent radical of a Borel
    inside Q, using [x_a(r), ab]^{b^-1} = [b^-1, x_a(r)] [x_a(r), a].
    """
    G = h.G
    ctx = ctx or _Ctx(G)
    if ctx.central(h):
        raise CentralInput("element is central")
    if a is None:
        if not P.contains(h):
            raise ValueError("factorization h = a b must be supplied")
        a, b, b_cert = G.identity, h, cert
    assert a * b == h
    assert Q.in_radical(a) and P.contains(b)
    Pm = P.maximal()
    cands = [r for r in G.phi.roots if Pm.degree(r) == 0 and Q.height(r) > 0]
    if not cands:
        raise NoCommonRoot("no root subgroup in U cap L_P")
    alpha = cands[0]
    ctx.note("extract_from_PUQ: P=%r, Q=%r, alpha=%s" % (Pm, Q, list(alpha)))
    steps = 0
    while True:
        if a.is_identity():
            ctx.note("a = e after %d descent steps" % steps)
            return extract_from_parabolic(h, Pm, cert, ctx)
        depth = Q.borel_depth(a)
        assert depth is not None
        found = None
        for r in ctx.params():
            x = G.x(alpha, r)
            y = x.comm(h).conj(b.inv())
            if not ctx.central(y):
                found = (r, x, y)
                break
        if found is None:
            ctx.note("all [x_alpha(r), h] central: escaping the centralizer")
            P2 = escape_centralizer(h, alpha, ctx)
            return extract_from_parabolic(h, P2, cert, ctx)
        r, x, y = found
        cy = Conj(Comm(_elem(alpha, r), cert), Inv(b_cert))
        p = b.inv().comm(x)
        a2 = x.comm(a)
        assert y == p * a2
        # continue with y^-1 = a2^-1 p^-1
        h, cert = y.inv(), Inv(cy)
        a, b = a2.inv(), p.inv()
        xi = _elem(alpha, G.ring.reduce(-r))
        b_cert = Prod(xi, b_cert, _elem(alpha, r), Inv(b_cert))
        steps += 1
        new_depth = Q.borel_depth(a)
        assert new_depth is not None and new_depth > depth
        assert steps <= G.phi.nilpotency_class, "descent exceeded nilpotency class"
        ctx.note("descent step %d with r=%s (depth %s -> %s)" % (steps, r, depth, new_depth))


# ---------------------------------------------------------------------------
# noncentral elements of a Gauss cell U^- B w


def extract_from_cell(h: GroupElement, fac: GaussFactorization, cert: Cert = SEED, ctx=None) -> ExtractionResult:
    G = h.G
    ctx = ctx or _Ctx(G)
    if ctx.central(h):
        raise CentralInput("element is central")
    assert fac.orientation == "U-Bw"
    phi = G.phi
    ia, ib = 0, 1
    alpha = phi.roots[phi.simple[ia]]
    rank = phi.rank
    P = Parabolic(G, frozenset(range(rank)) - {ia}, fac.w, 1)
    Q = Parabolic(G, frozenset(range(rank)) - {ib}, phi.identity, -1)
    bw = G.unipotent_word(fac.u_params)
    b_el, c_el, wd = fac.u, fac.b, fac.wrep
    b_inv = b_el.inv()
    ctx.note("extract_from_cell: w=%r, alpha=%s" % (fac.w, list(alpha)))
    for r in ctx.params():
        xr = G.x(alpha, r)
        xb = xr.conj(b_inv)
        hr = xb.comm(h)
        if ctx.central(hr):
            continue
        cr = Comm(Conj(_elem(alpha, r), Inv(Elem(bw))), cert)
        q = G.x(alpha, G.ring.reduce(-r)).conj(b_inv)
        u = xr.conj(c_el * wd)
        assert hr == q * u
        assert Q.contains(q) and P.in_radical(u)
        ctx.note("h_r noncentral for r=%s" % r)
        return extract_from_PUQ(hr.inv(), Q, P, a=u.inv(), b=q.inv(), b_cert=Conj(_elem(alpha, r), Inv(Elem(bw))), cert=Inv(cr), ctx=ctx)
    ctx.note("all h_r central: using h^b")
    hb = h.conj(b_el)
    cb = Conj(cert, Elem(bw))
    P2 = escape_centralizer(hb, alpha, ctx)
    return extract_from_parabolic(hb, P2, cb, ctx)


# ---------------------------------------------------------------------------
# corollaries


def extract_over_field(h: GroupElement, cert: Cert = SEED, ctx=None) -> ExtractionResult:
    G = h.G
    ctx = ctx or _Ctx(G)
    if ctx.central(h):
        raise CentralInput("element is central")
    fac = gauss_decompose(h, "U-Bw")
    return extract_from_cell(h, fac, cert, ctx)


def under_radical(h: GroupElement) -> bool:
    """h reduces to a central element modulo the Jacobson radical."""
    G = h.G
    J = jacobson_radical(G.ring)
    if J.is_zero:
        return G.is_central(h)
    Rbar = J.quotient()
    return bool(central_mask(G, np.array([h.m]), Rbar)[0])


def extract_under_radical(h: GroupElement, cert: Cert = SEED, ctx=None) -> ExtractionResult:
    G = h.G
    ctx = ctx or _Ctx(G)
    if not under_radical(h):
        raise NotUnderRadical("element is not central modulo the Jacobson radical")
    if ctx.central(h):
        raise CentralInput("element is central")
    f = big_cell_factor(h, "UBw")
    if f is None:
        raise AssertionError("element of G(R, J) outside the big cell")
    ctx.note("big cell: u=%s" % [(list(r), t) for r, t in f.first])
    u = G.unipotent(f.first)
    b = u.inv() * h
    rank = G.phi.rank
    P = standard(G, range(rank - 1), sign=-1)
    Q = standard(G, (), sign=1)
    b_cert = Prod(Inv(Elem(G.unipotent_word(f.first))), cert)
    return extract_from_PUQ(h, P, Q, a=u, b=b, b_cert=b_cert, cert=cert, ctx=ctx)


def extract(h: GroupElement, cert: Cert = SEED) -> ExtractionResult:
    """Dispatch: radical case, then Gauss cells (fields and local rings)."""
    G = h.G
    ctx = _Ctx(G)
    if ctx.central(h):
        raise CentralInput("element is central")
    if not G.ring.is_field and under_radical(h):
        return extract_under_radical(h, cert, ctx)
    if not (G.ring.is_field or G.ring.is_local):
        raise NotAField("no Gauss cell covering over %s" % G.ring)
    fac = gauss_decompose(h, "U-Bw")
    return extract_from_cell(h, fac, cert, ctx)
