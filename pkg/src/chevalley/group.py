"""
Chevalley basis, adjoint representation and the elementary generators.

Structure constants are fixed by the extraspecial-pair convention (every
extraspecial pair of positive roots gets N = +(p+1)); the remaining signs are
the unique completion satisfying the Jacobi identity, found by search and
checked on the full bracket table.

The adjoint basis is ordered by decreasing height: positive roots (highest
first), then the simple coroots h_1..h_r, then negative roots (-1 first).
With this order x_a(t), a > 0, is upper unitriangular.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .rings import Ring, NotAUnit, Unsupported
from .roots import RootSystem, WeylElement, build


class OppositeRoots(Exception):
    pass


class NotUnipotent(Exception):
    pass


# ---------------------------------------------------------------------------
# structure constants


class StructureTable:
    def __init__(self, phi: RootSystem):
        self.phi = phi
        self.N = self._solve()
        self._check_jacobi()

    def _special_pairs(self):
        phi = self.phi
        pos = phi.positive
        order = {r: i for i, r in enumerate(pos)}
        pairs = {}
        for xi in pos:
            ps = []
            for a in pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if b in order and order[a] < order[b]:
                    ps.append((a, b))
            if ps:
                ps.sort(key=lambda ab: order[ab[0]])
                pairs[xi] = ps
        return pairs

    def _complete(self, pos_table):
        phi = self.phi
        N = {}

        def npos(a, b):
            if (a, b) in pos_table:
                return pos_table[(a, b)]
            return -pos_table[(b, a)]

        def ll(r):
            return phi.ip(r, r)

        def value(a, b):
            c = phi.neg(tuple(x + y for x, y in zip(a, b)))
            signs = [phi.is_positive(r) for r in (a, b, c)]
            if sum(signs) == 1:
                return -value(phi.neg(a), phi.neg(b))
            if signs[0] and signs[1]:
                return npos(a, b)
            if signs[1] and signs[2]:
                v = npos(b, c) * ll(c)
                assert v % ll(a) == 0
                return v // ll(a)
            v = npos(c, a) * ll(c)
            assert v % ll(b) == 0
            return v // ll(b)

        for a in phi.roots:
            for b in phi.roots:
                if phi.root_sum(a, b) is not None:
                    N[(a, b)] = value(a, b)
        return N

    def _solve(self):
        phi = self.phi
        pairs = self._special_pairs()
        fixed = {}
        free = []
        for xi, ps in pairs.items():
            for k, (a, b) in enumerate(ps):
                p, _ = phi.alpha_string(a, b)
                if k == 0:
                    fixed[(a, b)] = p + 1
                else:
                    free.append(((a, b), p + 1))
        for signs in itertools.product((1, -1), repeat=len(free)):
            table = dict(fixed)
            for ((a, b), m), s in zip(free, signs):
                table[(a, b)] = s * m
            N = self._complete(table)
            self.N = N
            if self._jacobi_ok():
                return N
        raise AssertionError("no consistent sign choice for %s" % phi.label)

    # bracket in the root-ordered basis: roots (phi.roots order) then h_i

    @property
    def dim(self):
        return len(self.phi.roots) + self.phi.rank

    def ad_matrices(self):
        """ad(b_j) for every basis vector, as integer matrices (root order)."""
        phi = self.phi
        n, r = len(phi.roots), phi.rank
        d = n + r
        mats = []
        for j in range(d):
            M = np.zeros((d, d), dtype=object)
            for k in range(d):
                for i, c in self._bracket(j, k).items():
                    M[i, k] = c
            mats.append(M)
        return mats

    def _bracket(self, j, k):
        phi = self.phi
        n = len(phi.roots)
        if j >= n and k >= n:
            return {}
        if j >= n:
            a = phi.roots[k]
            return {k: phi.pairing(a, phi._unit(j - n))}
        if k >= n:
            a = phi.roots[j]
            return {j: -phi.pairing(a, phi._unit(k - n))}
        a, b = phi.roots[j], phi.roots[k]
        if b == phi.neg(a):
            return {n + i: c for i, c in enumerate(phi.coroot_coeffs(a)) if c}
        s = phi.root_sum(a, b)
        if s is None:
            return {}
        return {phi.index[s]: self.N[(a, b)]}

    def _jacobi_ok(self):
        mats = self.ad_matrices()
        d = self.dim
        for j in range(d):
            for k in range(j + 1, d):
                lhs = mats[j].dot(mats[k]) - mats[k].dot(mats[j])
                rhs = np.zeros((d, d), dtype=object)
                for i, c in self._bracket(j, k).items():
                    rhs = rhs + c * mats[i]
                if not (lhs == rhs).all():
                    return False
        return True

    def _check_jacobi(self):
        assert self._jacobi_ok()
        for (a, b), v in self.N.items():
            p, _ = self.phi.alpha_string(a, b)
            assert abs(v) == p + 1
            assert self.N[(b, a)] == -v

    def to_json(self):
        return {
            "label": self.phi.label,
            "N": [{"a": list(a), "b": list(b), "N": v} for (a, b), v in sorted(self.N.items())],
        }


@lru_cache(maxsize=None)
def build_table(label: str) -> StructureTable:
    return StructureTable(build(label))


# ---------------------------------------------------------------------------
# modular linear algebra


def _inv_local(M, p, k):
    q = p ** k
    d = M.shape[0]
    A = np.concatenate([M % q, np.eye(d, dtype=np.int64)], axis=1)
    for c in range(d):
        piv = None
        for r in range(c, d):
            if A[r, c] % p:
                piv = r
                break
        if piv is None:
            raise NotAUnit("singular matrix mod %d" % q)
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
        A[c] = (A[c] * pow(int(A[c, c]), -1, q)) % q
        col = A[:, c].copy()
        col[c] = 0
        A = (A - np.outer(col, A[c])) % q
    return A[:, d:]


def mat_inv(M: np.ndarray, n: int) -> np.ndarray:
    """Inverse of a matrix over Z/n (n > 0) or Z (n == 0, unimodular)."""
    if n == 0:
        import sympy

        S = sympy.Matrix(M.tolist()).inv()
        assert all(x.is_integer for x in S), "not unimodular over Z"
        return np.array(S.tolist(), dtype=object).astype(int).astype(object)
    from .rings import prime_factors

    result = np.zeros_like(M)
    mod_so_far = 1
    for p in prime_factors(n):
        k = 0
        m = n
        while m % p == 0:
            m //= p
            k += 1
        q = p ** k
        Ii = _inv_local(M.astype(np.int64), p, k)
        # CRT combine
        if mod_so_far == 1:
            result = Ii % q
        else:
            a = pow(mod_so_far, -1, q)
            result = (result + mod_so_far * (((Ii - result) * a) % q)) % (mod_so_far * q)
        mod_so_far *= q
    return result.astype(np.int64)


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Generator:
    kind: str  # "x", "h" or "w"
    root: tuple
    param: int | str  # str: a polynomial over the generic algebra
    inverse: bool = False

    def inv(self) -> Generator:
        return Generator(self.kind, self.root, self.param, not self.inverse)

    def to_json(self):
        d = {"g": self.kind, "root": list(self.root)}
        d["t" if self.kind == "x" else "eps"] = str(self.param)
        if self.inverse:
            d["inv"] = True
        return d

    @classmethod
    def from_json(cls, d):
        kind = d["g"]
        param = _param(d["t"] if kind == "x" else d["eps"])
        return cls(kind, tuple(d["root"]), param, bool(d.get("inv", False)))


def _param(t):
    try:
        return int(t)
    except (TypeError, ValueError):
        return str(t)


def X(root, t) -> Generator:
    return Generator("x", tuple(root), _param(t))


def H(root, eps) -> Generator:
    return Generator("h", tuple(root), _param(eps))


def Wg(root, eps) -> Generator:
    return Generator("w", tuple(root), _param(eps))


@dataclass(frozen=True)
class GroupWord:
    letters: tuple = ()

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inv(self) -> GroupWord:
        return GroupWord(tuple(g.inv() for g in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def evaluate(self, G: ChevalleyGroup) -> GroupElement:
        out = G.identity
        for g in self.letters:
            out = out * G.generator(g)
        return out

    def to_json(self):
        return [g.to_json() for g in self.letters]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Generator.from_json(d) for d in data))


def word(*gens) -> GroupWord:
    return GroupWord(tuple(gens))


# ---------------------------------------------------------------------------
# group


class GroupElement:
    """A matrix in G. Products remember their factors so that the inverse
    can be formed as b^-1 a^-1 on demand instead of by elimination."""

    __slots__ = ("G", "m", "_key", "_inv", "_parts", "_depth")

    MAX_DEPTH = 64

    def __init__(self, G: ChevalleyGroup, m: np.ndarray):
        self.G = G
        self.m = m
        self._key = None
        self._inv = None
        self._parts = None
        self._depth = 0

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.G.key(self.m)
        return self._key

    def __mul__(self, other: GroupElement) -> GroupElement:
        if other.G is not self.G and other.G != self.G:
            from .rings import MixedRings

            raise MixedRings("%s vs %s" % (self.G, other.G))
        out = GroupElement(self.G, self.G.reduce(self.m.dot(other.m)))
        depth = 1 + max(self._depth, other._depth)
        if depth <= self.MAX_DEPTH:
            out._parts = (self, other)
            out._depth = depth
        return out

    def inv(self) -> GroupElement:
        if self._inv is None:
            if self._parts is not None:
                a, b = self._parts
                r = b.inv() * a.inv()
            else:
                r = GroupElement(self.G, self.G.reduce(mat_inv(self.m, self.G.ring.modulus)))
            r._inv = self
            self._inv = r
        self._parts = None
        return self._inv

    def conj(self, b: GroupElement) -> GroupElement:
        """self^b = b^-1 self b."""
        return b.inv() * self * b

    def comm(self, b: GroupElement) -> GroupElement:
        """[self, b] = self^-1 b^-1 self b."""
        return self.inv() * b.inv() * self * b

    def is_identity(self) -> bool:
        return bool((self.m == self.G.eye).all())

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.G == other.G and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "GroupElement(%s, %s)\n%s" % (self.G.phi.label, self.G.ring, self.m)

    def to_json(self):
        return {
            "type": self.G.phi.label,
            "ring": self.G.ring.to_json(),
            "dim": int(self.m.shape[0]),
            "entries": [int(x) for x in self.m.flatten()],
        }


class ChevalleyGroup:
    """Adjoint Chevalley group G(Phi, R) realized by matrices on the Lie algebra."""

    def __init__(self, label: str, ring: Ring):
        if ring.kind == "polyquot":
            raise Unsupported("matrix group over %s (use the symbolic layer)" % ring)
        self.phi = build(label)
        self.ring = ring
        self.table = build_table(self.phi.label)
        phi = self.phi
        pos = sorted(phi.positive, key=lambda r: (-sum(r), r))
        neg = sorted(phi.negative, key=lambda r: (-sum(r), r))
        # weight-ordered basis labels: root tuples, or ("h", i)
        self.basis = pos + [("h", i) for i in range(phi.rank)] + neg
        self.pos_index = {b: k for k, b in enumerate(self.basis)}
        n = len(phi.roots)
        self._perm = [phi.index[b] if b[0] != "h" else n + b[1] for b in self.basis]
        self.dim = len(self.basis)
        self.dtype = object if ring.modulus == 0 else np.int64
        self.eye = np.eye(self.dim, dtype=self.dtype)
        self.identity = GroupElement(self, self.eye.copy())
        self._comm_coeffs = {}

    def __eq__(self, other):
        return isinstance(other, ChevalleyGroup) and self.phi.label == other.phi.label and self.ring == other.ring

    def __hash__(self):
        return hash((self.phi.label, self.ring))

    def __repr__(self):
        return "G(%s, %s)" % (self.phi.label, self.ring)

    def reduce(self, m):
        n = self.ring.modulus
        if n == 0:
            return m
        return m % n

    def key(self, m) -> bytes:
        if self.ring.modulus == 0:
            return repr(m.tolist()).encode()
        return m.astype(np.int16).tobytes()

    def element(self, m) -> GroupElement:
        return GroupElement(self, self.reduce(np.array(m, dtype=self.dtype)))

    # Lie algebra

    @cached_property
    def ad(self) -> dict:
        """ad(e_a) in the weight-ordered basis, integer matrices."""
        mats = self.table.ad_matrices()
        P = self._perm
        out = {}
        for r in self.phi.roots:
            M = mats[self.phi.index[r]]
            out[r] = M[np.ix_(P, P)]
        return out

    @cached_property
    def _exp_terms(self) -> dict:
        """(ad e_a)^k / k! for k = 0.. over Z, with divisibility asserted."""
        out = {}
        for r, A in self.ad.items():
            terms = [np.eye(self.dim, dtype=object)]
            P = np.eye(self.dim, dtype=object)
            k = 0
            while True:
                k += 1
                P = P.dot(A)
                if not P.any():
                    break
                f = math.factorial(k)
                assert all(int(x) % f == 0 for x in P.flatten()), "divided power not integral"
                terms.append(np.array([[int(x) // f for x in row] for row in P], dtype=object))
            out[r] = terms
        return out

    def nilpotency_degree(self, r) -> int:
        """Smallest k with (ad e_r)^k = 0."""
        return len(self._exp_terms[tuple(r)])

    # generators

    def _param(self, t) -> int:
        return self.ring.reduce(int(t))

    def x(self, root, t) -> GroupElement:
        root = tuple(root)
        t = self._param(t)
        e = self._x_cached(root, t)
        if e._inv is None:
            e._inv = self._x_cached(root, self._param(-t))
            e._inv._inv = e
        return e

    @lru_cache(maxsize=4096)
    def _x_cached(self, root, t):
        terms = self._exp_terms[root]
        M = sum((t ** k) * T for k, T in enumerate(terms))
        return GroupElement(self, self.reduce(np.array(M, dtype=self.dtype)))

    def w(self, root, eps=1) -> GroupElement:
        """w_a(eps) = x_a(eps) x_{-a}(-eps^-1) x_a(eps)."""
        root = tuple(root)
        eps = self._param(eps)
        if not self.ring.is_unit(eps):
            raise NotAUnit("%s is not a unit in %s" % (eps, self.ring))
        ie = self.ring.inv(eps)
        return self.x(root, eps) * self.x(self.phi.neg(root), -ie) * self.x(root, eps)

    def h(self, root, eps) -> GroupElement:
        """h_a(eps) = w_a(eps) w_a(1)^-1."""
        return self.w(root, eps) * self.w(root, 1).inv()

    def torus(self, chars) -> GroupElement:
        """Adjoint torus element acting on e_a by prod chars[i]^a_i."""
        R = self.ring
        inv = [R.inv(c) for c in chars]
        M = np.array(self.eye, copy=True)
        for k, b in enumerate(self.basis):
            if b[0] == "h":
                continue
            v = 1
            for i, c in enumerate(b):
                base = chars[i] if c > 0 else inv[i]
                v = R.mul(v, base ** abs(c))
            M[k, k] = v
        return GroupElement(self, M)

    def torus_chars(self, g: GroupElement):
        """Character values on simple roots if g is diagonal, else None."""
        m = g.m
        if (m - np.diag(np.diag(m))).any():
            return None
        return tuple(int(m[self.pos_index[self.phi.roots[i]], self.pos_index[self.phi.roots[i]]]) for i in self.phi.simple)

    def generator(self, g: Generator) -> GroupElement:
        if g.kind == "x":
            e = self.x(g.root, g.param)
        elif g.kind == "w":
            e = self.w(g.root, g.param)
        elif g.kind == "h":
            e = self.h(g.root, g.param)
        else:
            raise ValueError(g.kind)
        return e.inv() if g.inverse else e

    def evaluate(self, w: GroupWord) -> GroupElement:
        return w.evaluate(self)

    # Weyl group representatives

    def weyl_word(self, w: WeylElement) -> GroupWord:
        """Word for w-dot, chosen so that x_a(r)^{w-dot} = x_{w(a)}(+-r)."""
        simple = [self.phi.roots[i] for i in self.phi.simple]
        return GroupWord(tuple(Wg(simple[i], 1) for i in reversed(w.word)))

    def weyl_rep(self, w: WeylElement) -> GroupElement:
        return self._weyl_rep_cached(w.perm, w.word)

    @lru_cache(maxsize=None)
    def _weyl_rep_cached(self, perm, wd):
        return self.weyl_word(WeylElement(perm, wd)).evaluate(self)

    def conj_root(self, w: WeylElement, root, r=1):
        """(w(a), sign) with x_a(r)^{w-dot} = x_{w(a)}(sign r)."""
        root = tuple(root)
        target = self.phi.act(w, root)
        wd = self.weyl_rep(w)
        lhs = self.x(root, 1).conj(wd)
        for sign in (1, -1):
            if lhs == self.x(target, sign):
                return target, sign
        raise AssertionError("Weyl representative does not permute root subgroups")

    # commutator formula

    def commutator_coeffs(self, a, b):
        """[(i, j, root, C_ij)] with [x_a(t), x_b(u)] = prod x_{ia+jb}(C_ij t^i u^j)."""
        a, b = tuple(a), tuple(b)
        key = (a, b)
        if key in self._comm_coeffs:
            return self._comm_coeffs[key]
        phi = self.phi
        if a == phi.neg(b) or a == b:
            raise OppositeRoots("%s, %s" % (a, b))
        combos = []
        for i in range(1, 4):
            for j in range(1, 4):
                r = tuple(i * x + j * y for x, y in zip(a, b))
                if phi.is_root(r):
                    combos.append((i, j, r))
        combos.sort(key=lambda c: (c[0] + c[1], c[0]))
        out = []
        if combos:
            GZ = integer_group(phi.label)
            c = GZ.x(a, 1).comm(GZ.x(b, 1))
            params = GZ.peel(c, [(r, i + j) for i, j, r in combos])
            for (i, j, r), (r2, t) in zip(combos, params):
                assert r == r2
                out.append((i, j, r, int(t)))
        self._comm_coeffs[key] = out
        return out

    def commutator_expand(self, a, b, t, u) -> GroupWord:
        R = self.ring
        t, u = self._param(t), self._param(u)
        letters = []
        for i, j, r, C in self.commutator_coeffs(a, b):
            v = R.reduce(C * t ** i * u ** j)
            if v:
                letters.append(X(r, v))
        return GroupWord(tuple(letters))

    # unipotent peeling

    @cached_property
    def witness(self) -> dict:
        """root a -> (row, col, N) with x_a(t)[row, col] = N t and N = +-1."""
        phi = self.phi
        out = {}
        for a in phi.roots:
            for d in phi.roots:
                if d == phi.neg(a) or d == a:
                    continue
                s = phi.root_sum(a, d)
                if s is None:
                    continue
                if phi.is_root(tuple(y - x for x, y in zip(a, d))):
                    continue
                N = self.table.N[(a, d)]
                assert abs(N) == 1
                out[a] = (self.pos_index[s], self.pos_index[d], N)
                break
        assert len(out) == len(phi.roots)
        return out

    def peel(self, m: GroupElement, roots_levels) -> list:
        """Write m = prod x_r(t_r) over roots in increasing level.

        roots_levels: list of (root, level) with positive additive levels.
        Raises NotUnipotent if m is not such a product.
        """
        R = self.ring
        order = sorted(roots_levels, key=lambda rl: rl[1])
        out = []
        cur = m
        k = 0
        while k < len(order):
            lvl = order[k][1]
            group = [r for r, l in order[k:] if l == lvl]
            params = []
            for r in group:
                row, col, N = self.witness[tuple(r)]
                params.append(R.reduce(int(cur.m[row, col]) * N))
            for r, t in zip(group, params):
                cur = self.x(r, -t) * cur
                out.append((tuple(r), t))
            k += len(group)
        if not cur.is_identity():
            raise NotUnipotent("element is not in the given unipotent subgroup")
        return out

    def peel_unipotent(self, m: GroupElement, sign=1) -> list:
        """Parameters of m in U (sign=1) or U^- (sign=-1), height order."""
        d = np.array(m.m)
        if sign == 1:
            bad = np.tril(d, -1).any()
        else:
            bad = np.triu(d, 1).any()
        if bad or not (np.diag(d) == 1).all():
            raise NotUnipotent("not unitriangular")
        roots = self.phi.positive if sign == 1 else self.phi.negative
        res = self.peel(m, [(r, abs(sum(r))) for r in roots])
        return [(r, t) for r, t in res if t != 0]

    def unipotent(self, params) -> GroupElement:
        out = self.identity
        for r, t in params:
            out = out * self.x(r, t)
        return out

    def unipotent_word(self, params) -> GroupWord:
        return GroupWord(tuple(X(r, t) for r, t in params if self.ring.reduce(t)))

    # centre

    def is_central(self, g: GroupElement) -> bool:
        """True iff g commutes with x_a(t) for every root a and t in R."""
        if not self.ring.is_finite:
            raise Unsupported("centrality over %s needs a sampling policy" % self.ring)
        for r in self.phi.roots:
            for t in self.ring.elements()[1:]:
                x = self.x(r, t)
                if ((x.m.dot(g.m) - g.m.dot(x.m)) % self.ring.modulus).any():
                    return False
        return True

    # root elements

    @cached_property
    def root_elements(self) -> dict:
        """key -> (root, t) for every nontrivial x_a(t), finite rings."""
        out = {}
        for r in self.phi.roots:
            for t in self.ring.elements()[1:]:
                out[self.x(r, t).key()] = (r, t)
        return out

    def as_root_element(self, g: GroupElement):
        if self.ring.is_finite:
            return self.root_elements.get(g.key())
        return None

    def generators(self) -> list:
        """Generating set {x_a(1)} of E(R) for prime rings Z/n, GF(p)."""
        return [self.x(r, 1) for r in self.phi.roots]


@lru_cache(maxsize=None)
def integer_group(label: str) -> ChevalleyGroup:
    return ChevalleyGroup(label, Ring.integers())


@lru_cache(maxsize=None)
def group(label: str, ring: Ring) -> ChevalleyGroup:
    return ChevalleyGroup(label, ring)
