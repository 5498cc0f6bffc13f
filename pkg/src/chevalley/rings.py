"""
Concrete commutative rings: Z, Z/nZ, GF(p) and a polynomial quotient ring.

Finite rings carry their elements as canonical Python ints in [0, n).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import reduce


class RingError(Exception):
    pass


class MixedRings(RingError):
    pass


class NotAUnit(RingError):
    pass


class Unsupported(RingError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    ps = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


@dataclass(frozen=True)
class Ring:
    """A commutative ring with 1.

    kind is one of "int", "mod", "gf", "polyquot". For "mod" and "gf" the
    modulus is n; for "polyquot" the variables and relations are sympy-parsable
    strings.
    """

    kind: str
    n: int = 0
    vars: tuple = ()
    relations: tuple = ()

    def __post_init__(self):
        if self.kind == "mod":
            assert self.n >= 2, "Z/nZ needs n >= 2"
        elif self.kind == "gf":
            assert is_prime(self.n), "GF(p) needs p prime"
        elif self.kind == "int":
            assert self.n == 0
        elif self.kind != "polyquot":
            raise Unsupported(self.kind)

    # constructors

    @classmethod
    def integers(cls) -> Ring:
        return cls("int")

    @classmethod
    def mod(cls, n: int) -> Ring:
        return cls("mod", n)

    @classmethod
    def gf(cls, p: int) -> Ring:
        return cls("gf", p)

    @classmethod
    def polyquot(cls, vars, relations) -> Ring:
        return cls("polyquot", 0, tuple(vars), tuple(str(r) for r in relations))

    # descriptors

    def __str__(self):
        if self.kind == "int":
            return "Z"
        if self.kind == "mod":
            return "Z/%d" % self.n
        if self.kind == "gf":
            return "GF(%d)" % self.n
        return "Z[%s]/(%s)" % (",".join(self.vars), ",".join(self.relations))

    def to_json(self) -> dict:
        if self.kind == "int":
            return {"kind": "int"}
        if self.kind == "mod":
            return {"kind": "mod", "n": self.n}
        if self.kind == "gf":
            return {"kind": "gf", "p": self.n}
        return {"kind": "polyquot", "vars": list(self.vars), "relations": list(self.relations)}

    @classmethod
    def from_json(cls, d: dict) -> Ring:
        kind = d["kind"]
        if kind == "int":
            return cls.integers()
        if kind == "mod":
            return cls.mod(int(d["n"]))
        if kind == "gf":
            return cls.gf(int(d["p"]))
        if kind == "polyquot":
            return cls.polyquot(d["vars"], d["relations"])
        raise Unsupported(kind)

    @classmethod
    def parse(cls, s: str) -> Ring:
        """Parse "int", "mod:9", "gf:5"."""
        s = s.strip().lower()
        if s in ("int", "z"):
            return cls.integers()
        kind, _, arg = s.partition(":")
        if kind == "mod":
            return cls.mod(int(arg))
        if kind == "gf":
            return cls.gf(int(arg))
        raise Unsupported(s)

    # structure

    @property
    def modulus(self) -> int:
        """0 for Z, n for Z/n and GF(n)."""
        if self.kind == "polyquot":
            raise Unsupported("no integer modulus for %s" % self)
        return self.n

    @property
    def is_finite(self) -> bool:
        return self.kind in ("mod", "gf")

    @property
    def is_field(self) -> bool:
        return self.kind == "gf" or (self.kind == "mod" and is_prime(self.n))

    @property
    def is_local(self) -> bool:
        return self.is_finite and len(prime_factors(self.n)) == 1

    def elements(self) -> list[int]:
        if not self.is_finite:
            raise Unsupported("cannot enumerate %s" % self)
        return list(range(self.n))

    def units(self) -> list[int]:
        return [x for x in self.elements() if self.is_unit(x)]

    def reduce(self, x):
        if self.kind == "int":
            return int(x)
        if self.kind == "polyquot":
            import sympy

            return sympy.expand(sympy.sympify(x))
        return int(x) % self.n

    # arithmetic on canonical ints

    def add(self, x, y):
        return self.reduce(x + y)

    def sub(self, x, y):
        return self.reduce(x - y)

    def neg(self, x):
        return self.reduce(-x)

    def mul(self, x, y):
        return self.reduce(x * y)

    def is_unit(self, x) -> bool:
        if self.kind == "int":
            return x in (1, -1)
        if self.kind == "polyquot":
            raise Unsupported("unit test in %s" % self)
        return math.gcd(int(x), self.n) == 1

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit("%s is not a unit in %s" % (x, self))
        if self.kind == "int":
            return int(x)
        return pow(int(x), -1, self.n)

    def __call__(self, value) -> RingElement:
        return RingElement(self, self.reduce(value))


@dataclass(frozen=True)
class RingElement:
    owner: Ring
    value: object

    def _check(self, other) -> RingElement:
        if not isinstance(other, RingElement):
            return self.owner(other)
        if other.owner != self.owner:
            raise MixedRings("%s vs %s" % (self.owner, other.owner))
        return other

    def __add__(self, other):
        other = self._check(other)
        return RingElement(self.owner, self.owner.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return RingElement(self.owner, self.owner.sub(self.value, other.value))

    def __neg__(self):
        return RingElement(self.owner, self.owner.neg(self.value))

    def __mul__(self, other):
        other = self._check(other)
        return RingElement(self.owner, self.owner.mul(self.value, other.value))

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.owner.is_unit(self.value)

    def inv(self) -> RingElement:
        return RingElement(self.owner, self.owner.inv(self.value))

    def is_zero(self) -> bool:
        if self.owner.kind == "polyquot":
            return polyquot_equal(self.owner, self.value, 0).equal
        return self.value == 0

    def __int__(self):
        return int(self.value)

    def __repr__(self):
        return "%s(%s)" % (self.owner, self.value)


def arith(op: str, x: RingElement, y: RingElement | None = None):
    """Dispatch "add", "mul", "neg", "inv", "is_unit" on ring elements."""
    if y is not None and x.owner != y.owner:
        raise MixedRings("%s vs %s" % (x.owner, y.owner))
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    if op == "is_unit":
        return x.is_unit()
    raise ValueError(op)


@dataclass(frozen=True)
class Ideal:
    """Ideal of Z, Z/n or GF(p), stored by its single generator d.

    For Z/n the generator is normalized to a divisor of n (n itself means 0).
    """

    owner: Ring
    generators: tuple = field(default=())

    def __post_init__(self):
        if self.owner.kind == "polyquot":
            raise Unsupported("ideals of %s" % self.owner)

    @property
    def gen(self) -> int:
        R = self.owner
        if R.kind == "int":
            return reduce(math.gcd, [abs(int(g)) for g in self.generators], 0)
        return reduce(math.gcd, [int(g) for g in self.generators], R.n)

    def contains(self, x) -> bool:
        d = self.gen
        if self.owner.kind == "int":
            return x == 0 if d == 0 else x % d == 0
        return (x % self.owner.n) % d == 0

    __contains__ = contains

    @property
    def is_zero(self) -> bool:
        return self.gen in (0, self.owner.n)

    @property
    def is_whole(self) -> bool:
        return self.gen == 1

    def elements(self) -> list[int]:
        d = self.gen
        return [x for x in self.owner.elements() if x % d == 0]

    def quotient(self) -> Ring | None:
        """R/I as a Ring, or None for the zero ring."""
        d = self.gen
        if d == 1:
            return None
        if self.owner.kind == "int":
            if d == 0:
                return self.owner
            return Ring.gf(d) if is_prime(d) else Ring.mod(d)
        if d == self.owner.n:
            return self.owner
        return Ring.gf(d) if is_prime(d) else Ring.mod(d)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.owner == other.owner and self.gen == other.gen

    def __hash__(self):
        return hash((self.owner, self.gen))

    def __repr__(self):
        d = self.gen
        if self.is_zero:
            d = 0
        return "(%d) in %s" % (d, self.owner)

    def to_json(self):
        return {"ring": self.owner.to_json(), "generator": 0 if self.is_zero else self.gen}


def ideal(R: Ring, *gens) -> Ideal:
    return Ideal(R, tuple(int(g) for g in gens))


def all_ideals(R: Ring) -> list[Ideal]:
    """The ideal lattice of a finite Z/n (ideals (d) for d | n)."""
    if not R.is_finite:
        raise Unsupported("ideal lattice of %s" % R)
    return [ideal(R, d) for d in range(1, R.n + 1) if R.n % d == 0]


def jacobson_radical(R: Ring) -> Ideal:
    if R.kind == "polyquot":
        raise Unsupported("Jacobson radical of %s" % R)
    if R.kind in ("int", "gf"):
        return ideal(R, 0)
    rad = reduce(lambda a, b: a * b, prime_factors(R.n), 1)
    return ideal(R, rad)


def has_residue_field_f2(R: Ring) -> bool:
    if R.kind == "int":
        return True
    if R.kind in ("mod", "gf"):
        return R.n % 2 == 0
    raise Unsupported("residue fields of %s" % R)


def _two_unit(R: Ring) -> bool:
    if R.kind == "polyquot":
        raise Unsupported("unit test in %s" % R)
    return R.is_unit(R.reduce(2))


def check_condition(label: str, R: Ring) -> tuple[bool, str]:
    """Invertibility of structure constants for root system `label` over R."""
    kind = label[0].upper()
    if kind in "ADE":
        return True, "simply laced"
    if kind in "BCF":
        if _two_unit(R):
            return True, "2 is a unit"
        return False, "doubly laced and 2 is not a unit in %s" % R
    if kind == "G":
        if R.kind == "polyquot":
            raise Unsupported("unit test in %s" % R)
        if not R.is_unit(R.reduce(3)):
            return False, "G2 and 3 is not a unit in %s" % R
        if has_residue_field_f2(R):
            return False, "G2 and %s has residue field GF(2)" % R
        return True, "3 is a unit and no residue field GF(2)"
    raise Unsupported(label)


def random_element(R: Ring, rng: random.Random) -> int:
    return rng.randrange(R.n) if R.is_finite else rng.randint(-5, 5)


# polynomial quotient rings


P31 = 2 ** 31 - 1


@dataclass
class IdentityReport:
    """Outcome of an equality test in a polynomial quotient ring.

    path is "exact" (equal polynomials), "normal-form" (difference lies in
    the relation ideal by exact division) or "pit" (random points on the
    variety over GF(p)); bound is the probability that a nonzero difference
    vanished at every sampled point.
    """

    equal: bool
    path: str
    points: int = 0
    bound: float = 0.0

    def to_json(self):
        return {"equal": self.equal, "path": self.path, "points": self.points, "failure_bound": self.bound}


def _solver(R: Ring):
    """(variable, c0, c1) for each relation c1*v + c0 linear in some variable v."""
    import sympy

    syms = sympy.symbols(R.vars)
    out = []
    for rel in R.relations:
        e = sympy.expand(sympy.sympify(rel))
        for v in syms:
            P = sympy.Poly(e, v)
            if P.degree() == 1:
                c1, c0 = P.all_coeffs()
                out.append((v, c0, c1))
                break
        else:
            raise Unsupported("no linear variable in relation %s" % rel)
    return syms, out


def variety_point(R: Ring, rng: random.Random, p: int = P31) -> dict | None:
    """A random point of the relation variety over GF(p), or None on a bad draw."""
    syms, elim = _solver(R)
    fixed = {v for v, _, _ in elim}
    pt = {v: rng.randrange(p) for v in syms if v not in fixed}
    for v, c0, c1 in elim:
        den = sympy_mod(c1, pt, p)
        if den == 0:
            return None
        pt[v] = -sympy_mod(c0, pt, p) * pow(den, -1, p) % p
    return pt


def sympy_mod(expr, pt, p):
    import sympy

    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    a = _eval_mod(num, pt, p)
    b = _eval_mod(den, pt, p)
    if b == 0:
        raise ZeroDivisionError("denominator vanishes at the point")
    return a * pow(b, -1, p) % p


def _eval_mod(e, pt, p):
    import sympy

    if not e.free_symbols:
        return int(e) % p
    gens = sorted(e.free_symbols, key=str)
    return int(sympy.Poly(e, *gens).eval(tuple(pt[g] for g in gens))) % p


def polyquot_equal(R: Ring, a, b, points: int = 20, seed: int = 0, p: int = P31, method: str = "auto") -> IdentityReport:
    """Equality in R. method "auto" tries exact and normal-form paths before
    identity testing; "pit" goes straight to identity testing."""
    import sympy

    d = sympy.expand(sympy.sympify(a) - sympy.sympify(b))
    syms = sympy.symbols(R.vars)
    if method == "auto" and d == 0:
        return IdentityReport(True, "exact")
    if method == "auto" and len(R.relations) == 1:
        rel = sympy.expand(sympy.sympify(R.relations[0]))
        q, r = sympy.reduced(d, [rel], *syms)
        if r == 0:
            return IdentityReport(True, "normal-form")
    rng = random.Random(seed)
    deg = max(sympy.Poly(d, *syms).total_degree(), 0)
    used = 0
    tries = 0
    while used < points:
        tries += 1
        if tries > 10 * points:
            raise RingError("could not sample the variety")
        pt = variety_point(R, rng, p)
        if pt is None:
            continue
        if sympy_mod(d, pt, p):
            return IdentityReport(False, "pit", used + 1, 0.0)
        used += 1
    # after eliminating one variable per relation the numerator has degree at
    # most deg * (1 + deg of the eliminating coefficient) <= deg * len(vars)
    per = min(1.0, deg * len(syms) / p)
    return IdentityReport(True, "pit", used, per ** points)
