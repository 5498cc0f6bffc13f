"""
Root systems A2, A3, B2, B3, C3, G2 and their Weyl groups.

Roots are integer tuples in simple-root coordinates. Simple-root order and
squared lengths (short/long) per type:

    A_n : chain a1 - a2 - ... , all |a|^2 = 2
    B_n : a1 .. a_{n-1} long (|a|^2 = 4), a_n short (|a|^2 = 2)
    C_n : a1 .. a_{n-1} short (2), a_n long (4)
    G2  : a1 short (2), a2 long (6)

All sign conventions downstream (structure constants, Weyl representatives)
depend on this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class UnsupportedType(Exception):
    pass


SUPPORTED = ("A2", "A3", "B2", "B3", "C3", "G2")


def _gram(label: str) -> np.ndarray:
    kind, rank = label[0].upper(), int(label[1:])
    if kind == "A":
        lengths = [2] * rank
    elif kind == "B":
        lengths = [4] * (rank - 1) + [2]
    elif kind == "C":
        lengths = [2] * (rank - 1) + [4]
    elif kind == "G" and rank == 2:
        lengths = [2, 6]
    else:
        raise UnsupportedType(label)
    G = np.diag(lengths).astype(int)
    for i in range(rank - 1):
        a, b = lengths[i], lengths[i + 1]
        if kind == "G":
            v = -3
        elif a == b:
            v = -a // 2
        else:
            v = -min(a, b)
        G[i, i + 1] = G[i + 1, i] = v
    return G


@dataclass(frozen=True)
class WeylElement:
    perm: tuple  # perm[i] = index of w(root_i)
    word: tuple  # reduced word in simple indices; w = s_word[0] ... s_word[-1]

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self):
        return "W(%s)" % ("".join(str(i + 1) for i in self.word) or "e")


class RootSystem:
    """Reduced irreducible root system of rank >= 2 (desk-scale types)."""

    def __init__(self, label: str):
        label = label.upper()
        if label not in SUPPORTED:
            raise UnsupportedType(label)
        self.label = label
        self.rank = int(label[1:])
        self.gram = _gram(label)
        self.roots = self._generate()
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.simple = [self.index[self._unit(i)] for i in range(self.rank)]

    def _unit(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def _generate(self):
        found = {self._unit(i) for i in range(self.rank)}
        frontier = list(found)
        while frontier:
            new = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.reflect_vec(i, r)
                    if s not in found:
                        found.add(s)
                        new.append(s)
            frontier = new
        pos = sorted((r for r in found if sum(r) > 0), key=lambda r: (sum(r), r))
        return pos + [tuple(-x for x in r) for r in pos]

    # inner products

    def ip(self, a, b) -> int:
        return int(np.array(a) @ self.gram @ np.array(b))

    def pairing(self, a, b) -> int:
        """<a, b^vee> = 2(a,b)/(b,b)."""
        num = 2 * self.ip(a, b)
        den = self.ip(b, b)
        assert num % den == 0
        return num // den

    def reflect_vec(self, i, v):
        c = self.pairing(v, self._unit(i))
        return tuple(v[j] - (c if j == i else 0) for j in range(self.rank))

    def reflect(self, a, v):
        c = self.pairing(v, a)
        return tuple(x - c * y for x, y in zip(v, a))

    # root data

    @property
    def positive(self) -> list:
        return [r for r in self.roots if sum(r) > 0]

    @property
    def negative(self) -> list:
        return [r for r in self.roots if sum(r) < 0]

    def is_positive(self, r) -> bool:
        return sum(r) > 0

    @staticmethod
    def height(r) -> int:
        return sum(r)

    def is_root(self, v) -> bool:
        return tuple(v) in self.index

    def neg(self, r):
        return tuple(-x for x in r)

    def is_long(self, r) -> bool:
        m = max(self.ip(s, s) for s in self.roots)
        return self.ip(r, r) == m

    @cached_property
    def lengths(self) -> dict:
        simply_laced = len({self.ip(r, r) for r in self.roots}) == 1
        return {r: ("long" if simply_laced or self.is_long(r) else "short") for r in self.roots}

    @cached_property
    def cartan(self) -> np.ndarray:
        """cartan[i, j] = <a_i, a_j^vee>."""
        n = self.rank
        return np.array([[self.pairing(self._unit(i), self._unit(j)) for j in range(n)] for i in range(n)])

    def coroot_coeffs(self, r) -> tuple:
        """Coefficients of r^vee in the simple coroots."""
        out = []
        rr = self.ip(r, r)
        for i in range(self.rank):
            num = r[i] * self.ip(self._unit(i), self._unit(i))
            assert num % rr == 0
            out.append(num // rr)
        return tuple(out)

    def root_sum(self, a, b):
        s = tuple(x + y for x, y in zip(a, b))
        return s if s in self.index else None

    def alpha_string(self, a, b) -> tuple[int, int]:
        """(p, q) with b - p a, ..., b + q a the a-string through b."""
        assert tuple(a) != tuple(b) and tuple(a) != self.neg(b)
        p = 0
        while self.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        q = 0
        while self.is_root(tuple(y + (q + 1) * x for x, y in zip(a, b))):
            q += 1
        return p, q

    @cached_property
    def highest_root(self):
        return max(self.positive, key=sum)

    @property
    def nilpotency_class(self) -> int:
        """Class of U: the height of the highest root."""
        return sum(self.highest_root)

    # Weyl group

    def _reflection_perm(self, i):
        return tuple(self.index[self.reflect_vec(i, r)] for r in self.roots)

    @cached_property
    def weyl_group(self) -> list:
        """All elements, in increasing length, each with a reduced word."""
        n = len(self.roots)
        gens = [self._reflection_perm(i) for i in range(self.rank)]
        ident = tuple(range(n))
        elems = {ident: ()}
        frontier = [ident]
        while frontier:
            new = []
            for p in frontier:
                for i, s in enumerate(gens):
                    # w * s_i : apply s_i first
                    q = tuple(p[s[k]] for k in range(n))
                    if q not in elems:
                        elems[q] = elems[p] + (i,)
                        new.append(q)
            frontier = sorted(new, key=lambda q: elems[q])
        out = [WeylElement(p, w) for p, w in elems.items()]
        out.sort(key=lambda w: (w.length, w.word))
        return out

    def weyl(self, word) -> WeylElement:
        """Element with the given word (reduced or not)."""
        n = len(self.roots)
        p = tuple(range(n))
        for i in word:
            s = self._reflection_perm(i)
            p = tuple(p[s[k]] for k in range(n))
        for w in self.weyl_group:
            if w.perm == p:
                return w
        raise AssertionError("not in W")

    @property
    def identity(self) -> WeylElement:
        return self.weyl_group[0]

    def longest(self) -> WeylElement:
        return self.weyl_group[-1]

    def act(self, w: WeylElement, r):
        return self.roots[w.perm[self.index[tuple(r)]]]

    def compose(self, w: WeylElement, v: WeylElement) -> WeylElement:
        p = tuple(w.perm[v.perm[k]] for k in range(len(self.roots)))
        return self._lookup(p)

    def inverse(self, w: WeylElement) -> WeylElement:
        p = [0] * len(self.roots)
        for k, j in enumerate(w.perm):
            p[j] = k
        return self._lookup(tuple(p))

    def _lookup(self, p):
        for w in self.weyl_group:
            if w.perm == p:
                return w
        raise AssertionError("not in W")

    def inversion_count(self, w: WeylElement) -> int:
        return sum(1 for r in self.positive if not self.is_positive(self.act(w, r)))

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "roots": [list(r) for r in self.roots],
            "simple": [list(self.roots[i]) for i in self.simple],
            "positive": [list(r) for r in self.positive],
            "lengths": [self.lengths[r] for r in self.roots],
            "cartan": self.cartan.tolist(),
        }


_CACHE: dict = {}


def build(label: str) -> RootSystem:
    label = label.upper()
    if label not in _CACHE:
        _CACHE[label] = RootSystem(label)
    return _CACHE[label]
