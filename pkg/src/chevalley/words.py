"""
Membership certificates for normal closures <h>^{E(R)}.

A certificate is an expression tree over the seed h and elementary words.
Every node has a shape:

    "H"  value lies in the normal closure H = <h>^E
    "E"  value lies in E(R) (an elementary word)
    "N"  value lies in <E, H>, which normalizes H

and the rules below only ever assign "H" when the value provably lies in H.
A certificate is well formed when its root has shape "H".
"""

from __future__ import annotations

from dataclasses import dataclass

from .group import ChevalleyGroup, GroupElement, GroupWord


class NotNormalClosureShape(Exception):
    pass


@dataclass(frozen=True)
class Cert:
    tag: str  # "seed", "elem", "prod", "inv", "conj", "comm"
    args: tuple = ()
    word: GroupWord | None = None

    # shape rules

    def shape(self) -> str | None:
        t = self.tag
        if t == "seed":
            return "H"
        if t == "elem":
            return "E"
        shapes = [a.shape() for a in self.args]
        if None in shapes:
            return None
        if t == "inv":
            return shapes[0]
        if t == "prod":
            if all(s == "H" for s in shapes):
                return "H"
            if all(s == "E" for s in shapes):
                return "E"
            return "N"
        if t == "conj":
            x, by = shapes
            if x == "H":
                return "H"
            return "E" if (x == "E" and by == "E") else "N"
        if t == "comm":
            x, y = shapes
            if "H" in (x, y):
                return "H"
            return "E" if (x == "E" and y == "E") else "N"
        return None

    def depth(self) -> int:
        if not self.args:
            return 0
        return 1 + max(a.depth() for a in self.args)

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)

    def to_json(self):
        if self.tag == "seed":
            return {"seed": True}
        if self.tag == "elem":
            return {"elem": self.word.to_json()}
        if self.tag in ("conj",):
            return {"conj": self.args[0].to_json(), "by": self.args[1].to_json()}
        if self.tag == "comm":
            return {"comm": [a.to_json() for a in self.args]}
        if self.tag == "prod":
            return {"prod": [a.to_json() for a in self.args]}
        return {"inv": self.args[0].to_json()}

    @classmethod
    def from_json(cls, d):
        if "seed" in d:
            return SEED
        if "elem" in d:
            return Elem(GroupWord.from_json(d["elem"]))
        if "conj" in d:
            return Conj(cls.from_json(d["conj"]), cls.from_json(d["by"]))
        if "comm" in d:
            a, b = d["comm"]
            return Comm(cls.from_json(a), cls.from_json(b))
        if "prod" in d:
            return Prod(*[cls.from_json(a) for a in d["prod"]])
        return Inv(cls.from_json(d["inv"]))


SEED = Cert("seed")


def Elem(w: GroupWord) -> Cert:
    return Cert("elem", (), w)


def Prod(*args) -> Cert:
    return Cert("prod", tuple(args))


def Inv(a: Cert) -> Cert:
    return Cert("inv", (a,))


def Conj(a: Cert, by: Cert) -> Cert:
    """a^by = by^-1 a by."""
    return Cert("conj", (a, by))


def Comm(a: Cert, b: Cert) -> Cert:
    """[a, b] = a^-1 b^-1 a b."""
    return Cert("comm", (a, b))


def syntactic_normal_closure(cert: Cert) -> bool:
    return cert.shape() == "H"


def evaluate(cert: Cert | GroupWord, G: ChevalleyGroup, seed: GroupElement | None = None) -> GroupElement:
    if isinstance(cert, GroupWord):
        return cert.evaluate(G)
    memo: dict = {}

    def ev(c: Cert) -> GroupElement:
        k = id(c)
        if k in memo:
            return memo[k]
        t = c.tag
        if t == "seed":
            if seed is None:
                raise ValueError("certificate has a seed leaf but no seed was given")
            if seed.G != G:
                from .rings import MixedRings

                raise MixedRings("seed lives in %s, not %s" % (seed.G, G))
            v = seed
        elif t == "elem":
            v = c.word.evaluate(G)
        elif t == "prod":
            v = G.identity
            for a in c.args:
                v = v * ev(a)
        elif t == "inv":
            v = ev(c.args[0]).inv()
        elif t == "conj":
            v = ev(c.args[0]).conj(ev(c.args[1]))
        elif t == "comm":
            v = ev(c.args[0]).comm(ev(c.args[1]))
        else:
            raise ValueError(t)
        memo[k] = v
        return v

    return ev(cert)


def check_certificate(cert: Cert, seed: GroupElement, claimed: GroupElement) -> bool:
    """True iff cert is H-shaped and evaluates to claimed.

    Success proves claimed lies in the normal closure of seed under E(R).
    """
    if not syntactic_normal_closure(cert):
        raise NotNormalClosureShape(cert.tag)
    return evaluate(cert, seed.G, seed) == claimed
