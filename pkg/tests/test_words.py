import random

import pytest

from chevalley.group import GroupWord, X, group
from chevalley.normal import normal_closure
from chevalley.rings import MixedRings, Ring
from chevalley.words import (
    SEED,
    Cert,
    Comm,
    Conj,
    Elem,
    Inv,
    NotNormalClosureShape,
    Prod,
    check_certificate,
    evaluate,
    syntactic_normal_closure,
)


def x(r, t):
    return Elem(GroupWord((X(r, t),)))


def test_evaluate_examples():
    G = group("A2", Ring.gf(3))
    assert evaluate(GroupWord(()), G).is_identity()
    assert evaluate(Comm(x((1, 0), 1), SEED), G, G.identity).is_identity()
    h = G.x((1, 1), 2) * G.x((-1, 0), 1)
    assert check_certificate(SEED, h, h)
    assert check_certificate(Conj(SEED, x((1, 0), 1)), h, h.conj(G.x((1, 0), 1)))
    with pytest.raises(MixedRings):
        evaluate(SEED, group("A2", Ring.gf(5)), h)


def test_shapes():
    e = x((1, 0), 1)
    assert SEED.shape() == "H" and e.shape() == "E"
    assert Prod(SEED, e).shape() == "N"
    assert Conj(SEED, Prod(SEED, e)).shape() == "H"
    assert Comm(e, e).shape() == "E"
    assert Inv(Prod(SEED, SEED)).shape() == "H"
    assert not syntactic_normal_closure(Prod(SEED, e))
    h = group("A2", Ring.gf(3)).x((1, 0), 1)
    with pytest.raises(NotNormalClosureShape):
        check_certificate(Prod(SEED, e), h, h)


def test_json_round_trip():
    c = Comm(Conj(x((1, 0), 2), Inv(x((0, 1), 1))), Prod(SEED, Inv(SEED)))
    assert Cert.from_json(c.to_json()) == c


def test_certified_values_fill_the_normal_closure():
    """A2 over GF(2): breadth-first certificates from a seed reach exactly <h>^E."""
    G = group("A2", Ring.gf(2))
    rng = random.Random(5)
    for _ in range(3):
        h = GroupWord(tuple(X(rng.choice(G.phi.roots), 1) for _ in range(5))).evaluate(G)
        reach = {h.key(): (h, SEED)}
        frontier = [(h, SEED)]
        gens = [(G.x(r, 1), x(r, 1)) for r in G.phi.roots]
        while frontier:
            nxt = []
            for v, c in frontier:
                cands = [(v.conj(g), Conj(c, cg)) for g, cg in gens]
                cands += [(v * w, Prod(c, cw)) for w, cw in list(reach.values())[:40]]
                for val, cert in cands:
                    if val.key() not in reach:
                        reach[val.key()] = (val, cert)
                        nxt.append((val, cert))
            frontier = nxt
        H = normal_closure(G, [h])
        assert set(reach) == set(H.index)
        for val, cert in list(reach.values())[::7]:
            assert check_certificate(cert, h, val)
            assert val in H
