import random

import pytest

from chevalley.acceptance import random_element
from chevalley.decomposition import gauss_decompose
from chevalley.extraction import (
    CentralInput,
    HypothesisFails,
    NotUnderRadical,
    Parabolic,
    escape_centralizer,
    extract,
    extract_from_cell,
    extract_from_parabolic,
    extract_under_radical,
    parabolic_scan,
    standard,
    under_radical,
)
from chevalley.group import group
from chevalley.normal import congruence, elementary
from chevalley.rings import Ring, ideal


def _ok(res, h):
    assert res.verify(h)
    assert h.G.x(res.root, res.t) != h.G.identity
    return res


def test_parabolic_roots_and_membership():
    G = group("B2", Ring.gf(3))
    rng = random.Random(1)
    for P in parabolic_scan(G):
        assert P.is_proper
        assert set(P.roots) == set(P.levi_roots) | set(P.radical_roots)
        for r in P.roots:
            assert P.contains(G.x(r, 1))
            assert P.in_radical(G.x(r, 1)) == (r in P.radical_roots)
        for r in set(G.phi.roots) - set(P.roots):
            assert not P.contains(G.x(r, 1))
        # random products of root elements in P stay in P
        for _ in range(10):
            x = G.identity
            for r in rng.choices(P.roots, k=6):
                x = x * G.x(r, rng.randrange(1, 3))
            assert P.contains(x)
    assert len({P.rootset() for P in parabolic_scan(G)}) == len(list(parabolic_scan(G)))


def test_borel_depth_is_lower_central_index():
    G = group("G2", Ring.gf(5))
    B = standard(G, ())
    for r in G.phi.positive:
        assert B.borel_depth(G.x(r, 1)) == G.phi.height(r) - 1
    assert B.borel_depth(G.identity) == float("inf")
    assert B.borel_depth(G.x(G.phi.negative[0], 1)) is None


def test_escape_centralizer():
    G = group("A2", Ring.gf(3))
    a = G.x((1, 0), 1)
    P = escape_centralizer(a, (1, 1))
    assert P.contains(a)
    with pytest.raises(HypothesisFails) as e:
        escape_centralizer(a, (-1, 0))
    assert e.value.witness[0] == (-1, 0)


def test_parabolic_descent():
    G = group("A3", Ring.gf(2))
    P = standard(G, ())
    h = G.x((1, 0, 0), 1) * G.x((0, 1, 0), 1) * G.x((0, 0, 1), 1)
    _ok(extract_from_parabolic(h, P), h)
    G5 = group("A2", Ring.gf(5))
    h = G5.torus((2, 1))
    res = _ok(extract(h), h)
    assert res.root in G5.phi.roots


@pytest.mark.parametrize("label,p", [("A2", 3), ("B2", 3), ("G2", 5)])
def test_extract_from_cell_random(label, p):
    G = group(label, Ring.gf(p))
    rng = random.Random(7)
    n = 0
    while n < 40:
        h = random_element(G, rng, 8)
        if G.is_central(h):
            continue
        n += 1
        _ok(extract_from_cell(h, gauss_decompose(h, "U-Bw")), h)


def test_b2_gf3_500_random():
    G = group("B2", Ring.gf(3))
    rng = random.Random(11)
    E = elementary(G).elements
    for _ in range(500):
        h = G.element(E[rng.randrange(len(E))])
        if G.is_central(h):
            continue
        _ok(extract(h), h)


def test_both_cell_branches_occur():
    G = group("A2", Ring.gf(3))
    rng = random.Random(3)
    seen = set()
    for h in [G.x((1, 0), 1), G.x((1, 1), 2), G.x((-1, -1), 1)] + [random_element(G, rng) for _ in range(100)]:
        if G.is_central(h):
            continue
        res = _ok(extract(h), h)
        seen.add(any("h^b" in m for m in res.trace))
    assert seen == {True, False}


def test_under_radical_cases():
    G = group("A2", Ring.mod(4))
    h = G.x((1, 0), 2)
    assert under_radical(h)
    _ok(extract_under_radical(h), h)
    K, _ = congruence(G, ideal(G.ring, 2))
    for k in list(K)[::17]:
        if not G.is_central(k):
            _ok(extract(k), k)
    with pytest.raises(NotUnderRadical):
        extract_under_radical(G.x((1, 0), 1))
    G9 = group("A2", Ring.mod(9))
    h = G9.x((1, 0), 3)
    res = _ok(extract(h), h)
    assert G9.ring.reduce(res.t) % 3 == 0


def test_central_input():
    for G in (group("A2", Ring.gf(2)), group("A2", Ring.mod(4))):
        with pytest.raises(CentralInput):
            extract(G.identity)
    G = group("A2", Ring.gf(7))
    with pytest.raises(CentralInput):
        extract(G.x((1, 0), 0))


def test_result_json():
    G = group("A2", Ring.gf(3))
    h = G.x((0, 1), 1) * G.x((-1, 0), 2)
    d = extract(h).to_json()
    assert set(d) == {"root", "t", "certificate", "trace"}


def test_parabolic_json():
    G = group("A2", Ring.gf(3))
    P = Parabolic(G, frozenset({0}), G.phi.weyl([1]), -1)
    assert P.to_json() == {"subset": [1], "w": [2], "sign": -1}
