import itertools
import random

import pytest

from chevalley.acceptance import random_word
from chevalley.decomposition import (
    NotAField,
    big_cell_factor,
    bruhat_cell,
    gauss_decompose,
    in_big_cell,
    peel_unipotent,
)
from chevalley.group import GroupWord, NotUnipotent, X, group
from chevalley.normal import SubgroupHandle, congruence, elementary
from chevalley.rings import Ring, ideal


def _borel_lists(G):
    U = list(SubgroupHandle(G, [G.x(r, 1) for r in G.phi.positive]))
    Um = list(SubgroupHandle(G, [G.x(r, 1) for r in G.phi.negative]))
    units = G.ring.units()
    T = [G.torus(c) for c in itertools.product(units, repeat=G.phi.rank)]
    return U, T, Um


def test_big_cell_matches_enumeration_a2_gf2():
    G = group("A2", Ring.gf(2))
    U, T, Um = _borel_lists(G)
    cell = {(u * t * v).key() for u in U for t in T for v in Um}
    for x in elementary(G):
        assert in_big_cell(x) == (x.key() in cell)


def test_big_cell_opposite_orientation_gf3():
    G = group("A2", Ring.gf(3))
    U, T, Um = _borel_lists(G)
    cell = {(v * t * u).key() for u in U for t in T for v in Um}
    rng = random.Random(0)
    E = elementary(G).elements
    for m in rng.sample(E, 600):
        x = G.element(m)
        assert (big_cell_factor(x, "U-Bw") is not None) == (x.key() in cell)


def test_big_cell_examples():
    G = group("A2", Ring.gf(3))
    assert in_big_cell(G.identity)
    for i in G.phi.simple:
        assert not in_big_cell(G.weyl_rep(G.phi.weyl([G.phi.simple.index(i)])))
    G4 = group("A2", Ring.mod(4))
    K, _ = congruence(G4, ideal(G4.ring, 2))
    assert len(K) == 256 and all(in_big_cell(h) for h in K)


def test_gauss_examples():
    G = group("B2", Ring.gf(5))
    f = gauss_decompose(G.identity)
    assert f.w == G.phi.identity and f.u.is_identity() and f.b.is_identity()
    w0 = G.phi.longest()
    f = gauss_decompose(G.weyl_rep(w0))
    assert f.w == w0 and f.u.is_identity() and f.b.is_identity()
    with pytest.raises(NotAField):
        gauss_decompose(group("A2", Ring.mod(6)).identity)


@pytest.mark.parametrize("label,p", [("A2", 2), ("A2", 3), ("B2", 3)])
def test_gauss_cells_cover(label, p):
    G = group(label, Ring.gf(p))
    E = elementary(G)
    for x in (E if len(E) < 6000 else list(E)[::9]):
        for orient in ("UBw", "U-Bw"):
            assert gauss_decompose(x, orient).product() == x


def test_peel_examples():
    G = group("B2", Ring.mod(9))
    assert peel_unipotent(G.identity) == []
    assert peel_unipotent(G.x((1, 0), 3)) == [((1, 0), 3)]
    m = G.x((1, 0), 1) * G.x((0, 1), 1)
    params = peel_unipotent(m)
    assert G.unipotent(params) == m and len(G.phi.positive) == 4
    with pytest.raises(NotUnipotent):
        peel_unipotent(G.x((-1, 0), 1))


def test_peel_round_trip_random():
    G = group("G2", Ring.mod(9))
    rng = random.Random(2)
    for _ in range(50):
        params = [(r, rng.randrange(9)) for r in rng.sample(G.phi.positive, 4)]
        m = G.unipotent(params)
        assert G.unipotent(peel_unipotent(m)) == m


def test_bruhat_cells_against_double_cosets():
    G = group("A2", Ring.gf(2))
    U, T, _ = _borel_lists(G)
    B = [u * t for u in U for t in T]
    assert len(B) == 8
    cells = {}
    for w in G.phi.weyl_group:
        wd = G.weyl_rep(w)
        for b1 in B:
            for b2 in B:
                cells.setdefault((b1 * wd * b2).key(), set()).add(w.word)
    assert all(len(v) == 1 for v in cells.values())
    E = elementary(G)
    assert len(cells) == len(E) == 168
    for x in E:
        assert bruhat_cell(x).word in cells[x.key()]
    for w in G.phi.weyl_group:
        assert sum(1 for v in cells.values() if w.word in v) == 2 ** w.length * 8


def test_bruhat_examples():
    G = group("A2", Ring.gf(3))
    assert bruhat_cell(G.identity) == G.phi.identity
    for k, i in enumerate(G.phi.simple):
        a = G.phi.roots[i]
        assert bruhat_cell(G.x(G.phi.neg(a), 1)) == G.phi.weyl([k])


def test_bruhat_cell_inside_gauss_cell():
    G = group("A2", Ring.gf(3))
    rng = random.Random(4)
    from chevalley.decomposition import factor_in_cell

    for _ in range(200):
        x = random_word(G, rng, 8).evaluate(G)
        assert factor_in_cell(x, bruhat_cell(x), "UBw") is not None


def test_factorization_json():
    G = group("A2", Ring.gf(5))
    x = GroupWord((X((1, 0), 2), X((0, -1), 3))).evaluate(G)
    d = gauss_decompose(x).to_json()
    assert set(d) == {"orientation", "w", "u", "torus", "v"}
