import random

import pytest
import sympy

from chevalley.generic import (
    AffineAlgebra,
    GenericPoint,
    adjoint,
    c_element,
    cell_denominator,
    default_parabolic,
    good_element,
    in_cell,
    integer_point,
    peel_upper,
    sl_word,
    sl_x,
    trailing_minors,
    ubl,
    validate_cell_denominator,
    weyl_sl,
)
from chevalley.acceptance import random_word
from chevalley.group import group
from chevalley.rings import Ring
from chevalley.roots import UnsupportedType, build

PHI = build("A2")
ALG = AffineAlgebra(2)


def test_bridge_matches_root_elements():
    for label, p in (("A2", 5), ("A3", 3)):
        G = group(label, Ring.gf(p))
        for r in G.phi.roots:
            for t in (1, 2):
                assert adjoint(G, sl_x(label, r, t).applyfunc(lambda e: e % p)) == G.x(r, t)


def test_bridge_is_a_homomorphism():
    G = group("A2", Ring.gf(7))
    rng = random.Random(0)
    for _ in range(20):
        wd = random_word(G, rng, 6)
        M = sl_word("A2", wd).applyfunc(lambda e: e % 7)
        assert adjoint(G, M) == wd.evaluate(G)


def test_weyl_reps_agree():
    G = group("A2", Ring.gf(5))
    for w in PHI.weyl_group:
        assert adjoint(G, weyl_sl("A2", w).applyfunc(lambda e: e % 5)) == G.weyl_rep(w)


def test_symbolic_layer_is_type_a_only():
    with pytest.raises(UnsupportedType):
        sl_x("B2", (1, 0), 1)


def test_ubl_factorization():
    g = ALG.g
    u, b = ubl(g)
    assert all(u[i, j] == (1 if i == j else 0) for i in range(3) for j in range(3) if i >= j)
    assert all(b[i, j] == 0 for i in range(3) for j in range(3) if i < j)
    assert (u * b - g).applyfunc(sympy.cancel) == sympy.zeros(3, 3)
    # denominators are exactly the trailing minors
    s = sympy.Mul(*trailing_minors(g))
    for e in list(u) + list(b):
        _, den = sympy.fraction(sympy.cancel(e))
        assert sympy.rem(sympy.Poly(s ** 2, *ALG.syms), sympy.Poly(den, *ALG.syms)).is_zero


@pytest.mark.parametrize("word", [(), (0,), (1,), (0, 1), (1, 0), (0, 1, 0)])
def test_cell_denominator_over_gf2(word):
    rep = validate_cell_denominator(PHI.weyl(list(word)), 2, ALG)
    assert rep["points"] == 168 and rep["mismatches"] == []


def test_cell_denominator_over_gf3_identity():
    rep = validate_cell_denominator(PHI.identity, 3, ALG)
    assert rep["points"] == 5616 and rep["mismatches"] == []


def test_h_of_s_is_a_unit():
    pt = GenericPoint(ALG)
    for w in PHI.weyl_group:
        h, fixed = integer_point("A2", w, (1, 0))
        assert h.det() == 1
        assert fixed == (PHI.act(w, (1, 0)) == (1, 0))
        assert pt.substitute(cell_denominator(w, ALG), h) in (1, -1)
        assert in_cell("A2", h.applyfunc(lambda e: e % 5), w, 5)


def test_good_element_on_borel_locus_needs_no_power():
    """With g upper unitriangular, u = g is polynomial and k = 0."""
    restrict = {ALG.syms[3 * i + j]: (1 if i == j else 0) for i in range(3) for j in range(3) if i >= j}
    P = default_parabolic("A2", (1, 0))
    ge = good_element(P, PHI.identity, (1, 0), ALG, restrict=restrict)
    assert ge.k == 0
    assert sl_word("A2", ge.word()) == ge.matrix


def test_peel_upper_round_trip():
    a, b, c = sympy.symbols("a b c")
    M = sl_x("A2", (1, 0), a) * sl_x("A2", (0, 1), b) * sl_x("A2", (1, 1), c)
    params = peel_upper("A2", M)
    out = sympy.eye(3)
    for r, t in params:
        out = out * sl_x("A2", r, t)
    assert (out - M).applyfunc(sympy.expand) == sympy.zeros(3, 3)


def _mod5(q):
    return q.p * pow(q.q, -1, 5) % 5


@pytest.fixture(scope="module")
def ce_identity():
    return c_element(default_parabolic("A2", (1, 0)), PHI.identity, (1, 0), ALG)


def test_c_element_shape(ce_identity):
    ce = ce_identity
    assert ce.good.k == 1 and ce.fixed
    assert all(not sympy.fraction(sympy.cancel(t))[1].free_symbols for _, t in ce.good.params)
    assert sl_word("A2", ce.good.word()).applyfunc(sympy.expand) == ce.good.matrix


def test_c_element_specializations(ce_identity):
    """At h, a(h) = x_alpha(1) and c(h) = [x_-alpha(-1), x_alpha(1)] (x y x^-1 y^-1)."""
    ce = ce_identity
    pt = GenericPoint(ALG)
    h, _ = integer_point("A2", PHI.identity, (1, 0))
    assert pt.substitute(ce.good.matrix, h) == sl_x("A2", (1, 0), 1)
    x, y = sl_x("A2", (-1, 0), -1), sl_x("A2", (1, 0), 1)
    assert pt.substitute(ce.c, h) == x * y * x.inv() * y.inv()


def test_functoriality_gf5(ce_identity):
    """c commutes with specialization: c(M) = M^-1 a(M) M a(M)^-1 over GF(5)."""
    ce = ce_identity
    pt = GenericPoint(ALG)
    G = group("A2", Ring.gf(5))
    s = ce.good.s
    rng = random.Random(9)
    n = 0
    while n < 100:
        M = sl_word("A2", random_word(G, rng, 8)).applyfunc(lambda e: e % 5)
        if pt.substitute(s, M, 5) == 0:
            continue
        n += 1
        aM = pt.substitute(ce.good.matrix, M, 5)
        cM = pt.substitute(ce.c, M, 5)
        direct = (M.adjugate() * aM * M * aM.adjugate()).applyfunc(lambda e: e % 5)
        assert cM == direct
        u, _ = ubl(M)
        ref = u * sl_x("A2", (1, 0), pt.substitute(s, M)) * u.inv()
        assert aM == ref.applyfunc(lambda e: _mod5(sympy.Rational(e)))


def test_c_is_noncentral_at_the_point(ce_identity):
    pt = GenericPoint(ALG)
    h, _ = integer_point("A2", PHI.identity, (1, 0))
    hc = pt.substitute(ce_identity.c, h)
    for p in (2, 3, 5):
        G = group("A2", Ring.gf(p))
        assert not G.is_central(adjoint(G, hc.applyfunc(lambda e: e % p)))
