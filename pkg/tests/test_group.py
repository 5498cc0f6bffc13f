import itertools
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from chevalley.group import GroupWord, OppositeRoots, X, build_table, group, integer_group, mat_inv, word
from chevalley.rings import NotAUnit, Ring, Unsupported
from chevalley.roots import build

LABELS = ["A2", "A3", "B2", "B3", "C3", "G2"]


@pytest.mark.parametrize("label", LABELS)
def test_structure_constants(label):
    phi = build(label)
    N = build_table(label).N
    for (a, b), v in N.items():
        p, _ = phi.alpha_string(a, b)
        assert abs(v) == p + 1
        assert N[(b, a)] == -v
    pairs = {(a, b) for a in phi.roots for b in phi.roots if phi.root_sum(a, b) is not None}
    assert set(N) == pairs


def test_table_examples():
    N = build_table("A2").N
    assert abs(N[((1, 0), (0, 1))]) == 1
    assert 3 in {abs(v) for v in build_table("G2").N.values()}


@pytest.mark.parametrize("label", LABELS)
def test_exponential_matches_rational_oracle(label):
    """x_a(t) = exp(t ad e_a), recomputed in exact rationals by sympy."""
    GZ = integer_group(label)
    for r in GZ.phi.roots[:4]:
        A = sympy.Matrix(GZ.ad[r].tolist())
        t = sympy.Symbol("t")
        E = (t * A).exp()
        for tv in (1, 2, -3):
            assert (np.array(E.subs(t, tv).tolist(), dtype=object) == GZ.x(r, tv).m).all()


def test_g2_nilpotency():
    GZ = integer_group("G2")
    for r in GZ.phi.roots:
        A = GZ.ad[r]
        assert (np.linalg.matrix_power(A.astype(np.int64), 4) == 0).all()
        assert GZ.nilpotency_degree(r) <= 4


@pytest.mark.parametrize("label", LABELS)
def test_positive_roots_upper_unitriangular(label):
    G = group(label, Ring.gf(5))
    for r in G.phi.positive:
        m = G.x(r, 3).m
        assert (np.tril(m, -1) == 0).all() and (np.diag(m) == 1).all()
        m = G.x(G.phi.neg(r), 3).m
        assert (np.triu(m, 1) == 0).all()


def test_x_basics():
    G = group("A2", Ring.mod(4))
    for r in G.phi.roots:
        assert G.x(r, 0).is_identity()
        assert G.x(r, 1) * G.x(r, 1) == G.x(r, 2)


def test_w_and_h():
    GZ = integer_group("B2")
    roots = [k for k, b in enumerate(GZ.basis) if b[0] != "h"]
    for r in GZ.phi.roots:
        # on root spaces w_a(1) is a signed permutation; the Cartan block may hold 2s
        w = GZ.w(r, 1).m[np.ix_(roots, roots)].astype(np.int64)
        assert set(np.unique(w)) <= {-1, 0, 1}
        assert (np.abs(w).sum(axis=0) == 1).all()
        assert GZ.h(r, 1).is_identity()
    G = group("B2", Ring.gf(5))
    for r in G.phi.roots:
        for e in (1, 2, 3, 4):
            w = G.w(r, e)
            assert w * w == G.h(r, G.ring.neg(1)) * G.h(r, 1)
    with pytest.raises(NotAUnit):
        group("A2", Ring.mod(4)).w((1, 0), 2)


def test_w_normalizes_torus():
    G = group("A2", Ring.gf(5))
    t = G.torus((2, 3))
    for r in G.phi.roots:
        w = G.w(r, 1)
        c = t.conj(w)
        assert G.torus_chars(c) is not None


def test_weyl_reps():
    G = group("A2", Ring.gf(5))
    phi = G.phi
    assert G.weyl_rep(phi.identity).is_identity()
    for i, s in enumerate(phi.simple):
        assert G.weyl_rep(phi.weyl([i])) == G.w(phi.roots[s], 1)
    w0 = phi.longest()
    simple = [phi.roots[i] for i in phi.simple]
    assert len(w0.word) == 3
    assert G.weyl_rep(w0) == GroupWord(tuple(G.weyl_word(w0))).evaluate(G)
    prod = G.identity
    for i in reversed(w0.word):
        prod = prod * G.w(simple[i], 1)
    assert G.weyl_rep(w0) == prod


def test_conj_root_examples():
    GZ = integer_group("G2")
    phi = GZ.phi
    for r in phi.roots:
        assert GZ.conj_root(phi.identity, r) == (r, 1)
    for i, s in enumerate(phi.simple):
        a = phi.roots[s]
        wd = GZ.w(a, 1)
        for r in (1, 2, -5):
            assert GZ.x(a, r).conj(wd) == GZ.x(phi.neg(a), -r)
    for w in phi.weyl_group:
        for r in phi.roots:
            assert GZ.conj_root(w, r)[1] in (1, -1)


@pytest.mark.parametrize("label", LABELS)
def test_first_order_commutator_coefficient(label):
    """C_11 = N_ab: the first-order term of x^-1 y^-1 x y is st[e_a, e_b]."""
    GZ = integer_group(label)
    N = GZ.table.N
    phi = GZ.phi
    for a, b in itertools.permutations(phi.roots, 2):
        if b == phi.neg(a):
            continue
        co = {(i, j): C for i, j, _, C in GZ.commutator_coeffs(a, b)}
        assert co.get((1, 1), 0) == N.get((a, b), 0)


def test_commutator_expand_examples():
    G = group("A2", Ring.gf(7))
    wd = G.commutator_expand((1, 0), (0, 1), 1, 1)
    assert len(wd) == 1 and wd.letters[0].root == (1, 1) and wd.letters[0].param in (1, 6)
    assert len(G.commutator_expand((1, 0), (1, 1), 2, 3)) == 0
    B = group("B2", Ring.gf(7))
    # B2: (1,0) long, (0,1) short
    wd = B.commutator_expand((0, 1), (1, 0), 1, 1)
    assert sorted(g.root for g in wd) == [(1, 1), (1, 2)]
    with pytest.raises(OppositeRoots):
        G.commutator_expand((1, 0), (-1, 0), 1, 1)


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_commutator_formula_gf7_exhaustive(label):
    G = group(label, Ring.gf(7))
    phi = G.phi
    for a, b in itertools.permutations(phi.roots, 2):
        if b == phi.neg(a):
            continue
        for t in range(1, 7):
            for u in range(1, 7):
                assert G.x(a, t).comm(G.x(b, u)) == G.commutator_expand(a, b, t, u).evaluate(G)


def test_is_central():
    G = group("A2", Ring.gf(3))
    assert G.is_central(G.identity)
    assert not G.is_central(G.x((1, 0), 1))
    for chars in itertools.product((1, 2), repeat=2):
        t = G.torus(chars)
        assert G.is_central(t) == (chars == (1, 1))
    with pytest.raises(Unsupported):
        integer_group("A2").is_central(integer_group("A2").identity)


@pytest.mark.parametrize("n", [4, 5, 9, 12])
def test_mat_inv_against_sympy(n):
    rng = random.Random(n)
    G = group("A2", Ring.mod(n))
    for _ in range(10):
        x = GroupWord(tuple(X(rng.choice(G.phi.roots), rng.randrange(1, n)) for _ in range(6))).evaluate(G)
        oracle = sympy.Matrix(x.m.tolist()).inv_mod(n)
        assert (mat_inv(x.m, n) == np.array(oracle.tolist(), dtype=np.int64)).all()


def test_lazy_inverse_consistent():
    G = group("B2", Ring.gf(5))
    x = G.x((1, 0), 2) * G.x((0, 1), 3) * G.w((1, 1), 2)
    y = G.element(x.m.copy())
    assert x.inv() == y.inv()
    assert (x * x.inv()).is_identity()


@given(st.sampled_from(["A2", "B2", "G2"]), st.lists(st.tuples(st.integers(0, 11), st.integers(1, 4)), min_size=1, max_size=6), st.lists(st.tuples(st.integers(0, 11), st.integers(1, 4)), min_size=1, max_size=6))
def test_word_evaluation_is_homomorphism(label, w1, w2):
    G = group(label, Ring.gf(5))
    roots = G.phi.roots

    def mk(ls):
        return GroupWord(tuple(X(roots[i % len(roots)], t) for i, t in ls))

    a, b = mk(w1), mk(w2)
    assert (a * b).evaluate(G) == a.evaluate(G) * b.evaluate(G)
    assert a.inv().evaluate(G) == a.evaluate(G).inv()
    assert GroupWord(()).evaluate(G).is_identity()


@given(st.sampled_from(["A2", "B2", "G2"]), st.integers(0, 10 ** 6))
def test_commutator_identity(label, seed):
    rng = random.Random(seed)
    G = group(label, Ring.gf(5))

    def rand():
        return GroupWord(tuple(X(rng.choice(G.phi.roots), rng.randrange(1, 5)) for _ in range(3))).evaluate(G)

    x, y, z = rand(), rand(), rand()
    zi = z.inv()
    assert x.comm(y * z).conj(zi) == zi.comm(x) * x.comm(y)


def test_groupword_json_round_trip():
    w = word(X((1, 0), 2), X((0, -1), 3).inv())
    assert GroupWord.from_json(w.to_json()) == w
    assert w.to_json()[0] == {"g": "x", "root": [1, 0], "t": "2"}
