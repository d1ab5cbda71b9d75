import random

import pytest

from chevkit import linalg as la
from chevkit.corpus import classify_samples
from chevkit.d4rep import (ROOT_MATRICES, D4Model, bil, char_poly, classify_theta, form_preserved,
                           is_standard_basis, projectively_equal, quad, theta_charpoly_expected)
from chevkit.errors import GroupError, RootError
from chevkit.exactfield import GF

F5, F7, F101 = GF(5), GF(7), GF(101)


def E(F, i, j):
    M = la.zeros(F, 8)
    M[i - 1][j - 1] = F.one
    return M


@pytest.fixture(scope="module")
def m5():
    return D4Model(F5, "D4")


def test_table_matrices(m5):
    F = F5
    a = F(3)
    I = la.identity(F, 8)
    # x_{e1-e2}(a) = I + a E21 - a E87, x_{e3+e4}(a) = I + a E53 - a E64
    assert m5.x((1, 0, 0, 0), a) == la.add(I, la.add(la.scale(E(F, 2, 1), a), la.scale(E(F, 8, 7), -a)))
    assert m5.x((0, 0, 0, 1), a) == la.add(I, la.add(la.scale(E(F, 5, 3), a), la.scale(E(F, 6, 4), -a)))
    assert m5.x((1, 2, 1, 1), 0) == I
    with pytest.raises(RootError):
        m5.x((2, 0, 0, 0), 1)


def test_forms(m5, rng):
    F = F5
    for lab in list(ROOT_MATRICES) + [tuple(-c for c in l) for l in ROOT_MATRICES]:
        assert form_preserved(m5.x(lab, F.random(rng)))
    assert form_preserved(la.identity(F, 8))
    assert not form_preserved(la.add(la.identity(F, 8), E(F, 1, 1)))
    # f is the quadratic form of (,)
    for _ in range(20):
        v = [F.random(rng) for _ in range(8)]
        assert bil(v, v) == 2 * quad(v)


def test_generators_match_bracket(m5):
    """Matrices of opposite root groups generate sl2 copies: [X_a, X_-a] is diagonal."""
    for lab in ROOT_MATRICES:
        X, Y = m5.X(lab), m5.X(tuple(-c for c in lab))
        C = la.sub(la.mul(X, Y), la.mul(Y, X))
        assert all(C[i][j] == 0 for i in range(8) for j in range(8) if i != j)
        assert any(C[i][i] != 0 for i in range(8))


def test_char_poly_examples():
    F = F7
    lam1 = [-F.one, F.one]
    assert char_poly(la.identity(F, 8)) == la.poly_pow(lam1, 8)
    z = F(3)
    zi = z.inverse()
    D = la.diag(F, [F.one, zi, F.one, z, zi, F.one, z, F.one])
    expect = la.poly_mul(la.poly_pow(lam1, 4),
                         la.poly_mul(la.poly_pow([-z, F.one], 2), la.poly_pow([-zi, F.one], 2)))
    assert char_poly(D) == expect


def test_theta_char_poly_and_form():
    F = F101
    rng = random.Random(101)
    m = D4Model(F, "D4")
    for _ in range(100):
        a, b, c = (F.random(rng) for _ in range(3))
        ts = [F(rng.randint(1, 100)) for _ in range(4)]
        M = m.theta_E74(a, b, c, *ts)
        assert char_poly(M) == theta_charpoly_expected(a, b, c, *ts)
        assert form_preserved(M)


def test_theta_trivial_parameters(m5):
    F = F5
    assert m5.theta_E74(0, 0, 0, 1, 1, 1, 1) == m5.n_matrix(m5.longest_word())
    with pytest.raises(GroupError):
        m5.theta_E74(1, 1, 1, 0, 1, 1, 1)


def test_matrices_follow_group_law():
    """The 8-dim model is a projective representation of the D4 Chevalley group."""
    m = D4Model(F7, "D4")
    G = m.G
    rng = random.Random(4)
    for _ in range(40):
        g, h = G.random_element(rng), G.random_element(rng)
        lhs = m.of(g * h, similitude=True)
        rhs = la.mul(m.of(g, similitude=True), m.of(h, similitude=True))
        assert projectively_equal(lhs, rhs)


def _sample(F, branch, seed):
    return classify_samples(F, random.Random(seed), branch, 1)[0]


def test_classify_split_branch():
    # z != +-1 over F7 lands in class (3), conjugate to h_{alpha^vee}(z)
    r = classify_theta(F7, *_sample(F7, "z!=+-1", 1))
    assert r.tag == "(3)" and r.verified
    assert r.param not in (F7.one, -F7.one)
    assert is_standard_basis(r.g) or r.factor is not None


def test_classify_unipotent_branch():
    params = next(p for p in classify_samples(F5, random.Random(2), "z=1,q!=0,r!=0", 50) if p[2] != 0)
    r = classify_theta(F5, *params)
    t1, c = params[3], params[2]
    assert r.tag == "(2)" and r.verified
    assert r.param == -t1 * c * c


def test_classify_minus_one_a_zero():
    """a = 0 gives h_0001(-1) only when also c = 0; otherwise class (4).

    The class is cross-checked by the dimension of the (-1)-eigenspace:
    4 for the semisimple h_0001(-1), 2 for x_phi(1) h_phi(-1).
    """
    m = D4Model(F7, "D4")
    seen = set()
    for params in classify_samples(F7, random.Random(3), "z=-1", 300):
        if params[0] != 0:
            continue
        r = classify_theta(F7, *params, model=m)
        assert r.verified
        dim = 8 - la.rank(la.add(m.theta_E74(*params), la.identity(F7, 8)))
        if params[2] == 0:
            assert r.tag == "(3)" and r.param == -F7.one and dim == 4
        else:
            assert r.tag == "(4)" and dim == 2
        seen.add(r.tag)
    assert seen == {"(3)", "(4)"}


@pytest.mark.parametrize("branch", ["z=1,q=0", "z=1,r=0", "z=-1"])
def test_classify_verified_by_remultiplication(branch):
    for F in (F5, F7):
        for params in classify_samples(F, random.Random(7), branch, 5):
            r = classify_theta(F, *params)
            assert r.tag in ("(1)", "(2)", "(3)", "(4)") and r.verified


def test_classify_irreducible():
    r = classify_theta(F5, *_sample(F5, "irreducible", 4))
    assert r.tag == "no fixed chamber"
