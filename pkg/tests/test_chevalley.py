import itertools
import random

import numpy as np
import pytest

from chevkit.chevalley import AdjointRep, Chevalley, parse_element, structure_constants
from chevkit.corpus import E73
from chevkit.errors import GroupError
from chevkit.exactfield import GF
from chevkit.opposition import diagram, psi_J
from chevkit.rootsys import build_root_system
from chevkit.weyl import reflection, weyl_from_word

E7 = build_root_system("E", 7)
D4 = build_root_system("D", 4)
A3 = build_root_system("A", 3)


@pytest.fixture(scope="module")
def E7F5():
    return Chevalley(E7, GF(5))


@pytest.mark.parametrize("rs", [A3, D4, build_root_system("E", 6)], ids=lambda r: r.name)
def test_structure_constants(rs):
    c = structure_constants(rs)
    idx = rs.index
    for a, b in itertools.product(range(2 * rs.N), repeat=2):
        s = tuple(x + y for x, y in zip(rs.roots[a], rs.roots[b]))
        assert (c.N[a][b] != 0) == (s in idx)
        assert c.N[a][b] == -c.N[b][a]
    # simply laced: a + b + c = 0 forces N(a,b) = N(b,c) = N(c,a)
    for a, b in itertools.product(range(2 * rs.N), repeat=2):
        s = tuple(-(x + y) for x, y in zip(rs.roots[a], rs.roots[b]))
        if s in idx:
            k = idx[s]
            assert c.N[a][b] == c.N[b][k] == c.N[k][a]


def test_non_simply_laced_rejected():
    with pytest.raises(Exception):
        Chevalley(build_root_system("B", 3), GF(5))


def test_root_elements(E7F5):
    G = E7F5
    a = E7.simple[2]
    assert G.x(a, 0).is_identity()
    assert G.product(G.x(a, 2), G.x(a, 4)) == G.x(a, 1)
    assert G.s_root(a, 1).bruhat_cell() == reflection(E7, E7.roots[a])
    t = G.F(3)
    assert G.s_root(a, t) == G.product(G.x(a, t), G.x(E7.neg(a), -t.inverse()), G.x(a, t))
    with pytest.raises(GroupError):
        G.h_omega(1, 0)


def test_torus_conjugation(E7F5, rng):
    G = E7F5
    for _ in range(30):
        j = rng.randint(1, 7)
        b = rng.randrange(2 * E7.N)
        t, a = G.F(rng.randint(1, 4)), G.F(rng.randint(0, 4))
        h = G.h_omega(j, t)
        lhs = G.product(h, G.x(b, a), h.inverse())
        assert lhs == G.x(b, t ** E7.roots[b][j - 1] * a)


def test_highest_root_central(E7F5, rng):
    G = E7F5
    phi = E7.N - 1
    for _ in range(20):
        u = G.unipotent([(rng.randrange(E7.N), G.F.random(rng)) for _ in range(6)])
        x = G.x(phi, rng.randint(1, 4))
        assert G.product(x, u) == G.product(u, x)


def test_sl2_rewrite():
    G = Chevalley(A3, GF(5))
    a = A3.simple[0]
    # d = 2: x_-a(3) x_a(2) h_{a^vee}(2), checked in SL2 by hand
    got = G.sl2_rewrite(a, 1, 1)
    assert got == G.product(G.x(A3.neg(a), 3), G.x(a, 2), G.h_coroot(a, 2))
    ad = AdjointRep(G.consts, 5)
    assert np.array_equal(ad.of(got), ad.mul(ad.of(G.x(a, 1)), ad.of(G.x(A3.neg(a), 1))))
    assert G.sl2_rewrite(a, 2, 0) == G.x(a, 2)
    assert G.sl2_rewrite(a, 0, 2) == G.x(A3.neg(a), 2)
    with pytest.raises(GroupError):
        G.sl2_rewrite(a, 1, 4)


def test_negative_simple_cell(E7F5):
    G = E7F5
    for j in range(1, 8):
        assert G.x(E7.neg(E7.simple[j - 1]), 2).bruhat_cell() == weyl_from_word(E7, [j])


@pytest.mark.parametrize("rs,p,n", [(A3, 3, 2000), (D4, 5, 10000), (E7, 5, 300)], ids=["A3", "D4", "E7"])
def test_normal_form_identities(rs, p, n):
    G = Chevalley(rs, GF(p))
    rng = random.Random(p)
    e = G.identity()
    for _ in range(n):
        g = G.random_element(rng)
        assert g * e == g == e * g
        assert (g * g.inverse()).is_identity()


@pytest.mark.parametrize("rs,p", [(A3, 3), (A3, 5), (D4, 3), (D4, 5)], ids=str)
def test_associativity(rs, p):
    G = Chevalley(rs, GF(p))
    rng = random.Random(11 * p)
    for _ in range(250):
        a, b, c = (G.random_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("rs", [A3, D4, build_root_system("E", 6)], ids=lambda r: r.name)
def test_adjoint_matrices_are_a_homomorphism(rs):
    """The normal forms multiply like their adjoint matrices (independent of the collection code)."""
    p = 5
    G = Chevalley(rs, GF(p))
    ad = AdjointRep(G.consts, p)
    rng = random.Random(3)
    for _ in range(60):
        g, h = G.random_element(rng), G.random_element(rng)
        assert np.array_equal(ad.of(g * h), ad.mul(ad.of(g), ad.of(h)))


def test_s_conjugation_signs():
    """s_i x_b(t) s_i^-1 = x_{s_i b}(eta t), also as adjoint matrices."""
    G = Chevalley(D4, GF(7))
    ad = AdjointRep(G.consts, 7)
    for i in range(1, 5):
        s = G.s(i)
        S = ad.of(s)
        for b in range(2 * D4.N):
            c = G.product(s, G.x(b, 1), s.inverse())
            img = D4.reflect[D4.simple[i - 1]][b]
            expect = G.x(img, G.consts.eta[i - 1][b])
            assert c == expect
            lhs = ad.mul(ad.mul(S, ad.of(G.x(b, 1))), ad.of(s.inverse()))
            assert np.array_equal(lhs, ad.of(expect))


def test_parse_examples(E7F5):
    G = E7F5
    g = parse_element(G, "x[(0000001)](1)")
    assert g == G.x("(0000001)", 1)
    g = parse_element(G, "x[(2234321)](1) h[w7](3)")
    assert g == G.product(G.x(E7.N - 1, 1), G.h_omega(7, 3))
    # s_1^2 = h_{alpha_1^vee}(-1), trivial only in characteristic 2
    assert parse_element(G, "s[1] s[1]") == parse_element(G, "h[(1000000)](-1)")
    assert parse_element(G, "s[1] s[1] s[1] s[1]").is_identity()
    assert parse_element(Chevalley(E7, GF(2)), "s[1] s[1]").is_identity()


def test_print_parse_round_trip(rng):
    for rs, p in ((D4, 5), (E7, 7)):
        G = Chevalley(rs, GF(p))
        for _ in range(500):
            g = G.random_element(rng)
            assert parse_element(G, str(g)) == g


def test_cell_length_contract():
    """Conjugates of a domestic E7;3 element never leave the cells of length <= l(w_{S-J} w0).

    theta is of the normal form x_phi(b) s_phi^-1 h with both forcing relations
    and a split polynomial, which is the domestic case; a random u and h need not be.
    """
    F = GF(5)
    m = E73(F)
    G = m.G
    M = diagram("E7;3").M
    rng = random.Random(5)
    for _ in range(10):
        t = [F(rng.randint(1, 4)) for _ in range(3)]
        y = F(rng.randint(1, 4))
        theta = m.theta_a(-y - (t[2] * y).inverse(), t)
        assert theta.bruhat_cell().length == M
        for _ in range(10):
            g = G.random_element(rng, length=8)
            assert theta.conjugate(g).bruhat_cell().length <= M


def test_cell_length_can_exceed_for_generic_u():
    """Without the forcing relations the bound fails: the form alone is not enough."""
    F = GF(5)
    m = E73(F)
    rng = random.Random(1)
    t = [F(2), F(3), F(4)]
    theta = m.theta((F(1), F(1), F(1)), t)
    worst = max(theta.conjugate(m.G.random_element(rng, length=8)).bruhat_cell().length for _ in range(40))
    assert worst > diagram("E7;3").M
