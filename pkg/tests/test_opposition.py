import itertools
from collections import Counter

import pytest

from chevkit.chevalley import Chevalley, parse_element
from chevkit.corpus import E73, E74
from chevkit.errors import BudgetError, GroupError, RootError
from chevkit.exactfield import GF
from chevkit.opposition import (MAGIC_WORDS, chamber_count, diagram, displacement, psi_J,
                                spectrum_bruteforce, weyl_elements)
from chevkit.rootsys import build_root_system
from chevkit.weyl import identity, longest, reflection

E7 = build_root_system("E", 7)
A2 = build_root_system("A", 2)
A3 = build_root_system("A", 3)
D4 = build_root_system("D", 4)


def test_psi_e73():
    P = psi_J(E7, {1, 6, 7})
    assert P.type == "A1xA1xA1"
    labels = {E7.label(b) for b in P.simple}
    assert labels == {"2234321", "0112221", "0000001"}


def test_psi_e74():
    P = psi_J(E7, {1, 3, 4, 6})
    assert P.type == "D4"
    assert len(P.positive) == 12
    # phi_D6, alpha_1, phi_D4, alpha_3 with alpha_1 the branch node
    assert [E7.label(b) for b in P.simple] == ["0112221", "1000000", "0112100", "0010000"]
    # the twelve roots carried by u' in the E7;4 normal form
    assert set(P.positive) == set(E74(GF(5)).roots)


def test_psi_empty():
    assert psi_J(E7, set()).positive == []
    with pytest.raises(RootError):
        psi_J(E7, {8})


def test_diagram_lengths():
    # M = l(w_{S-J} w0) and the highest roots multiply to the same element
    for name in ("E7;3", "E7;4"):
        d = diagram(name)
        prod = identity(E7)
        for b in d.sequence:
            prod = prod * reflection(E7, E7.roots[b])
        assert prod == d.target
        assert d.M == d.target.length


def test_displacement_examples():
    G = Chevalley(A3, GF(3))
    e = G.identity()
    assert displacement(G.x(0, 2), e).is_identity()
    phi = A3.N - 1
    assert displacement(G.x(A3.neg(phi), 1), e) == reflection(A3, A3.roots[phi])
    with pytest.raises(GroupError):
        displacement(e, Chevalley(A2, GF(3)).identity())


def test_displacement_fixed_chamber_e73():
    F = GF(7)
    m = E73(F)
    t = [F(2), F(3), F(5)]
    y = F(4)
    theta = m.theta_a(-y - (t[2] * y).inverse(), t)
    assert displacement(theta, m.g1(y, t)).is_identity()


def test_chamber_counts():
    assert chamber_count(A2, 2) == 21
    assert chamber_count(A3, 2) == 315
    assert chamber_count(A3, 3) == 1 * 4 * 13 * 40
    assert len(weyl_elements(D4)) == 192


def _oracle_spectrum(theta):
    """Displacements through group collection over chambers u n_w B, u in U_w."""
    G = theta.G
    rs = G.rs
    els = list(G.F.elements())
    out = Counter()
    for w in weyl_elements(rs):
        roots = w.inverse().inversion_set()
        nw = G.n(w)
        for ts in itertools.product(els, repeat=len(roots)):
            g = G.product(G.unipotent(list(zip(roots, ts))), nw)
            out[displacement(theta, g)] += 1
    return out


@pytest.mark.parametrize("rs,q,text", [
    (A2, 2, "x[(11)](1)"), (A2, 3, "s[1]"), (A3, 2, "x[(111)](1)"), (A3, 2, "s[2] x[(100)](1)")])
def test_spectrum_matches_collection(rs, q, text):
    G = Chevalley(rs, GF(q))
    theta = parse_element(G, text)
    rep = spectrum_bruteforce(rs, q, theta)
    assert rep.counts == dict(_oracle_spectrum(theta))
    assert rep.total == rep.chambers == chamber_count(rs, q)


def test_spectrum_a3_central_elation():
    G = Chevalley(A3, GF(2))
    rep = spectrum_bruteforce(A3, 2, parse_element(G, "x[(111)](1)"))
    assert rep.domestic
    assert rep.circled == [1, 3]
    assert rep.max_length == 5
    assert rep.max_elements == [longest(A3, [2]) * longest(A3)]
    assert rep.uncapped_risk


def test_spectrum_identity_fixes_everything():
    G = Chevalley(A2, GF(3))
    rep = spectrum_bruteforce(A2, 3, G.identity())
    assert rep.fixed_chambers == rep.chambers == 52
    assert rep.domestic and rep.circled == []


def test_spectrum_a3_f3_not_domestic():
    G = Chevalley(A3, GF(3))
    phi = A3.N - 1
    theta = G.product(G.x(phi, 1), G.h_coroot(phi, -1))
    rep = spectrum_bruteforce(A3, 3, theta, jobs=2)
    assert not rep.domestic
    assert sum(rep.counts.values()) == chamber_count(A3, 3)


def test_spectrum_limits():
    G = Chevalley(A3, GF(3))
    with pytest.raises(BudgetError):
        spectrum_bruteforce(A3, 3, G.identity(), budget=100)
    with pytest.raises(RootError):
        spectrum_bruteforce(E7, 3, Chevalley(E7, GF(3)).identity())
    with pytest.raises(GroupError):
        spectrum_bruteforce(A3, 2, G.identity())


def test_magic_words_are_words():
    for name, word in MAGIC_WORDS.items():
        assert set(word) <= set("1234567")
