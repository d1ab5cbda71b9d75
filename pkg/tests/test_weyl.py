import random

import pytest
from hypothesis import given, settings, strategies as st

from chevkit.errors import RootError
from chevkit.opposition import MAGIC_WORDS, diagram
from chevkit.rootsys import build_root_system, perp_set_orbit_reps
from chevkit.weyl import (identity, longest, orbit_of_perp_sets, parse_word, reflection,
                          weyl_from_word)

E7 = build_root_system("E", 7)


def R(label):
    return E7.idx("(%s)" % label)


def test_empty_and_square():
    assert weyl_from_word(E7, []).length == 0
    for i in range(1, 8):
        assert weyl_from_word(E7, [i, i]).is_identity()
    with pytest.raises(RootError):
        weyl_from_word(E7, [8])


def test_magic_e73():
    u = weyl_from_word(E7, parse_word(MAGIC_WORDS["E7;3"]))
    assert u.length == 24
    ui = u.inverse()
    assert E7.label(ui.act(R("2234321"))) == "0000001"
    assert E7.label(ui.act(R("0112221"))) == "0000100"
    assert E7.label(ui.act(R("0000001"))) == "0100000"


def test_magic_e74():
    u = weyl_from_word(E7, parse_word("4 3 1 5 4 3 6 5 4 2 3 1 4 3 5 4 6 5 7 6 5 4 3 1"))
    ui = u.inverse()
    got = [E7.label(ui.act(R(x))) for x in ("0112221", "1000000", "0112100", "0010000")]
    assert got == ["0100000", "0001000", "0010000", "0000100"]


def test_reflection_negates():
    for b in E7.positive[:10]:
        r = E7.idx(b)
        assert E7.roots[reflection(E7, b).act(r)] == tuple(-x for x in b)


@pytest.mark.parametrize("name", ["A3", "D4", "D5", "E6", "E7"])
def test_w0_maps_positive_to_negative(name):
    rs = build_root_system(name[0], int(name[1:]))
    w0 = longest(rs)
    assert w0.length == rs.N
    assert all(not rs.is_positive(w0.act(i)) for i in range(rs.N))


def test_parabolic_lengths():
    assert longest(E7, [2, 5, 7]).length == 3
    assert (longest(E7, [2, 5, 7]) * longest(E7)).length == 60


@pytest.mark.parametrize("name", ["E7;1", "E7;2", "E7;3", "E7;4"])
def test_reflection_products(name):
    d = diagram(name)
    w = identity(E7)
    for phi in d.sequence:
        w = w * reflection(E7, E7.roots[phi])
    rest = [j for j in range(1, 8) if j not in d.J]
    assert w == longest(E7, rest) * longest(E7) == longest(E7) * longest(E7, rest)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 7), max_size=30))
def test_length_matches_reduced_word(word):
    w = weyl_from_word(E7, word)
    rw = w.reduced_word()
    assert len(rw) == w.length
    assert weyl_from_word(E7, rw) == w
    assert w.length == sum(1 for i in range(E7.N) if not E7.is_positive(w.act(i)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 7), max_size=20), st.lists(st.integers(1, 7), max_size=20))
def test_group_axioms(a, b):
    x, y = weyl_from_word(E7, a), weyl_from_word(E7, b)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert (x * x.inverse()).is_identity()


def test_orbits_small_k():
    assert orbit_of_perp_sets(E7, 1)[0] == 1
    assert orbit_of_perp_sets(E7, 2)[0] == 1
    assert orbit_of_perp_sets(E7, 3)[0] == 2


def test_reps_cover_every_orbit():
    for k in (1, 2, 3, 4):
        reps = perp_set_orbit_reps(E7, k)
        n, canon, sizes = orbit_of_perp_sets(E7, k, reps=reps)
        assert n <= len(reps)


def test_parse_word():
    assert parse_word("w[1 3 4]") == [1, 3, 4]
    assert parse_word("134") == [1, 3, 4]
    assert parse_word("") == []
