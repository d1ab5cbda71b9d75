import itertools

import numpy as np
import pytest

from chevkit.errors import ParseError, RootError
from chevkit.rootsys import (build_root_system, highest_root_sequence, pairing, parse_root,
                             perp_set_orbit_reps, polar_type)


def _closure_count(C):
    """Positive roots by closing the simple roots under simple reflections (independent oracle)."""
    n = len(C)
    C = np.array(C)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        r = np.array(todo.pop())
        for i in range(n):
            # s_i(r) = r - <r, alpha_i^vee> alpha_i with <r, alpha_i^vee> = sum_k r_k C[k][i]
            c = int(r @ C[:, i])
            s = r.copy()
            s[i] -= c
            t = tuple(int(x) for x in s)
            if all(x >= 0 for x in t) and any(t) and t not in seen:
                seen.add(t)
                todo.append(t)
    return len(seen)


@pytest.mark.parametrize("letter,n,npos", [("A", 2, 3), ("A", 5, 15), ("D", 4, 12), ("D", 6, 30),
                                           ("E", 6, 36), ("E", 7, 63), ("E", 8, 120),
                                           ("B", 3, 9), ("C", 3, 9), ("F", 4, 24), ("G", 2, 6)])
def test_counts(letter, n, npos):
    rs = build_root_system(letter, n)
    assert rs.N == npos == _closure_count(rs.cartan)
    assert len(rs.roots) == 2 * npos


def test_unsupported():
    with pytest.raises(RootError):
        build_root_system("E", 9)


def test_positive_order_is_height_then_lex():
    rs = build_root_system("E", 7)
    keys = [(sum(r), r) for r in rs.positive]
    assert keys == sorted(keys)


def test_pairing_examples():
    rs = build_root_system("E", 7)
    for i in range(1, 8):
        a = rs.roots[rs.simple[i - 1]]
        assert pairing(rs, a, a) == 2
    phi = rs.positive[-1]
    assert phi == (2, 2, 3, 4, 3, 2, 1)
    assert [pairing(rs, rs.roots[rs.simple[i]], phi) for i in range(7)] == [1, 0, 0, 0, 0, 0, 0]
    vals = {b: pairing(rs, b, phi) for b in rs.positive}
    assert set(vals.values()) <= {0, 1, 2}
    assert [b for b, v in vals.items() if v == 2] == [phi]


def test_reflection_closure():
    rs = build_root_system("D", 5)
    roots = set(rs.roots)
    for a, b in itertools.product(rs.roots, repeat=2):
        c = pairing(rs, b, a)
        assert tuple(x - c * y for x, y in zip(b, a)) in roots


def test_polar_type():
    assert polar_type(build_root_system("E", 7)) == {1}
    assert polar_type(build_root_system("E", 8)) == {8}
    for n in (2, 4, 6):
        assert polar_type(build_root_system("A", n)) == {1, n}


def _labels(rs, seq):
    return [rs.label(b) for b in seq]


def test_highest_root_sequences():
    rs = build_root_system("E", 7)
    assert _labels(rs, highest_root_sequence(rs, "E7;3")) == ["2234321", "0112221", "0000001"]
    assert _labels(rs, highest_root_sequence(rs, "E7;4")) == ["2234321", "0112221", "0112100", "0010000"]
    assert _labels(rs, highest_root_sequence(rs, "E7;1")) == ["2234321"]
    for name in ("E7;1", "E7;2", "E7;3", "E7;4"):
        seq = highest_root_sequence(rs, name)
        for a, b in itertools.combinations(seq, 2):
            assert rs.pair(a, b) == 0


def test_unknown_diagram():
    rs = build_root_system("E", 7)
    with pytest.raises(RootError):
        highest_root_sequence(rs, "E7;9")


def test_perp_reps():
    rs = build_root_system("E", 7)
    assert [_labels(rs, r) for r in perp_set_orbit_reps(rs, 1)] == [["2234321"]]
    r3 = sorted(sorted(_labels(rs, r)) for r in perp_set_orbit_reps(rs, 3))
    assert r3 == sorted([sorted(["2234321", "0112221", "0000001"]), sorted(["2234321", "0112221", "0112100"])])
    r4 = perp_set_orbit_reps(rs, 4)
    base = {"2234321", "0112221", "0112100"}
    extra = sorted(set(_labels(rs, r)) - base for r in r4)
    assert len(r4) == 4
    assert sorted(e.pop() for e in extra) == ["0000001", "0000100", "0010000", "0100000"]


def test_parse_root():
    rs = build_root_system("E", 7)
    assert parse_root("(1234321)", rs) == (1, 2, 3, 4, 3, 2, 1)
    assert parse_root("-(0101000)", rs) == (0, -1, 0, -1, 0, 0, 0)
    with pytest.raises(RootError):
        parse_root("(9999999)", rs)
    with pytest.raises(ParseError):
        parse_root("[12]", rs)
