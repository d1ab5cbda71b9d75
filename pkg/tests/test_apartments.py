import itertools

import numpy as np
import pytest

from chevkit.apartments import (IncidenceError, build_e6_apartment, build_gosset, e6_fact_check,
                                full_imaginary_set, gosset_symp_listing, symp_pair_census,
                                thin_five_five, thin_point_five_space, thin_point_symp, thin_symp_symp)
from chevkit.rootsys import build_root_system


def _minuscule_graph(letter, n, node):
    """Weights of the minuscule module; adjacent when they differ by a root."""
    rs = build_root_system(letter, n)
    C = np.array(rs.cartan)
    start = tuple(int(i == node - 1) for i in range(n))
    seen, stack = {start}, [start]
    while stack:
        lam = stack.pop()
        for i in range(n):
            if lam[i]:
                mu = tuple(np.array(lam) - lam[i] * C[i])
                if mu not in seen:
                    seen.add(mu)
                    stack.append(mu)
    W = np.array(sorted(seen))
    roots = {tuple(np.array(r) @ C) for r in rs.roots}
    A = np.array([[tuple(a - b) in roots for b in W] for a in W])
    return A


def _spectrum(A):
    return np.round(np.sort(np.linalg.eigvalsh(A.astype(float))), 6)


@pytest.fixture(scope="module")
def gosset():
    return build_gosset()


@pytest.fixture(scope="module")
def e6():
    return build_e6_apartment()


def test_gosset_basics(gosset):
    assert gosset.n == 56
    assert set(gosset.degrees()) == {27}
    assert gosset.diameter() == 3
    assert ((gosset.dist == 3).sum(1) == 1).all()
    for v in range(56):
        (i, j), primed = gosset.labels[v]
        w = int(np.nonzero(gosset.dist[v] == 3)[0][0])
        assert gosset.labels[w] == ((i, j), not primed)


def test_gosset_matches_e7_weights(gosset):
    A = _minuscule_graph("E", 7, 7)
    assert A.sum(1).tolist() == [27] * 56
    assert np.array_equal(_spectrum(A), _spectrum(gosset.adj))


def test_e6_matches_weights(e6):
    assert e6.n == 27
    assert set(e6.degrees()) == {16}
    comp = ~e6.adj & ~np.eye(27, dtype=bool)
    assert set(comp.sum(1)) == {10}
    assert np.array_equal(_spectrum(_minuscule_graph("E", 6, 1)), _spectrum(e6.adj))
    assert len(e6.symps) == 27 and len(e6.five_spaces) == 72


def test_gosset_symps(gosset):
    assert len(gosset.symps) == 126
    assert all(gosset.is_cross_polytope(S) and len(S) == 12 for S in gosset.symps)
    by_pair, by_quad = gosset_symp_listing(gosset)
    assert len(by_pair) == 56 and len(by_quad) == 70
    assert set(gosset.symps) == set(by_pair) | set(by_quad)


def test_point_symp_dichotomy(gosset):
    counts = {"far": 0, "close": 0}
    for S in gosset.symps:
        for v in range(56):
            if v not in S:
                counts[thin_point_symp(gosset, v, S)] += 1
    assert counts == {"far": 1512, "close": 4032}
    with pytest.raises(IncidenceError):
        thin_point_symp(gosset, next(iter(gosset.symps[0])), gosset.symps[0])


def test_symp_pair_census(gosset):
    counts, failures = symp_pair_census(gosset)
    assert failures == []
    assert counts == {"adjacent": 2016, "symplectic": 3780, "special": 2016, "opposite": 63}
    assert sum(counts.values()) == 126 * 125 // 2


def test_opposite_symps_matching(gosset):
    opp = [(a, b) for a, b in itertools.combinations(gosset.symps, 2)
           if thin_symp_symp(gosset, a, b) == "opposite"]
    assert len(opp) == 63
    for a, b in opp[:10]:
        for v in a:
            assert sum(gosset.adj[v, w] for w in b) == 1
    lines, family, partition = full_imaginary_set(gosset, *opp[0])
    assert len(lines) == 12 and len(family) == 2 and partition


def test_e6_facts(e6):
    facts = e6_fact_check(e6)
    assert facts["diameter_2"] and facts["unique_symp"]
    assert facts["point_five"] == {"in": 432, "three-space": 1080, "unique-point": 432}
    assert facts["five_five"] == {"plane": 720, "point": 1080, "disjoint": 756}
    f = e6.five_spaces
    assert thin_five_five(e6, f[0], f[0]) == "equal"
    tags = {thin_point_five_space(e6, v, f[0]) for v in range(27)}
    assert tags == {"in", "three-space", "unique-point"}
