import random

import numpy as np
import pytest

from chevkit.errors import BudgetError, GroupError
from chevkit.polar import (Collineation, baer_involution, build_space, fixed_structure, is_kangaroo,
                           isometry_group, kangaroo_equivalences, pair_swap, permutations_of,
                           random_isometries, root_elation, scan_equivalences)


@pytest.fixture(scope="module")
def d32():
    return build_space(3, 2)


@pytest.mark.parametrize("n,q,points", [(2, 3, 16), (3, 2, 35), (2, 2, 9), (2, 4, 25), (3, 3, 130)])
def test_point_counts(n, q, points):
    sp = build_space(n, q)
    assert sp.N == points == (q ** (n - 1) + 1) * (q ** n - 1) // (q - 1)
    # every point is singular and points are normalized distinct vectors
    assert len({tuple(v) for v in sp.vectors}) == sp.N


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (3, 3)])
def test_generators(n, q):
    sp = build_space(n, q)
    expect = 2
    for i in range(1, n):
        expect *= q ** i + 1
    assert len(sp.generators) == expect
    # each submaximal subspace lies on exactly two generators
    G = [int(g) for g in sp.generators]
    for S in sp.subspaces(n - 2):
        assert sum(1 for g in G if S & ~g == 0) == 2


def _kangaroo_oracle(sp, perm):
    """Direct reading of the definition on coordinate vectors."""
    V = sp.vectors.astype(int)
    moved = perm != np.arange(sp.N)
    if not moved.any() or moved.all():
        return False
    for i in np.nonzero(moved)[0]:
        if sp.collinear[i, perm[i]]:
            return False
    return True


def test_kangaroo_predicate_matches_definition(d32):
    rng = random.Random(2)
    mats = random_isometries(d32, 300, rng)
    for P in permutations_of(d32, mats):
        assert bool(is_kangaroo(d32, P)) == _kangaroo_oracle(d32, P)


def test_identity_and_elation(d32):
    e = Collineation.identity(d32)
    assert not is_kangaroo(d32, e)
    r = kangaroo_equivalences(d32, e)
    assert r.identity and r.conditions[0] and r.agree
    el = root_elation(d32)
    assert not is_kangaroo(d32, el)
    r = kangaroo_equivalences(d32, el)
    assert r.conditions == (False,) * 6


def test_group_order_and_exhaustive_scan(d32):
    G = isometry_group(d32)
    assert len(G) == 40320
    rep = scan_equivalences(d32, G)
    assert rep.total == 40320 and rep.all_agree
    assert rep.ovoid_failures == 0
    assert rep.identities == 1


def test_random_scan_d33():
    sp = build_space(3, 3)
    rng = random.Random(33)
    perms = permutations_of(sp, random_isometries(sp, 2000, rng))
    rep = scan_equivalences(sp, perms)
    assert rep.all_agree and rep.kangaroos > 0


def test_pair_swap_d23_conic():
    sp = build_space(2, 3)
    th = pair_swap(sp, 1)
    assert is_kangaroo(sp, th).kind == "diligent"
    fs = fixed_structure(sp, th)
    assert len(fs.fixed_points) == 4 and fs.span_dim == 2 and fs.ovoid and fs.ok


def test_baer_d24():
    sp = build_space(2, 4)
    th = baer_involution(sp)
    assert not th.linear
    v = is_kangaroo(sp, th)
    assert v and v.kind == "diligent"
    fs = fixed_structure(sp, th)
    assert len(fs.fixed_points) == 5 and fs.ovoid and fs.involution
    assert fs.span_dim == 3 and fs.ok
    with pytest.raises(GroupError):
        baer_involution(build_space(2, 3))


def test_lazy_d43():
    sp = build_space(4, 3)
    th = pair_swap(sp, 2)
    v = is_kangaroo(sp, th)
    assert v and v.lazy
    fs = fixed_structure(sp, th, skeleton=False)
    assert fs.kind == "lazy" and fs.ok


def test_errors(d32):
    with pytest.raises(GroupError):
        kangaroo_equivalences(build_space(2, 3), Collineation.identity(build_space(2, 3)))
    with pytest.raises(GroupError):
        Collineation(d32, perm=np.zeros(d32.N, dtype=int))
    with pytest.raises(BudgetError):
        isometry_group(build_space(3, 3), budget=1000)
    with pytest.raises(GroupError):
        fixed_structure(d32, Collineation.identity(d32))
