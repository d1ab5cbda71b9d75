import random

import pytest
from hypothesis import given, settings, strategies as st

from chevkit.errors import FieldError, ParseError
from chevkit.exactfield import (GF, QQ, GFq, RationalFunctions, field_from_spec, parse_scalar,
                                quadratic_roots)


def test_prime_field_size_and_char():
    F = GF(5)
    assert F.order == 5 and F.characteristic == 5


def test_gf4_from_irreducible():
    F = GFq(2, 2, (1, 1, 1))
    assert F.order == 4
    # Y^2+Y+1 has no root in F2, so the quotient is a field
    assert all((y * y + y + 1) % 2 for y in (0, 1))
    g = F.gen
    assert g * g == g + 1


def test_reducible_min_poly_rejected():
    with pytest.raises(FieldError):
        GFq(2, 2, (1, 0, 1))            # Y^2 + 1 = (Y+1)^2


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        GF(6)


def test_rational_functions_char2_nonsquare():
    K = RationalFunctions(GF(2), "l1,l2")
    l1, l2 = K.gens
    assert K.characteristic == 2
    assert not K.is_square(l1)
    assert K.is_square(l1 * l1 * l2 * l2)
    assert (l1 + l2) ** 2 == l1 * l1 + l2 * l2


def test_small_arithmetic():
    F = GF(5)
    assert F(2) * F(3) == F(1)
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


def test_field_mismatch():
    with pytest.raises(FieldError):
        GF(5)(1) + GF(7)(1)


def _exhaustive_roots(F, c1, c0):
    return sorted(str(y) for y in F.elements() if not (y * y + c1 * y + c0))


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_quadratic_roots_agree_with_exhaustion(q):
    F = GF(q)
    for c1 in F.elements():
        for c0 in F.elements():
            got = sorted(set(str(r) for r in quadratic_roots(c1, c0)))
            assert got == sorted(set(_exhaustive_roots(F, c1, c0)))


def test_quadratic_roots_examples():
    Q = QQ()
    assert sorted(quadratic_roots(Q(-3), Q(2)), key=str) == [Q(1), Q(2)]
    F2 = GF(2)
    assert quadratic_roots(F2(1), F2(1)) == []
    F5 = GF(5)
    assert sorted(int(r.rep) for r in quadratic_roots(F5(0), F5(4))) == [1, 4]


def test_quadratic_roots_gf4():
    F = GFq(2, 2, (1, 1, 1))
    g = F.gen
    # Y^2 + Y + 1 splits over GF(4): roots g, g+1
    assert set(quadratic_roots(F.one, F.one)) == {g, g + 1}


def test_scalar_syntax():
    assert parse_scalar("3/4") == QQ()(3) / QQ()(4)
    assert parse_scalar("2 mod 5") == GF(5)(2)
    F4 = field_from_spec("gf 2 2: Y^2+Y+1")
    assert parse_scalar("g^2+1 (gf 2 2: Y^2+Y+1)") == F4.gen * F4.gen + 1
    K = field_from_spec("fun f2: l1,l2")
    l1, l2 = K.gens
    assert parse_scalar("l1/(l1+l2) (fun f2: l1,l2)") == l1 / (l1 + l2)
    with pytest.raises(ParseError):
        field_from_spec("bogus")


def test_canonical_rational_function():
    K = RationalFunctions(GF(3), "t")
    (t,) = K.gens
    a = (t * t - 1) / (t - 1)
    assert a == t + 1
    assert hash(a) == hash(t + 1)


FIELDS = [QQ(), GF(2), GF(5), GF(101), GFq(2, 2, (1, 1, 1)), GFq(3, 2, (2, 2, 1)),
          RationalFunctions(GF(2), "l1,l2"), RationalFunctions(GF(3), "t")]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name())
def test_field_axioms_random(F):
    rng = random.Random(7)
    kw = {"degree": 1} if hasattr(F, "gens") else {}
    for _ in range(300):
        a, b, c = (F.random(rng, **kw) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == F.zero
        if a:
            assert a * a.inverse() == F.one


@settings(max_examples=200, deadline=None)
@given(st.integers(), st.integers(), st.integers(min_value=1, max_value=10 ** 6))
def test_rationals_canonical(a, b, d):
    Q = QQ()
    x = Q(a) / Q(d)
    y = Q(a * 7) / Q(d * 7)
    assert x == y and hash(x) == hash(y)
    assert (x + Q(b)) - Q(b) == x


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 100), st.integers(1, 100))
def test_prime_field_inverse(a, b):
    F = GF(101)
    x, y = F(a), F(b)
    assert (x / y) * y == x
