import math
import random
from fractions import Fraction

import pytest

from pepsets import (
    AllZero,
    Comparison,
    affine_height,
    compare_height,
    element_height_mahler,
    projective_height,
)

TOL = 1e-9


def _rand_q(rng, span=12, den=6):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _rand_elem(K, rng):
    x = K.element([_rand_q(rng) for _ in range(K.degree)])
    while x.is_zero():
        x = K.element([_rand_q(rng) for _ in range(K.degree)])
    return x


def _near(v, target, tol=TOL):
    return v.log_lo - tol <= target <= v.log_hi + tol


def test_rational_examples(Q):
    assert _near(projective_height([1, 3, -2]), math.log(3))
    assert _near(affine_height([3, -2]), math.log(3))
    assert _near(projective_height([1, Fraction(1, 2)]), math.log(2))
    assert affine_height([0, 0]).log_hi <= TOL
    assert affine_height([3, -2]).exact_rational_power == 3


def test_quadratic_examples(K2):
    s = K2.gen
    assert _near(affine_height([s]), 0.5 * math.log(2))
    target = 0.5 * math.log(3 + 2 * math.sqrt(2))
    assert _near(affine_height([3 + 2 * s]), target)
    assert abs(target - 0.88137) < 1e-5


def test_mahler_examples(K2, Q):
    s = K2.gen
    assert _near(element_height_mahler(Q.from_rational(5)), math.log(5))
    assert _near(element_height_mahler(s), 0.5 * math.log(2))
    assert _near(element_height_mahler(3 + 2 * s), 0.5 * math.log(3 + 2 * math.sqrt(2)))


def test_invariants_of_value(K3):
    v = affine_height([K3.gen + 2, Fraction(1, 3)], tolerance=1e-12)
    assert 0 <= v.log_lo <= v.log_hi
    assert v.width <= 1e-12


def test_all_zero_rejected(K2):
    with pytest.raises(AllZero):
        projective_height([K2.zero, K2.zero])


@pytest.mark.parametrize("fieldname", ["K2", "K3", "Ki"])
def test_mahler_oracle_agreement(fieldname, request):
    K = request.getfixturevalue(fieldname)
    rng = random.Random(hash(fieldname) & 0xFFFF)
    n = {"K2": 80, "K3": 60, "Ki": 60}[fieldname]
    for _ in range(n):
        x = _rand_elem(K, rng)
        a = affine_height([x], tolerance=1e-10)
        b = element_height_mahler(x, tolerance=1e-10)
        assert a.overlaps(b), (x, a, b)


def test_monotone_in_coordinates(K2, K3):
    rng = random.Random(7)
    for K in (K2, K3):
        for _ in range(25):
            xs = [_rand_elem(K, rng) for _ in range(rng.randint(1, 3))]
            extra = _rand_elem(K, rng)
            short = affine_height(xs)
            longer = affine_height(xs + [extra])
            assert short.log_lo <= longer.log_hi


def test_galois_invariance(K2):
    rng = random.Random(11)
    s = K2.gen
    for _ in range(100):
        a, b = _rand_q(rng, 40, 9), _rand_q(rng, 40, 9)
        if a == 0 and b == 0:
            continue
        h1 = affine_height([a + b * s])
        h2 = affine_height([a - b * s])
        assert h1.overlaps(h2)


def test_scale_invariance(K2):
    rng = random.Random(13)
    s = K2.gen
    base = [1 + s, Fraction(3, 4) - 2 * s, 5 * s]
    ref = projective_height(base)
    for _ in range(50):
        q = _rand_q(rng, 30, 30)
        if q == 0:
            continue
        scaled = [q * x for x in base]
        assert projective_height(scaled) == ref


def test_compare_examples(K2):
    assert compare_height([3, -2], 3) is Comparison.EQUAL
    assert compare_height([3, -2], 4) is Comparison.BELOW
    assert compare_height([3, -2], 2) is Comparison.ABOVE
    assert compare_height([0], 1) is Comparison.EQUAL
    s = K2.gen
    # H(1+s) = sqrt(1+sqrt2) ~ 1.554
    assert compare_height([1 + s], Fraction(3, 2)) is Comparison.ABOVE
    assert compare_height([1 + s], Fraction(8, 5)) is Comparison.BELOW
    # H(s) = sqrt2 ~ 1.414
    assert compare_height([s], Fraction(7, 5)) is Comparison.ABOVE
    assert compare_height([s], Fraction(3, 2)) is Comparison.BELOW


def test_compare_exact_tie_in_field(K2):
    s = K2.gen
    # max(1, |s|, 2) = 2 at both real places, so H = 2 exactly
    assert compare_height([s, 2], 2) is Comparison.EQUAL
    assert compare_height([s, 2], Fraction(199, 100)) is Comparison.ABOVE
    # H(3+2s) = 1+sqrt2 ~ 2.41421 is irrational, so no rational bound ties
    assert compare_height([3 + 2 * s], Fraction(2414, 1000)) is Comparison.ABOVE
    assert compare_height([3 + 2 * s], Fraction(2415, 1000)) is Comparison.BELOW


def test_compare_consistent_with_enclosure(K3):
    rng = random.Random(17)
    for _ in range(20):
        x = _rand_elem(K3, rng)
        v = affine_height([x])
        lo, hi = math.exp(v.log_lo), math.exp(v.log_hi)
        below = Fraction(lo).limit_denominator(1000) - Fraction(1, 100)
        above = Fraction(hi).limit_denominator(1000) + Fraction(1, 100)
        if below > 0:
            assert compare_height([x], below) is Comparison.ABOVE
        assert compare_height([x], above) is Comparison.BELOW
