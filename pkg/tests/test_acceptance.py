"""Acceptance criteria, one test per criterion (criterion 5 is split in two).

Each test records a PASS/FAIL line with its wall time; the lines are
printed in the terminal summary by ``conftest.pytest_terminal_summary``.
"""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from pepsets import (
    IntegerLatticeCoset,
    MatrixK,
    affine_height,
    bg_to_pep,
    content_ideal_norm,
    degeneracy_locus,
    element_height_mahler,
    evaluate,
    is_semisimple,
    jordan_multiplicative,
    make_field,
    restrict_to_coset,
    unipotent_power_heights,
)
from pepsets.experiments import (
    SUnitConfig,
    as_classes,
    count_growth,
    evertse_scan,
    evertse_scan_naive,
    minimal_vectors,
    sl2_count,
    sl2_counts,
    value_key,
)
from pepsets.exppoly import box
from pepsets.intervals import Box
from pepsets.matrixk import unipotent_powers

RESULTS = {}
PELL_UNIT = 3 + 2 * math.sqrt(2)


@contextmanager
def criterion(label, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - start
        within = dt < limit
        status = "PASS" if ok and within else "FAIL"
        note = "" if within else f" (over the {limit:g} s budget)"
        RESULTS[label] = f"{status}  {label}  [{dt:.2f} s]{note}"
    assert within, f"{label} took {dt:.2f} s, budget {limit} s"


# 1 -------------------------------------------------------------------------------


def test_c01_height_units(Q, K2):
    with criterion("C1 height unit suite", 1.0):
        s = K2.gen
        cases = [
            (affine_height([3, -2], 1e-10), math.log(3)),
            (affine_height([Fraction(1, 2)], 1e-10), math.log(2)),
            (affine_height([s], 1e-10), 0.5 * math.log(2)),
            (affine_height([3 + 2 * s], 1e-10), 0.5 * math.log(PELL_UNIT)),
            (element_height_mahler(s, 1e-10), 0.5 * math.log(2)),
            (element_height_mahler(3 + 2 * s, 1e-10), 0.5 * math.log(PELL_UNIT)),
        ]
        for h, want in cases:
            assert abs(h.value - want) < 1e-9
        assert abs(0.5 * math.log(PELL_UNIT) - 0.88137) < 1e-5


# 2 -------------------------------------------------------------------------------


def _arch_norm(K, x, prec=128):
    prod = None
    for v in K.embed(x, prec):
        term = v.abs_squared() if isinstance(v, Box) else v.abs()
        prod = term if prod is None else prod * term
    return prod


def test_c02_product_formula():
    with criterion("C2 product formula suite", 10.0):
        rng = random.Random(2024)
        for poly in ("x^2-2", "x^3-x-1"):
            K = make_field(poly)
            for _ in range(200):
                x = K.element([Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(K.degree)])
                if x.is_zero():
                    continue
                N = abs(x.norm())
                # archimedean part equals |N(x)|
                assert _arch_norm(K, x).contains(N)
                # non-archimedean part equals 1/|N(x)|, so the full product is 1
                den = K.denominator(x)
                assert Fraction(content_ideal_norm([x * den]), den**K.degree) == N
                assert affine_height([x]).overlaps(affine_height([1 / x]))


# 3 -------------------------------------------------------------------------------


def test_c03_pell_growth(pell):
    with criterion("C3 Pell growth", 30.0):
        Hs = [10**k for k in range(2, 11)]
        g = count_growth(pell, Hs)
        oracle = [2 * (2 * math.floor(math.log(2 * H) / math.log(PELL_UNIT)) + 1) for H in Hs]
        assert g.counts == oracle
        slope = g.fit["count_vs_logH"]["slope"]
        assert abs(slope - 4 / math.log(PELL_UNIT)) <= 0.1 * 4 / math.log(PELL_UNIT)
        assert all(c <= 3 * math.log(H) ** 2 for H, c in zip(Hs, g.counts))


# 4 -------------------------------------------------------------------------------


def test_c04_minimal_vectors(pell, K2):
    with criterion("C4 minimal-vector inequality", 60.0):
        rep = minimal_vectors(pell, 30)
        minus_one = value_key((K2.from_rational(-1), K2.zero))
        for k, (value, ws) in rep.minimal.items():
            norm = max(abs(c) for c in ws[0]) if ws[0] else 0
            if k == minus_one:
                continue
            h = affine_height(list(value)).value
            assert h >= 1.09 * norm - 1e-12, (value, ws)
        assert abs(rep.C_estimate - math.log(3)) < 1e-6
        assert [k for k, _, _ in rep.exceptional_candidates] == [minus_one]


# 5 -------------------------------------------------------------------------------


def test_c05a_sl2_exponent():
    with criterion("C5a SL2 power-law exponent", 60.0):
        g = sl2_count([32, 64, 128, 256, 512, 1024])
        assert abs(g.fit["exponent"] - 2) <= 0.15


@pytest.mark.xfail(strict=True, reason="exhaustive count at T=1 is 20, not 12")
def test_c05b_sl2_count_at_one():
    # ad = 1, bc = 0 gives 10 matrices and ad = 0, bc = -1 another 10
    with criterion("C5b SL2 count at T=1 equals 12", 60.0):
        rng = range(-1, 2)
        brute = sum(1 for a in rng for b in rng for c in rng for d in rng if a * d - b * c == 1)
        assert sl2_counts([1]) == [brute]
        assert brute == 12, f"exhaustive count at T=1 is {brute}"


# 6 -------------------------------------------------------------------------------


def test_c06_evertse_oracle():
    with criterion("C6 Evertse scan oracle", 10.0):
        cfg = SUnitConfig((2, 3), 2, 10, Fraction(1, 5))
        sols = evertse_scan(cfg)
        assert as_classes(sols) == evertse_scan_naive(cfg)
        assert (Fraction(3), Fraction(-2)) in sols


# 7 -------------------------------------------------------------------------------


def test_c07_degeneracy(laurent, Q):
    with criterion("C7 degeneracy locus and cosets", 5.0):
        loc = degeneracy_locus(laurent, 0, 15)
        want = {n for n in box(2, 15) if n[1] == 0 or n[0] == n[1]}
        assert set(map(tuple, loc.points)) == want
        assert {(tuple(c.offset), c.basis) for c in loc.cosets} == {((0, 0), ((1, 0),)), ((0, 0), ((1, 1),))}
        diag = IntegerLatticeCoset.make((0, 0), [(1, 1)])
        g = restrict_to_coset(laurent, diag)
        assert all(evaluate(g, (t,)) == (Q.one,) for t in range(-15, 16))


# 8 -------------------------------------------------------------------------------


def _split_matrix(K, n, rng):
    while True:
        P = MatrixK.from_rows(K, [[rng.randint(-3, 3) + rng.randint(-1, 1) * K.gen for _ in range(n)] for _ in range(n)])
        if P.is_invertible():
            break
    J = [[K.zero] * n for _ in range(n)]
    i = 0
    while i < n:
        head = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
        lam = K.element([head] + [Fraction(rng.randint(-1, 1))] * (K.degree - 1))
        size = rng.randint(1, n - i)
        for j in range(size):
            J[i + j][i + j] = lam
            if j:
                J[i + j - 1][i + j] = K.one
        i += size
    return P * MatrixK.from_rows(K, J) * P.inverse()


def test_c08_jordan(Q, K2):
    with criterion("C8 Jordan decomposition suite", 30.0):
        rng = random.Random(8)
        for idx in range(100):
            K = Q if idx % 2 else K2
            n = 2 + idx % 3 // 2
            A = _split_matrix(K, n, rng)
            gs, gu = jordan_multiplicative(A)
            one = MatrixK.identity(K, n)
            assert gs * gu == A and gu * gs == A
            assert is_semisimple(gs)
            assert ((gu - one) ** n).is_zero()
        gs, gu = jordan_multiplicative(MatrixK.from_rows(Q, [[2, 1], [0, 2]]))
        assert gs == MatrixK.diagonal(Q, [2, 2])
        assert gu == MatrixK.from_rows(Q, [[1, Fraction(1, 2)], [0, 1]])


# 9 -------------------------------------------------------------------------------


def test_c09_bg_round_trip(K2):
    with criterion("C9 BG to PEP round trip", 5.0):
        G = MatrixK.from_rows(K2, [[3, 4], [2, 3]])
        f = bg_to_pep([G])
        for a in range(-10, 11):
            assert evaluate(f, (a,)) == (G**a).entries()


# 10 ------------------------------------------------------------------------------


def test_c10_unipotent_growth(Q):
    with criterion("C10 unipotent growth", 5.0):
        g2 = MatrixK.from_rows(Q, [[1, 1], [0, 1]])
        g3 = MatrixK.from_rows(Q, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
        assert unipotent_power_heights(g2, 100).fitted_degree == 1
        assert unipotent_power_heights(g3, 100).fitted_degree == 2
        for n, P in enumerate(unipotent_powers(g2, 100), start=1):
            assert P == MatrixK.from_rows(Q, [[1, n], [0, 1]])
        for n, P in enumerate(unipotent_powers(g3, 100), start=1):
            assert P == MatrixK.from_rows(Q, [[1, n, n * (n - 1) // 2], [0, 1, n], [0, 0, 1]])
