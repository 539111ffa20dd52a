import math
from fractions import Fraction

import pytest

from pepsets import (
    BoxTooLarge,
    MathDomainError,
    MatrixK,
    NonMonotoneThresholds,
    UnsupportedField,
    bg_to_pep,
    evaluate,
    make_system,
)
from pepsets.config import Caps
from pepsets.experiments import (
    SUnitConfig,
    as_classes,
    count_growth,
    enumerate_values,
    evertse_scan,
    evertse_scan_naive,
    membership_count,
    minimal_vectors,
    sl2_count,
    sl2_count_naive,
    sl2_counts,
    value_key,
)
from pepsets.exppoly import box, sup_norm
from pepsets.heights import affine_height

PELL_UNIT = 3 + 2 * math.sqrt(2)


def pell_oracle(H):
    return 2 * (2 * math.floor(math.log(2 * H) / math.log(PELL_UNIT)) + 1)


def test_enumerate_pell_small(pell, K2):
    en = enumerate_values(pell, 1)
    want = {(1, 0), (-1, 0), (3, -2), (-3, -2), (3, 2), (-3, 2)}
    got = {tuple(x.to_rational() for x in e.value) for e in en}
    assert got == want
    assert sum(len(e.witnesses) for e in en) == 9


def test_enumerate_origin_only(laurent):
    en = enumerate_values(laurent, 0)
    assert len(en) == 1
    (e,) = list(en)
    assert e.value == evaluate(laurent, (0, 0))


def test_enumerate_collapse(Q):
    f = make_system(Q, [2], [[(1, [[1, 1]])]])
    en = enumerate_values(f, 2)
    assert sorted(e.value[0].to_rational() for e in en) == [Fraction(2) ** k for k in range(-4, 5)]


def test_enumerate_parallel_matches_serial(pell):
    a = enumerate_values(pell, 6, workers=1)
    b = enumerate_values(pell, 6, workers=3)
    assert a.to_dict() == b.to_dict()


def test_enumerate_box_cap(laurent):
    with pytest.raises(BoxTooLarge):
        enumerate_values(laurent, 100, caps=Caps(max_box_cells=1000))


def test_pell_growth_matches_oracle(pell):
    Hs = [10**k for k in range(2, 6)]
    g = count_growth(pell, Hs)
    assert g.counts == [pell_oracle(H) for H in Hs]
    assert g.box_relative


def test_growth_shape(pell):
    Hs = [10, 30, 100, 300, 1000, 3000]
    g = count_growth(pell, Hs)
    assert all(a <= b for a, b in zip(g.counts, g.counts[1:]))
    for H, c in zip(Hs, g.counts):
        assert c <= 3 * math.log(H) ** 2


def test_growth_constant_system(Q):
    f = make_system(Q, [], [[(5, [])], [(Fraction(1, 2), [])]], r=0)
    # H(1 : 5 : 1/2) = H(2 : 10 : 1) = 10
    g = count_growth(f, [2, 9, 10, 100])
    assert g.counts == [0, 0, 1, 1]


def test_growth_thresholds_validated(pell):
    with pytest.raises(NonMonotoneThresholds):
        count_growth(pell, [100, 10])


def _naive_minimal(f, N):
    pts = list(box(f.r, N))
    vals = {n: value_key(evaluate(f, n)) for n in pts}
    out = {}
    for n in pts:
        if not any(vals[m] == vals[n] and sup_norm(m) < sup_norm(n) for m in pts):
            out.setdefault(vals[n], []).append(tuple(n))
    return out


@pytest.mark.parametrize("N", [3, 8])
def test_minimal_matches_naive(pell, laurent, N):
    for f in (pell, laurent):
        rep = minimal_vectors(f, N)
        naive = _naive_minimal(f, N)
        got = {k: sorted(map(tuple, ws)) for k, (_, ws) in rep.minimal.items()}
        assert got == {k: sorted(v) for k, v in naive.items()}


def test_minimal_pell_report(pell, K2):
    rep = minimal_vectors(pell, 8)
    minus_one = value_key((K2.from_rational(-1), K2.zero))
    one = value_key((K2.one, K2.zero))
    assert sorted(map(tuple, rep.minimal[minus_one][1])) == [(-1, 0), (1, 0)]
    assert rep.minimal[one][1] == [(0, 0)]
    assert [k for k, _, _ in rep.exceptional_candidates] == [minus_one]
    assert abs(rep.C_estimate - math.log(3)) < 1e-9


def test_minimal_ratio_bound(pell):
    rep = minimal_vectors(pell, 8)
    exc = {k for k, _, _ in rep.exceptional_candidates}
    for k, norm, h, r in rep.ratios:
        if k not in exc:
            assert h >= rep.C_estimate * norm - 1e-9


def test_evertse_small():
    sols = evertse_scan(SUnitConfig((2, 3), 2, 4, Fraction(1, 5)))
    assert (Fraction(3), Fraction(-2)) in sols
    assert all(sum(t) > 0 for t in sols)


@pytest.mark.parametrize("B", [3, 6, 10])
def test_evertse_matches_naive_pairs(B):
    cfg = SUnitConfig((2, 3), 2, B, 0.2)
    assert as_classes(evertse_scan(cfg)) == evertse_scan_naive(cfg)


def test_evertse_matches_naive_triples():
    cfg = SUnitConfig((2, 3), 3, 2, 0.3)
    sols = evertse_scan(cfg)
    assert sols
    assert as_classes(sols) == evertse_scan_naive(cfg)


def test_evertse_inequality_holds():
    cfg = SUnitConfig((2, 5), 2, 5, 0.25)
    for t in evertse_scan(cfg):
        lhs = affine_height([sum(t)]).value
        rhs = 0.25 * sum(affine_height([x]).value for x in t)
        assert lhs < rhs + 1e-9


def test_sunit_config_validation(K2):
    with pytest.raises(MathDomainError):
        SUnitConfig((2, 2), 2, 3, 0.2)
    with pytest.raises(MathDomainError):
        SUnitConfig((2, 3), 1, 3, 0.2)
    with pytest.raises(UnsupportedField):
        evertse_scan(SUnitConfig((2, 3), 2, 3, 0.2, field=K2))


def test_sl2_small_values():
    assert sl2_counts([0]) == [0]
    assert sl2_counts([1, 2]) == [sl2_count_naive(1), sl2_count_naive(2)]


def test_sl2_brute_force_t1():
    # direct loop over all 3^4 matrices with entries in {-1, 0, 1}
    rng = range(-1, 2)
    n = sum(1 for a in rng for b in rng for c in rng for d in rng if a * d - b * c == 1)
    assert sl2_counts([1]) == [n]


def test_sl2_matches_naive():
    Ts = [1, 2, 3, 5, 8, 13, 21, 32, 64]
    assert sl2_counts(Ts) == [sl2_count_naive(T) for T in Ts]


def test_sl2_fit_exponent():
    g = sl2_count([32, 64, 128, 256])
    assert abs(g.fit["exponent"] - 2) < 0.15


def test_membership_examples(K2, Q):
    A = MatrixK.from_rows(K2, [[3, 4], [2, 3]])
    f = bg_to_pep([A])
    assert membership_count(f, A, 6, 8).counts == [1, 2, 3, 4, 5, 6]
    U = MatrixK.from_rows(K2, [[1, 1], [0, 1]])
    assert membership_count(f, U, 10, 10).total == 0
    ident = MatrixK.identity(Q, 2)
    const = make_system(Q, [], [[(1, [])], [], [], [(1, [])]], r=0)
    assert membership_count(const, ident, 7, 0).total == 7
