import random
from fractions import Fraction

import pytest

from pepsets import (
    EigenvaluesNotInField,
    MatrixK,
    NotInvertible,
    NotSemisimple,
    NotUnipotent,
    bg_to_pep,
    eigen_decompose,
    evaluate,
    is_semisimple,
    jordan_multiplicative,
    unipotent_power_heights,
)
from pepsets.exppoly import box
from pepsets.matrixk import factor_over_field, unipotent_powers


def M(K, rows):
    return MatrixK.from_rows(K, rows)


def _rand_unimodular_ish(K, n, rng):
    while True:
        P = M(K, [[rng.randint(-3, 3) + rng.randint(-1, 1) * K.gen for _ in range(n)] for _ in range(n)])
        if P.is_invertible():
            return P


def _random_split_matrix(K, n, rng):
    """A conjugate of a random Jordan form with eigenvalues in K."""
    J = [[K.zero] * n for _ in range(n)]
    i = 0
    while i < n:
        lam = K.element([Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))] + [
            Fraction(rng.randint(-1, 1)) for _ in range(K.degree - 1)
        ])
        size = rng.randint(1, n - i)
        for j in range(size):
            J[i + j][i + j] = lam
            if j:
                J[i + j - 1][i + j] = K.one
        i += size
    P = _rand_unimodular_ish(K, n, rng)
    return P * M(K, J) * P.inverse()


def test_arithmetic(K2):
    A = M(K2, [[1, 2], [3, 4]])
    assert A * A.inverse() == MatrixK.identity(K2, 2)
    assert A.det() == K2.from_rational(-2)
    assert A ** -2 == (A * A).inverse()
    assert (A - A).is_zero()
    with pytest.raises(NotInvertible):
        M(K2, [[1, 2], [2, 4]]).inverse()


def test_minpoly_divides_charpoly(K2):
    rng = random.Random(3)
    for _ in range(10):
        A = _random_split_matrix(K2, 3, rng)
        assert A.poly_eval(A.minpoly).is_zero()
        assert A.poly_eval(A.charpoly).is_zero()
        assert len(A.minpoly) <= len(A.charpoly)


def test_semisimple_examples(Q):
    assert is_semisimple(MatrixK.diagonal(Q, [2, 3]))
    assert not is_semisimple(M(Q, [[1, 1], [0, 1]]))
    assert is_semisimple(M(Q, [[3, 4], [2, 3]]))


def test_eigen_pell(K2):
    s = K2.gen
    A = M(K2, [[3, 4], [2, 3]])
    g, eig = eigen_decompose(A)
    assert eig == [3 + 2 * s, 3 - 2 * s]
    assert g.inverse() * A * g == MatrixK.diagonal(K2, eig)


def test_eigen_diagonal(Q):
    g, eig = eigen_decompose(MatrixK.diagonal(Q, [5, 2, 7]))
    assert g == MatrixK.identity(Q, 3)
    assert sorted(e.to_rational() for e in eig) == [2, 5, 7]


def test_eigen_not_in_field(Q):
    with pytest.raises(EigenvaluesNotInField) as err:
        eigen_decompose(M(Q, [[3, 4], [2, 3]]))
    assert "t^2 - 6*t + 1" in str(err.value)


def test_eigen_rejects_non_semisimple(Q):
    with pytest.raises(NotSemisimple):
        eigen_decompose(M(Q, [[2, 1], [0, 2]]))


def test_eigen_multiset_matches_charpoly(K2):
    rng = random.Random(5)
    for _ in range(15):
        n = rng.choice([2, 3])
        lams = [K2.element([rng.randint(-3, 3) or 1, rng.randint(-1, 1)]) for _ in range(n)]
        P = _rand_unimodular_ish(K2, n, rng)
        A = P * MatrixK.diagonal(K2, lams) * P.inverse()
        _, eig = eigen_decompose(A)
        assert sorted(map(repr, eig)) == sorted(map(repr, lams))


def test_factor_over_field(K2, Q):
    t2 = [Q.from_rational(c) for c in (1, -6, 1)]
    assert len(factor_over_field(t2)) == 1
    s = K2.gen
    facs = factor_over_field([K2.from_rational(c) for c in (1, -6, 1)])
    assert sorted(repr(f[0][0]) for f in facs) == sorted(repr(-(3 + e * 2 * s)) for e in (1, -1))


def test_jordan_examples(Q, K2):
    U = M(Q, [[1, 1], [0, 1]])
    assert jordan_multiplicative(U) == (MatrixK.identity(Q, 2), U)
    gs, gu = jordan_multiplicative(M(Q, [[2, 1], [0, 2]]))
    assert gs == MatrixK.diagonal(Q, [2, 2])
    assert gu == M(Q, [[1, Fraction(1, 2)], [0, 1]])
    A = M(K2, [[3, 4], [2, 3]])
    assert jordan_multiplicative(A) == (A, MatrixK.identity(K2, 2))
    with pytest.raises(NotInvertible):
        jordan_multiplicative(M(Q, [[0, 1], [0, 0]]))


@pytest.mark.parametrize("fieldname", ["Q", "K2"])
def test_jordan_properties(fieldname, request):
    K = request.getfixturevalue(fieldname)
    rng = random.Random(fieldname)
    for _ in range(50):
        n = rng.choice([2, 3])
        A = _random_split_matrix(K, n, rng)
        gs, gu = jordan_multiplicative(A)
        I = MatrixK.identity(K, n)
        assert gs * gu == A and gu * gs == A
        assert is_semisimple(gs)
        assert ((gu - I) ** n).is_zero()


def test_bg_to_pep_examples(K2):
    A = M(K2, [[3, 4], [2, 3]])
    f = bg_to_pep([A])
    ints = lambda *v: tuple(K2.from_rational(x) for x in v)  # noqa: E731
    assert evaluate(f, (1,)) == ints(3, 4, 2, 3)
    assert evaluate(f, (0,)) == ints(1, 0, 0, 1)
    assert evaluate(f, (-1,)) == ints(3, -4, -2, 3)
    for a in range(-10, 11):
        assert evaluate(f, (a,)) == (A**a).entries()


def test_bg_to_pep_two_generators(K2):
    A = M(K2, [[3, 4], [2, 3]])
    B = M(K2, [[1, 0], [1, 2]])
    f = bg_to_pep([A, B])
    assert f.r == 2
    for a, b in box(2, 5):
        assert evaluate(f, (a, b)) == (A**a * B**b).entries()


def test_bg_to_pep_rejects(Q, K2):
    with pytest.raises(NotSemisimple):
        bg_to_pep([M(Q, [[1, 1], [0, 1]])])
    with pytest.raises(EigenvaluesNotInField):
        bg_to_pep([M(Q, [[3, 4], [2, 3]])])


def test_unipotent_examples(Q):
    g = M(Q, [[1, 1], [0, 1]])
    res = unipotent_power_heights(g, 100)
    assert res.fitted_degree == 1
    for n, P in enumerate(unipotent_powers(g, 100), start=1):
        assert P == M(Q, [[1, n], [0, 1]])
    g3 = M(Q, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert unipotent_power_heights(g3, 100).fitted_degree == 2
    ident = unipotent_power_heights(MatrixK.identity(Q, 2), 10)
    assert all(h.log_hi <= 1e-12 for _, h in ident.heights)
    with pytest.raises(NotUnipotent):
        unipotent_power_heights(M(Q, [[2, 0], [0, 1]]), 5)


def test_unipotent_powers_match_repeated_product(K2):
    g = M(K2, [[1, K2.gen, 3], [0, 1, 2], [0, 0, 1]])
    acc = MatrixK.identity(K2, 3)
    for P in unipotent_powers(g, 30):
        acc = acc * g
        assert P == acc
