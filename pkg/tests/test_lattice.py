import random

from hypothesis import given, settings
from hypothesis import strategies as st

from pepsets.lattice import det, hnf, hnf_basis, kernel_basis, lattice_index, smith, solve_in_lattice


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_hnf_examples():
    assert hnf_basis([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    assert hnf_basis([[2, 0], [0, 3]]) == [[2, 0], [0, 3]]
    assert lattice_index(hnf_basis([[2, 0], [0, 3]])) == 6
    H = hnf_basis([[1, 1], [1, -1]])
    assert H == [[1, 1], [0, 2]]
    assert lattice_index(H) == 2


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=1, max_size=5)
)


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_hnf_transform_and_idempotence(A):
    H, U = hnf(A)
    assert matmul(U, A) == H
    assert abs(det(U)) == 1
    basis = [r for r in H if any(r)]
    assert hnf_basis(basis) == basis
    for row in A:
        assert solve_in_lattice(basis, row) is not None


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=150, deadline=None)
def test_square_determinant_preserved(A):
    basis = hnf_basis(A)
    if len(basis) == 3:
        assert lattice_index(basis) == abs(det(A))
    else:
        assert det(A) == 0


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_smith_form(A):
    D, U, V = smith(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_kernel_basis():
    rng = random.Random(3)
    for _ in range(50):
        A = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(2)]
        for v in kernel_basis(A, 4):
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A)
