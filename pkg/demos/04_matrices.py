"""Matrix powers: semisimple ones are exponential parametrizations, unipotent ones grow polynomially.

Run with ``python demos/04_matrices.py``.
"""

import math

from pepsets import (
    EigenvaluesNotInField,
    MatrixK,
    bg_to_pep,
    eigen_decompose,
    evaluate,
    jordan_multiplicative,
    make_field,
    unipotent_power_heights,
)
from pepsets.dsl import system_str
from pepsets.experiments import membership_count, sl2_count

Q = make_field("x-1")
K = make_field("x^2-2", symbol="s")

G_Q = MatrixK.from_rows(Q, [[3, 4], [2, 3]])
try:
    eigen_decompose(G_Q)
except EigenvaluesNotInField as e:
    print("Over Q the matrix [[3, 4], [2, 3]] has no eigenvalues:")
    print("  ", e)
G = MatrixK.from_rows(K, [[3, 4], [2, 3]])
g, eig = eigen_decompose(G)
print("Over Q(sqrt 2) its eigenvalues are", ", ".join(x.to_str() for x in eig))
print()

f = bg_to_pep([G])
print("So every power G^a is an exponential polynomial in a, entry by entry:")
print(system_str(f))
same = all(evaluate(f, (a,)) == (G**a).entries() for a in range(-10, 11))
print("Agrees with exact matrix powers for -10 <= a <= 10:", same)
print()

A = MatrixK.from_rows(Q, [[2, 1], [0, 2]])
gs, gu = jordan_multiplicative(A)
print(f"Jordan decomposition of {A.to_str()}: semisimple {gs.to_str()}, unipotent {gu.to_str()}")
print()

print("Unipotent powers have entries polynomial in n, so log H grows like d log n.")
for rows in ([[1, 1], [0, 1]], [[1, 1, 0], [0, 1, 1], [0, 0, 1]]):
    U = MatrixK.from_rows(Q, rows)
    res = unipotent_power_heights(U, 100)
    h100 = res.heights[-1][1].value
    print(f"  {U.to_str()}: fitted degree {res.fitted_degree} (slope {res.slope:.3f}), H(U^100) = {math.exp(h100):.0f}")
print()

U = MatrixK.from_rows(K, [[1, 1], [0, 1]])
mc = membership_count(f, U, 20, 10)
print(f"None of U^1..U^20 lies in the orbit of G (box 10): count = {mc.total}")
print(f"Every G^1..G^8 does: count = {membership_count(f, G, 8, 10).total}")
print()

g = sl2_count([32, 64, 128, 256, 512])
print("For comparison, SL_2(Z) has many more points of bounded height:")
for T, c in zip(g.thresholds, g.counts):
    print(f"  max entry <= {T:>4}: {c:>9} matrices")
print(f"Power-law exponent {g.fit['exponent']:.3f}, close to n^2 - n = 2.")
