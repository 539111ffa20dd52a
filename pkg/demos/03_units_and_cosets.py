"""S-unit sums with small height, and where exponential sums degenerate.

Run with ``python demos/03_units_and_cosets.py``.
"""

import math
from fractions import Fraction

from pepsets import (
    IntegerLatticeCoset,
    degeneracy_locus,
    evaluate,
    make_field,
    make_system,
    reduce_to_independent,
    relation_lattice,
    restrict_to_coset,
)
from pepsets.dsl import system_str
from pepsets.experiments import SUnitConfig, as_classes, evertse_scan, evertse_scan_naive

# S-units over Q are signed products of the primes in S. Scan pairs whose sum
# has height below C times the total height of the summands.
cfg = SUnitConfig((2, 3), 2, 10, Fraction(1, 5))
sols = evertse_scan(cfg)
print(f"S = {{2, 3}}, exponents in [-10, 10], C = 1/5: {len(sols)} pairs up to sign and order.")
for t in sols[:8]:
    print(f"  {str(t[0]):>6} + {str(t[1]):>6} = {t[0] + t[1]}")
print("  ...")
print("A naive enumeration over ordered pairs agrees:", as_classes(sols) == evertse_scan_naive(cfg))

# scale each pair to coprime integers a + b = c
primitive = set()
for a, b in sols:
    den = math.lcm(a.denominator, b.denominator)
    x, y = int(a * den), int(b * den)
    g = math.gcd(x, y)
    primitive.add((x // g, y // g))
print(f"Up to scaling by S-units they come from {len(primitive)} coprime identities:")
print("  " + ", ".join(f"{x}{y:+d}={x + y}" for x, y in sorted(primitive, key=lambda p: (p[0] + p[1], p))))
print()

Q = make_field("x-1")
# 1 + 2^a - 2^b
f = make_system(Q, [2], [[(1, [[0, 0]]), (1, [[1, 0]]), (-1, [[0, 1]])]], variables=("a", "b"))
print("Now the exponential sum", system_str(f, over=False).splitlines()[1].strip())
loc = degeneracy_locus(f, 0, 15)
print(f"Some proper subsum vanishes at {len(loc.points)} points of the box |a|, |b| <= 15.")
print("Those points are exactly the union of these lattice cosets:")
for c in loc.cosets:
    print(f"  offset {tuple(c.offset)}, direction {c.basis[0]}")
diag = IntegerLatticeCoset.make((0, 0), [(1, 1)])
g = restrict_to_coset(f, diag)
print("On the diagonal a = b the sum collapses to a one-variable system:")
print("  " + system_str(g, over=False).splitlines()[1].strip())
print("  values for t = -3..3:", [evaluate(g, (t,))[0].to_str() for t in range(-3, 4)])
print()

# Dependent bases get rewritten over an independent set.
h = make_system(Q, [2, 4, -1], [[(1, [[1, 0], [0, 1], [0, 0]]), (3, [[0, 0], [0, 1], [1, 0]])]])
print("Bases 2, 4, -1 satisfy relations; within the search bound the relation lattice is")
print("  ", [list(v) for v in relation_lattice(h.bases, 10).basis])
r = reduce_to_independent(h)
print(f"After reduction: bases {[b.to_str() for b in r.bases]}, coefficients tabulated mod {r.modulus}.")
ok = all(evaluate(h, (m, n)) == evaluate(r, (m, n)) for m in range(-3, 4) for n in range(-3, 4))
print("Both systems agree on the box |n| <= 3:", ok)
