"""Heights of algebraic points, computed two independent ways.

Run with ``python demos/01_heights.py``.
"""

import math
from fractions import Fraction

from pepsets import Comparison, affine_height, compare_height, element_height_mahler, make_field

K = make_field("x^2-2", symbol="s")
s = K.gen

print("A rational point first. Only the archimedean place matters for coprime integers,")
print("so the height of (3, -2) is log 3.")
h = affine_height([3, -2])
print(f"  h(3, -2) in [{h.log_lo:.15f}, {h.log_hi:.15f}], log 3 = {math.log(3):.15f}")
print(f"  exact H^[K:Q] = {h.exact_rational_power}")
print()

print("Denominators count too: h(1/2) = log 2 because (1 : 1/2) = (2 : 1).")
print(f"  h(1/2) = {affine_height([Fraction(1, 2)]).value:.15f}")
print()

print("Inside Q(sqrt 2) the unit 3 + 2 sqrt 2 has two conjugates, 5.83 and 0.17.")
print("Only the large one exceeds 1, and we divide its log by the degree 2.")
u = 3 + 2 * s
a = affine_height([u], tolerance=1e-14)
b = element_height_mahler(u, tolerance=1e-14)
print(f"  via places          : {a.value:.15f}")
print(f"  via Mahler measure  : {b.value:.15f}")
print(f"  enclosures overlap  : {a.overlaps(b)}")
print()

print("Galois conjugates have the same height.")
for x in (Fraction(7, 3) + 5 * s, Fraction(7, 3) - 5 * s):
    print(f"  h({x.to_str()}) = {affine_height([x]).value:.12f}")
print()

print("Threshold tests are exact, even when the height is irrational.")
print("H(sqrt 2, 2) is exactly 2, and H(3 + 2 sqrt 2) = 1 + sqrt 2 lies strictly between 2.414 and 2.415.")
for pt, bound in [([s, 2], 2), ([u], Fraction(2414, 1000)), ([u], Fraction(2415, 1000))]:
    c = compare_height(pt, bound)
    word = {Comparison.BELOW: "<", Comparison.EQUAL: "=", Comparison.ABOVE: ">"}[c]
    print(f"  H({', '.join(x.to_str() if hasattr(x, 'to_str') else str(x) for x in pt)}) {word} {bound}")
