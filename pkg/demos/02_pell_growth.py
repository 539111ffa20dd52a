"""Pell solutions: how many have height at most H, and how small can their height be?

Run with ``python demos/02_pell_growth.py``.
"""

import math
from pathlib import Path

from pepsets import evaluate
from pepsets.dsl import parse_job
from pepsets.experiments import count_growth, enumerate_values, minimal_vectors

job = parse_job((Path(__file__).parent / "jobs" / "pell.pep").read_text())
f = job.pep
unit = 3 + 2 * math.sqrt(2)

print("The job file describes every solution of x^2 - 2y^2 = 1 as (x, y) = f(m, n):")
print("  bases:", ", ".join(b.to_str() for b in f.bases))
for n in [(0, 0), (0, 1), (1, 1), (0, -2)]:
    x, y = evaluate(f, n)
    print(f"  f{n} = ({x.to_str()}, {y.to_str()})   x^2 - 2y^2 = {(x * x - 2 * y * y).to_str()}")
print()

en = enumerate_values(f, 1)
print(f"The box |m|, |n| <= 1 has 9 points but only {len(en)} distinct values;")
print("(m, n) and (m + 2, n) collide because (-1)^m only sees the parity of m.")
print()

print("Counting values of height at most H. A closed form predicts 2(2 floor(log 2H / log(3+2 sqrt2)) + 1).")
Hs = [10**k for k in range(2, 11)]
g = count_growth(f, Hs)
print("       H   count  closed form  3(log H)^2")
for H, c in zip(Hs, g.counts):
    oracle = 2 * (2 * math.floor(math.log(2 * H) / math.log(unit)) + 1)
    print(f"  {H:>10.0e} {c:>5} {oracle:>10} {3 * math.log(H) ** 2:>12.1f}")
fit = g.fit["count_vs_logH"]
print(f"Slope of count against log H: {fit['slope']:.4f} (closed form gives 4/log(3+2sqrt2) = {4 / math.log(unit):.4f}).")
print("Growth is linear in log H, well inside the (log H)^2 allowance for two variables.")
print()

rep = minimal_vectors(f, 30)
print("Minimal vectors: for each value keep the witnesses of least sup-norm.")
print(f"Among {len(rep.ratios)} values with a nonzero minimal witness, the smallest ratio h(f(n))/|n| is")
print(f"  C_estimate = {rep.C_estimate:.10f}  (log 3 = {math.log(3):.10f})")
for key, ws, ratio in rep.exceptional_candidates:
    value = tuple(str(c[0]) for c in key)
    print(f"  set aside: value {value} with witnesses {sorted(map(tuple, ws))}, ratio {ratio:g}")
print("The value (-1, 0) has height 0 but needs |m| = 1, so no positive C can cover it.")
