"""Dense univariate polynomials as coefficient lists, lowest degree first.

The helpers are generic over the coefficient ring: anything supporting
``+ - * /`` and comparison with ``0`` works, so the same code serves
rational polynomials (``Fraction`` coefficients) and polynomials over a
number field (``FieldElement`` coefficients).
"""

from fractions import Fraction
from math import gcd


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        out.append(a + b)
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p, q):
    p = trim(p)
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = q[-1]
    quo = [0] * max(len(p) - len(q) + 1, 0)
    rem = list(p)
    for k in range(len(p) - len(q), -1, -1):
        c = _div(rem[k + len(q) - 1], lead)
        quo[k] = c
        if c == 0:
            continue
        for j, b in enumerate(q):
            rem[k + j] = rem[k + j] - c * b
    return trim(quo), trim(rem[: len(q) - 1])


def rem(p, q):
    return divmod_poly(p, q)[1]


def monic(p):
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    return [_div(c, lead) for c in p]


def pgcd(p, q):
    """Monic gcd; ``gcd(0, 0) == []``."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, r2 = divmod_poly(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return monic(r0), [_div(c, lead) for c in s0], [_div(c, lead) for c in t0]


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p, q):
    """``p(q(t))``."""
    acc = []
    for c in reversed(trim(p)):
        acc = add(mul(acc, q), [c])
    return acc


def squarefree_part(p):
    p = trim(p)
    g = pgcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0]) if len(g) > 1 else monic(p)


def primitive_integer(p):
    """Scale a rational polynomial to a primitive integer one with positive leading coefficient."""
    p = [Fraction(c) for c in trim(p)]
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def to_str(p, var="x"):
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        elif mono:
            s = f"{c}*{mono}"
        else:
            s = str(c)
        terms.append(s)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out
