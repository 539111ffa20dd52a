"""Weil heights of tuples of number-field elements.

For a tuple cleared of denominators, ``y_0, ..., y_n`` integral in ``O_K``,

    H(y_0 : ... : y_n)^d = prod_{v | inf} max_i |sigma_v(y_i)|^{d_v} / N(y_0, ..., y_n)

where ``N(...)`` is the norm of the content ideal.  Archimedean factors are
enclosed with outward-rounded interval arithmetic; the non-archimedean part
is an exact integer.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import gmpy2
import sympy

from .config import DEFAULT_CAPS
from .errors import AllZero, PrecisionCapExceeded
from .intervals import Interval, isolate_roots
from .numfield import FieldElement, content_ideal_norm, minimal_polynomial, rationals

_down53 = gmpy2.context(precision=53, round=gmpy2.RoundDown)
_up53 = gmpy2.context(precision=53, round=gmpy2.RoundUp)


@dataclass(frozen=True)
class HeightValue:
    """Certified enclosure ``[log_lo, log_hi]`` of a logarithmic height."""

    log_lo: float
    log_hi: float
    tolerance: float
    exact_rational_power: Fraction | None = None

    @property
    def value(self):
        return (self.log_lo + self.log_hi) / 2

    @property
    def width(self):
        return self.log_hi - self.log_lo

    def overlaps(self, other):
        return self.log_lo <= other.log_hi and other.log_lo <= self.log_hi

    def contains(self, x):
        return self.log_lo <= x <= self.log_hi

    def to_dict(self):
        out = {"log_lo": self.log_lo, "log_hi": self.log_hi, "tolerance": self.tolerance}
        if self.exact_rational_power is not None:
            out["exact_rational_power"] = str(self.exact_rational_power)
        return out


class Comparison(enum.Enum):
    BELOW = "Below"
    EQUAL = "Equal"
    ABOVE = "Above"

    def __str__(self):
        return self.value


def _to_float_interval(iv):
    lo = float(_down53.add(iv.lo, 0)) if iv.lo != gmpy2.mpfr("-inf") else -math.inf
    hi = float(_up53.add(iv.hi, 0))
    return lo, hi


def _log_rational(q, prec):
    q = Fraction(q)
    return Interval.from_rational(q, prec).log()


def _make_value(iv, tolerance, exact=None, scale=1):
    lo, hi = _to_float_interval(iv)
    lo = max(lo / scale if scale != 1 else lo, 0.0)
    hi = max(hi / scale if scale != 1 else hi, 0.0)
    if scale != 1:
        lo = max(math.nextafter(lo, -math.inf), 0.0)
        hi = math.nextafter(hi, math.inf)
    return HeightValue(lo, hi, tolerance, exact)


def _field_of(xs):
    for x in xs:
        if isinstance(x, FieldElement):
            return x.field
    return rationals()


def _normalize(xs):
    xs = list(xs)
    K = _field_of(xs)
    return K, [K.coerce(x) for x in xs]


def _clear(K, xs):
    """Scale by the least positive integer making every coordinate integral."""
    D = 1
    for x in xs:
        D = lcm(D, K.denominator(x))
    return [x * D for x in xs] if D != 1 else list(xs)


def _rational_projective(xs):
    qs = [x.coords[0] for x in xs]
    D = 1
    for q in qs:
        D = lcm(D, q.denominator)
    ints = [int(q * D) for q in qs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return Fraction(max(abs(v) for v in ints), g)


class _Archimedean:
    """Interval data for ``prod_v max_i |sigma_v(y_i)|^{d_v}`` at a given precision."""

    def __init__(self, K, ys, prec):
        self.K = K
        self.prec = prec
        self.roots = K.root_enclosures(prec)
        embedded = [K.embed(y, prec) if not y.is_zero() else None for y in ys]
        self.abs = []
        for v, e in enumerate(self.roots):
            row = []
            for i, y in enumerate(ys):
                if embedded[i] is None:
                    row.append(Interval.from_rational(0, prec))
                else:
                    row.append(embedded[i][v].abs())
            self.abs.append(row)
        self.maxima = []
        for row in self.abs:
            m = row[0]
            for a in row[1:]:
                m = m.maximum(a)
            self.maxima.append(m)

    def log_product(self):
        total = Interval.from_rational(0, self.prec)
        for m, e in zip(self.maxima, self.roots):
            lg = m.log()
            total = total + (lg if e.is_real else lg * 2)
        return total

    def product(self):
        total = Interval.from_rational(1, self.prec)
        for m, e in zip(self.maxima, self.roots):
            total = total * (m if e.is_real else m.square())
        return total

    def candidates(self, v):
        """Indices whose modulus may attain the maximum at place ``v``."""
        row = self.abs[v]
        top = max(a.lo for a in row)
        return [i for i, a in enumerate(row) if a.hi >= top]

    def dominant(self):
        """Index certifiably maximal at every place, else ``None``."""
        n = len(self.abs[0]) if self.abs else 0
        for i in range(n):
            if all(row[i].lo >= max((a.hi for j, a in enumerate(row) if j != i), default=0) for row in self.abs):
                return i
        return None


def _prepare(xs):
    K, xs = _normalize(xs)
    if not xs or all(x.is_zero() for x in xs):
        raise AllZero("height of the all-zero tuple is undefined")
    return K, xs


def projective_height(xs, tolerance=None, caps=DEFAULT_CAPS):
    """Logarithmic height of the projective point ``(x_0 : ... : x_n)``."""
    tolerance = caps.default_tolerance if tolerance is None else float(tolerance)
    K, xs = _prepare(xs)
    d = K.degree
    if all(x.is_rational() for x in xs):
        H = _rational_projective(xs)
        prec = 64
        while True:
            iv = _log_rational(H, prec)
            val = _make_value(iv, tolerance, H**d)
            if val.width <= tolerance:
                return val
            prec *= 2
    ys = _clear(K, xs)
    Nc = content_ideal_norm(ys)
    prec = 64
    cap = K.precision_cap
    while True:
        arch = _Archimedean(K, ys, prec)
        dom = arch.dominant()
        exact = None
        if dom is not None:
            exact = Fraction(abs(ys[dom].norm()), Nc)
            iv = _log_rational(exact, prec)
        else:
            iv = arch.log_product() - _log_rational(Nc, prec)
        val = _make_value(iv, tolerance, exact, scale=d)
        if val.width <= tolerance and math.isfinite(val.log_lo):
            return val
        if prec >= cap:
            raise PrecisionCapExceeded(f"height not certified to {tolerance} within {cap} bits")
        prec = min(2 * prec, cap)


def affine_height(xs, tolerance=None, caps=DEFAULT_CAPS):
    """``h_aff(x_1, ..., x_n) = h(1 : x_1 : ... : x_n)``."""
    xs = list(xs)
    K = _field_of(xs)
    return projective_height([K.one] + [K.coerce(x) for x in xs], tolerance, caps)


def element_height_mahler(x, tolerance=None, caps=DEFAULT_CAPS):
    """Height of a single element from the Mahler measure of its minimal polynomial."""
    tolerance = caps.default_tolerance if tolerance is None else float(tolerance)
    if not isinstance(x, FieldElement):
        x = rationals().coerce(x)
    m = minimal_polynomial(x)
    n = len(m) - 1
    if n == 1:
        return projective_height([x.field.from_rational(m[1]), x.field.from_rational(-m[0])], tolerance, caps)
    t = sympy.Symbol("t")
    n_real = int(sympy.Poly(list(reversed(m)), t).count_roots())
    prec = 64
    approx = None
    cap = caps.precision_cap_bits
    while True:
        (real, cplx, approx), p = isolate_roots(m, n_real, prec, cap, approx)
        total = Interval.from_rational(abs(m[-1]), p).log()
        one = Interval.from_rational(1, p)
        for e in real:
            total = total + e.value.abs().maximum(one).log()
        for e in cplx:
            total = total + e.value.abs().maximum(one).log() * 2
        val = _make_value(total, tolerance, scale=n)
        if val.width <= tolerance:
            return val
        if p >= cap:
            raise PrecisionCapExceeded(f"Mahler height not certified within {cap} bits")
        prec = min(2 * p, cap)


# ---------------------------------------------------------------------------
# exact equality of products of conjugates


def _embedding_index_map(K):
    """For each place index: list of indices in ``K.embed_all`` order."""
    roots = K.root_enclosures()
    n_places = len(roots)
    out, k = [], 0
    for v, e in enumerate(roots):
        if e.is_real:
            out.append([v])
        else:
            out.append([v, n_places + k])
            k += 1
    return out


def _product_polynomial(K, factors):
    """Integer polynomial vanishing at ``prod_j p_j(theta_j)`` for any roots ``theta_j``."""
    t, y, z = sympy.symbols("t y z")
    F = sympy.Poly(list(reversed(K.poly)), t)
    G = None
    for coords in factors:
        p_expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(coords))
        if G is None:
            G = sympy.Poly(sympy.resultant(F.as_expr(), y - p_expr, t), y)
        else:
            Hzy = sympy.resultant(F.as_expr(), y - z * p_expr, t)
            G = sympy.Poly(sympy.resultant(G.as_expr().subs(y, z), Hzy, z), y)
    return G


def _separation_log2(S):
    """Lower bound for log2 of the minimum root distance of a squarefree integer polynomial."""
    coeffs = [int(c) for c in S.all_coeffs()]
    n = len(coeffs) - 1
    norm2 = math.sqrt(sum(c * c for c in coeffs))
    return 0.5 * math.log2(3) - (n + 2) / 2 * math.log2(n) + (1 - n) * math.log2(norm2) - 1


def _abs_product_equals(K, per_embedding, R):
    """Decide exactly whether ``|prod_j p_j(theta_j)| == R`` (R a positive rational)."""
    R = Fraction(R)
    one = K.one.coords
    nontrivial = [c for c in per_embedding if tuple(c) != one]
    if not nontrivial:
        return R == 1
    G = _product_polynomial(K, nontrivial)
    y = G.gens[0]
    Rs = sympy.Rational(R.numerator, R.denominator)
    signs = [s for s in (1, -1) if G.eval(s * Rs) == 0]
    if not signs:
        return False
    S = sympy.Poly(sympy.sqf_part(G.as_expr()), y)
    S = sympy.Poly(S.as_expr() * sympy.lcm([sympy.fraction(c)[1] for c in S.all_coeffs()]), y)
    n = S.degree()
    if n <= 1:
        return True
    sep_log2 = _separation_log2(S)
    prec = max(64, int(-sep_log2) + 64)
    while True:
        prod = None
        for j, coords in enumerate(per_embedding):
            if tuple(coords) == one:
                continue
            v = K.embed_all(K.element(coords), prec)[j]
            prod = v if prod is None else prod * v
        width = max(prod.re.width, prod.im.width)
        if width > 0 and math.log2(float(width)) + 1 >= sep_log2:
            prec *= 2
            continue
        return any(prod.contains(s * R) for s in signs)


def _moduli_equal(K, index_map, v, a, b):
    """Exact test ``|sigma_v(a)| == |sigma_v(b)|`` for nonzero ``a``, ``b``."""
    w = a / b
    if len(index_map[v]) == 1:
        return w == 1 or w == -1
    per = [K.one.coords] * K.degree
    for j in index_map[v]:
        per[j] = w.coords
    return _abs_product_equals(K, per, 1)


def compare_height(P, bound, caps=DEFAULT_CAPS):
    """Certified trichotomy of ``H_aff(P)`` against a positive rational ``bound``."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    P = list(P)
    K = _field_of(P)
    xs = [K.one] + [K.coerce(x) for x in P]
    d = K.degree
    if all(x.is_rational() for x in xs):
        H = _rational_projective(xs)
        return Comparison.BELOW if H < bound else Comparison.EQUAL if H == bound else Comparison.ABOVE
    ys = _clear(K, xs)
    Nc = content_ideal_norm(ys)
    R = bound**d * Nc
    prec = 64
    cap = K.precision_cap
    index_map = _embedding_index_map(K)
    tested = {}
    exceed_ok = False
    while True:
        arch = _Archimedean(K, ys, prec)
        A = arch.product()
        if A.hi < R:
            return Comparison.BELOW
        if A.lo > R:
            return Comparison.ABOVE
        if prec >= 128:
            choice = []
            for v in range(len(arch.abs)):
                cands = arch.candidates(v)
                first = cands[0]
                if all(_moduli_equal(K, index_map, v, ys[first], ys[c]) for c in cands[1:]):
                    choice.append(first)
                else:
                    choice.append(None)
            if None not in choice:
                key = tuple(choice)
                if key not in tested:
                    per = [None] * d
                    for v, i in enumerate(choice):
                        for j in index_map[v]:
                            per[j] = ys[i].coords
                    tested[key] = _abs_product_equals(K, per, R)
                if tested[key]:
                    return Comparison.EQUAL
                exceed_ok = True
        if prec >= cap and not exceed_ok:
            raise PrecisionCapExceeded(f"height comparison undecided within {cap} bits")
        prec *= 2
