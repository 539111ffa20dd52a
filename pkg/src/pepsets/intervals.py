"""Outward-rounded real intervals and complex rectangles on MPFR.

Every operation takes its working precision from the operands and rounds
lower endpoints down and upper endpoints up, so an ``Interval`` always
contains the exact real it encloses.  Root enclosures for integer
polynomials are certified with Smith's inclusion theorem: with
approximations ``z_i`` of all roots and

    W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j)),

every root lies in the union of the disks ``D(z_i, n |W_i|)`` and a
connected component made of ``m`` disks holds exactly ``m`` roots.
"""

from fractions import Fraction

import gmpy2
import numpy as np

from .errors import PrecisionCapExceeded

_contexts = {}


def _ctx(prec, up):
    key = (prec, up)
    ctx = _contexts.get(key)
    if ctx is None:
        ctx = gmpy2.context(
            precision=prec,
            round=gmpy2.RoundUp if up else gmpy2.RoundDown,
            emax=gmpy2.get_emax_max(),
            emin=gmpy2.get_emin_min(),
        )
        _contexts[key] = ctx
    return ctx


def _down(prec):
    return _ctx(prec, False)


def _neg(x):
    # exact: the target precision covers the operand
    return gmpy2.context(precision=max(x.precision, 2)).minus(x)


def _up(prec):
    return _ctx(prec, True)


class Interval:
    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec):
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @classmethod
    def from_rational(cls, q, prec):
        q = Fraction(q)
        num, den = gmpy2.mpz(q.numerator), gmpy2.mpz(q.denominator)
        return cls(_down(prec).div(num, den), _up(prec).div(num, den), prec)

    @classmethod
    def point(cls, x, prec):
        x = gmpy2.mpfr(x, max(prec, gmpy2.mpfr(x).precision))
        return cls(x, x, prec)

    def _coerce(self, other):
        if isinstance(other, Interval):
            return other
        if isinstance(other, Box):
            return NotImplemented
        return Interval.from_rational(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = max(self.prec, o.prec)
        return Interval(_down(p).add(self.lo, o.lo), _up(p).add(self.hi, o.hi), p)

    __radd__ = __add__

    def __neg__(self):
        return Interval(_neg(self.hi), _neg(self.lo), self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = max(self.prec, o.prec)
        d, u = _down(p), _up(p)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        return Interval(min(d.mul(a, b) for a, b in pairs), max(u.mul(a, b) for a, b in pairs), p)

    __rmul__ = __mul__

    def square(self):
        d, u = _down(self.prec), _up(self.prec)
        if self.lo >= 0:
            return Interval(d.mul(self.lo, self.lo), u.mul(self.hi, self.hi), self.prec)
        if self.hi <= 0:
            return Interval(d.mul(self.hi, self.hi), u.mul(self.lo, self.lo), self.prec)
        m = max(_neg(self.lo), self.hi)
        return Interval(gmpy2.mpfr(0), u.mul(m, m), self.prec)

    def reciprocal(self):
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        d, u = _down(self.prec), _up(self.prec)
        return Interval(d.div(1, self.hi), u.div(1, self.lo), self.prec)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def sqrt(self):
        lo = max(self.lo, gmpy2.mpfr(0))
        return Interval(_down(self.prec).sqrt(lo), _up(self.prec).sqrt(max(self.hi, lo)), self.prec)

    def log(self):
        lo = _down(self.prec).log(self.lo) if self.lo > 0 else gmpy2.mpfr("-inf")
        return Interval(lo, _up(self.prec).log(self.hi), self.prec)

    def abs(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(gmpy2.mpfr(0), max(_neg(self.lo), self.hi), self.prec)

    def maximum(self, other):
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi), max(self.prec, other.prec))

    def power(self, k):
        out = Interval.from_rational(1, self.prec)
        for _ in range(k):
            out = out * self
        return out

    def intersect(self, other):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint enclosures")
        return Interval(lo, hi, max(self.prec, other.prec))

    def contains(self, q):
        q = Fraction(q)
        return gmpy2.mpq(self.lo) <= q <= gmpy2.mpq(self.hi)

    def overlaps(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    @property
    def width(self):
        return _up(self.prec).sub(self.hi, self.lo)

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return f"Interval([{float(self.lo)!r}, {float(self.hi)!r}])"


class Box:
    """Complex rectangle ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def from_rational(cls, q, prec):
        return cls(Interval.from_rational(q, prec), Interval.from_rational(0, prec))

    @property
    def prec(self):
        return max(self.re.prec, self.im.prec)

    def _coerce(self, other):
        if isinstance(other, Box):
            return other
        if isinstance(other, Interval):
            return Box(other, Interval.from_rational(0, other.prec))
        return Box.from_rational(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        return Box(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Box(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        return Box(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Box(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return Box(self.re, -self.im)

    def abs_squared(self):
        return self.re.square() + self.im.square()

    def abs(self):
        return self.abs_squared().sqrt()

    def reciprocal(self):
        n = self.abs_squared()
        inv = n.reciprocal()
        return Box(self.re * inv, -self.im * inv)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def contains(self, q):
        return self.re.contains(q) and self.im.contains(0)

    def intersect(self, other):
        return Box(self.re.intersect(other.re), self.im.intersect(other.im))

    def __repr__(self):
        return f"Box({self.re!r}, {self.im!r})"


def horner(coeffs, x, prec):
    """Evaluate a rational-coefficient polynomial at an ``Interval`` or ``Box``."""
    acc = None
    for c in reversed(coeffs):
        ci = Box.from_rational(c, prec) if isinstance(x, Box) else Interval.from_rational(c, prec)
        acc = ci if acc is None else acc * x + ci
    if acc is None:
        return Interval.from_rational(0, prec)
    return acc


class RootEnclosure:
    """Certified enclosure of one root: real interval or upper-half-plane box."""

    __slots__ = ("is_real", "value")

    def __init__(self, is_real, value):
        self.is_real = is_real
        self.value = value

    @property
    def width(self):
        if self.is_real:
            return self.value.width
        return max(self.value.re.width, self.value.im.width)

    def as_box(self):
        if self.is_real:
            return Box(self.value, Interval.from_rational(0, self.value.prec))
        return self.value


def _initial_roots(int_coeffs):
    # numpy wants highest degree first
    return list(np.roots([float(c) for c in reversed(int_coeffs)]))


def _aberth(int_coeffs, approx, prec, max_iter=200):
    """Refine all roots simultaneously with Aberth-Ehrlich steps in MPFR/MPC."""
    n = len(int_coeffs) - 1
    dcoeffs = [i * c for i, c in enumerate(int_coeffs)][1:]
    ctx = gmpy2.context(precision=prec + 16, real_prec=prec + 16, imag_prec=prec + 16)
    with ctx:
        zs = [gmpy2.mpc(complex(z)) for z in approx]
        pcs = [gmpy2.mpz(c) for c in int_coeffs]
        dcs = [gmpy2.mpz(c) for c in dcoeffs]
        tol = gmpy2.mpfr(2) ** (-(prec + 4))
        for _ in range(max_iter):
            moved = gmpy2.mpfr(0)
            new = []
            for i, z in enumerate(zs):
                pv = gmpy2.mpc(0)
                for c in reversed(pcs):
                    pv = pv * z + c
                dv = gmpy2.mpc(0)
                for c in reversed(dcs):
                    dv = dv * z + c
                if pv == 0:
                    new.append(z)
                    continue
                ratio = pv / dv if dv != 0 else gmpy2.mpc(1)
                s = gmpy2.mpc(0)
                for j, w in enumerate(zs):
                    if j != i:
                        diff = z - w
                        if diff != 0:
                            s += 1 / diff
                denom = 1 - ratio * s
                step = ratio / denom if denom != 0 else ratio
                new.append(z - step)
                scale = max(abs(z), gmpy2.mpfr(1))
                moved = max(moved, abs(step) / scale)
            zs = new
            if moved < tol:
                break
        return [(z.real, z.imag) for z in zs], n


def _exact_box(re, im, prec):
    return Box(Interval.point(re, prec), Interval.point(im, prec))


def certify_roots(int_coeffs, n_real, prec, approx=None):
    """Try to certify disjoint enclosures of every root at ``prec`` bits.

    Returns ``(real_enclosures, complex_enclosures, approximations)`` or
    ``None`` when the disks overlap or the real-axis count does not match.
    Real enclosures are sorted ascending; complex ones are the upper
    members of conjugate pairs sorted by real part.
    """
    n = len(int_coeffs) - 1
    if approx is None:
        approx = _initial_roots(int_coeffs)
    pts, _ = _aberth(int_coeffs, approx, prec)
    boxes = [_exact_box(re, im, prec) for re, im in pts]
    lc = Interval.from_rational(int_coeffs[-1], prec)
    radii = []
    for i, z in enumerate(boxes):
        pv = horner(int_coeffs, z, prec)
        den = Box(lc, Interval.from_rational(0, prec))
        for j, w in enumerate(boxes):
            if j != i:
                den = den * (z - w)
        try:
            w_i = pv / den
        except ZeroDivisionError:
            return None
        radii.append(w_i.abs() * n)
    for i in range(n):
        for j in range(i + 1, n):
            dist = (boxes[i] - boxes[j]).abs()
            if not dist.lo > (radii[i] + radii[j]).hi:
                return None
    crossing = [i for i in range(n) if abs(pts[i][1]) <= radii[i].hi]
    if len(crossing) != n_real:
        return None
    real = []
    for i in crossing:
        re, r = pts[i][0], radii[i].hi
        real.append(RootEnclosure(True, Interval(_down(prec).sub(re, r), _up(prec).add(re, r), prec)))
    cplx = []
    for i in range(n):
        if i in crossing or pts[i][1] < 0:
            continue
        r = radii[i].hi
        re, im = pts[i]
        cplx.append(
            RootEnclosure(
                False,
                Box(
                    Interval(_down(prec).sub(re, r), _up(prec).add(re, r), prec),
                    Interval(_down(prec).sub(im, r), _up(prec).add(im, r), prec),
                ),
            )
        )
    if 2 * len(cplx) + len(real) != n:
        return None
    real.sort(key=lambda e: e.value.lo)
    cplx.sort(key=lambda e: (e.value.re.lo, e.value.im.lo))
    return real, cplx, [complex(float(re), float(im)) for re, im in pts]


def isolate_roots(int_coeffs, n_real, prec, cap, approx=None):
    """Certify all roots, escalating precision from ``prec`` up to ``cap`` bits."""
    p = prec
    while True:
        out = certify_roots(int_coeffs, n_real, p, approx)
        if out is not None:
            return out, p
        if p >= cap:
            raise PrecisionCapExceeded(f"could not isolate roots within {cap} bits")
        p = min(2 * p, cap)
