"""Exact arithmetic in a single number field ``K = Q(theta)``.

Elements are stored as rational coordinate vectors in the power basis
``1, theta, ..., theta^(d-1)``.  The field also carries an integral basis
(used for content-ideal norms) and certified enclosures of the roots of
the defining polynomial, refined on demand.
"""

import threading
from fractions import Fraction
from math import gcd, lcm

import sympy

from . import poly
from .config import DEFAULT_CAPS
from .errors import (
    AllZero,
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    IntegralBasisRequired,
    MathDomainError,
    NonMonic,
    NotIntegral,
    ReduciblePolynomial,
)
from .intervals import Box, Interval, RootEnclosure, horner, isolate_roots
from .lattice import hnf, lattice_index

_X = sympy.Symbol("x")


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(v)


def _rational_inverse(M):
    """Inverse of a square rational matrix by Gauss-Jordan; ``None`` if singular."""
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def rational_det(M):
    n = len(M)
    A = [[Fraction(v) for v in row] for row in M]
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        out *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c] != 0:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return out


def charpoly_rational(M):
    """Characteristic polynomial ``det(t*I - M)`` (Faddeev-LeVerrier), low degree first."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- M @ (Mk + c_{n-k+1} I)
        prev = [row[:] for row in Mk]
        for i in range(n):
            prev[i][i] += coeffs[n - k + 1]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs


def _squarefree_int(n):
    n = abs(n)
    if n == 0:
        return False
    return all(e == 1 for e in sympy.factorint(n).values())


def _squarefree_part_int(n):
    """Return ``(m, f)`` with ``n == f^2 * m`` and ``m`` squarefree (sign kept on ``m``)."""
    sign = -1 if n < 0 else 1
    m, f = 1, 1
    for p, e in sympy.factorint(abs(n)).items():
        f *= p ** (e // 2)
        if e % 2:
            m *= p
    return sign * m, f


def _poly_discriminant(coeffs):
    return int(sympy.discriminant(sympy.Poly(list(reversed(coeffs)), _X)))


def roots_of_unity_bound(d):
    """Largest ``m`` such that a primitive m-th root of unity can lie in a degree-d field."""
    best = 1
    for m in range(1, 4 * d * d + 3):
        if d % sympy.totient(m) == 0:
            best = m
    return best


class NumberField:
    """The field ``Q[x]/(F)`` for a monic irreducible integer polynomial ``F``."""

    def __init__(self, coeffs, integral_basis, symbol, caps, n_real):
        self.poly = tuple(int(c) for c in coeffs)
        self.degree = len(self.poly) - 1
        self.symbol = symbol
        self.caps = caps
        self.precision_cap = caps.precision_cap_bits
        self.integral_basis = tuple(tuple(Fraction(c) for c in b) for b in integral_basis)
        inv = _rational_inverse([list(b) for b in self.integral_basis])
        if inv is None:
            raise MathDomainError("integral basis is linearly dependent")
        self._to_integral = inv
        d = self.degree
        self.r1 = n_real
        self.r2 = (d - n_real) // 2
        # reduction table: theta^(d+i) in the power basis
        table = []
        cur = [Fraction(0)] * d
        if d:
            cur = [Fraction(-c) for c in self.poly[:d]]
        for _ in range(max(d - 1, 0)):
            table.append(tuple(cur))
            carry = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [a - carry * c for a, c in zip(cur, self.poly[:d])]
        self._reduce_table = table
        self._lock = threading.Lock()
        self._roots = None
        self._root_prec = 0
        self._approx = None
        self.discriminant = int(
            rational_det([[self.element(a).__mul__(self.element(b)).trace() for b in self.integral_basis]
                          for a in self.integral_basis])
        )

    # construction helpers -------------------------------------------------
    def element(self, coords):
        coords = [_as_fraction(c) for c in coords]
        if len(coords) > self.degree:
            coords = self._reduce(coords)
        coords = coords + [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def from_rational(self, q):
        return FieldElement(self, (_as_fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def from_integral_coords(self, coords):
        out = [Fraction(0)] * self.degree
        for c, b in zip(coords, self.integral_basis):
            if c:
                out = [o + c * v for o, v in zip(out, b)]
        return FieldElement(self, tuple(out))

    @property
    def gen(self):
        if self.degree == 1:
            return self.from_rational(-self.poly[0])
        return self.element([0, 1])

    @property
    def zero(self):
        return self.from_rational(0)

    @property
    def one(self):
        return self.from_rational(1)

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch("elements belong to different fields")
            return x
        return self.from_rational(_as_fraction(x))

    def _reduce(self, coeffs):
        d = self.degree
        if len(coeffs) > 2 * d - 1:
            coeffs = poly.rem(list(coeffs), [Fraction(c) for c in self.poly])
            return list(coeffs) + [Fraction(0)] * (d - len(coeffs))
        out = list(coeffs[:d]) + [Fraction(0)] * max(0, d - len(coeffs))
        for i in range(d, len(coeffs)):
            c = coeffs[i]
            if c:
                out = [o + c * t for o, t in zip(out, self._reduce_table[i - d])]
        return out

    # equality ---------------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, NumberField)
            and self.poly == other.poly
            and self.integral_basis == other.integral_basis
        )

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"NumberField({poly.to_str(list(self.poly))}, d={self.degree}, r1={self.r1}, r2={self.r2})"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_lock"] = None
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    # integral structure ------------------------------------------------------
    def integral_coords(self, x):
        """Coordinates of ``x`` in the integral basis (rationals)."""
        c = x.coords
        return [sum(c[i] * self._to_integral[i][j] for i in range(self.degree)) for j in range(self.degree)]

    def is_integral(self, x):
        return all(v.denominator == 1 for v in self.integral_coords(x))

    def denominator(self, x):
        """Least positive integer ``D`` with ``D*x`` integral."""
        out = 1
        for v in self.integral_coords(x):
            out = lcm(out, v.denominator)
        return out

    @property
    def torsion_bound(self):
        return roots_of_unity_bound(self.degree)

    # embeddings ---------------------------------------------------------------
    def root_enclosures(self, prec=64):
        """Certified enclosures of the roots of the defining polynomial.

        Real roots come first (ascending at first isolation), then one
        representative of each complex-conjugate pair (positive imaginary
        part).  The ordering is fixed at first isolation; later refinements
        only shrink enclosures.
        """
        with self._lock:
            if self._roots is not None and self._root_prec >= prec:
                return self._roots
            (real, cplx, approx), p = isolate_roots(
                list(self.poly), self.r1, max(prec, 64), max(self.precision_cap, prec), self._approx
            )
            new = real + cplx
            if self._roots is not None:
                merged = []
                for old in self._roots:
                    match = None
                    for cand in new:
                        if cand.is_real != old.is_real:
                            continue
                        try:
                            value = old.value.intersect(cand.value)
                        except ValueError:
                            continue
                        match = RootEnclosure(old.is_real, value)
                        break
                    if match is None:
                        raise MathDomainError("root refinement lost track of an embedding")
                    merged.append(match)
                new = merged
            self._roots = new
            self._root_prec = p
            self._approx = approx
            return new

    def places(self):
        """List of ``(enclosure, local_degree)`` per archimedean place."""
        return [(e, 1 if e.is_real else 2) for e in self.root_enclosures()]

    def embed(self, x, prec):
        """Enclosures of ``sigma_v(x)`` for every archimedean place (Interval or Box)."""
        roots = self.root_enclosures(prec)
        coeffs = list(x.coords)
        return [horner(coeffs, e.value, prec) for e in roots]

    def embed_all(self, x, prec):
        """Enclosures of all ``d`` complex embeddings: places, then conjugates of complex ones."""
        vals = [v if isinstance(v, Box) else Box(v, Interval.from_rational(0, prec)) for v in self.embed(x, prec)]
        return vals + [v.conjugate() for v, e in zip(vals, self.root_enclosures(prec)) if not e.is_real]

    def local_degrees(self):
        return [1 if e.is_real else 2 for e in self.root_enclosures()]


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords
        self._hash = None

    # coercion -----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            q = o.coords[0]
            return FieldElement(self.field, tuple(a * q for a in self.coords))
        if self.is_rational():
            q = self.coords[0]
            return FieldElement(self.field, tuple(q * b for b in o.coords))
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, tuple(self.field._reduce(prod)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.field.from_rational(1 / self.coords[0])
        g, s, _ = poly.xgcd(list(self.coords), [Fraction(c) for c in self.field.poly])
        if len(g) != 1:
            raise MathDomainError("defining polynomial is not irreducible")
        return self.field.element(s)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # predicates ------------------------------------------------------------
    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.coords == other.coords and (self.field is other.field or self.field == other.field)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords) if not self.is_rational() else hash(self.coords[0])
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # invariants -----------------------------------------------------------
    def multiplication_matrix(self):
        """Matrix of ``y -> self*y`` in the power basis (columns are images)."""
        d = self.field.degree
        cols = []
        basis = self.field.one
        gen = self.field.gen if d > 1 else None
        for j in range(d):
            cols.append((self * basis).coords)
            if gen is not None:
                basis = basis * gen
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def trace(self):
        M = self.multiplication_matrix()
        return sum(M[i][i] for i in range(len(M)))

    def norm(self):
        return rational_det(self.multiplication_matrix())

    def charpoly(self):
        return charpoly_rational(self.multiplication_matrix())

    def minimal_polynomial(self):
        return minimal_polynomial(self)

    def to_str(self):
        return element_to_str(self)

    def __repr__(self):
        return f"FieldElement({element_to_str(self)})"


def element_to_str(x, symbol=None):
    symbol = symbol or x.field.symbol
    parts = []
    for i, c in enumerate(x.coords):
        if c == 0:
            continue
        cs = str(c)
        if i == 0:
            parts.append(cs)
            continue
        mono = symbol if i == 1 else f"{symbol}^{i}"
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{cs}*{mono}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def minimal_polynomial(x):
    """Primitive integer minimal polynomial of ``x`` over Q, low degree first."""
    if x.is_rational():
        return poly.primitive_integer([-x.coords[0], Fraction(1)])
    return poly.primitive_integer(poly.squarefree_part(x.charpoly()))


def content_ideal_norm(xs):
    """``[O_K : I]`` for the ideal ``I`` generated by the integral elements ``xs``."""
    xs = list(xs)
    if not xs:
        raise AllZero("empty tuple")
    K = xs[0].field
    if all(x.is_zero() for x in xs):
        raise AllZero("all coordinates are zero")
    if K.degree == 1:
        g = 0
        for x in xs:
            q = x.coords[0]
            if q.denominator != 1:
                raise NotIntegral(f"{q} is not integral")
            g = gcd(g, q.numerator)
        return g
    rows = []
    basis = [K.element(b) for b in K.integral_basis]
    for x in xs:
        coords = K.integral_coords(x)
        if any(v.denominator != 1 for v in coords):
            raise NotIntegral(f"{x.to_str()} is not integral")
        if x.is_zero():
            continue
        for b in basis:
            rows.append([int(v) for v in K.integral_coords(x * b)])
    H, _ = hnf(rows)
    return lattice_index(H)


def _integral_basis_quadratic(coeffs):
    # F = x^2 + b x + c; theta = (-b + sqrt(D)) / 2 with D = b^2 - 4c = f^2 m
    c, b = coeffs[0], coeffs[1]
    D = b * b - 4 * c
    m, f = _squarefree_part_int(D)
    # sqrt(m) = (2 theta + b) / f
    sqrt_m = [Fraction(b, f), Fraction(2, f)]
    if m % 4 == 1:
        omega = [(1 + sqrt_m[0]) / 2, sqrt_m[1] / 2]
    else:
        omega = sqrt_m
    return [[Fraction(1), Fraction(0)], omega]


def _validate_basis(K_coeffs, basis):
    d = len(K_coeffs) - 1
    basis = [[_as_fraction(v) for v in b] + [Fraction(0)] * (d - len(b)) for b in basis]
    if len(basis) != d:
        raise MathDomainError(f"integral basis needs {d} elements")
    if rational_det(basis) == 0:
        raise MathDomainError("integral basis is linearly dependent")
    return basis


def make_field(defining_polynomial, integral_basis=None, symbol="a", caps=DEFAULT_CAPS):
    """Build a number field from a monic irreducible integer polynomial.

    ``defining_polynomial`` is a coefficient list (lowest degree first) or a
    string in ``x`` such as ``"x^2 - 2"``.
    """
    if isinstance(defining_polynomial, str):
        expr = sympy.sympify(defining_polynomial.replace("^", "**"), locals={"x": _X})
        p = sympy.Poly(expr, _X)
        raw = list(reversed(p.all_coeffs()))
    else:
        raw = list(defining_polynomial)
    if any(Fraction(c).denominator != 1 for c in raw):
        raise NonMonic("defining polynomial must have integer coefficients")
    coeffs = poly.trim([int(c) for c in raw])
    d = len(coeffs) - 1
    if d < 1:
        raise MathDomainError("defining polynomial must have degree at least 1")
    if coeffs[-1] != 1:
        raise NonMonic("defining polynomial must be monic")
    if d > caps.max_degree:
        raise DegreeTooLarge(f"degree {d} exceeds cap {caps.max_degree}")
    if d == 1 and coeffs[0] == 0:
        raise MathDomainError("use x - 1 (not x) to request the rational field")
    P = sympy.Poly(list(reversed(coeffs)), _X)
    if d > 1 and not P.is_irreducible:
        raise ReduciblePolynomial(f"{poly.to_str(coeffs)} is reducible over Q")
    n_real = int(P.count_roots()) if d > 1 else 1
    if integral_basis is not None:
        basis = _validate_basis(coeffs, [getattr(b, "coords", b) for b in integral_basis])
    elif d == 1:
        basis = [[Fraction(1)]]
    elif d == 2:
        basis = _integral_basis_quadratic(coeffs)
    else:
        if not _squarefree_int(_poly_discriminant(coeffs)):
            raise IntegralBasisRequired(
                "discriminant of the defining polynomial is not squarefree; supply an integral basis"
            )
        basis = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    K = NumberField(coeffs, basis, symbol, caps, n_real)
    if integral_basis is not None:
        _check_order(K)
    return K


def _check_order(K):
    """Supplied bases must span a ring of integral elements containing theta."""
    elems = [K.element(b) for b in K.integral_basis]
    for e in elems:
        if any(Fraction(c).denominator != 1 for c in minimal_polynomial(e)) or minimal_polynomial(e)[-1] != 1:
            raise NotIntegral(f"basis element {e.to_str()} is not an algebraic integer")
    if not K.is_integral(K.gen) or not K.is_integral(K.one):
        raise MathDomainError("integral basis must contain Z[theta]")
    for a in elems:
        for b in elems:
            if not K.is_integral(a * b):
                raise MathDomainError("integral basis is not closed under multiplication")


def rationals(caps=DEFAULT_CAPS):
    return make_field([-1, 1], symbol="a", caps=caps)
