"""Square matrices over a number field.

Semisimplicity, eigen-decomposition (eigenvalues must lie in the field),
the multiplicative Jordan decomposition ``M = g_s g_u`` and the conversion
of products of powers of semisimple matrices into a :class:`PepSystem`.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy

from . import poly
from .errors import DimensionMismatch, EigenvaluesNotInField, FieldMismatch, NotInvertible, NotSemisimple, NotUnipotent
from .exppoly import PepSystem, Term
from .heights import affine_height


@dataclass(frozen=True, eq=False)
class MatrixK:
    field: object
    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        for r in self.rows:
            for x in r:
                if x.field != self.field:
                    raise FieldMismatch("matrix entry outside the working field")

    @classmethod
    def from_rows(cls, K, rows):
        return cls(K, tuple(tuple(K.coerce(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, K, n):
        return cls(K, tuple(tuple(K.one if i == j else K.zero for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, K, entries):
        n = len(entries)
        return cls(K, tuple(tuple(K.coerce(entries[i]) if i == j else K.zero for j in range(n)) for i in range(n)))

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, MatrixK):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "MatrixK(" + self.to_str() + ")"

    def to_str(self):
        return "[" + ", ".join("[" + ", ".join(x.to_str() for x in r) + "]" for r in self.rows) + "]"

    def entries(self):
        """Row-major entry tuple."""
        return tuple(x for r in self.rows for x in r)

    def to_json(self):
        return [[[str(c) for c in x.coords] for x in r] for r in self.rows]

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        return MatrixK(self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return MatrixK(self.field, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c):
        return MatrixK(self.field, tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if not isinstance(other, MatrixK):
            return self.scale(self.field.coerce(other))
        if other.n != self.n:
            raise DimensionMismatch("matrix sizes differ")
        cols = list(zip(*other.rows))
        zero = self.field.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return MatrixK(self.field, tuple(out))

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = MatrixK.identity(self.field, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def trace(self):
        acc = self.field.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def inverse(self):
        inv = _solve(self, MatrixK.identity(self.field, self.n))
        if inv is None:
            raise NotInvertible("matrix is singular")
        return inv

    def det(self):
        c = self.charpoly
        d = c[0] if c else self.field.zero
        return d if self.n % 2 == 0 else -d

    def is_invertible(self):
        return not self.det().is_zero()

    # polynomials ---------------------------------------------------------
    @cached_property
    def charpoly(self):
        """Monic characteristic polynomial, lowest degree first (Faddeev-LeVerrier)."""
        n = self.n
        K = self.field
        coeffs = [K.zero] * (n + 1)
        coeffs[n] = K.one
        I = MatrixK.identity(K, n)
        Mk = MatrixK(K, tuple(tuple(K.zero for _ in range(n)) for _ in range(n)))
        for k in range(1, n + 1):
            Mk = self * Mk + I.scale(coeffs[n - k + 1])
            coeffs[n - k] = -(self * Mk).trace() / k
        return coeffs

    @cached_property
    def minpoly(self):
        """Monic minimal polynomial from the first linear dependency among powers."""
        K = self.field
        n = self.n
        vecs = []
        P = MatrixK.identity(K, n)
        for m in range(n + 1):
            vecs.append(P.entries())
            sol = _dependency(vecs)
            if sol is not None:
                return sol
            P = P * self
        raise AssertionError("Cayley-Hamilton violated")

    def poly_eval(self, p):
        """``p(M)`` by Horner's rule."""
        K = self.field
        acc = MatrixK(K, tuple(tuple(K.zero for _ in range(self.n)) for _ in range(self.n)))
        I = MatrixK.identity(K, self.n)
        for c in reversed(p):
            acc = acc * self + I.scale(K.coerce(c))
        return acc


def _rref(rows, ncols):
    """Reduced row echelon form over the field; returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def _solve(M, B):
    n = M.n
    aug = [list(M.rows[i]) + list(B.rows[i]) for i in range(n)]
    A, piv = _rref(aug, n)
    if piv != list(range(n)):
        return None
    return MatrixK(M.field, tuple(tuple(A[i][n:]) for i in range(n)))


def _dependency(vecs):
    """Monic coefficients ``c`` with ``sum c_i vecs_i == 0`` and last coefficient 1, if the last vector depends on the rest."""
    m = len(vecs)
    K = vecs[0][0].field
    cols = len(vecs[0])
    # solve sum_{i<m-1} c_i v_i = -v_{m-1}
    aug = [[vecs[i][j] for i in range(m - 1)] + [-vecs[m - 1][j]] for j in range(cols)]
    A, piv = _rref(aug, m)
    if (m - 1) in piv:
        return None
    c = [K.zero] * (m - 1)
    for row, p in zip(A, piv):
        c[p] = row[m - 1]
    return c + [K.one]


def _nullspace(M):
    """Basis of the right kernel; each vector has a 1 at its free column."""
    n = M.n
    K = M.field
    A, piv = _rref(M.rows, n)
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        v = [K.zero] * n
        v[f] = K.one
        for row, p in zip(A, piv):
            v[p] = -row[f]
        out.append((f, v))
    return out


# ---------------------------------------------------------------------------
# factoring over K


def _is_constant(p):
    return poly.degree(p) <= 0


def _to_sympy_bivariate(K, p, x, t):
    expr = 0
    for i, c in enumerate(p):
        for j, a in enumerate(c.coords):
            if a:
                expr += sympy.Rational(a.numerator, a.denominator) * x**j * t**i
    return expr


def factor_over_field(p):
    """Monic irreducible factors over ``K`` of a polynomial with coefficients in ``K``.

    Trager's algorithm: shift until the norm is squarefree, factor the norm
    over Q with sympy, and take gcds back in ``K[t]``.  Returns a list of
    ``(factor, multiplicity)``.
    """
    p = poly.monic(poly.trim(p))
    if poly.degree(p) < 1:
        return []
    K = p[0].field
    out = []
    rest = p
    # squarefree decomposition by repeated gcd
    sq = poly.squarefree_part(rest)
    for f in _factor_squarefree(K, sq):
        mult = 0
        while True:
            q, r = poly.divmod_poly(rest, f)
            if r:
                break
            rest = q
            mult += 1
        out.append((f, mult))
    return out


def _factor_squarefree(K, p):
    if poly.degree(p) == 1:
        return [p]
    if K.degree == 1:
        t = sympy.Symbol("t")
        expr = sum(sympy.Rational(c.coords[0].numerator, c.coords[0].denominator) * t**i for i, c in enumerate(p))
        facs = sympy.factor_list(expr, t)[1]
        res = []
        for f, _ in facs:
            cs = sympy.Poly(f, t).all_coeffs()[::-1]
            res.append(poly.monic([K.from_rational(Fraction(int(c.p), int(c.q))) for c in cs]))
        return res
    x, t = sympy.symbols("x t")
    F = sum(c * x**i for i, c in enumerate(K.poly))
    theta = K.gen
    for s in range(0, 50):
        shifted = poly.compose(p, [-s * theta, K.one]) if s else p
        N = sympy.Poly(sympy.resultant(F, _to_sympy_bivariate(K, shifted, x, t), x), t)
        if sympy.degree(sympy.gcd(N, N.diff(t)), t) > 0:
            continue
        res = []
        for f, _ in N.factor_list()[1]:
            cs = f.all_coeffs()[::-1]
            fk = [K.from_rational(Fraction(int(c.p), int(c.q))) for c in cs]
            g = poly.pgcd(shifted, fk)
            if poly.degree(g) >= 1:
                res.append(poly.monic(poly.compose(g, [s * theta, K.one])))
        return res
    raise AssertionError("no squarefree shift found")


def _poly_str(p, var="t"):
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c.is_zero():
            continue
        cs = c.to_str()
        if not c.is_rational():
            cs = f"({cs})"
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            terms.append(cs)
        elif c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{cs}*{mon}")
    s = " + ".join(terms) if terms else "0"
    return s.replace("+ -", "- ")


def roots_in_field(p):
    """Roots of ``p`` in ``K`` with multiplicity, plus the nonlinear factors left over."""
    roots, other = [], []
    for f, m in factor_over_field(p):
        if poly.degree(f) == 1:
            roots.append((-f[0] / f[1], m))
        else:
            other.append((f, m))
    return roots, other


# ---------------------------------------------------------------------------
# operations


def is_semisimple(M):
    """Diagonalizable over the algebraic closure, i.e. squarefree minimal polynomial."""
    m = M.minpoly
    return _is_constant(poly.pgcd(m, poly.derivative(m)))


def _sort_key_element(x):
    return tuple(-c for c in x.coords)


def eigen_decompose(M):
    """``(g, eigenvalues)`` with ``g^{-1} M g`` diagonal; verified exactly."""
    if not is_semisimple(M):
        raise NotSemisimple("minimal polynomial has a repeated factor")
    roots, other = roots_in_field(M.charpoly)
    if other:
        names = [_poly_str(f) for f, _ in other]
        raise EigenvaluesNotInField("characteristic polynomial does not split; factors: " + ", ".join(names), names)
    cols = []
    K = M.field
    I = MatrixK.identity(K, M.n)
    for lam, mult in roots:
        vecs = _nullspace(M - I.scale(lam))
        if len(vecs) != mult:
            raise NotSemisimple("eigenspace dimension below multiplicity")
        cols.extend((f, _sort_key_element(lam), lam, v) for f, v in vecs)
    cols.sort(key=lambda c: (c[0], c[1]))
    g = MatrixK(K, tuple(tuple(c[3][i] for c in cols) for i in range(M.n)))
    eig = [c[2] for c in cols]
    if g.inverse() * M * g != MatrixK.diagonal(K, eig):
        raise AssertionError("eigen-decomposition failed verification")
    return g, eig


def jordan_multiplicative(M):
    """``(g_s, g_u)`` with ``M = g_s g_u = g_u g_s``, ``g_s`` semisimple, ``g_u`` unipotent.

    The semisimple part comes from Newton's iteration ``S <- S - p(S) p'(S)^{-1}``
    with ``p`` the squarefree part of the characteristic polynomial.
    """
    if not M.is_invertible():
        raise NotInvertible("Jordan decomposition needs an invertible matrix")
    p = poly.squarefree_part(M.charpoly)
    dp = poly.derivative(p)
    S = M
    for _ in range(2 * M.n + 2):
        P = S.poly_eval(p)
        if P.is_zero():
            break
        S = S - P * S.poly_eval(dp).inverse()
    else:
        raise AssertionError("Newton iteration did not converge")
    U = M * S.inverse()
    I = MatrixK.identity(M.field, M.n)
    if not (S * U == M and U * S == M and is_semisimple(S) and ((U - I) ** M.n).is_zero()):
        raise AssertionError("Jordan decomposition failed verification")
    return S, U


def bg_to_pep(gammas, variables=None):
    """PEP system of ``(a_1..a_r) -> entries of gamma_1^{a_1} ... gamma_r^{a_r}``.

    Each ``gamma_i = sum_lambda lambda * P_{i,lambda}`` with spectral
    projectors ``P``; expanding the product gives one term per choice of
    eigenvalues.
    """
    gammas = list(gammas)
    if not gammas:
        raise DimensionMismatch("need at least one matrix")
    K = gammas[0].field
    n = gammas[0].n
    if any(g.n != n for g in gammas):
        raise DimensionMismatch("matrices must share a size")
    spectral = []
    for gam in gammas:
        g, eig = eigen_decompose(gam)
        ginv = g.inverse()
        proj = {}
        for j, lam in enumerate(eig):
            E = MatrixK(K, tuple(tuple(K.one if (a == j and b == j) else K.zero for b in range(n)) for a in range(n)))
            P = g * E * ginv
            proj[lam] = proj[lam] + P if lam in proj else P
        spectral.append(sorted(proj.items(), key=lambda kv: _sort_key_element(kv[0])))
    bases = []
    for sp in spectral:
        for lam, _ in sp:
            if lam not in bases:
                bases.append(lam)
    r = len(gammas)
    k = len(bases)
    comps = [[] for _ in range(n * n)]

    def walk(i, prod, exps):
        if i == r:
            exps_t = tuple(tuple(row) for row in exps)
            for idx, x in enumerate(prod.entries()):
                if not x.is_zero():
                    comps[idx].append(Term((x,), exps_t))
            return
        for lam, P in spectral[i]:
            e2 = [list(row) for row in exps]
            e2[bases.index(lam)][i] += 1
            walk(i + 1, P if prod is None else prod * P, e2)

    walk(0, None, [[0] * r for _ in range(k)])
    # an identically zero entry is an empty sum
    if variables is None:
        variables = ("a",) if r == 1 else tuple(f"a{i + 1}" for i in range(r))
    return PepSystem(K, r, tuple(bases), tuple(tuple(c) for c in comps), 1, tuple(variables)).simplify()


@dataclass(frozen=True)
class UnipotentGrowth:
    heights: list
    fitted_degree: int
    slope: float
    fit_range: tuple

    def to_dict(self):
        return {
            "heights": [{"n": n, **h.to_dict()} for n, h in self.heights],
            "fitted_degree": self.fitted_degree,
            "slope": self.slope,
            "fit_range": list(self.fit_range),
        }


def unipotent_powers(g, N):
    """Exact ``g^n`` for ``n = 1..N`` via ``sum_k binom(n, k) (g - 1)^k``."""
    K = g.field
    I = MatrixK.identity(K, g.n)
    nil = g - I
    powers = [I]
    while not powers[-1].is_zero():
        powers.append(powers[-1] * nil)
        if len(powers) > g.n + 1:
            raise NotUnipotent("g - 1 is not nilpotent")
    powers.pop()
    out = []
    for n in range(1, N + 1):
        acc = MatrixK(K, tuple(tuple(K.zero for _ in range(g.n)) for _ in range(g.n)))
        for k, P in enumerate(powers):
            c = math.comb(n, k)
            if c:
                acc = acc + P.scale(K.from_rational(c))
        out.append(acc)
    return out


def unipotent_power_heights(g, N, tolerance=1e-12):
    """Heights of the entry tuples of ``g^n`` and the fitted polynomial degree.

    The degree is the rounded least-squares slope of ``log H`` against
    ``log n`` over ``n`` in ``[max(2, N // 4), N]``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    I = MatrixK.identity(g.field, g.n)
    if not ((g - I) ** g.n).is_zero():
        raise NotUnipotent("g - 1 is not nilpotent")
    powers = unipotent_powers(g, N)
    hs = [(n, affine_height(list(P.entries()), tolerance)) for n, P in enumerate(powers, start=1)]
    lo = max(2, N // 4)
    pts = [(math.log(n), h.value) for n, h in hs if n >= lo]
    if len(pts) >= 2:
        mx = sum(p[0] for p in pts) / len(pts)
        my = sum(p[1] for p in pts) / len(pts)
        sxx = sum((p[0] - mx) ** 2 for p in pts)
        slope = sum((p[0] - mx) * (p[1] - my) for p in pts) / sxx
    else:
        slope = 0.0
    return UnipotentGrowth(hs, int(round(slope)), slope, (lo, N))
