"""Purely exponential polynomial systems and the reduction machinery.

A :class:`PepSystem` is a tuple ``f = (f_1, ..., f_s)`` of sums of terms

    a * lambda_1^{l_1(n)} * ... * lambda_k^{l_k(n)},     n in Z^r,

with bases ``lambda_j`` in one number field and homogeneous integer linear
forms ``l_j``.  A term may additionally carry a table of coefficients
indexed by the residue class of ``n`` modulo the system's ``modulus``;
this is how torsion bases are absorbed by :func:`reduce_to_independent`.
Ordinary systems have ``modulus == 1`` and one coefficient per term.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from .config import DEFAULT_CAPS
from .errors import DimensionMismatch, FieldMismatch, MathDomainError, TooManyTerms, TorsionBoundExceeded
from .heights import affine_height
from .lattice import hnf_basis, kernel_basis, pivots, smith, solve_in_lattice
from .numfield import make_field


class ExponentVector(tuple):
    """Integer vector ``n`` in ``Z^r``."""

    def __new__(cls, values=()):
        return super().__new__(cls, (int(v) for v in values))

    @property
    def sup_norm(self):
        return max((abs(v) for v in self), default=0)


def sup_norm(n):
    return max((abs(v) for v in n), default=0)


def box(r, N):
    """All integer vectors with sup-norm at most ``N`` (lexicographic)."""
    return (ExponentVector(p) for p in itertools.product(range(-N, N + 1), repeat=r))


def _residue_index(n, D):
    idx = 0
    for v in n:
        idx = idx * D + (v % D)
    return idx


def _residues(r, D):
    return itertools.product(range(D), repeat=r)


@dataclass(frozen=True)
class Term:
    """One summand: coefficient table plus one exponent row per base."""

    coefficients: tuple
    exponents: tuple

    @property
    def coefficient(self):
        if len(self.coefficients) != 1:
            raise ValueError("term has residue-class coefficients")
        return self.coefficients[0]

    def coefficient_at(self, n, D):
        if D == 1:
            return self.coefficients[0]
        return self.coefficients[_residue_index(n, D)]

    def linear_value(self, j, n):
        return sum(a * b for a, b in zip(self.exponents[j], n))


@dataclass(frozen=True)
class PepSystem:
    field: object
    r: int
    bases: tuple
    components: tuple
    modulus: int = 1
    variables: tuple = ()
    _powers: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        if not self.components:
            raise ValueError("a system needs at least one component")
        if not self.variables:
            names = ("n",) if self.r == 1 else tuple(f"n{i + 1}" for i in range(self.r))
            object.__setattr__(self, "variables", names)
        if len(self.variables) != self.r:
            raise DimensionMismatch("variable names do not match r")
        for b in self.bases:
            if b.field != self.field:
                raise FieldMismatch("base outside the working field")
            if b.is_zero():
                raise MathDomainError("bases must be nonzero")
        ncls = self.modulus**self.r
        for comp in self.components:
            for t in comp:
                if len(t.exponents) != self.k or any(len(row) != self.r for row in t.exponents):
                    raise DimensionMismatch("exponent matrix has the wrong shape")
                if len(t.coefficients) != ncls:
                    raise DimensionMismatch("coefficient table has the wrong size")
                if self.modulus == 1 and t.coefficients[0].is_zero():
                    raise MathDomainError("coefficients must be nonzero")

    @property
    def k(self):
        return len(self.bases)

    @property
    def s(self):
        return len(self.components)

    def power(self, j, e):
        key = (j, e)
        val = self._powers.get(key)
        if val is None:
            val = self.bases[j] ** e
            self._powers[key] = val
        return val

    def monomial(self, term, n):
        out = self.field.one
        for j in range(self.k):
            e = term.linear_value(j, n)
            if e:
                out = out * self.power(j, e)
        return out

    def evaluate(self, n):
        return evaluate(self, n)

    def simplify(self):
        """Merge terms with identical exponent matrices; drop vanishing ones."""
        comps = []
        for comp in self.components:
            merged = {}
            order = []
            for t in comp:
                if t.exponents in merged:
                    merged[t.exponents] = tuple(a + b for a, b in zip(merged[t.exponents], t.coefficients))
                else:
                    merged[t.exponents] = t.coefficients
                    order.append(t.exponents)
            comps.append(
                tuple(Term(merged[e], e) for e in order if any(not c.is_zero() for c in merged[e]))
            )
        return PepSystem(self.field, self.r, self.bases, tuple(comps), self.modulus, self.variables)

    def to_dict(self):
        return {
            "field": field_to_dict(self.field),
            "variables": list(self.variables),
            "bases": [coords_to_json(b) for b in self.bases],
            "modulus": self.modulus,
            "components": [
                [
                    {
                        "coefficients": [coords_to_json(c) for c in t.coefficients],
                        "exponents": [list(row) for row in t.exponents],
                    }
                    for t in comp
                ]
                for comp in self.components
            ],
        }

    @classmethod
    def from_dict(cls, data, K=None):
        K = K or field_from_dict(data["field"])
        comps = tuple(
            tuple(
                Term(
                    tuple(K.element([Fraction(v) for v in c]) for c in t["coefficients"]),
                    tuple(tuple(int(v) for v in row) for row in t["exponents"]),
                )
                for t in comp
            )
            for comp in data["components"]
        )
        return cls(
            K,
            len(data["variables"]),
            tuple(K.element([Fraction(v) for v in b]) for b in data["bases"]),
            comps,
            int(data.get("modulus", 1)),
            tuple(data["variables"]),
        )


def coords_to_json(x):
    return [str(c) for c in x.coords]


def field_to_dict(K):
    return {
        "polynomial": list(K.poly),
        "symbol": K.symbol,
        "integral_basis": [[str(c) for c in b] for b in K.integral_basis],
    }


def field_from_dict(data):
    basis = [[Fraction(c) for c in b] for b in data["integral_basis"]]
    d = len(data["polynomial"]) - 1
    return make_field(data["polynomial"], integral_basis=basis if d >= 3 else None, symbol=data.get("symbol", "a"))


def make_system(field, bases, components, variables=None, r=None):
    """Convenience constructor.

    ``components`` is a list of lists of ``(coefficient, exponents)`` pairs,
    where ``exponents`` is a ``k x r`` nested list of integers.
    """
    bases = tuple(field.coerce(b) for b in bases)
    if r is None:
        r = len(variables) if variables else None
    comps = []
    for comp in components:
        terms = []
        for coeff, exps in comp:
            exps = tuple(tuple(int(v) for v in row) for row in exps)
            if r is None:
                r = len(exps[0]) if exps else 0
            terms.append(Term((field.coerce(coeff),), exps))
        comps.append(tuple(terms))
    return PepSystem(field, r or 0, bases, tuple(comps), 1, tuple(variables or ()))


def evaluate(f, n):
    """Exact value ``(f_1(n), ..., f_s(n))``."""
    n = tuple(n)
    if len(n) != f.r:
        raise DimensionMismatch(f"expected {f.r} exponents, got {len(n)}")
    out = []
    for comp in f.components:
        acc = f.field.zero
        for t in comp:
            c = t.coefficient_at(n, f.modulus)
            if not c.is_zero():
                acc = acc + c * f.monomial(t, n)
        out.append(acc)
    return tuple(out)


def term_monomials(f, j, n):
    """The monomials ``u_i(n)`` of component ``j`` (coefficients excluded)."""
    n = tuple(n)
    if len(n) != f.r:
        raise DimensionMismatch(f"expected {f.r} exponents, got {len(n)}")
    if not 0 <= j < f.s:
        raise DimensionMismatch(f"component index {j} out of range")
    return [f.monomial(t, n) for t in f.components[j]]


# ---------------------------------------------------------------------------
# multiplicative relations


@dataclass(frozen=True)
class RelationLattice:
    """HNF basis of the relations found with ``|theta|_inf <= search_bound``.

    Completeness beyond the search bound is not claimed.
    """

    basis: tuple
    search_bound: int
    k: int

    @property
    def rank(self):
        return len(self.basis)

    @property
    def label(self):
        return f"relations within bound {self.search_bound}"

    def contains(self, theta):
        return solve_in_lattice([list(b) for b in self.basis], list(theta)) is not None


def _product(bases, theta, cache):
    out = None
    for j, e in enumerate(theta):
        if e:
            key = (j, e)
            p = cache.get(key)
            if p is None:
                p = bases[j] ** e
                cache[key] = p
            out = p if out is None else out * p
    return out


def element_order(x, bound):
    """Multiplicative order of ``x`` if it is at most ``bound``, else ``None``."""
    p = x
    for m in range(1, bound + 1):
        if p == 1:
            return m
        p = p * x
    return None


def relation_lattice(bases, search_bound=None, caps=DEFAULT_CAPS):
    """Lattice generated by all ``theta`` with ``prod lambda_i^theta_i == 1`` and ``|theta|_inf <= B``.

    Meet-in-the-middle over the box, with every relation confirmed by exact
    arithmetic; torsion relations ``lambda^m == 1`` up to the field's
    roots-of-unity bound are added as well.
    """
    B = caps.relation_bound if search_bound is None else int(search_bound)
    if B < 1:
        raise ValueError("search bound must be at least 1")
    bases = list(bases)
    k = len(bases)
    if k == 0:
        return RelationLattice((), B, 0)
    K = bases[0].field
    one = K.one
    cache = {}
    half = k // 2
    left = {}
    rng = range(-B, B + 1)
    for tl in itertools.product(rng, repeat=half):
        full = tl + (0,) * (k - half)
        key = _product(bases, full, cache) or one
        left.setdefault(key, []).append(tl)
    found = []
    basis = []
    for tr in itertools.product(rng, repeat=k - half):
        neg = (0,) * half + tuple(-v for v in tr)
        key = _product(bases, neg, cache) or one
        for tl in left.get(key, ()):
            theta = list(tl) + list(tr)
            if not any(theta):
                continue
            if basis and solve_in_lattice(basis, theta) is not None:
                continue
            found.append(theta)
            basis = hnf_basis(found)
            found = [list(b) for b in basis]
    bound = K.torsion_bound
    for j, b in enumerate(bases):
        m = element_order(b, bound)
        if m is not None:
            theta = [0] * k
            theta[j] = m
            if not basis or solve_in_lattice(basis, theta) is None:
                found.append(theta)
                basis = hnf_basis(found)
                found = [list(b) for b in basis]
    for theta in basis:
        if (_product(bases, theta, cache) or one) != 1:
            raise MathDomainError("relation failed exact verification")
    return RelationLattice(tuple(tuple(b) for b in basis), B, k)


def _cyclic_generator(elems, orders):
    """Generator of the cyclic group spanned by roots of unity, with discrete logs."""
    L = 1
    for o in orders:
        L = lcm(L, o)
    K = elems[0].field if elems else None
    zeta = K.one if K else None
    for p, e in _factor(L).items():
        pe = p**e
        for x, o in zip(elems, orders):
            if o % pe == 0:
                zeta = zeta * x ** (o // pe)
                break
    logs = []
    powers = [K.one]
    for _ in range(1, L):
        powers.append(powers[-1] * zeta)
    for x in elems:
        logs.append(powers.index(x))
    return zeta, L, logs


def _factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _normalize_base(mu):
    """Prefer the integral one of ``mu`` and ``1/mu``."""
    K = mu.field
    inv = mu.inverse()
    if not K.is_integral(mu) and K.is_integral(inv):
        return inv, -1
    return mu, 1


def reduce_to_independent(f, search_bound=None, caps=DEFAULT_CAPS):
    """Rewrite ``f`` over multiplicatively independent bases.

    Relations found within the search bound are diagonalized with the Smith
    normal form.  Free generators become the new bases; torsion generators
    (roots of unity) are folded into residue-class coefficient tables.
    ``evaluate`` is preserved on every ``n``.
    """
    rel = relation_lattice(f.bases, search_bound, caps)
    if rel.rank == 0:
        return f
    k, r = f.k, f.r
    R = [list(b) for b in rel.basis]
    D, _, V = smith(R)
    rho = rel.rank
    Vinv = _unimodular_inverse(V)
    mus = [_product(f.bases, row, {}) or f.field.one for row in Vinv]
    torsion, orders, tidx = [], [], []
    bound = f.field.torsion_bound
    for i in range(rho):
        d_i = D[i][i]
        if mus[i] ** d_i != 1:
            raise MathDomainError("Smith generator failed its torsion relation")
        o = element_order(mus[i], d_i)
        if o > bound:
            raise TorsionBoundExceeded(f"root of unity of order {o} exceeds field bound {bound}")
        if o > 1:
            torsion.append(mus[i])
            orders.append(o)
            tidx.append(i)
    free_idx = list(range(rho, k))
    new_bases = []
    flips = []
    for i in free_idx:
        mu, sgn = _normalize_base(mus[i])
        new_bases.append(mu)
        flips.append(sgn)
    if torsion:
        zeta, L, logs = _cyclic_generator(torsion, orders)
    else:
        zeta, L, logs = f.field.one, 1, []
    Dn = lcm(f.modulus, L)
    zpow = [f.field.one]
    for _ in range(1, L):
        zpow.append(zpow[-1] * zeta)
    comps = []
    for comp in f.components:
        terms = []
        for t in comp:
            # exponents in mu-coordinates: E = V^T L
            E = [[sum(V[j][i] * t.exponents[j][c] for j in range(k)) for c in range(r)] for i in range(k)]
            new_exp = tuple(tuple(sgn * v for v in E[i]) for i, sgn in zip(free_idx, flips))
            tform = [sum(a * E[i][c] for a, i in zip(logs, tidx)) for c in range(r)]
            if Dn == 1:
                coeffs = t.coefficients
            else:
                coeffs = []
                for res in _residues(r, Dn):
                    base = t.coefficient_at(res, f.modulus)
                    tw = sum(a * b for a, b in zip(tform, res)) % L
                    coeffs.append(base * zpow[tw])
                coeffs = tuple(coeffs)
            terms.append(Term(coeffs, new_exp))
        comps.append(tuple(terms))
    return PepSystem(f.field, r, tuple(new_bases), tuple(comps), Dn, f.variables).simplify()


def _unimodular_inverse(V):
    n = len(V)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                fac = A[r][c]
                A[r] = [a - fac * b for a, b in zip(A[r], A[c])]
    return [[int(v) for v in row[n:]] for row in A]


# ---------------------------------------------------------------------------
# cosets and degeneracy loci


@dataclass(frozen=True)
class IntegerLatticeCoset:
    """``offset + span_Z(basis)`` with the basis in Hermite normal form."""

    offset: tuple
    basis: tuple

    @classmethod
    def make(cls, offset, basis):
        basis = hnf_basis([list(b) for b in basis]) if basis else []
        off = list(offset)
        for row, j in zip(basis, pivots(basis)):
            q = off[j] // row[j]
            if q:
                off = [a - q * b for a, b in zip(off, row)]
        return cls(ExponentVector(off), tuple(tuple(b) for b in basis))

    @property
    def rank(self):
        return len(self.basis)

    @property
    def r(self):
        return len(self.offset)

    def contains(self, v):
        diff = [a - b for a, b in zip(v, self.offset)]
        if not self.basis:
            return not any(diff)
        return solve_in_lattice([list(b) for b in self.basis], diff) is not None

    def box_points(self, N):
        return [p for p in box(self.r, N) if self.contains(p)]

    def to_dict(self):
        return {"offset": list(self.offset), "basis": [list(b) for b in self.basis], "rank": self.rank}


class DegeneracyLocus(NamedTuple):
    points: list
    cosets: list


def _vanishing_masks(values):
    """Bitmasks of nonempty proper subsets whose sum is exactly zero."""
    e = len(values)
    full = (1 << e) - 1
    sums = [None] * (1 << e)
    sums[0] = values[0].field.zero if values else None
    out = []
    for mask in range(1, full):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + values[low.bit_length() - 1]
        if sums[mask].is_zero():
            out.append(mask)
    return out


def _hull(points):
    p0 = min(points)
    diffs = [[a - b for a, b in zip(p, p0)] for p in points if p != p0]
    return IntegerLatticeCoset.make(p0, diffs)


def _closed(coset, pts, N):
    return all(p in pts for p in coset.box_points(N))


def fit_cosets(points, N):
    """Cover a point set in the box by integer-lattice cosets.

    The affine hull over Z is tried first, then residue classes modulo 2, 3
    and 4; whatever still does not close is reported as single points.
    """
    pts = set(map(ExponentVector, points))
    if not pts:
        return []
    c = _hull(pts)
    if _closed(c, pts, N):
        return [c]
    for m in (2, 3, 4):
        classes = {}
        for p in pts:
            classes.setdefault(tuple(v % m for v in p), set()).add(p)
        fitted = [_hull(cls) for cls in classes.values()]
        if all(_closed(cc, cls, N) for cc, cls in zip(fitted, classes.values())):
            return fitted
    return [IntegerLatticeCoset.make(p, []) for p in sorted(pts)]


def _coset_key(c):
    return (-c.rank, c.basis, tuple(c.offset))


def minimal_cover(cosets, N):
    """Drop duplicates and cosets whose box points are covered by the others."""
    uniq = sorted(set(cosets), key=_coset_key)
    boxes = {c: set(c.box_points(N)) for c in uniq}
    keep = list(uniq)
    for c in sorted(uniq, key=lambda c: (c.rank, len(boxes[c]))):
        others = set()
        for o in keep:
            if o != c:
                others |= boxes[o]
        if boxes[c] <= others:
            keep.remove(c)
    return sorted(keep, key=_coset_key)


def degeneracy_locus(f, j, N, caps=DEFAULT_CAPS):
    """Box points where a nonempty proper subsum of component ``j`` vanishes, with coset fit."""
    if not 0 <= j < f.s:
        raise DimensionMismatch(f"component index {j} out of range")
    if N < 1:
        raise ValueError("box bound must be at least 1")
    terms = f.components[j]
    e = len(terms)
    if e > caps.max_terms:
        raise TooManyTerms(f"{e} terms exceed the cap of {caps.max_terms}")
    if e < 2:
        return DegeneracyLocus([], [])
    by_mask = {}
    points = []
    for n in box(f.r, N):
        vals = [t.coefficient_at(n, f.modulus) * f.monomial(t, n) for t in terms]
        masks = _vanishing_masks(vals)
        if masks:
            points.append(n)
            for m in masks:
                by_mask.setdefault(m, set()).add(n)
    cosets = []
    seen = set()
    for m in sorted(by_mask):
        key = frozenset(by_mask[m])
        if key in seen:
            continue
        seen.add(key)
        cosets.extend(fit_cosets(by_mask[m], N))
    return DegeneracyLocus(points, minimal_cover(cosets, N))


def restrict_to_coset(f, coset, variables=None):
    """The system ``m -> f(offset + basis^T m)`` in ``rank(coset)`` variables."""
    if coset.r != f.r:
        raise DimensionMismatch(f"coset lives in Z^{coset.r}, system in Z^{f.r}")
    if coset.rank > f.r:
        raise DimensionMismatch("coset rank exceeds r")
    t = coset.rank
    off = list(coset.offset)
    Bcols = [list(b) for b in coset.basis]  # t vectors of length r
    if variables is None:
        variables = ("t",) if t == 1 else tuple(f"t{i + 1}" for i in range(t))
    D = f.modulus
    comps = []
    for comp in f.components:
        terms = []
        for term in comp:
            new_exp = tuple(
                tuple(sum(row[c] * Bcols[q][c] for c in range(f.r)) for q in range(t)) for row in term.exponents
            )
            const = [sum(a * b for a, b in zip(row, off)) for row in term.exponents]
            mult = f.field.one
            for jb, e in enumerate(const):
                if e:
                    mult = mult * f.power(jb, e)
            if D == 1:
                coeffs = [term.coefficients[0] * mult]
            else:
                coeffs = []
                for res in _residues(t, D):
                    n = [off[c] + sum(res[q] * Bcols[q][c] for q in range(t)) for c in range(f.r)]
                    coeffs.append(term.coefficient_at(n, D) * mult)
            terms.append(Term(tuple(coeffs), new_exp))
        comps.append(tuple(terms))
    return PepSystem(f.field, t, f.bases, tuple(comps), D, tuple(variables)).simplify()


# ---------------------------------------------------------------------------
# heights of the monomial map


class HomHeightBounds(NamedTuple):
    c1_empirical: float
    c2_empirical: float
    c2_certified_upper: float


def _distinct_exponents(f):
    out = []
    for comp in f.components:
        for t in comp:
            if t.exponents not in out:
                out.append(t.exponents)
    return out


def hom_height_bounds(f, N, tolerance=1e-9, caps=DEFAULT_CAPS):
    """Empirical ``C_1, C_2`` for ``sum_i h(u_i(n)) / |n|_inf`` and a certified ``C_2``.

    ``u_i`` runs over the distinct monomials of all components.  The
    certified bound ``sum_i sum_j |l_{j,i}|_1 h(lambda_j)`` holds for all n.
    """
    if N < 1:
        raise ValueError("box bound must be at least 1")
    exps = _distinct_exponents(f)
    hb = [affine_height([b], tolerance, caps).log_hi for b in f.bases]
    cert = sum(sum(abs(v) for v in row) * h for e in exps for row, h in zip(e, hb))
    if f.r == 0:
        return HomHeightBounds(float("inf"), 0.0, 0.0 if not exps else cert)
    c1, c2 = float("inf"), 0.0
    probe = Term((f.field.one,), ())
    for n in box(f.r, N):
        norm = sup_norm(n)
        if norm == 0:
            continue
        total = 0.0
        for e in exps:
            u = f.monomial(Term(probe.coefficients, e), n)
            total += affine_height([u], tolerance, caps).value
        ratio = total / norm
        c1 = min(c1, ratio)
        c2 = max(c2, ratio)
    return HomHeightBounds(c1, c2, cert)


def monomial_map_injective(f, search_bound=None, caps=DEFAULT_CAPS):
    """Whether ``n -> (u_i(n))_i`` is injective: independent bases and spanning forms.

    Independence is only checked within the relation search bound.
    """
    if relation_lattice(f.bases, search_bound, caps).rank:
        return False
    rows = [list(row) for e in _distinct_exponents(f) for row in e]
    return not kernel_basis(rows, f.r) if f.r else True


# ---------------------------------------------------------------------------
# unions


def union(f, g):
    """A system whose value set is the union of the value sets of ``f`` and ``g``.

    A selector variable ``sigma`` enters through the base ``-1``: the terms
    of ``f`` are multiplied by ``(1 + (-1)^sigma) / 2`` and those of ``g`` by
    ``(1 - (-1)^sigma) / 2``.
    """
    if f.field != g.field:
        raise FieldMismatch("systems live in different fields")
    if f.s != g.s:
        raise DimensionMismatch("systems have different numbers of components")
    if f.modulus != 1 or g.modulus != 1:
        raise MathDomainError("union of residue-class systems is not supported")
    K = f.field
    r = max(f.r, g.r) + 1
    bases = list(f.bases)
    for b in g.bases:
        if b not in bases:
            bases.append(b)
    minus = K.from_rational(-1)
    if minus not in bases:
        bases.append(minus)
    sel = bases.index(minus)
    k = len(bases)
    half = Fraction(1, 2)

    def lift(sys, term, sign_first):
        rows = [[0] * r for _ in range(k)]
        for jb, row in enumerate(term.exponents):
            target = bases.index(sys.bases[jb])
            for c, v in enumerate(row):
                rows[target][c] += v
        plain = tuple(tuple(row) for row in rows)
        rows[sel][r - 1] += 1
        flipped = tuple(tuple(row) for row in rows)
        a = term.coefficient
        return [Term((a * half,), plain), Term((a * (half if sign_first else -half),), flipped)]

    comps = []
    for cf, cg in zip(f.components, g.components):
        terms = []
        for t in cf:
            terms.extend(lift(f, t, True))
        for t in cg:
            terms.extend(lift(g, t, False))
        comps.append(tuple(terms))
    names = tuple(f"n{i + 1}" for i in range(r - 1)) + ("sigma",)
    return PepSystem(K, r, tuple(bases), tuple(comps), 1, names).simplify()
