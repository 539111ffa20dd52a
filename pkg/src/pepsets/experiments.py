"""Empirical harness: value enumeration, growth counts, minimal vectors,
S-unit scans over Q, the SL_2(Z) baseline and matrix-power membership.

Everything that depends on a truncated box carries a ``box_relative``
flag: box scans can only ever report what they saw.
"""

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import DEFAULT_CAPS
from .errors import BoxTooLarge, DimensionMismatch, ExponentBoxTooLarge, MathDomainError, NonMonotoneThresholds, UnsupportedField
from .exppoly import ExponentVector, box, evaluate, sup_norm
from .heights import Comparison, affine_height, compare_height


def value_key(value):
    """Canonical exact key of a value tuple: its rational power-basis coordinates."""
    return tuple(x.coords for x in value)


def key_to_json(key):
    return [[str(c) for c in coords] for coords in key]


def _check_box(r, N, caps):
    cells = (2 * N + 1) ** r
    if cells > caps.max_box_cells:
        raise BoxTooLarge(f"box of sup-norm {N} in {r} variables has {cells} cells (cap {caps.max_box_cells})")


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class ValueEntry:
    value: tuple
    witnesses: list


@dataclass
class Enumeration:
    """Box-truncated image ``f([-N, N]^r)`` keyed by exact value."""

    box_bound: int
    entries: dict
    box_relative: bool = True

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def __contains__(self, key):
        return key in self.entries

    def keys(self):
        return self.entries.keys()

    def values(self):
        return [e.value for e in self.entries.values()]

    def to_dict(self):
        return {
            "box_bound": self.box_bound,
            "box_relative": self.box_relative,
            "values": [
                {"value": key_to_json(k), "witnesses": [list(w) for w in e.witnesses]} for k, e in self.entries.items()
            ],
        }

    def to_tsv(self):
        lines = ["value\twitnesses"]
        for k, e in self.entries.items():
            val = ";".join(x.to_str() for x in e.value)
            wit = ";".join(",".join(map(str, w)) for w in e.witnesses)
            lines.append(f"{val}\t{wit}")
        return "\n".join(lines) + "\n"


def _scan(f, points):
    out = {}
    for n in points:
        v = evaluate(f, n)
        k = value_key(v)
        if k in out:
            out[k][1].append(n)
        else:
            out[k] = (v, [n])
    return out


def _scan_slice(args):
    f, N, first = args
    pts = (ExponentVector((first,) + rest) for rest in itertools.product(range(-N, N + 1), repeat=f.r - 1))
    return _scan(f, pts)


def _merge(parts):
    merged = {}
    for part in parts:
        for k, (v, wit) in part.items():
            if k in merged:
                merged[k][1].extend(wit)
            else:
                merged[k] = (v, list(wit))
    return {k: ValueEntry(merged[k][0], sorted(merged[k][1])) for k in sorted(merged)}


def enumerate_values(f, N, workers=None, caps=DEFAULT_CAPS):
    """All distinct values of ``f`` on the box of sup-norm ``N`` with their witnesses.

    With ``workers > 1`` the box is split along the first variable across
    processes; the merged result is ordered by key and does not depend on
    scheduling.
    """
    if N < 0:
        raise ValueError("box bound must be nonnegative")
    _check_box(f.r, N, caps)
    if f.r == 0:
        return Enumeration(N, _merge([_scan(f, [ExponentVector(())])]))
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_slice, [(f, N, a) for a in range(-N, N + 1)]))
    else:
        parts = [_scan(f, box(f.r, N))]
    return Enumeration(N, _merge(parts))


# ---------------------------------------------------------------------------
# growth counts


def _fit_line(xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) < 2 or np.ptp(xs) == 0:
        return {"slope": 0.0, "intercept": float(ys.mean()) if len(ys) else 0.0, "residuals": [0.0] * len(xs)}
    slope, intercept = np.polyfit(xs, ys, 1)
    res = ys - (slope * xs + intercept)
    return {"slope": float(slope), "intercept": float(intercept), "residuals": [float(r) for r in res]}


@dataclass
class GrowthSeries:
    thresholds: list
    counts: list
    fit: dict
    box_bound: int = None
    box_relative: bool = True
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "thresholds": [str(t) for t in self.thresholds],
            "counts": list(self.counts),
            "fit": self.fit,
            "box_bound": self.box_bound,
            "box_relative": self.box_relative,
            "notes": list(self.notes),
        }

    def to_tsv(self):
        lines = ["H\tcount"]
        lines += [f"{t}\t{c}" for t, c in zip(self.thresholds, self.counts)]
        return "\n".join(lines) + "\n"


def _check_thresholds(thresholds, strict_above_one=True):
    ts = [Fraction(t) if not isinstance(t, float) else Fraction(str(t)) for t in thresholds]
    if not ts:
        raise NonMonotoneThresholds("no thresholds given")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise NonMonotoneThresholds("thresholds must be strictly increasing")
    if strict_above_one and ts[0] <= 1:
        raise MathDomainError("thresholds must exceed 1")
    return ts


def height_at_most(value, H, tolerance, caps=DEFAULT_CAPS, hv=None):
    """``H_aff(value) <= H`` decided exactly; ``hv`` is an optional cached enclosure."""
    hv = hv or affine_height(list(value), tolerance, caps)
    logH = math.log(H)
    if hv.log_hi < logH - 1e-9:
        return True
    if hv.log_lo > logH + 1e-9:
        return False
    return compare_height(list(value), H, caps) != Comparison.ABOVE


def _shell(r, N):
    """Points with sup-norm exactly ``N``."""
    if N == 0:
        yield ExponentVector((0,) * r)
        return
    for p in itertools.product(range(-N, N + 1), repeat=r):
        if max(abs(v) for v in p) == N:
            yield ExponentVector(p)


def count_growth(f, thresholds, tolerance=1e-12, caps=DEFAULT_CAPS, max_box=None):
    """Numbers of distinct values with ``H_aff <= H`` for each threshold.

    The box grows one layer at a time until two consecutive layers bring
    no new value of height at most the largest threshold.  That stopping
    rule is heuristic, so the series is flagged box-relative.
    """
    ts = _check_thresholds(thresholds)
    Hmax = ts[-1]
    heights = {}
    below = {}
    quiet = 0
    N = 0
    while True:
        if max_box is not None and N > max_box:
            break
        _check_box(f.r, N, caps)
        added = 0
        for n in _shell(f.r, N):
            v = evaluate(f, n)
            k = value_key(v)
            if k in heights:
                continue
            hv = affine_height(list(v), tolerance, caps)
            heights[k] = (v, hv)
            if height_at_most(v, Hmax, tolerance, caps, hv):
                below[k] = (v, hv)
                added += 1
        if f.r == 0:
            break
        quiet = quiet + 1 if (added == 0 and N > 0) else 0
        if quiet >= 2:
            break
        N += 1
    counts = []
    for H in ts:
        counts.append(sum(1 for v, hv in below.values() if height_at_most(v, H, tolerance, caps, hv)))
    logs = [math.log(float(H)) for H in ts]
    fit = {"count_vs_logH": _fit_line(logs, counts)}
    pos = [(math.log(lh), math.log(c)) for lh, c in zip(logs, counts) if c > 0 and lh > 0]
    if len(pos) >= 2:
        fit["loglog_exponent"] = _fit_line([p[0] for p in pos], [p[1] for p in pos])["slope"]
    return GrowthSeries(ts, counts, fit, N, True, ["stopped after two empty box expansions"])


# ---------------------------------------------------------------------------
# minimal vectors


@dataclass
class MinimalityReport:
    box_bound: int
    minimal: dict
    ratios: list
    C_estimate: float
    exceptional_candidates: list
    box_relative: bool = True

    def to_dict(self):
        return {
            "box_bound": self.box_bound,
            "box_relative": self.box_relative,
            "C_estimate": self.C_estimate,
            "exceptional_candidates": [
                {"value": key_to_json(k), "minimal_vectors": [list(w) for w in ws], "ratio": r}
                for k, ws, r in self.exceptional_candidates
            ],
            "ratios": [{"value": key_to_json(k), "norm": nrm, "height": h, "ratio": r} for k, nrm, h, r in self.ratios],
        }

    def to_tsv(self):
        lines = ["value\tnorm\theight\tratio\texceptional"]
        exc = {k for k, _, _ in self.exceptional_candidates}
        for k, nrm, h, r in self.ratios:
            val = ";".join(",".join(str(c) for c in coords) for coords in k)
            lines.append(f"{val}\t{nrm}\t{h:.12g}\t{r:.12g}\t{int(k in exc)}")
        return "\n".join(lines) + "\n"


def minimal_vectors(f, N, discard_factor=5.0, tolerance=1e-12, caps=DEFAULT_CAPS, workers=None):
    """Box-relative f-minimal vectors and an estimate of the constant ``C``.

    For every value the witnesses of least sup-norm are minimal.  Ratios
    ``h_aff(f(n)) / |n|`` are formed for minimal ``n != 0``; values whose
    ratio lies more than ``discard_factor`` times below the median are set
    aside as exceptional candidates and ``C_estimate`` is the minimum of
    the remaining ratios.
    """
    if N < 1:
        raise ValueError("box bound must be at least 1")
    en = enumerate_values(f, N, workers=workers, caps=caps)
    minimal = {}
    ratios = []
    for k, e in en.entries.items():
        m = min(sup_norm(w) for w in e.witnesses)
        mins = [w for w in e.witnesses if sup_norm(w) == m]
        minimal[k] = (e.value, mins)
        if m >= 1:
            h = affine_height(list(e.value), tolerance, caps).value
            ratios.append((k, m, h, h / m))
    if not ratios:
        return MinimalityReport(N, minimal, [], float("inf"), [])
    med = float(np.median([r[3] for r in ratios]))
    cutoff = med / discard_factor
    exceptional = [(k, minimal[k][1], r) for k, _, _, r in ratios if r < cutoff]
    kept = [r[3] for r in ratios if r[3] >= cutoff]
    C = min(kept) if kept else float("inf")
    return MinimalityReport(N, minimal, ratios, C, exceptional)


# ---------------------------------------------------------------------------
# S-unit scan over Q


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class SUnitConfig:
    primes: tuple
    e: int
    B: int
    C: Fraction
    field: object = None

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        C = self.C
        C = Fraction(str(C)) if isinstance(C, float) else Fraction(C)
        object.__setattr__(self, "C", C)
        if len(set(self.primes)) != len(self.primes) or not all(_is_prime(p) for p in self.primes):
            raise MathDomainError("S must consist of distinct primes")
        if self.e < 2:
            raise MathDomainError("need at least two summands")
        if self.B < 1:
            raise MathDomainError("exponent bound must be at least 1")
        if C <= 0:
            raise MathDomainError("C must be positive")


def s_units(primes, B):
    """All ``+-prod p^{e_p}`` with ``|e_p| <= B``, as Fractions, sorted."""
    out = []
    for exps in itertools.product(range(-B, B + 1), repeat=len(primes)):
        x = Fraction(1)
        for p, e in zip(primes, exps):
            x *= Fraction(p) ** e
        out.append(x)
        out.append(-x)
    return sorted(out)


def _H(x):
    return max(abs(x.numerator), x.denominator)


def _reduced_height(num, den):
    g = math.gcd(num, den)
    return max(abs(num) // g, den // g)


def _violates_int(sum_height, prod_height, C):
    """``h(sum) < C * sum h(s_i)`` as ``H(sum)^q < (prod H(s_i))^p``."""
    return sum_height**C.denominator < prod_height**C.numerator


def _nondegenerate(tup):
    e = len(tup)
    for size in range(1, e):
        for idx in itertools.combinations(range(e), size):
            if sum((tup[i] for i in idx), Fraction(0)) == 0:
                return False
    return True


def _check_sunit_field(cfg):
    if cfg.field is not None and cfg.field.degree != 1:
        raise UnsupportedField("S-unit scans are implemented over the rationals only")


def evertse_scan(cfg, caps=DEFAULT_CAPS):
    """Non-degenerate S-unit tuples with ``h(s_1+...+s_e) < C (h(s_1)+...+h(s_e))``.

    Tuples are taken up to permutation and global sign: the representative
    has positive sum and entries in decreasing order.  Tuples with zero sum
    are excluded.
    """
    _check_sunit_field(cfg)
    units = s_units(cfg.primes, cfg.B)
    total = math.comb(len(units) + cfg.e - 1, cfg.e)
    if total > caps.max_evertse_tuples:
        raise ExponentBoxTooLarge(f"{total} tuples exceed the cap of {caps.max_evertse_tuples}")
    units = units[::-1]
    # all denominators divide L, so sums are integers over L
    L = math.prod(p**cfg.B for p in cfg.primes)
    scaled = [int(u * L) for u in units]
    heights = [_H(u) for u in units]
    out = []
    for idx in itertools.combinations_with_replacement(range(len(units)), cfg.e):
        num = sum(scaled[i] for i in idx)
        if num <= 0:
            continue
        prod = math.prod(heights[i] for i in idx)
        if not _violates_int(_reduced_height(num, L), prod, cfg.C):
            continue
        tup = tuple(units[i] for i in idx)
        if cfg.e > 2 and not _nondegenerate(tup):
            continue
        out.append(tup)
    out.sort(reverse=True)
    return out


def evertse_scan_naive(cfg):
    """Reference enumeration over ordered tuples; returns sign/permutation classes.

    Each class is the frozenset of the two multisets ``{t, -t}``.  Sums are
    folded pairwise as reduced fractions instead of over a common denominator.
    """
    _check_sunit_field(cfg)
    units = [(u.numerator, u.denominator, _H(u)) for u in s_units(cfg.primes, cfg.B)]
    classes = set()
    e = cfg.e
    for tup in itertools.product(units, repeat=e):
        subs = {}
        degenerate = False
        for mask in range(1, 1 << e):
            low = mask & -mask
            i = low.bit_length() - 1
            if mask == low:
                subs[mask] = (tup[i][0], tup[i][1])
            else:
                a, b = subs[mask ^ low]
                c, d = tup[i][0], tup[i][1]
                n, m = a * d + c * b, b * d
                g = math.gcd(n, m)
                subs[mask] = (n // g, m // g)
            if subs[mask][0] == 0:
                degenerate = True
                break
        if degenerate:
            continue
        n, m = subs[(1 << e) - 1]
        if _violates_int(max(abs(n), m), math.prod(t[2] for t in tup), cfg.C):
            pos = Counter(Fraction(a, b) for a, b, _ in tup)
            neg = Counter(-Fraction(a, b) for a, b, _ in tup)
            classes.add(frozenset((frozenset(pos.items()), frozenset(neg.items()))))
    return classes


def as_classes(solutions):
    out = set()
    for tup in solutions:
        pos = frozenset(Counter(tup).items())
        neg = frozenset(Counter(-x for x in tup).items())
        out.add(frozenset((pos, neg)))
    return out


# ---------------------------------------------------------------------------
# SL_2(Z) baseline


def _vector_xgcd(a, b):
    """Elementwise ``(g, x, y)`` with ``x a + y b = g`` for int64 arrays."""
    a = a.copy()
    b = b.copy()
    x0, x1 = np.ones_like(a), np.zeros_like(a)
    y0, y1 = np.zeros_like(a), np.ones_like(a)
    while np.any(b != 0):
        nz = b != 0
        q = np.zeros_like(a)
        q[nz] = np.floor_divide(a[nz], b[nz])
        a, b = np.where(nz, b, a), np.where(nz, a - q * b, b)
        x0, x1 = np.where(nz, x1, x0), np.where(nz, x0 - q * x1, x1)
        y0, y1 = np.where(nz, y1, y0), np.where(nz, y0 - q * y1, y1)
    sign = np.where(a < 0, -1, 1)
    return a * sign, x0 * sign, y0 * sign


def _k_range(coef, base, T):
    """Integer interval of ``k`` with ``|base + k*coef| <= T`` for ``coef != 0``."""
    s = np.sign(coef)
    c = np.abs(coef)
    b = base * s
    lo = -np.floor_divide(T + b, c)
    hi = np.floor_divide(T - b, c)
    return lo, hi


def sl2_counts(Ts):
    """Exact ``#{g in SL_2(Z) : max |g_ij| <= T}`` for each ``T``."""
    Ts = [int(t) for t in Ts]
    if not Ts:
        return []
    Tmax = max(Ts)
    if Tmax < 1:
        return [0 for _ in Ts]
    rng = np.arange(-Tmax, Tmax + 1, dtype=np.int64)
    A, Bm = np.meshgrid(rng, rng, indexing="ij")
    A, Bm = A.ravel(), Bm.ravel()
    g, x, y = _vector_xgcd(A, Bm)
    sel = (g == 1) & (A != 0) & (Bm != 0)
    A, Bm, d0, c0 = A[sel], Bm[sel], x[sel], -y[sel]
    out = []
    for T in Ts:
        if T < 1:
            out.append(0)
            continue
        m = (np.abs(A) <= T) & (np.abs(Bm) <= T)
        a, b, c, d = A[m], Bm[m], c0[m], d0[m]
        lo1, hi1 = _k_range(a, c, T)
        lo2, hi2 = _k_range(b, d, T)
        cnt = np.maximum(0, np.minimum(hi1, hi2) - np.maximum(lo1, lo2) + 1)
        # a = 0 forces b = -c = +-1 with d free; b = 0 forces a = d = +-1 with c free
        out.append(int(cnt.sum()) + 2 * 2 * (2 * T + 1))
    return out


def sl2_count_naive(T):
    """Reference count: loop over coprime ``(a, b)`` and ``c``, solve for ``d``."""
    if T < 1:
        return 0
    n = 0
    for a in range(-T, T + 1):
        for b in range(-T, T + 1):
            if math.gcd(a, b) != 1:
                continue
            for c in range(-T, T + 1):
                num = 1 + b * c
                if a == 0:
                    if num == 0:
                        n += 2 * T + 1
                elif num % a == 0 and abs(num // a) <= T:
                    n += 1
    return n


def sl2_count(thresholds):
    """Counts in ``SL_2(Z)`` by sup-norm with a power-law fit of count against ``T``."""
    Ts = [int(t) for t in thresholds]
    if any(b <= a for a, b in zip(Ts, Ts[1:])):
        raise NonMonotoneThresholds("thresholds must be strictly increasing")
    counts = sl2_counts(Ts)
    pos = [(math.log(t), math.log(c)) for t, c in zip(Ts, counts) if t > 0 and c > 0]
    fit = {}
    if len(pos) >= 2:
        line = _fit_line([p[0] for p in pos], [p[1] for p in pos])
        fit = {"exponent": line["slope"], "log_constant": line["intercept"], "residuals": line["residuals"]}
    return GrowthSeries(Ts, counts, fit, None, False, ["exact brute-force counts"])


# ---------------------------------------------------------------------------
# membership of matrix powers


@dataclass
class MembershipCounts:
    N: int
    counts: list
    members: list
    value_box: int
    box_relative: bool = True

    @property
    def total(self):
        return self.counts[-1] if self.counts else 0

    def to_dict(self):
        return {
            "N": self.N,
            "count": self.total,
            "cumulative": list(self.counts),
            "members": list(self.members),
            "value_box": self.value_box,
            "box_relative": self.box_relative,
        }

    def to_tsv(self):
        lines = ["n\tcount"]
        lines += [f"{n}\t{c}" for n, c in enumerate(self.counts, start=1)]
        return "\n".join(lines) + "\n"


def membership_count(f, g, N, value_box, caps=DEFAULT_CAPS):
    """How many ``n = 1..N`` have ``g^n`` in the box-truncated image of ``f``."""
    if f.s != g.n * g.n:
        raise DimensionMismatch(f"system has {f.s} components, matrix has {g.n * g.n} entries")
    if f.field != g.field:
        raise DimensionMismatch("system and matrix live in different fields")
    image = enumerate_values(f, value_box, caps=caps)
    counts, members = [], []
    P = g
    c = 0
    for n in range(1, N + 1):
        if n > 1:
            P = P * g
        if value_key(P.entries()) in image:
            c += 1
            members.append(n)
        counts.append(c)
    return MembershipCounts(N, counts, members, value_box)
