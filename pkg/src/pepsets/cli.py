"""Command-line front end: ``pepsets JOBFILE [--flag value ...]``.

Flags given on the command line override those of the job's ``run``
statement; ``--command NAME`` replaces the command itself.  Reports go to
stdout (or ``--output``) as TSV or JSON.  Exit codes: 0 success, 2 parse
error, 3 math-domain error, 4 cap exceeded.
"""

import argparse
import datetime
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

from . import experiments as ex
from .config import DEFAULT_CAPS, Caps
from .dsl import BOOLEAN_FLAGS, COMMANDS, GLOBAL_FLAGS, parse_job, print_job, system_str, validate_command
from .errors import MathDomainError, ParseError, PepError
from .exppoly import (
    IntegerLatticeCoset,
    degeneracy_locus,
    hom_height_bounds,
    relation_lattice,
    restrict_to_coset,
)
from .heights import affine_height
from .matrixk import bg_to_pep, eigen_decompose, is_semisimple, jordan_multiplicative
from .numfield import element_to_str


@dataclass
class RunResult:
    exit_code: int
    report: dict
    text: str


# ---------------------------------------------------------------------------
# parameter parsing


def _int(job, name, default=None):
    v = job.param(name)
    if v is None:
        if default is None:
            raise ParseError(f"missing --{name}")
        return default
    try:
        return int(v)
    except ValueError:
        raise ParseError(f"--{name} expects an integer, got {v!r}") from None


def _rational(text, name):
    t = text.strip()
    try:
        if "^" in t:
            b, e = t.split("^")
            return Fraction(int(b)) ** int(e)
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--{name} expects rationals such as 100, 10^3 or 3/2, got {text!r}") from None


def _rationals(job, name):
    v = job.param(name)
    if v is None:
        raise ParseError(f"missing --{name}")
    return [_rational(x, name) for x in v.split(",") if x]


def _int_list(text, name):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise ParseError(f"--{name} expects comma-separated integers, got {text!r}") from None


def _need_pep(job):
    if job.pep is None:
        raise MathDomainError(f"command {job.command} needs a pep block")
    return job.pep


def _elem(x):
    return element_to_str(x)


def _coords(x):
    return [str(c) for c in x.coords]


# ---------------------------------------------------------------------------
# commands; each returns (json-able result, tsv header, tsv rows)


def cmd_height(job, caps):
    tol = float(_rational(job.param("tolerance"), "tolerance")) if job.param("tolerance") else caps.default_tolerance
    if not job.points:
        raise MathDomainError("height needs at least one point statement")
    rows, res = [], []
    for pt in job.points:
        h = affine_height(list(pt), tol, caps)
        res.append({"point": [_coords(x) for x in pt], **h.to_dict()})
        rows.append([";".join(_elem(x) for x in pt), repr(h.log_lo), repr(h.log_hi), repr(h.value)])
    return {"heights": res}, ["point", "log_lo", "log_hi", "log_height"], rows


def cmd_enumerate(job, caps):
    f = _need_pep(job)
    en = ex.enumerate_values(f, _int(job, "box", 1), workers=_int(job, "workers", 1), caps=caps)
    rows = [
        [";".join(_elem(x) for x in e.value), ";".join(",".join(map(str, w)) for w in e.witnesses)]
        for e in en
    ]
    return en.to_dict(), ["value", "witnesses"], rows


def cmd_count_growth(job, caps):
    f = _need_pep(job)
    tol = float(_rational(job.param("tolerance"), "tolerance")) if job.param("tolerance") else 1e-12
    g = ex.count_growth(f, _rationals(job, "thresholds"), tolerance=tol, caps=caps)
    rows = [[str(t), str(c)] for t, c in zip(g.thresholds, g.counts)]
    return g.to_dict(), ["H", "count"], rows


def cmd_minimal(job, caps):
    f = _need_pep(job)
    rep = ex.minimal_vectors(f, _int(job, "box", 5), caps=caps, workers=_int(job, "workers", 1))
    exc = {k for k, _, _ in rep.exceptional_candidates}
    rows = [
        [";".join(",".join(str(c) for c in coords) for coords in k), str(n), f"{h:.12g}", f"{r:.12g}", str(int(k in exc))]
        for k, n, h, r in rep.ratios
    ]
    return rep.to_dict(), ["value", "norm", "height", "ratio", "exceptional"], rows


def cmd_evertse(job, caps):
    cfg = ex.SUnitConfig(
        tuple(_int_list(job.param("primes", "2,3"), "primes")),
        _int(job, "summands", 2),
        _int(job, "exponent-bound", 4),
        _rational(job.param("C", "1/5"), "C"),
        job.field,
    )
    sols = ex.evertse_scan(cfg, caps)
    res = {
        "primes": list(cfg.primes),
        "summands": cfg.e,
        "exponent_bound": cfg.B,
        "C": str(cfg.C),
        "solutions": [[str(x) for x in t] for t in sols],
        "count": len(sols),
    }
    return res, ["solution"], [[",".join(str(x) for x in t)] for t in sols]


def cmd_sl2(job, caps):
    g = ex.sl2_count([int(t) for t in _rationals(job, "thresholds")])
    return g.to_dict(), ["T", "count"], [[str(t), str(c)] for t, c in zip(g.thresholds, g.counts)]


def _matrix_json(M):
    return {"rows": M.to_json(), "text": M.to_str()}


def cmd_jordan(job, caps):
    M = job.matrix(job.param("matrix"))
    gs, gu = jordan_multiplicative(M)
    return (
        {"g_s": _matrix_json(gs), "g_u": _matrix_json(gu)},
        ["part", "matrix"],
        [["g_s", gs.to_str()], ["g_u", gu.to_str()]],
    )


def cmd_semisimple(job, caps):
    M = job.matrix(job.param("matrix"))
    ss = is_semisimple(M)
    res = {"semisimple": ss, "minimal_polynomial": [_coords(c) for c in M.minpoly]}
    rows = [["semisimple", str(ss).lower()]]
    if ss:
        try:
            g, eig = eigen_decompose(M)
            res["eigenvalues"] = [_coords(x) for x in eig]
            res["g"] = _matrix_json(g)
            rows.append(["eigenvalues", ";".join(_elem(x) for x in eig)])
        except MathDomainError as e:
            res["eigen_error"] = {"code": e.code, "message": str(e), "factors": getattr(e, "factors", [])}
    return res, ["key", "value"], rows


def cmd_bg_to_pep(job, caps):
    names = job.param("matrices")
    mats = [job.matrix(n) for n in names.split(",")] if names else [M for _, M in job.matrices]
    f = bg_to_pep(mats)
    text = system_str(f)
    res = {"pep": text, "system": f.to_dict()}
    return res, ["pep"], [[line] for line in text.splitlines()]


def _coset_json(c):
    return c.to_dict()


def cmd_degeneracy(job, caps):
    f = _need_pep(job)
    loc = degeneracy_locus(f, _int(job, "component", 0), _int(job, "box", 5), caps)
    res = {"points": [list(p) for p in loc.points], "cosets": [_coset_json(c) for c in loc.cosets], "box_relative": True}
    rows = [["coset", str(list(c.offset)), str([list(b) for b in c.basis])] for c in loc.cosets]
    rows += [["point", str(list(p)), ""] for p in loc.points]
    return res, ["kind", "offset", "basis"], rows


def cmd_restrict(job, caps):
    f = _need_pep(job)
    off = _int_list(job.param("offset", ",".join("0" * f.r)), "offset")
    btxt = job.param("basis", "")
    basis = [_int_list(b, "basis") for b in btxt.split(";") if b]
    c = IntegerLatticeCoset.make(off, basis)
    g = restrict_to_coset(f, c)
    res = {"coset": c.to_dict(), "system": g.to_dict()}
    if g.modulus == 1:
        res["pep"] = system_str(g)
    return res, ["pep"], [[line] for line in res.get("pep", json.dumps(res["system"])).splitlines()]


def cmd_relations(job, caps):
    f = _need_pep(job)
    B = _int(job, "bound", caps.relation_bound)
    rel = relation_lattice(f.bases, B, caps)
    hb = hom_height_bounds(f, 3, caps=caps) if f.r else None
    res = {
        "bases": [_coords(b) for b in f.bases],
        "relations": [list(v) for v in rel.basis],
        "label": rel.label,
    }
    if hb is not None:
        res["hom_height_bounds_box3"] = hb._asdict()
    return res, ["relation"], [[",".join(map(str, v))] for v in rel.basis]


def cmd_membership(job, caps):
    f = _need_pep(job)
    M = job.matrix(job.param("matrix"))
    mc = ex.membership_count(f, M, _int(job, "n", 10), _int(job, "box", 5), caps)
    return mc.to_dict(), ["n", "count"], [[str(n), str(c)] for n, c in enumerate(mc.counts, start=1)]


HANDLERS = {
    "height": cmd_height,
    "enumerate": cmd_enumerate,
    "count-growth": cmd_count_growth,
    "minimal": cmd_minimal,
    "evertse-scan": cmd_evertse,
    "sl2-count": cmd_sl2,
    "jordan": cmd_jordan,
    "semisimple": cmd_semisimple,
    "bg-to-pep": cmd_bg_to_pep,
    "degeneracy": cmd_degeneracy,
    "restrict": cmd_restrict,
    "relations": cmd_relations,
    "membership-count": cmd_membership,
}
assert set(HANDLERS) == set(COMMANDS)


# ---------------------------------------------------------------------------
# running


def _caps_for(job, caps):
    caps = caps or DEFAULT_CAPS
    if job.param("config"):
        caps = Caps.from_file(job.param("config"))
    if job.param("max-cells"):
        caps = caps.with_overrides(max_box_cells=_int(job, "max-cells"))
    return caps


def _tsv(header, rows):
    return "\n".join(["\t".join(header)] + ["\t".join(r) for r in rows]) + "\n"


def _render(report, fmt, header=None, rows=None):
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if report.get("status") == "error":
        return _tsv(["status", "code", "message"], [["error", report["code"], report["message"]]])
    return _tsv(header, rows)


def _error_report(job, e):
    return {
        "status": "error",
        "command": getattr(job, "command", None),
        "code": e.code,
        "message": str(e),
        "exit_code": e.exit_code,
    }


def run(job, caps=None, timestamp=None):
    """Execute a parsed job; never raises for library errors."""
    fmt = job.param("format", "tsv")
    if fmt not in ("tsv", "json"):
        e = ParseError(f"--format must be tsv or json, got {fmt!r}")
        rep = _error_report(job, e)
        return RunResult(e.exit_code, rep, _render(rep, "json"))
    if job.command is None:
        e = ParseError("job has no run statement")
        rep = _error_report(job, e)
        return RunResult(e.exit_code, rep, _render(rep, fmt))
    try:
        caps = _caps_for(job, caps)
        result, header, rows = HANDLERS[job.command](job, caps)
    except PepError as e:
        rep = _error_report(job, e)
        return RunResult(e.exit_code, rep, _render(rep, fmt))
    except (ValueError, ZeroDivisionError) as e:
        err = MathDomainError(str(e))
        rep = _error_report(job, err)
        return RunResult(err.exit_code, rep, _render(rep, fmt))
    report = {"status": "ok", "command": job.command, "result": result}
    if not job.param("no-timestamp"):
        report["timestamp"] = timestamp or datetime.datetime.now(datetime.timezone.utc).isoformat()
    return RunResult(0, report, _render(report, fmt, header, rows))


def _build_argparser():
    ap = argparse.ArgumentParser(prog="pepsets", description="Run a PEP job file.")
    ap.add_argument("job", help="job file, or - for stdin")
    ap.add_argument("--command", help="command to run instead of the job's run statement")
    ap.add_argument("--print", action="store_true", help="print the canonical job text and exit")
    for flag in sorted({f for fl in COMMANDS.values() for f in fl} | {"config"}):
        if flag in BOOLEAN_FLAGS:
            ap.add_argument(f"--{flag}", action="store_true", default=None)
        else:
            ap.add_argument(f"--{flag}", dest=flag.replace("-", "_"))
    return ap


def main(argv=None):
    args = _build_argparser().parse_args(argv)
    overrides = {}
    for flag in sorted({f for fl in COMMANDS.values() for f in fl} | {"config"}):
        v = getattr(args, flag.replace("-", "_"))
        if v is not None:
            overrides[flag] = None if flag in BOOLEAN_FLAGS else v
    try:
        text = sys.stdin.read() if args.job == "-" else open(args.job, encoding="utf-8").read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        caps = Caps.from_file(overrides["config"]) if "config" in overrides else DEFAULT_CAPS
        job = parse_job(text, caps)
        if args.print:
            sys.stdout.write(print_job(job))
            return 0
        if args.command:
            allowed = COMMANDS.get(args.command, set()) | GLOBAL_FLAGS
            job = replace(job, command=args.command, params=tuple(p for p in job.params if p[0] in allowed))
        job = job.with_params(overrides)
        validate_command(job.command, job.params)
    except (PepError, ValueError) as e:
        code = e.exit_code if isinstance(e, PepError) else 2
        print(f"error: {e}", file=sys.stderr)
        return code
    res = run(job, caps)
    out = job.param("output")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(res.text)
    else:
        sys.stdout.write(res.text)
    if res.exit_code:
        print(f"error: {res.report.get('message')}", file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
