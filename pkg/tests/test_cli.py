import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pepsets import NonIntegerExponentCoefficient, ParseError, UnknownSymbol
from pepsets.cli import main, run
from pepsets.dsl import parse_job, print_job

from .conftest import PELL_JOB


def _run(text, **kw):
    job = parse_job(text)
    if kw:
        job = job.with_params(kw)
    return run(job)


def _json(text, **kw):
    res = _run(text, format="json", **{"no-timestamp": None}, **kw)
    return res.exit_code, json.loads(res.text)


# -- parsing -----------------------------------------------------------------


def test_parse_pell():
    job = parse_job(PELL_JOB)
    f = job.pep
    assert f.r == 2 and f.k == 3 and f.s == 2
    assert job.field.from_rational(-1) in f.bases
    assert job.component_names == ("x", "y")


def test_parse_pell_evaluates(pell):
    f = parse_job(PELL_JOB).pep
    for n in [(0, 0), (0, 1), (1, 1), (2, -3)]:
        assert f.evaluate(n) == pell.evaluate(n)


def test_empty_pep_body():
    with pytest.raises(ParseError):
        parse_job("field x^2-2 as s\npep vars m,n over s\nend\n")


def test_fractional_exponent():
    with pytest.raises(NonIntegerExponentCoefficient):
        parse_job("field x^2-2 as s\npep vars n over s\n  2^(n/2)\nend\n")


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        parse_job("field x^2-2 as s\npep vars n over s\n  q^(n)\nend\n")


def test_error_position():
    with pytest.raises(ParseError) as err:
        parse_job("field x^2-2 as s\npep vars n over s\n  2^(n) + $\nend\n")
    assert err.value.line == 3


def test_unknown_flag():
    with pytest.raises(ParseError):
        parse_job("field x-1\npoint 3\nrun height --box 3\n")


# -- parse / print fixpoint ------------------------------------------------------


FIXPOINT_JOBS = [
    PELL_JOB + "run count-growth --thresholds 10^2,10^3 --format json\n",
    "field x-1\npoint 3, -2\npoint 1/2\nrun height --tolerance 1/1000000\n",
    "field x^3-x-1 as c\nmatrix A = [[c, 1], [0, c^2]]\nmatrix B = [[1, 1/3], [0, 1]]\nrun jordan --matrix B\n",
    "field x^2+1 as i\npep vars a,b\n  i^(a) * (1+i)^(b - a) + 3/4\n  (2-i)^(2a)\nend\nrun relations --bound 5\n",
]


@pytest.mark.parametrize("text", FIXPOINT_JOBS)
def test_print_parse_fixpoint(text):
    job = parse_job(text)
    printed = print_job(job)
    again = parse_job(printed)
    assert again == job
    assert print_job(again) == printed


_coef = st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(lambda q: q != 0)
_form = st.lists(st.integers(-3, 3), min_size=2, max_size=2)
_base = st.sampled_from(["2", "3", "(1+s)", "(3-2s)", "(-1)", "s", "(1/2)"])


def _lin(v):
    parts = [f"{c}*{n}" for c, n in zip(v, "mn") if c]
    return " + ".join(parts) if parts else "0"


@st.composite
def pep_jobs(draw):
    comps = []
    for _ in range(draw(st.integers(1, 3))):
        terms = []
        for _ in range(draw(st.integers(1, 3))):
            c = draw(_coef)
            factors = [f"({c})"]
            for _ in range(draw(st.integers(0, 2))):
                factors.append(f"{draw(_base)}^({_lin(draw(_form))})")
            terms.append(" * ".join(factors))
        comps.append("  " + " + ".join(terms))
    return "field x^2-2 as s\npep vars m,n over s\n" + "\n".join(comps) + "\nend\nrun enumerate --box 1\n"


@settings(max_examples=60, deadline=None)
@given(pep_jobs())
def test_fixpoint_random(text):
    try:
        job = parse_job(text)
    except ParseError:
        # terms can cancel to an empty component list; that is a legitimate rejection
        return
    printed = print_job(job)
    again = parse_job(printed)
    assert again == job
    assert print_job(again) == printed
    for n in [(0, 0), (1, -1), (2, 1)]:
        assert again.pep.evaluate(n) == job.pep.evaluate(n)


# -- running ---------------------------------------------------------------------------


def test_height_command():
    code, rep = _json("field x-1\npoint 3, -2\nrun height\n")
    assert code == 0 and rep["status"] == "ok"
    h = rep["result"]["heights"][0]
    assert h["log_lo"] - 1e-12 <= math.log(3) <= h["log_hi"] + 1e-12


def test_count_growth_command():
    res = _run(PELL_JOB + "run count-growth --thresholds 10^2,10^3,10^4\n")
    lines = res.text.splitlines()
    assert lines[0] == "H\tcount"
    unit = math.log(3 + 2 * math.sqrt(2))
    want = [2 * (2 * math.floor(math.log(2 * 10**k) / unit) + 1) for k in (2, 3, 4)]
    assert [int(line.split("\t")[1]) for line in lines[1:]] == want


def test_jordan_command():
    code, rep = _json("field x-1\nmatrix A = [[2, 1], [0, 2]]\nrun jordan --matrix A\n")
    assert code == 0
    assert rep["result"]["g_u"]["text"] == "[[1, 1/2], [0, 1]]"
    assert rep["result"]["g_s"]["text"] == "[[2, 0], [0, 2]]"


def test_semisimple_command():
    code, rep = _json("field x-1\nmatrix A = [[3, 4], [2, 3]]\nrun semisimple --matrix A\n")
    assert rep["result"]["semisimple"] is True
    assert rep["result"]["eigen_error"]["factors"] == ["t^2 - 6*t + 1"]


@pytest.mark.parametrize(
    "tail",
    [
        "run enumerate --box 2",
        "run minimal --box 4",
        "run degeneracy --component 0 --box 3",
        "run restrict --offset 0,0 --basis 0,1",
        "run relations --bound 5",
    ],
)
def test_pep_commands_succeed(tail):
    text = PELL_JOB + "matrix A = [[3, 4], [2, 3]]\n" + tail + "\n"
    for fmt in ("json", "tsv"):
        res = _run(text, format=fmt)
        assert res.exit_code == 0, res.text
    header = _run(text).text.splitlines()[0]
    assert header and not header.startswith("status")


def test_other_commands_succeed():
    for text in [
        "field x-1\nrun evertse-scan --primes 2,3 --summands 2 --exponent-bound 4 --C 1/5\n",
        "field x-1\nrun sl2-count --thresholds 1,2,4,8\n",
        "field x^2-2 as s\nmatrix G = [[3, 4], [2, 3]]\nrun bg-to-pep --matrices G\n",
    ]:
        res = _run(text, format="json")
        assert res.exit_code == 0, res.text


def test_evertse_includes_three_minus_two():
    code, rep = _json("field x-1\nrun evertse-scan --primes 2,3 --summands 2 --exponent-bound 4 --C 1/5\n")
    assert ["3", "-2"] in rep["result"]["solutions"]


def test_bg_to_pep_output_feeds_membership():
    head = "field x^2-2 as s\nmatrix G = [[3, 4], [2, 3]]\nmatrix U = [[1, 1], [0, 1]]\n"
    pep = run(parse_job(head + "run bg-to-pep --matrices G\n")).report["result"]["pep"]
    code, rep = _json(head + pep + "\nrun membership-count --matrix G --n 5 --box 6\n")
    assert code == 0 and rep["result"]["cumulative"] == [1, 2, 3, 4, 5]
    code, rep = _json(head + pep + "\nrun membership-count --matrix U --n 5 --box 6\n")
    assert code == 0 and rep["result"]["count"] == 0


def test_membership_shape_mismatch():
    code, rep = _json(PELL_JOB + "matrix U = [[1, 1], [0, 1]]\nrun membership-count --matrix U --n 4 --box 3\n")
    assert code == 3 and rep["code"] == "dimension_mismatch"


def test_determinism():
    text = PELL_JOB + "run minimal --box 4 --format json --no-timestamp\n"
    a = run(parse_job(text)).text
    b = run(parse_job(text)).text
    assert a == b
    stamped = run(parse_job(PELL_JOB + "run minimal --box 4 --format json\n"), timestamp="T0").report
    assert stamped["timestamp"] == "T0"


def test_error_report_codes():
    code, rep = _json("field x-1\nmatrix A = [[1, 2], [2, 4]]\nrun jordan --matrix A\n")
    assert code == 3 and rep["status"] == "error" and rep["code"] == "not_invertible"
    code, rep = _json(PELL_JOB + "run enumerate --box 50 --max-cells 100\n")
    assert code == 4 and rep["status"] == "error"


def test_main_exit_codes(tmp_path, capsys):
    ok = tmp_path / "ok.pep"
    ok.write_text("field x-1\npoint 3, -2\nrun height --no-timestamp\n")
    assert main([str(ok)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("point\tlog_lo")
    bad = tmp_path / "bad.pep"
    bad.write_text("field x-1\npep vars n\n  2^(n/2)\nend\nrun enumerate\n")
    assert main([str(bad)]) == 2
    math_err = tmp_path / "m.pep"
    math_err.write_text("field x^2-4\nrun height\n")
    assert main([str(math_err)]) == 3
    cap = tmp_path / "c.pep"
    cap.write_text(PELL_JOB + "run enumerate --box 40\n")
    assert main([str(cap), "--max-cells", "10"]) == 4


def test_main_print_and_override(tmp_path, capsys):
    p = tmp_path / "j.pep"
    p.write_text(PELL_JOB + "run enumerate --box 1\n")
    assert main([str(p), "--print"]) == 0
    printed = capsys.readouterr().out
    assert parse_job(printed) == parse_job(p.read_text())
    out = tmp_path / "o.json"
    assert main([str(p), "--command", "minimal", "--box", "3", "--format", "json", "--no-timestamp", "--output", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["command"] == "minimal" and "timestamp" not in rep
