import runpy
from pathlib import Path

import pytest

from pepsets.cli import main

DEMOS = Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("*.py")))
def test_demo_runs(script, capsys):
    runpy.run_path(str(DEMOS / script), run_name="__main__")
    assert capsys.readouterr().out


@pytest.mark.parametrize("job", sorted(p.name for p in (DEMOS / "jobs").glob("*.pep")))
def test_job_file_runs(job, capsys):
    assert main([str(DEMOS / "jobs" / job), "--no-timestamp"]) == 0
    assert capsys.readouterr().out
