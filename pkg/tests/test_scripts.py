import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.mark.parametrize("argv", [
    ["census.py", "--max-order", "4", "--jobs", "2", "--format", "csv"],
    ["prop9_table.py", "2"],
    ["phi_family.py", "--max-order", "9"],
])
def test_script_runs_clean(argv):
    out = subprocess.run([sys.executable, str(SCRIPTS / argv[0]), *argv[1:]],
                         capture_output=True, text=True, timeout=120)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip()


def test_census_parallel_matches_serial():
    run = lambda jobs: subprocess.run(
        [sys.executable, str(SCRIPTS / "census.py"), "--max-order", "5", "--jobs", jobs, "--format", "json"],
        capture_output=True, text=True, timeout=120).stdout
    assert run("1") == run("3")
