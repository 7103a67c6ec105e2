import pathlib
import shutil
import subprocess
import sys

import pytest

DEMOS = pathlib.Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("*.py")))
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(DEMOS / script)], capture_output=True,
                          text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr


@pytest.mark.skipif(shutil.which("twyb") is None, reason="twyb not on PATH")
def test_cli_walkthrough():
    proc = subprocess.run(["sh", str(DEMOS / "05_cli.sh")], capture_output=True,
                          text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert "colorings: 9" in proc.stdout and "phi = 9*[0]" in proc.stdout
