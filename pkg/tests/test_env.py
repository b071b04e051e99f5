"""Environment-flag behavior: precision override and kernel backend choice."""

from __future__ import annotations

import os
import subprocess
import sys


def _run(args, env_extra=None):
    env = dict(os.environ)
    env.update(env_extra or {})
    return subprocess.run(
        [sys.executable, "-m", "matchstick.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_precision_env_var_threads_through():
    base = _run(["verify", "g2", "--profile", "fixture"])
    high = _run(["verify", "g2", "--profile", "fixture"], {"MSF_PRECISION": "80"})
    assert base.returncode == high.returncode == 0
    # raising precision never flips a passing certified verdict
    assert "planar=PASS" in base.stdout and "planar=PASS" in high.stdout


def test_precision_flag_beats_env():
    out = _run(["--precision", "29", "fixtures", "list"], {"MSF_PRECISION": "60"})
    assert out.returncode == 64  # below the supported minimum


def test_numpy_backend_produces_identical_report(tmp_path):
    r1 = tmp_path / "numba.json"
    r2 = tmp_path / "numpy.json"
    a = _run(["verify", "g1", "--profile", "fixture", "--report", str(r1)])
    b = _run(
        ["verify", "g1", "--profile", "fixture", "--report", str(r2)],
        {"MSF_BACKEND": "numpy"},
    )
    assert a.returncode == b.returncode == 3  # planarity fails either way
    assert r1.read_bytes() == r2.read_bytes()


def test_unknown_backend_rejected():
    out = _run(["fixtures", "list"], {"MSF_BACKEND": "cuda"})
    assert out.returncode != 0
