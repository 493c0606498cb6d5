"""Secondary-component acceptance: figure reproduction and the file contract.

The primary solver is consumed strictly through its output files; these
tests generate those files by invoking the primary package where available
(skipped otherwise, keeping this suite self-contained).
"""

from pathlib import Path

import numpy as np
import pytest

from plotview.io import read_grid_snapshot
from plotview.plot1d import plot1d
from plotview.plot2d import plot2d

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN_RHO = np.arange(1.0, 13.0).reshape(3, 4)


def test_golden_fixture_bit_exact():
    snap = read_grid_snapshot(str(FIXTURES / "golden.meta"))
    assert np.array_equal(snap.data["rho"], GOLDEN_RHO)
    assert np.array_equal(snap.data["u"], 0.5 * GOLDEN_RHO)
    print("ACCEPTANCE 11a PASS  golden grid snapshot decodes bit-exactly")


def test_four_curve_example1_figure(tmp_path):
    mfcu_cliio = pytest.importorskip("mfcu.cliio")
    from mfcu.integrator import SchemeConfig, advance
    from mfcu.problems import build_problem, initialize, make_grid

    spec = build_problem("ex1")

    def run_to_csv(scheme, nx, name):
        cfg = SchemeConfig(scheme=scheme, fluids=spec.fluids)
        f = initialize(spec, make_grid(spec, cfg.ghost, nx=nx))
        f, _ = advance(f, spec.t_final, cfg)
        snap = mfcu_cliio.snapshot_from_field(f, spec.t_final)
        path = tmp_path / f"ex1_{name}_t3.csv"
        mfcu_cliio.write_snapshot(snap, "csv", str(path))
        return str(path)

    files = [run_to_csv(s, 100, s) for s in ("pccu", "ldpccu", "aiweno")]
    ref = run_to_csv("pccu", 800, "reference")
    out = plot1d(
        files, str(tmp_path / "ex1_density.png"), ref=ref, var="rho", zoom=(-0.55, -0.4)
    )
    assert Path(out).stat().st_size > 0
    print("ACCEPTANCE 11b PASS  four-curve figure rendered from primary outputs")


def test_render_example4_snapshot(tmp_path):
    mfcu_cliio = pytest.importorskip("mfcu.cliio")
    rc = mfcu_cliio.parse_config(
        f"problem = ex4\nscheme = ldpccu\nnx = 200\nny = 50\nt_final = 0.1\n"
        f"out = {tmp_path}\n"
    )
    result = mfcu_cliio.run(rc)
    assert result.status == 0
    meta = [f for f in result.snapshot_files if f.endswith(".meta")][0]
    # the cross-component contract: plotview decodes the primary's file
    # bit-exactly
    ours = read_grid_snapshot(meta)
    theirs = mfcu_cliio.read_snapshot_grid_binary(meta)
    for key in theirs.data:
        assert np.array_equal(ours.data[key], theirs.data[key])
    out = plot2d(meta, str(tmp_path / "ex4.png"))
    assert Path(out).stat().st_size > 0
    print("ACCEPTANCE 11c PASS  primary grid snapshot decoded and rendered")
