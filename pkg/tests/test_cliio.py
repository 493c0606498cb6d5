"""Config parsing, snapshot formats, error metrics, and the run driver."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcu.cli import main as cli_main
from mfcu.cliio import (
    ConfigError,
    RunConfig,
    Snapshot,
    config_hash,
    l1_error,
    parse_config,
    read_snapshot_csv,
    read_snapshot_grid_binary,
    run,
    schlieren_field,
    serialize_config,
    snapshot_from_field,
    write_snapshot,
)
from mfcu.core import Grid1D, Grid2D
from mfcu.problems import build_problem


class TestParseConfig:
    def test_minimal_defaults(self):
        rc = parse_config("problem = ex1\nscheme = ldpccu\n")
        assert rc.problem == "ex1"
        assert rc.cfl == 0.45
        assert rc.eps0 == 1e-12
        assert rc.theta == 1.3
        assert (rc.tau_interface, rc.tau_smooth) == (-0.5, 0.5)
        assert rc.spec.nx == 300

    def test_comments_and_blanks(self):
        rc = parse_config("# a comment\n\nproblem = ex2  # trailing\n")
        assert rc.problem == "ex2"

    def test_cfl_range(self):
        assert parse_config("problem = ex1\ncfl = 0.9\n").cfl == 0.9
        with pytest.raises(ConfigError):
            parse_config("problem = ex1\ncfl = 1.5\n")

    def test_unknown_key_line_number(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("problem = ex1\nbogus = 1\n")

    def test_type_mismatch_line_number(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_config("problem = ex1\nscheme = ldpccu\nnx = abc\n")

    def test_missing_problem(self):
        with pytest.raises(ConfigError, match="problem"):
            parse_config("scheme = ldpccu\n")

    def test_unknown_problem(self):
        with pytest.raises(ConfigError, match="known problems"):
            parse_config("problem = ex99\n")

    def test_snapshots_validated(self):
        with pytest.raises(ConfigError, match="snapshot"):
            parse_config("problem = ex1\nsnapshots = 5.0\n")

    def test_custom_problem(self):
        text = """
problem = custom
name = tube
dimension = 1
domain = 0 1
bc = free free
t_final = 0.0002
nx = 100
region = halfspace x < 0.7 : rho=1000 u=0 p=1e9 gamma=4.4 pi_inf=6e8
region = else : rho=50 u=0 p=1e5 gamma=1.4 pi_inf=0
"""
        rc = parse_config(text)
        assert rc.spec.dim == 1
        assert rc.spec.nx == 100
        assert len(rc.spec.regions) == 2
        assert rc.spec.fluids[0].pi_inf == 6e8

    def test_custom_region_errors(self):
        with pytest.raises(ConfigError, match="region"):
            parse_config(
                "problem = custom\ndimension = 1\ndomain = 0 1\nbc = free free\n"
                "t_final = 1\nnx = 10\nregion = blurb : rho=1 u=0 p=1 gamma=1.4\n"
            )

    def test_inline_keys_require_custom(self):
        with pytest.raises(ConfigError, match="custom"):
            parse_config("problem = ex1\nregion = else : rho=1 u=0 p=1 gamma=1.4\n")


catalog_names = st.sampled_from(["ex1", "ex2", "ex3", "ex4", "ex6", "ex7"])


class TestRoundTrip:
    @settings(max_examples=60, deadline=None)
    @given(
        problem=catalog_names,
        scheme=st.sampled_from(["pccu", "ldpccu", "aiweno"]),
        cfl=st.floats(0.05, 0.95),
        nx=st.one_of(st.none(), st.integers(10, 4000)),
        hybrid=st.sampled_from(["on", "off", "auto"]),
        schlieren=st.booleans(),
    )
    def test_catalog_configs(self, problem, scheme, cfl, nx, hybrid, schlieren):
        rc = RunConfig(
            problem=problem,
            spec=build_problem(problem),
            scheme=scheme,
            cfl=cfl,
            nx=nx,
            hybrid=hybrid,
            schlieren=schlieren,
        )
        rc2 = parse_config(serialize_config(rc))
        assert rc2 == rc

    def test_custom_round_trip(self):
        text = """
problem = custom
dimension = 2
domain = 0 12 0 12
bc = free free solid_wall solid_wall
t_final = 0.045
nx = 80
ny = 80
region = disk 6 6 3 : rho=0.0012 u=0 v=0 p=1 gamma=1.4 pi_inf=0
region = halfspace x > 11.4 : rho=1.325 u=-68.525 v=0 p=19153 gamma=4.4 pi_inf=6000
region = else : rho=1 u=0 v=0 p=1 gamma=4.4 pi_inf=6000
"""
        rc = parse_config(text)
        rc2 = parse_config(serialize_config(rc))
        assert rc2 == rc

    def test_hash_tracks_meaningful_fields(self):
        rc = parse_config("problem = ex1\n")
        h0 = config_hash(rc)
        rc_out = parse_config("problem = ex1\nout = elsewhere\n")
        assert config_hash(rc_out) == h0  # output dir is not semantic
        rc_cfl = parse_config("problem = ex1\ncfl = 0.4\n")
        assert config_hash(rc_cfl) != h0
        rc_nx = parse_config("problem = ex1\nnx = 150\n")
        assert config_hash(rc_nx) != h0


class TestSchlieren:
    def make_grid(self, nx=8, ny=6):
        return Grid2D(0.0, 1.0, 0.0, 0.75, nx, ny, 2)

    def test_constant_density_all_ones(self):
        grid = self.make_grid()
        out = schlieren_field(np.full((grid.ny, grid.nx), 2.0), grid)
        assert np.all(out == 1.0)

    def test_linear_profile_uniform_shading(self):
        grid = self.make_grid(nx=12, ny=5)
        X = np.tile(grid.xcenters(), (grid.ny, 1))
        out = schlieren_field(X, grid)
        assert np.allclose(out, np.exp(-80.0), rtol=1e-12)

    def test_peak_cell_value(self):
        grid = self.make_grid(nx=16, ny=10)
        rho = np.ones((grid.ny, grid.nx))
        rho[5, 8] = 2.0
        out = schlieren_field(rho, grid)
        assert out.min() == pytest.approx(np.exp(-80.0), rel=1e-12)
        assert 0.0 < out.min() and out.max() <= 1.0


class TestSnapshotIo:
    def test_csv_round_trip(self, tmp_path):
        grid = Grid1D(0.0, 1.0, 3, 2)
        data = {
            "rho": np.array([1.0, np.pi, 1e-9]),
            "u": np.array([0.1, -0.5, 0.0]),
            "p": np.array([1.0, 2.0, 3.0]),
            "Gamma": np.full(3, 2.5),
            "Pi": np.zeros(3),
        }
        snap = Snapshot(time=0.5, grid=grid, data=data)
        path = str(tmp_path / "snap.csv")
        files = write_snapshot(snap, "csv", path)
        assert files == [path]
        text = (tmp_path / "snap.csv").read_text()
        assert text.splitlines()[0] == "x,rho,u,p,Gamma,Pi"
        assert len(text.splitlines()) == 4
        back = read_snapshot_csv(path)
        for key in data:
            assert np.array_equal(back.data[key], data[key])

    def test_grid_binary_round_trip(self, tmp_path):
        grid = Grid2D(-1.0, 1.0, 0.0, 0.5, 8, 4, 2)
        rng = np.random.default_rng(0)
        data = {f: rng.normal(size=(4, 8)) for f in ("rho", "u", "v", "p", "Gamma", "Pi")}
        snap = Snapshot(time=0.25, grid=grid, data=data, meta={"scheme": "ldpccu"})
        base = str(tmp_path / "snap2d")
        files = write_snapshot(snap, "grid-binary", base)
        meta_text = (tmp_path / "snap2d.meta").read_text()
        assert "endianness: little" in meta_text
        assert "nx: 8" in meta_text
        back = read_snapshot_grid_binary(base)
        assert back.time == 0.25
        for key in data:
            assert np.array_equal(back.data[key], data[key])
        assert back.meta["scheme"] == "ldpccu"

    def test_format_dimension_mismatch(self, tmp_path):
        grid = Grid1D(0.0, 1.0, 3, 2)
        snap = Snapshot(time=0.0, grid=grid, data={f: np.zeros(3) for f in
                                                   ("rho", "u", "p", "Gamma", "Pi")})
        with pytest.raises(ValueError):
            write_snapshot(snap, "grid-binary", str(tmp_path / "x"))


class TestL1Error:
    def test_identical_is_zero(self):
        grid = Grid1D(0.0, 1.0, 4, 2)
        data = {"rho": np.array([1.0, 2.0, 3.0, 4.0])}
        a = Snapshot(0.0, grid, dict(data))
        b = Snapshot(0.0, grid, dict(data))
        assert l1_error(a, b)["rho"] == 0.0

    def test_constant_offset(self):
        gc = Grid1D(0.0, 2.0, 4, 2)
        gf = Grid1D(0.0, 2.0, 16, 2)
        a = Snapshot(0.0, gc, {"rho": np.full(4, 1.0)})
        b = Snapshot(0.0, gf, {"rho": np.full(16, 3.5)})
        assert l1_error(a, b)["rho"] == pytest.approx(2.5 * 2.0)

    def test_prolonged_data_is_exact(self):
        gc = Grid1D(0.0, 1.0, 4, 2)
        gf = Grid1D(0.0, 1.0, 16, 2)
        coarse = np.array([1.0, 2.0, -1.0, 0.5])
        fine = np.repeat(coarse, 4)
        a = Snapshot(0.0, gc, {"rho": coarse})
        b = Snapshot(0.0, gf, {"rho": fine})
        assert l1_error(a, b)["rho"] == 0.0

    def test_incompatible_grids(self):
        a = Snapshot(0.0, Grid1D(0.0, 1.0, 5, 2), {"rho": np.zeros(5)})
        b = Snapshot(0.0, Grid1D(0.0, 1.0, 12, 2), {"rho": np.zeros(12)})
        with pytest.raises(ValueError):
            l1_error(a, b)


class TestRunDriver:
    def test_run_ex1_tiny(self, tmp_path):
        rc = parse_config(
            f"problem = ex1\nscheme = ldpccu\nnx = 60\nt_final = 0.05\nout = {tmp_path}\n"
        )
        result = run(rc)
        assert result.status == 0
        assert result.steps > 0
        assert any(f.endswith(".csv") for f in result.snapshot_files)
        manifest = (tmp_path / "manifest.txt").read_text()
        assert "config_hash:" in manifest and "steps:" in manifest

    def test_run_2d_writes_grid_binary(self, tmp_path):
        rc = parse_config(
            f"problem = ex6\nscheme = ldpccu\nnx = 40\nny = 24\nt_final = 0.0005\n"
            f"out = {tmp_path}\n"
        )
        result = run(rc)
        assert result.status == 0
        metas = [f for f in result.snapshot_files if f.endswith(".meta")]
        assert metas
        snap = read_snapshot_grid_binary(metas[0])
        assert "schlieren" in snap.data
        assert snap.data["rho"].shape == (24, 40)

    def test_determinism(self, tmp_path):
        outs = []
        for sub in ("a", "b"):
            rc = parse_config(
                f"problem = ex1\nscheme = aiweno\nnx = 50\nt_final = 0.02\n"
                f"out = {tmp_path / sub}\n"
            )
            result = run(rc)
            csv = [f for f in result.snapshot_files if f.endswith(".csv")][0]
            outs.append(open(csv, "rb").read())
        assert outs[0] == outs[1]


class TestCli:
    def test_list_problems(self, capsys):
        assert cli_main(["list-problems"]) == 0
        out = capsys.readouterr().out.split()
        assert out == ["ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7"]

    def test_run_config_error_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("problem = ex1\ncfl = 7\n")
        assert cli_main(["run", "--config", str(cfg)]) == 2

    def test_missing_config_file(self, capsys):
        assert cli_main(["run", "--config", "/nonexistent.cfg"]) == 2

    def test_run_and_overrides(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("problem = ex1\nt_final = 0.02\nnx = 40\n")
        code = cli_main(
            ["run", "--config", str(cfg), "--out", str(tmp_path / "o"), "--scheme", "pccu"]
        )
        assert code == 0
        assert (tmp_path / "o" / "manifest.txt").exists()

    def test_convergence_smoke(self, tmp_path, capsys):
        code = cli_main(
            ["convergence", "--levels", "2", "--base-n", "32", "--out", str(tmp_path)]
        )
        assert code == 0
        assert (tmp_path / "convergence_ldpccu.csv").exists()
        out = capsys.readouterr().out
        assert "order" in out

    def test_reference_smoke(self, tmp_path):
        code = cli_main(
            ["reference", "--problem", "ex3", "--out", str(tmp_path), "--nx", "48"]
        )
        assert code == 0
