"""Configuration parsing, snapshot output, error metrics, and the run driver.

Config files are plain ``key = value`` lines with ``#`` comments.  Snapshots
are written as CSV (1-D) or as a metadata text file plus one raw little-endian
float64 array per field (2-D); both round-trip losslessly.
"""

from __future__ import annotations

import hashlib
import sys
import time as _time
from dataclasses import dataclass, field as dc_field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from mfcu import __version__
from mfcu.core import Field1D, Field2D, FluidSpec, Grid1D, Grid2D
from mfcu.integrator import SchemeConfig, SolverAbort, advance, apply_boundary
from mfcu.problems import (
    PROBLEM_NAMES,
    ProblemSpec,
    Region,
    build_problem,
    initialize,
    make_grid,
    smooth_density,
)

CSV_HEADER = "x,rho,u,p,Gamma,Pi"
FIELDS_1D = ("rho", "u", "p", "Gamma", "Pi")
FIELDS_2D = ("rho", "u", "v", "p", "Gamma", "Pi")


class ConfigError(ValueError):
    """Malformed run configuration; carries the offending line number."""

    def __init__(self, msg: str, line: Optional[int] = None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


@dataclass
class RunConfig:
    """Parsed run configuration; optional fields fall back to catalog values."""

    problem: str
    spec: ProblemSpec
    scheme: str = "ldpccu"
    cfl: float = 0.45
    theta: float = 1.3
    tau_interface: float = -0.5
    tau_smooth: float = 0.5
    eps0: float = 1.0e-12
    hybrid: str = "auto"  # on / off / auto
    nx: Optional[int] = None
    ny: Optional[int] = None
    out: str = "out"
    fmt: Optional[str] = None  # csv / grid-binary
    snapshots: Optional[Tuple[float, ...]] = None
    t_final: Optional[float] = None
    reference: bool = False
    schlieren: bool = True

    def scheme_config(self) -> SchemeConfig:
        hybrid = None if self.hybrid == "auto" else self.hybrid == "on"
        if self.hybrid == "auto" and self.spec.hybrid_default and self.scheme == "aiweno":
            hybrid = True
        return SchemeConfig(
            scheme=self.scheme,
            cfl=self.cfl,
            theta=self.theta,
            tau_interface=self.tau_interface,
            tau_smooth=self.tau_smooth,
            eps0=self.eps0,
            hybrid=hybrid,
            fluids=self.spec.fluids,
            adjacency=self.spec.adjacency,
        )


_FLOAT_KEYS = {"cfl", "theta", "tau_interface", "tau_smooth", "eps0", "t_final"}
_INT_KEYS = {"nx", "ny"}
_BOOL_KEYS = {"reference", "schlieren"}
_STR_KEYS = {"problem", "scheme", "hybrid", "out", "format", "name"}
_CUSTOM_KEYS = {"dimension", "domain", "bc", "region"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _STR_KEYS | _CUSTOM_KEYS | {"snapshots"}


def _parse_bool(value: str, line: int) -> bool:
    v = value.strip().lower()
    if v in ("true", "on", "yes", "1"):
        return True
    if v in ("false", "off", "no", "0"):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}", line)


def _parse_region(value: str, line: int, dim: int) -> Region:
    if ":" not in value:
        raise ConfigError("region needs '<shape> : <state>'", line)
    shape_part, state_part = value.split(":", 1)
    tokens = shape_part.split()
    try:
        if tokens[0] == "interval":
            kind, params = "interval", (float(tokens[1]), float(tokens[2]))
        elif tokens[0] == "halfspace":
            if tokens[1] not in ("x", "y") or tokens[2] not in ("<", ">"):
                raise ConfigError("halfspace needs 'halfspace x|y <|> VALUE'", line)
            kind, params = "halfspace", (tokens[1], tokens[2], float(tokens[3]))
        elif tokens[0] == "disk":
            kind, params = "disk", (float(tokens[1]), float(tokens[2]), float(tokens[3]))
        elif tokens[0] == "else":
            kind, params = "else", ()
        else:
            raise ConfigError(f"unknown region shape {tokens[0]!r}", line)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed region shape {shape_part.strip()!r}", line) from None
    state: Dict[str, float] = {}
    for item in state_part.split():
        if "=" not in item:
            raise ConfigError(f"malformed state assignment {item!r}", line)
        key, val = item.split("=", 1)
        if key not in ("rho", "u", "v", "p", "gamma", "pi_inf"):
            raise ConfigError(f"unknown state key {key!r}", line)
        try:
            state[key] = float(val)
        except ValueError:
            raise ConfigError(f"bad number {val!r} for {key}", line) from None
    for req in ("rho", "u", "p", "gamma"):
        if req not in state:
            raise ConfigError(f"region state missing {req!r}", line)
    if dim == 1 and "v" in state:
        raise ConfigError("1-D regions cannot set v", line)
    fluid = FluidSpec(state["gamma"], state.get("pi_inf", 0.0))
    return Region(kind, params, state["rho"], state["u"], state["p"], fluid, v=state.get("v", 0.0))


def _build_custom_spec(kv: Dict[str, Tuple[str, int]], regions: List[Tuple[str, int]],
                       name: str) -> ProblemSpec:
    def need(key):
        if key not in kv:
            raise ConfigError(f"custom problem needs {key!r}")
        return kv[key]

    dim_s, dim_line = need("dimension")
    try:
        dim = int(dim_s)
    except ValueError:
        raise ConfigError(f"bad dimension {dim_s!r}", dim_line) from None
    if dim not in (1, 2):
        raise ConfigError("dimension must be 1 or 2", dim_line)
    dom_s, dom_line = need("domain")
    try:
        dom = tuple(float(t) for t in dom_s.split())
    except ValueError:
        raise ConfigError(f"bad domain {dom_s!r}", dom_line) from None
    if len(dom) != 2 * dim:
        raise ConfigError(f"domain needs {2 * dim} numbers", dom_line)
    bc_s, bc_line = need("bc")
    bc = tuple(bc_s.split())
    if len(bc) != 2 * dim:
        raise ConfigError(f"bc needs {2 * dim} tags", bc_line)
    tf_s, tf_line = need("t_final")
    try:
        t_final = float(tf_s)
    except ValueError:
        raise ConfigError(f"bad t_final {tf_s!r}", tf_line) from None
    nx_s, nx_line = need("nx")
    try:
        nx = int(nx_s)
    except ValueError:
        raise ConfigError(f"bad nx {nx_s!r}", nx_line) from None
    ny = 1
    if dim == 2:
        ny_s, ny_line = need("ny")
        try:
            ny = int(ny_s)
        except ValueError:
            raise ConfigError(f"bad ny {ny_s!r}", ny_line) from None
    if not regions:
        raise ConfigError("custom problem needs at least one region")
    regs = tuple(_parse_region(val, line, dim) for val, line in regions)
    fluids: List[FluidSpec] = []
    for reg in regs:
        if reg.fluid not in fluids:
            fluids.append(reg.fluid)
    return ProblemSpec(
        name=name,
        dim=dim,
        domain=dom,
        nx=nx,
        ny=ny,
        nx_reference=4 * nx,
        bc=bc,
        t_final=t_final,
        snapshots=(t_final,),
        regions=regs,
        fluids=tuple(fluids),
    )


def parse_config(text: str) -> RunConfig:
    """Parse a key=value config document; diagnostics carry line numbers."""
    kv: Dict[str, Tuple[str, int]] = {}
    regions: List[Tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key == "region":
            regions.append((value, lineno))
        elif key in kv:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        else:
            kv[key] = (value, lineno)

    if "problem" not in kv:
        raise ConfigError("missing required key 'problem'")
    problem = kv["problem"][0]
    if problem == "custom":
        name = kv.get("name", ("custom", 0))[0]
        spec = _build_custom_spec(kv, regions, name)
    else:
        if regions or any(k in kv for k in _CUSTOM_KEYS):
            bad = regions[0][1] if regions else kv[next(k for k in _CUSTOM_KEYS if k in kv)][1]
            raise ConfigError("inline-problem keys require problem = custom", bad)
        try:
            spec = build_problem(problem)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0]), kv["problem"][1]) from None

    rc = RunConfig(problem=problem, spec=spec)
    consumed = {"problem", "dimension", "domain", "bc", "name"}
    if problem == "custom":
        consumed |= {"nx", "ny", "t_final"}
    for key, (value, line) in kv.items():
        if key in consumed:
            continue
        if key in _FLOAT_KEYS:
            try:
                setattr(rc, "t_final" if key == "t_final" else key, float(value))
            except ValueError:
                raise ConfigError(f"expected a number for {key}, got {value!r}", line) from None
        elif key in _INT_KEYS:
            try:
                val = int(value)
            except ValueError:
                raise ConfigError(f"expected an integer for {key}, got {value!r}", line) from None
            if val <= 0:
                raise ConfigError(f"{key} must be positive", line)
            setattr(rc, key, val)
        elif key in _BOOL_KEYS:
            setattr(rc, key, _parse_bool(value, line))
        elif key == "snapshots":
            try:
                rc.snapshots = tuple(float(t) for t in value.replace(",", " ").split())
            except ValueError:
                raise ConfigError(f"bad snapshot list {value!r}", line) from None
        elif key == "scheme":
            if value not in ("pccu", "ldpccu", "aiweno"):
                raise ConfigError(f"unknown scheme {value!r}", line)
            rc.scheme = value
        elif key == "hybrid":
            if value not in ("on", "off", "auto"):
                raise ConfigError(f"hybrid must be on/off/auto, got {value!r}", line)
            rc.hybrid = value
        elif key == "format":
            if value not in ("csv", "grid-binary"):
                raise ConfigError(f"unknown format {value!r}", line)
            rc.fmt = value
        elif key == "out":
            rc.out = value
    if not 0.0 < rc.cfl < 1.0:
        raise ConfigError(f"cfl must lie in (0, 1), got {rc.cfl}", kv["cfl"][1] if "cfl" in kv else None)
    t_final = rc.t_final if rc.t_final is not None else rc.spec.t_final
    if rc.snapshots is not None:
        for ts in rc.snapshots:
            if not 0.0 <= ts <= t_final:
                raise ConfigError(f"snapshot time {ts} outside [0, {t_final}]")
    return rc


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def serialize_config(rc: RunConfig) -> str:
    """Canonical text form; parse(serialize(rc)) == rc."""
    lines = [f"problem = {rc.problem}"]
    if rc.problem == "custom":
        spec = rc.spec
        lines.append(f"name = {spec.name}")
        lines.append(f"dimension = {spec.dim}")
        lines.append(f"domain = {' '.join(_fmt(d) for d in spec.domain)}")
        lines.append(f"bc = {' '.join(spec.bc)}")
        lines.append(f"t_final = {_fmt(spec.t_final)}")
        lines.append(f"nx = {spec.nx}")
        if spec.dim == 2:
            lines.append(f"ny = {spec.ny}")
        for reg in spec.regions:
            if reg.kind == "interval":
                shape = f"interval {_fmt(reg.params[0])} {_fmt(reg.params[1])}"
            elif reg.kind == "halfspace":
                shape = f"halfspace {reg.params[0]} {reg.params[1]} {_fmt(reg.params[2])}"
            elif reg.kind == "disk":
                shape = f"disk {' '.join(_fmt(p) for p in reg.params)}"
            else:
                shape = "else"
            state = (
                f"rho={_fmt(reg.rho)} u={_fmt(reg.u)} "
                + (f"v={_fmt(reg.v)} " if spec.dim == 2 else "")
                + f"p={_fmt(reg.p)} gamma={_fmt(reg.fluid.gamma)} pi_inf={_fmt(reg.fluid.pi_inf)}"
            )
            lines.append(f"region = {shape} : {state}")
    else:
        if rc.nx is not None:
            lines.append(f"nx = {rc.nx}")
        if rc.ny is not None:
            lines.append(f"ny = {rc.ny}")
        if rc.t_final is not None:
            lines.append(f"t_final = {_fmt(rc.t_final)}")
    lines.append(f"scheme = {rc.scheme}")
    lines.append(f"cfl = {_fmt(rc.cfl)}")
    lines.append(f"theta = {_fmt(rc.theta)}")
    lines.append(f"tau_interface = {_fmt(rc.tau_interface)}")
    lines.append(f"tau_smooth = {_fmt(rc.tau_smooth)}")
    lines.append(f"eps0 = {_fmt(rc.eps0)}")
    lines.append(f"hybrid = {rc.hybrid}")
    if rc.snapshots is not None:
        lines.append("snapshots = " + ", ".join(_fmt(t) for t in rc.snapshots))
    if rc.fmt is not None:
        lines.append(f"format = {rc.fmt}")
    lines.append(f"out = {rc.out}")
    lines.append(f"reference = {'true' if rc.reference else 'false'}")
    lines.append(f"schlieren = {'on' if rc.schlieren else 'off'}")
    return "\n".join(lines) + "\n"


def config_hash(rc: RunConfig) -> str:
    """Hash of the semantically meaningful config fields (output dir excluded)."""
    canon = serialize_config(replace(rc, out=""))
    return hashlib.sha256(canon.encode()).hexdigest()


# --- snapshots -------------------------------------------------------------


@dataclass
class Snapshot:
    time: float
    grid: object  # Grid1D | Grid2D
    data: Dict[str, np.ndarray]
    meta: Dict[str, str] = dc_field(default_factory=dict)


def snapshot_from_field(field, t: float, meta: Optional[Dict[str, str]] = None,
                        with_schlieren: bool = True) -> Snapshot:
    if isinstance(field, Field1D):
        rho, u, p, gam, pi = field.primitive_interior()
        data = {"rho": rho.copy(), "u": u, "p": p, "Gamma": gam.copy(), "Pi": pi.copy()}
    else:
        rho, u, v, p, gam, pi = field.primitive_interior()
        data = {
            "rho": rho.copy(), "u": u, "v": v, "p": p,
            "Gamma": gam.copy(), "Pi": pi.copy(),
        }
        if with_schlieren:
            data["schlieren"] = schlieren_field(rho, field.grid)
    return Snapshot(time=t, grid=field.grid, data=data, meta=dict(meta or {}))


def schlieren_field(rho: np.ndarray, grid: Grid2D) -> np.ndarray:
    """exp(-80 |grad rho| / max |grad rho|); all ones for a constant field.

    Central differences on the interior, one-sided at the edges.
    """
    gx = np.empty_like(rho)
    gy = np.empty_like(rho)
    gx[:, 1:-1] = (rho[:, 2:] - rho[:, :-2]) / (2.0 * grid.dx)
    gx[:, 0] = (rho[:, 1] - rho[:, 0]) / grid.dx
    gx[:, -1] = (rho[:, -1] - rho[:, -2]) / grid.dx
    gy[1:-1, :] = (rho[2:, :] - rho[:-2, :]) / (2.0 * grid.dy)
    gy[0, :] = (rho[1, :] - rho[0, :]) / grid.dy
    gy[-1, :] = (rho[-1, :] - rho[-2, :]) / grid.dy
    mag = np.sqrt(gx * gx + gy * gy)
    peak = mag.max()
    if peak == 0.0:
        return np.ones_like(rho)
    return np.exp(-80.0 * mag / peak)


def write_snapshot(snap: Snapshot, fmt: str, path: str) -> List[str]:
    """Write one snapshot; returns the list of files created."""
    path = str(path)
    if fmt == "csv":
        if not isinstance(snap.grid, Grid1D):
            raise ValueError("csv output is for 1-D snapshots")
        x = snap.grid.centers()
        lines = [CSV_HEADER]
        cols = [x] + [snap.data[f] for f in FIELDS_1D]
        for i in range(snap.grid.nx):
            lines.append(",".join(_fmt(col[i]) for col in cols))
        Path(path).write_text("\n".join(lines) + "\n")
        return [path]
    if fmt == "grid-binary":
        if not isinstance(snap.grid, Grid2D):
            raise ValueError("grid-binary output is for 2-D snapshots")
        grid = snap.grid
        fields = [f for f in (*FIELDS_2D, "schlieren") if f in snap.data]
        meta_lines = [
            f"nx: {grid.nx}",
            f"ny: {grid.ny}",
            f"x0: {_fmt(grid.x0)}",
            f"y0: {_fmt(grid.y0)}",
            f"dx: {_fmt(grid.dx)}",
            f"dy: {_fmt(grid.dy)}",
            f"time: {_fmt(snap.time)}",
            f"fields: {','.join(fields)}",
            "endianness: little",
        ]
        for key, value in sorted(snap.meta.items()):
            meta_lines.append(f"{key}: {value}")
        files = [path + ".meta"]
        Path(files[0]).write_text("\n".join(meta_lines) + "\n")
        for f in fields:
            arr = np.ascontiguousarray(snap.data[f], dtype="<f8")
            fname = f"{path}.{f}.bin"
            arr.tofile(fname)
            files.append(fname)
        return files
    raise ValueError(f"unknown snapshot format {fmt!r}")


def read_snapshot_csv(path: str) -> Snapshot:
    lines = Path(path).read_text().strip().splitlines()
    if lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: bad header {lines[0]!r}")
    rows = np.array([[float(t) for t in line.split(",")] for line in lines[1:]])
    x = rows[:, 0]
    nx = len(x)
    dx = x[1] - x[0] if nx > 1 else 1.0
    grid = Grid1D(x[0] - 0.5 * dx, x[-1] + 0.5 * dx, nx, 2)
    data = {f: rows[:, i + 1] for i, f in enumerate(FIELDS_1D)}
    return Snapshot(time=np.nan, grid=grid, data=data)


def read_snapshot_grid_binary(path: str) -> Snapshot:
    meta_path = path if path.endswith(".meta") else path + ".meta"
    base = meta_path[: -len(".meta")]
    meta: Dict[str, str] = {}
    for raw in Path(meta_path).read_text().splitlines():
        if raw.strip():
            key, value = raw.split(":", 1)
            meta[key.strip()] = value.strip()
    nx = int(meta["nx"])
    ny = int(meta["ny"])
    dx = float(meta["dx"])
    dy = float(meta["dy"])
    x0 = float(meta["x0"])
    y0 = float(meta["y0"])
    grid = Grid2D(x0, x0 + nx * dx, y0, y0 + ny * dy, nx, ny, 2)
    dtype = "<f8" if meta.get("endianness", "little") == "little" else ">f8"
    data = {}
    for f in meta["fields"].split(","):
        arr = np.fromfile(f"{base}.{f}.bin", dtype=dtype)
        if arr.size != nx * ny:
            raise ValueError(f"{base}.{f}.bin: expected {nx * ny} values, got {arr.size}")
        data[f] = arr.astype(np.float64).reshape(ny, nx)
    return Snapshot(time=float(meta["time"]), grid=grid, data=data, meta=meta)


def project_fine_to_coarse(fine: np.ndarray, ratio: int) -> np.ndarray:
    """Block-average a fine array onto a coarser grid (integer ratio)."""
    if fine.ndim == 1:
        return fine.reshape(-1, ratio).mean(axis=1)
    ny, nx = fine.shape
    return fine.reshape(ny // ratio, ratio, nx // ratio, ratio).mean(axis=(1, 3))


def l1_error(snap: Snapshot, ref: Snapshot) -> Dict[str, float]:
    """Per-variable L1 distance to a reference on a refinement-compatible grid."""
    nc = snap.grid.nx
    nf = ref.grid.nx
    if nf % nc != 0:
        raise ValueError(f"incompatible grids: reference nx {nf} not a multiple of {nc}")
    ratio = nf // nc
    if isinstance(snap.grid, Grid2D):
        if ref.grid.ny % snap.grid.ny != 0 or ref.grid.ny // snap.grid.ny != ratio:
            raise ValueError("incompatible grids in y")
        cell = snap.grid.dx * snap.grid.dy
    else:
        cell = snap.grid.dx
    out = {}
    for key, arr in snap.data.items():
        if key == "schlieren" or key not in ref.data:
            continue
        proj = project_fine_to_coarse(ref.data[key], ratio)
        out[key] = float(cell * np.abs(arr - proj).sum())
    return out


# --- driver ----------------------------------------------------------------


@dataclass
class RunResult:
    status: int
    snapshot_files: List[str]
    manifest: Optional[str]
    steps: int
    wall_time: float
    message: str = ""


def _snapshot_base(out: Path, problem: str, scheme: str, t: float, tag: str = "") -> Path:
    return out / f"{problem}{tag}_{scheme}_t{t:g}"


def run(rc: RunConfig, stepper=None) -> RunResult:
    """Initialize, advance to the final time, write scheduled snapshots + manifest."""
    spec = rc.spec
    cfg = rc.scheme_config()
    grid = make_grid(spec, cfg.ghost, rc.nx, rc.ny)
    field = initialize(spec, grid)
    apply_boundary(field)
    t_final = rc.t_final if rc.t_final is not None else spec.t_final
    if rc.snapshots is not None:
        schedule = rc.snapshots
    elif rc.t_final is not None:
        schedule = (t_final,)
    else:
        schedule = spec.snapshots or (t_final,)
    fmt = rc.fmt if rc.fmt is not None else ("csv" if spec.dim == 1 else "grid-binary")
    out = Path(rc.out)
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "scheme": rc.scheme,
        "nx": str(grid.nx),
        "ny": str(grid.ny) if spec.dim == 2 else "1",
        "config_hash": config_hash(rc),
        "problem": spec.name,
    }
    files: List[str] = []

    def emit(fld, t):
        snap = snapshot_from_field(fld, t, meta=meta, with_schlieren=rc.schlieren)
        base = _snapshot_base(out, spec.name, rc.scheme, t)
        files.extend(write_snapshot(snap, fmt, str(base) + (".csv" if fmt == "csv" else "")))

    from mfcu.integrator import ssprk3_step

    base_stepper = stepper if stepper is not None else ssprk3_step
    last_good = {"field": field, "t": 0.0}

    def recording_stepper(f, dt, cfg_, t=0.0, step=0):
        new = base_stepper(f, dt, cfg_, t=t, step=step)
        last_good["field"] = new
        last_good["t"] = t + dt
        return new

    start = _time.perf_counter()
    try:
        field, stats = advance(
            field, t_final, cfg, snapshot_times=schedule, on_snapshot=emit,
            stepper=recording_stepper,
        )
        status = 0
        message = "ok"
    except SolverAbort as exc:
        status = 3
        message = str(exc)
        snap = snapshot_from_field(
            last_good["field"], last_good["t"], meta=meta, with_schlieren=rc.schlieren
        )
        base = _snapshot_base(out, spec.name, rc.scheme, last_good["t"], tag="_lastgood")
        files.extend(write_snapshot(snap, fmt, str(base) + (".csv" if fmt == "csv" else "")))
        stats = None
    wall = _time.perf_counter() - start

    manifest_path = out / "manifest.txt"
    manifest_lines = [
        f"version: {__version__}",
        f"status: {status}",
        f"message: {message}",
        f"config_hash: {meta['config_hash']}",
        f"steps: {stats.steps if stats else -1}",
        f"wall_time_s: {wall:.3f}",
        "snapshots: " + ", ".join(Path(f).name for f in files),
        "--- config ---",
        serialize_config(rc).rstrip(),
    ]
    manifest_path.write_text("\n".join(manifest_lines) + "\n")
    return RunResult(
        status=status,
        snapshot_files=files,
        manifest=str(manifest_path),
        steps=stats.steps if stats else -1,
        wall_time=wall,
        message=message,
    )


def run_reference(problem: str, out: str = "out", nx: Optional[int] = None) -> RunResult:
    """Fine-mesh baseline-scheme run used as the reference solution."""
    spec = build_problem(problem)
    ref_nx = nx if nx is not None else spec.nx_reference
    scale = ref_nx / spec.nx
    ref_ny = spec.ny if spec.dim == 1 else int(round(spec.ny * scale))
    rc = RunConfig(
        problem=problem,
        spec=spec,
        scheme="pccu",
        nx=ref_nx,
        ny=ref_ny if spec.dim == 2 else None,
        out=out,
        snapshots=(spec.t_final,),
        reference=True,
    )
    return run(rc)


def convergence_study(
    scheme: str = "ldpccu",
    levels: int = 3,
    base_n: int = 100,
    t_final: float = 0.5,
    cfl: float = 0.45,
) -> List[Tuple[int, float, float]]:
    """L1 ordered-refinement study on the smooth periodic advection problem.

    Returns rows (N, L1 error, observed order); order is nan on the first
    level.  The fifth-order scheme uses dt proportional to h^(5/3) so the
    third-order time integrator does not limit the spatial order.
    """
    spec = build_problem("smooth")
    rows: List[Tuple[int, float, float]] = []
    prev_err = None
    for lev in range(levels):
        n = base_n * 2**lev
        cfg = SchemeConfig(scheme=scheme, cfl=cfl, fluids=spec.fluids)
        grid = make_grid(spec, cfg.ghost, nx=n)
        field = initialize(spec, grid)
        fixed_dt = None
        if scheme == "aiweno":
            fixed_dt = 0.4 * grid.dx ** (5.0 / 3.0)
        field, _ = advance(field, t_final, cfg, fixed_dt=fixed_dt)
        rho = field.primitive_interior()[0]
        exact = smooth_density(grid.centers(), t_final)
        err = float(grid.dx * np.abs(rho - exact).sum())
        order = float("nan") if prev_err is None else float(np.log2(prev_err / err))
        rows.append((n, err, order))
        prev_err = err
    return rows
