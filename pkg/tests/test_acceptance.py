"""Acceptance suite.

One test per criterion; each prints a single PASS/FAIL line (run pytest with
-s to see them inline).  Tolerances are fixed here, not configurable.
"""

import time

import numpy as np
import pytest

from mfcu.aweno import (
    D_WEIGHTS,
    aiweno_interpolate,
    interpolation_weights,
    lcd_basis_1d,
    lcd_basis_2d_x,
    lcd_basis_2d_y,
)
from mfcu.cliio import convergence_study, l1_error, snapshot_from_field
from mfcu.core import Field1D, Field2D, FluidSpec, Grid1D, Grid2D
from mfcu.integrator import (
    SchemeConfig,
    advance,
    apply_boundary,
    cfl_timestep,
    forward_euler_step,
    rhs,
    ssprk3_step,
)
from mfcu.problems import build_problem, initialize, make_grid


def report(num: int, ok: bool, detail: str):
    print(f"ACCEPTANCE {num:2d} {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {num}: {detail}"


def single_fluid_profile(grid, fl):
    x = grid.centers()
    L = grid.x1 - grid.x0
    rho = 1.0 + 0.2 * np.sin(2.0 * np.pi * x / L)
    u = 0.1 + 0.05 * np.sin(4.0 * np.pi * x / L)
    p = 1.0 + 0.1 * np.cos(2.0 * np.pi * x / L)
    f = Field1D(grid)
    I = f.interior()
    I[0] = rho
    I[1] = rho * u
    I[2] = fl.Gamma * p + 0.5 * rho * u * u + fl.Pi
    I[3] = fl.Gamma
    I[4] = fl.Pi
    return f


def contact_field_1d(grid, uhat=0.5, phat=1.0):
    fa = FluidSpec(1.4, 0.0)
    fb = FluidSpec(5.0 / 3.0, 2.0)
    x = grid.centers()
    left = x < 0.4
    rho = np.where(left, 1.0, 0.125)
    gam = np.where(left, fa.Gamma, fb.Gamma)
    pi = np.where(left, fa.Pi, fb.Pi)
    f = Field1D(grid)
    I = f.interior()
    I[0] = rho
    I[1] = rho * uhat
    I[2] = gam * phat + 0.5 * rho * uhat * uhat + pi
    I[3] = gam
    I[4] = pi
    return f, (fa, fb)


def test_criterion_1_single_fluid_eos_fields_stay_constant():
    """Gamma and Pi time derivatives vanish for a single fluid (LD PCCU)."""
    fl = FluidSpec(1.4, 0.0)
    cfg = SchemeConfig(scheme="ldpccu", fluids=(fl,))
    grid = Grid1D(0.0, 2.0, 200, cfg.ghost, ("free", "free"))
    f = single_fluid_profile(grid, fl)
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(100):
        dt = cfl_timestep(f, cfg)
        apply_boundary(f)
        u0 = f.interior().copy()
        r1 = rhs(f, cfg)
        worst = max(worst, np.abs(r1[3]).max(), np.abs(r1[4]).max())
        s1 = f.copy()
        s1.interior()[...] = u0 + dt * r1
        apply_boundary(s1)
        r2 = rhs(s1, cfg)
        worst = max(worst, np.abs(r2[3]).max(), np.abs(r2[4]).max())
        s2 = s1.copy()
        s2.interior()[...] = 0.75 * u0 + 0.25 * (s1.interior() + dt * r2)
        apply_boundary(s2)
        r3 = rhs(s2, cfg)
        worst = max(worst, np.abs(r3[3]).max(), np.abs(r3[4]).max())
        f.interior()[...] = (u0 + 2.0 * (s2.interior() + dt * r3)) / 3.0
    wall = time.perf_counter() - t0
    ok = worst <= 1e-13 and wall < 5.0
    report(1, ok, f"max |dGamma/dt|,|dPi/dt| = {worst:.3e} (tol 1e-13), {wall:.2f}s (< 5s)")


def test_criterion_2_isolated_contact_preserves_velocity_pressure():
    """u and p stay constant across an isolated material interface."""
    results = []
    for stepper, steps in ((forward_euler_step, 200), (ssprk3_step, 200)):
        cfg = SchemeConfig(scheme="ldpccu", fluids=(FluidSpec(1.4, 0.0), FluidSpec(5.0 / 3.0, 2.0)))
        grid = Grid1D(0.0, 1.0, 200, cfg.ghost, ("free", "free"))
        f, fluids = contact_field_1d(grid)
        cfg = SchemeConfig(scheme="ldpccu", fluids=fluids)
        for step in range(steps):
            f = stepper(f, cfl_timestep(f, cfg), cfg, step=step)
        _, u, p, _, _ = f.primitive_interior()
        results.append((np.abs(u - 0.5).max(), np.abs(p - 1.0).max()))
    # 2-D x-aligned analog with v = 0
    fa = FluidSpec(1.4, 0.0)
    fb = FluidSpec(5.0 / 3.0, 2.0)
    cfg2 = SchemeConfig(scheme="ldpccu", fluids=(fa, fb))
    g2 = Grid2D(0.0, 1.0, 0.0, 0.04, 200, 8, cfg2.ghost, ("free", "free", "free", "free"))
    f2 = Field2D(g2)
    x = g2.xcenters()
    left = x < 0.4
    rho = np.where(left, 1.0, 0.125)
    gam = np.where(left, fa.Gamma, fb.Gamma)
    pi = np.where(left, fa.Pi, fb.Pi)
    I = f2.interior()
    I[0] = rho[None, :]
    I[1] = (rho * 0.5)[None, :]
    I[2] = 0.0
    I[3] = (gam * 1.0 + 0.5 * rho * 0.25 + pi)[None, :]
    I[4] = gam[None, :]
    I[5] = pi[None, :]
    for step in range(200):
        f2 = ssprk3_step(f2, cfl_timestep(f2, cfg2), cfg2, step=step)
    _, u2, v2, p2, _, _ = f2.primitive_interior()
    results.append((np.abs(u2 - 0.5).max(), np.abs(p2 - 1.0).max()))
    worst_u = max(r[0] for r in results)
    worst_p = max(r[1] for r in results)
    ok = worst_u <= 1e-11 and worst_p <= 1e-11
    report(2, ok, f"max |u-0.5| = {worst_u:.3e}, max |p-1| = {worst_p:.3e} (tol 1e-11)")


def test_criterion_3_discrete_conservation_periodic():
    """Component sums drift below 1e-12 relative per step over 500 steps."""
    fl = FluidSpec(1.4, 0.1)
    cfg = SchemeConfig(scheme="ldpccu", fluids=(fl,))
    grid = Grid1D(-1.0, 1.0, 200, cfg.ghost, ("periodic", "periodic"))
    f = single_fluid_profile(grid, fl)
    sums = f.interior().sum(axis=1)
    worst = 0.0
    for step in range(500):
        f = ssprk3_step(f, cfl_timestep(f, cfg), cfg, step=step)
        new_sums = f.interior().sum(axis=1)
        scale = grid.nx * np.maximum(np.abs(f.interior()).max(axis=1), 1e-300)
        worst = max(worst, float((np.abs(new_sums - sums) / scale).max()))
        sums = new_sums
    ok = worst <= 1e-12
    report(3, ok, f"max per-step relative drift = {worst:.3e} (tol 1e-12)")


def test_criterion_4_order_of_accuracy():
    """LD PCCU L1 order >= 1.8; fifth-order scheme L1 order >= 4.5."""
    t0 = time.perf_counter()
    ld = convergence_study("ldpccu", levels=3, base_n=100)
    aw = convergence_study("aiweno", levels=3, base_n=50)
    wall = time.perf_counter() - t0
    ld_orders = [o for _, _, o in ld[1:]]
    aw_orders = [o for _, _, o in aw[1:]]
    ok = min(ld_orders) >= 1.8 and min(aw_orders) >= 4.5 and wall < 120.0
    report(
        4,
        ok,
        f"LD PCCU orders {['%.2f' % o for o in ld_orders]} (>=1.8), "
        f"fifth-order {['%.2f' % o for o in aw_orders]} (>=4.5), {wall:.0f}s (< 120s)",
    )


def test_criterion_5_scheme_resolution_ordering():
    """L1 density errors on the first benchmark: fifth-order < LD < baseline."""
    t0 = time.perf_counter()
    spec = build_problem("ex1")

    def run_ex1(scheme, nx):
        cfg = SchemeConfig(scheme=scheme, fluids=spec.fluids)
        f = initialize(spec, make_grid(spec, cfg.ghost, nx=nx))
        f, _ = advance(f, spec.t_final, cfg)
        return snapshot_from_field(f, spec.t_final)

    ref = run_ex1("pccu", spec.nx_reference)
    errs = {s: l1_error(run_ex1(s, 300), ref)["rho"] for s in ("pccu", "ldpccu", "aiweno")}
    wall = time.perf_counter() - t0
    ok = (
        errs["aiweno"] <= 0.95 * errs["ldpccu"]
        and errs["ldpccu"] <= 0.95 * errs["pccu"]
        and wall < 180.0
    )
    report(
        5,
        ok,
        f"L1(rho): pccu {errs['pccu']:.4f} > ldpccu {errs['ldpccu']:.4f} > "
        f"aiweno {errs['aiweno']:.4f} (each >= 5% smaller), {wall:.0f}s (< 180s)",
    )


def test_criterion_6_interpolation_unit_suite():
    """Constant-window weights, quadratic exactness, normalization, range."""
    w_const = interpolation_weights(np.full(5, 3.7))
    weights_ok = all(abs(a - b) <= 1e-15 for a, b in zip(w_const, D_WEIGHTS))
    norm_ok = abs(sum(interpolation_weights(np.array([1.0, 4.0, 2.0, -1.0, 7.0]))) - 1.0) <= 1e-15
    m = np.arange(6.0)
    wm, wp = aiweno_interpolate(0.3 * m * m - m + 2.0)
    quad_exact = 0.3 * 2.5**2 - 2.5 + 2.0
    quad_ok = abs(wm - quad_exact) <= 1e-12 * abs(quad_exact) and abs(
        wp - quad_exact
    ) <= 1e-12 * abs(quad_exact)
    rng = np.random.default_rng(0)
    range_ok = True
    for _ in range(500):
        w = np.sort(rng.uniform(-100.0, 100.0, 6))
        lo, hi = aiweno_interpolate(w)
        span = max(1.0, w[-1] - w[0])
        for val in (lo, hi):
            if not (w[0] - 1e-12 * span <= val <= w[-1] + 1e-12 * span):
                range_ok = False
    ok = weights_ok and norm_ok and quad_ok and range_ok
    report(
        6,
        ok,
        f"constant weights {weights_ok}, normalization {norm_ok}, "
        f"quadratic {quad_ok}, monotone range {range_ok}",
    )


def test_criterion_7_lcd_suite():
    """Eigenbasis inverse pair and similarity diagonal over 1e4 random pairs."""
    rng = np.random.default_rng(42)

    def random_prim(two_d):
        rho = rng.uniform(0.2, 10.0)
        u = rng.uniform(-3.0, 3.0)
        p = rng.uniform(0.1, 5.0)
        fl = FluidSpec(rng.uniform(1.1, 6.0), rng.uniform(0.0, 10.0))
        if two_d:
            return np.array([rho, u, rng.uniform(-3.0, 3.0), p, fl.Gamma, fl.Pi])
        return np.array([rho, u, p, fl.Gamma, fl.Pi])

    n_pairs = 10_000
    worst_inv = 0.0
    worst_sim = 0.0
    for _ in range(n_pairs):
        b = lcd_basis_1d(random_prim(False), random_prim(False))
        worst_inv = max(worst_inv, np.abs(b.R @ b.Rinv - np.eye(5)).max())
        gp = b.gamma * (b.p + b.pi_inf)
        A = np.array(
            [
                [b.u, b.rho, 0, 0, 0],
                [0, b.u, 1.0 / b.rho, 0, 0],
                [0, gp, b.u, 0, 0],
                [0, 0, 0, b.u, 0],
                [0, 0, 0, 0, b.u],
            ]
        )
        lam = np.diag([b.u - b.c, b.u, b.u, b.u, b.u + b.c])
        worst_sim = max(worst_sim, np.abs(b.Rinv @ A @ b.R - lam).max())
    swap = [0, 2, 1, 3, 4, 5]
    for _ in range(n_pairs):
        Vl, Vr = random_prim(True), random_prim(True)
        for family, basis in (("x", lcd_basis_2d_x(Vl, Vr)), ("y", lcd_basis_2d_y(Vl, Vr))):
            b = basis
            worst_inv = max(worst_inv, np.abs(b.R @ b.Rinv - np.eye(6)).max())
            gp = b.gamma * (b.p + b.pi_inf)
            Ax = np.array(
                [
                    [b.u, b.rho, 0, 0, 0, 0],
                    [0, b.u, 0, 1.0 / b.rho, 0, 0],
                    [0, 0, b.u, 0, 0, 0],
                    [0, gp, 0, b.u, 0, 0],
                    [0, 0, 0, 0, b.u, 0],
                    [0, 0, 0, 0, 0, b.u],
                ]
            )
            A = Ax if family == "x" else Ax[np.ix_(swap, swap)]
            lam = np.diag([b.u - b.c, b.u, b.u, b.u, b.u, b.u + b.c])
            worst_sim = max(worst_sim, np.abs(b.Rinv @ A @ b.R - lam).max())
    ok = worst_inv <= 1e-12 and worst_sim <= 1e-12
    report(7, ok, f"max |R Rinv - I| = {worst_inv:.2e}, max off-diagonal = {worst_sim:.2e} (tol 1e-12)")


def test_criterion_8_dimensional_reduction():
    """A y-constant 2-D run with v=0 matches the 1-D run row by row."""
    spec = build_problem("ex1")
    cfg = SchemeConfig(scheme="ldpccu", fluids=spec.fluids, cfl=0.4)
    g = cfg.ghost
    nx = 300
    f1 = initialize(spec, make_grid(spec, g, nx=nx))
    ny = 6
    g2 = Grid2D(spec.domain[0], spec.domain[1], 0.0, 0.01 * ny, nx, ny, g,
                (*spec.bc, "free", "free"))
    f2 = Field2D(g2)
    I1 = f1.interior()
    I2 = f2.interior()
    for c2, c1 in ((0, 0), (1, 1), (3, 2), (4, 3), (5, 4)):
        I2[c2] = I1[c1][None, :]
    I2[2] = 0.0
    dt = cfl_timestep(f2, cfg)  # shared fixed step, CFL-valid for both
    for step in range(50):
        f1 = ssprk3_step(f1, dt, cfg, step=step)
        f2 = ssprk3_step(f2, dt, cfg, step=step)
    I1 = f1.interior()
    I2 = f2.interior()
    worst = 0.0
    for c2, c1 in ((0, 0), (1, 1), (3, 2), (4, 3), (5, 4)):
        for k in range(ny):
            worst = max(worst, np.abs(I2[c2, k] - I1[c1]).max())
    worst = max(worst, np.abs(I2[2]).max())
    ok = worst <= 1e-13
    report(8, ok, f"max row-wise deviation after 50 steps = {worst:.3e} (tol 1e-13)")


def test_criterion_9_mirror_symmetry():
    """Shock-bubble problem keeps its mirror symmetry about the centerline."""
    t0 = time.perf_counter()
    spec = build_problem("ex4")
    cfg = SchemeConfig(scheme="ldpccu", fluids=spec.fluids)
    f = initialize(spec, make_grid(spec, cfg.ghost, nx=400, ny=100))
    f, stats = advance(f, 0.5, cfg)
    U = f.interior()
    asym = 0.0
    for c in range(6):
        mirrored = U[c, ::-1, :].copy()
        if c == 2:
            mirrored = -mirrored
        asym = max(asym, np.abs(U[c] - mirrored).max())
    wall = time.perf_counter() - t0
    ok = asym <= 1e-8 and wall < 300.0
    report(9, ok, f"max asymmetry = {asym:.3e} (tol 1e-8), {stats.steps} steps, {wall:.0f}s (< 300s)")


def test_criterion_10_robustness_half_resolution():
    """Stiff benchmarks complete at half resolution without solver abort."""
    runs = []
    # 1-D problems with all three schemes (hybrid on for the fifth-order one)
    for name, nx in (("ex2", 90), ("ex3", 200)):
        spec = build_problem(name)
        for scheme in ("pccu", "ldpccu", "aiweno"):
            runs.append((name, scheme, dict(nx=nx), spec))
    for name, nx, ny in (("ex6", 400, 240), ("ex7", 400, 400)):
        spec = build_problem(name)
        runs.append((name, "aiweno", dict(nx=nx, ny=ny), spec))

    all_ok = True
    details = []
    for name, scheme, size, spec in runs:
        cfg = SchemeConfig(
            scheme=scheme,
            fluids=spec.fluids,
            adjacency=spec.adjacency,
            hybrid=True if scheme == "aiweno" else None,
        )
        grid = make_grid(spec, cfg.ghost, **size)
        f = initialize(spec, grid)
        t0 = time.perf_counter()
        try:
            f, stats = advance(f, spec.t_final, cfg)
            wall = time.perf_counter() - t0
            positivity = f.first_invalid_cell() is None
            in_time = wall < 600.0
            ok = positivity and in_time
            tag = "" if in_time else " OVER TIME BOUND"
            details.append(
                f"{name}/{scheme}: no abort, {stats.steps} steps, {wall:.0f}s{tag}"
            )
        except Exception as exc:  # noqa: BLE001 - report any abort
            wall = time.perf_counter() - t0
            ok = False
            details.append(f"{name}/{scheme}: ABORT after {wall:.0f}s ({exc})")
        all_ok = all_ok and ok
    ncores = len(__import__("os").sched_getaffinity(0))
    report(10, all_ok, "; ".join(details) + f" [bound 600s desk-scale; {ncores} core(s) here]")
