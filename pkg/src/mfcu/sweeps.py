"""Compiled flux sweeps along grid lines.

One kernel assembles the interface fluxes of a whole padded line: primitive
conversion, interface detection, limited reconstruction (or characteristic
interpolation on the fifth-order path), global-flux accumulation, speeds,
central-upwind flux with anti-diffusion, desingularization, and high-order
corrections.  The 2-D y-sweep reuses the same kernel on transposed component
arrays with the velocity roles swapped.  Scratch buffers are allocated once
per sweep and reused across lines.

Line component order: conserved (rho, m_long, E, Gamma, Pi[, m_tran]),
primitive (rho, u_long, p, Gamma, Pi[, u_tran]); the first five indices are
shared between 1-D and 2-D so both paths execute identical arithmetic on
them.
"""

import math

import numpy as np
from numba import get_num_threads, njit, prange

from mfcu.recon import (
    expand_pair_flags_into,
    pair_flags_into,
    rescale_invalid_slopes,
    slopes_line_into,
)
from mfcu.scalars import (
    aiweno_left,
    aiweno_right,
    cu_component,
    local_speeds_pair,
    minmod2,
    q_energy_transverse,
    q_energy_weight,
    roe_like_averages,
    star_component,
)

SCHEME_PCCU = 0
SCHEME_LDPCCU = 1
SCHEME_AIWENO = 2

SCHEME_CODES = {"pccu": SCHEME_PCCU, "ldpccu": SCHEME_LDPCCU, "aiweno": SCHEME_AIWENO}

# The linear high-order flux corrections sample the central-upwind
# dissipation spike at captured discontinuities; across a strong enough jump
# the redistributed spike can push a weak neighbor state negative.  An
# interface whose correction stencil touches a cell pair where the acoustic
# pressure (1+Gamma)p + Pi changes by more than this factor keeps the plain
# finite-volume flux instead.  Smooth fields never trip the gate.
SHOCK_RATIO_GATE = 2.0


@njit(cache=True)
def _alloc_work(ncomp, m, ni):
    V = np.empty((ncomp, m))
    S = np.empty((ncomp, m))
    pairs = np.empty(m - 1, dtype=np.bool_)
    mask = np.empty(m, dtype=np.bool_)
    tags = np.empty(m, dtype=np.bool_)
    gate = np.empty(m, dtype=np.bool_)
    Vm = np.empty((ncomp, ni))
    Vp = np.empty((ncomp, ni))
    Um = np.empty((ncomp, ni))
    Up = np.empty((ncomp, ni))
    Fm = np.empty((ncomp, ni))
    Fp = np.empty((ncomp, ni))
    K = np.empty((ncomp, ni))
    wchan = np.empty((ncomp, 6))
    wlo = np.empty(ncomp)
    whi = np.empty(ncomp)
    return (V, S, pairs, mask, tags, gate, Vm, Vp, Um, Up, Fm, Fp, K, wchan, wlo, whi)


@njit(cache=True)
def line_fluxes_into(
    rho, ml, en, gmv, piv, mt, has_t, g, n, h,
    thresholds, theta, tau_i, tau_s, eps0, scheme, hybrid_on,
    work, Hout,
):
    """Interface fluxes over one padded line, written to Hout (ncomp, n+1)."""
    (V, S, pairs, mask, tags, gate, Vm, Vp, Um, Up, Fm, Fp, K, wchan, wlo, whi) = work
    m = rho.shape[0]
    ncomp = V.shape[0]
    inv_h = 1.0 / h
    half_h = 0.5 * h
    use_aw = scheme == SCHEME_AIWENO

    # primitive line values
    for j in range(m):
        r = rho[j]
        ke = ml[j] * ml[j]
        if has_t:
            ke += mt[j] * mt[j]
        V[0, j] = r
        V[1, j] = ml[j] / r
        V[2, j] = (en[j] - 0.5 * ke / r - piv[j]) / gmv[j]
        V[3, j] = gmv[j]
        V[4, j] = piv[j]
        if has_t:
            V[5, j] = mt[j] / r

    # interface-adaptive limiter bands
    pair_flags_into(gmv, thresholds, pairs)
    expand_pair_flags_into(pairs, 1, 2, mask)
    if use_aw and hybrid_on:
        expand_pair_flags_into(pairs, 3, 4, tags)
        tau_mask = tags
    else:
        for j in range(m):
            tags[j] = False
        tau_mask = mask

    slopes_line_into(V, tau_mask, inv_h, theta, tau_i, tau_s, S)
    rescale_invalid_slopes(V, S, half_h)

    ext = 2 if use_aw else 0
    i0 = g - 1 - ext
    ni = n + 1 + 2 * ext

    # one-sided primitive interface values (second-order everywhere first;
    # the fifth-order path overwrites untagged interfaces and keeps these as
    # its hybrid/fallback values)
    for t in range(ni):
        jl = i0 + t
        for c in range(ncomp):
            Vm[c, t] = V[c, jl] + half_h * S[c, jl]
            Vp[c, t] = V[c, jl + 1] - half_h * S[c, jl + 1]

    if use_aw:
        for t in range(ni):
            jl = i0 + t
            if tags[jl] or tags[jl + 1]:
                continue
            gl = V[3, jl]
            gr = V[3, jl + 1]
            gam_l = 1.0 + 1.0 / gl
            gam_r = 1.0 + 1.0 / gr
            pin_l = V[4, jl] / (1.0 + gl)
            pin_r = V[4, jl + 1] / (1.0 + gr)
            rho_h, u_h, p_h, g_h, pi_h, c2 = roe_like_averages(
                V[0, jl], V[1, jl], V[2, jl], gam_l, pin_l,
                V[0, jl + 1], V[1, jl + 1], V[2, jl + 1], gam_r, pin_r,
            )
            lcd_ok = c2 > 0.0
            if lcd_ok:
                c_h = math.sqrt(c2)
                rc = rho_h * c_h
                inv_c2 = 1.0 / c2
                inv_rc = 1.0 / rc
                for i in range(6):
                    jj = jl - 2 + i
                    pj = V[2, jj]
                    uj = V[1, jj]
                    wchan[0, i] = 0.5 * (pj - rc * uj)
                    wchan[1, i] = V[4, jj]
                    wchan[2, i] = V[3, jj]
                    wchan[3, i] = V[0, jj] - pj * inv_c2
                    wchan[4, i] = 0.5 * (pj + rc * uj)
                    if has_t:
                        wchan[5, i] = V[5, jj]
            else:
                inv_c2 = 0.0
                inv_rc = 0.0
                for i in range(6):
                    jj = jl - 2 + i
                    for c in range(ncomp):
                        wchan[c, i] = V[c, jj]
            for c in range(ncomp):
                wlo[c] = aiweno_left(
                    wchan[c, 0], wchan[c, 1], wchan[c, 2],
                    wchan[c, 3], wchan[c, 4], wchan[c, 5],
                )
                whi[c] = aiweno_right(
                    wchan[c, 0], wchan[c, 1], wchan[c, 2],
                    wchan[c, 3], wchan[c, 4], wchan[c, 5],
                )
            if lcd_ok:
                pm = wlo[0] + wlo[4]
                um = (wlo[4] - wlo[0]) * inv_rc
                rm = pm * inv_c2 + wlo[3]
                gm_ = wlo[2]
                qm = wlo[1]
                pp = whi[0] + whi[4]
                up = (whi[4] - whi[0]) * inv_rc
                rp = pp * inv_c2 + whi[3]
                gp_ = whi[2]
                qp = whi[1]
            else:
                rm, um, pm, gm_, qm = wlo[0], wlo[1], wlo[2], wlo[3], wlo[4]
                rp, up, pp, gp_, qp = whi[0], whi[1], whi[2], whi[3], whi[4]
            ok_m = rm > 0.0 and gm_ > 0.0 and (1.0 + gm_) * pm + qm > 0.0
            ok_p = rp > 0.0 and gp_ > 0.0 and (1.0 + gp_) * pp + qp > 0.0
            if ok_m and ok_p:
                Vm[0, t] = rm
                Vm[1, t] = um
                Vm[2, t] = pm
                Vm[3, t] = gm_
                Vm[4, t] = qm
                Vp[0, t] = rp
                Vp[1, t] = up
                Vp[2, t] = pp
                Vp[3, t] = gp_
                Vp[4, t] = qp
                if has_t:
                    Vm[5, t] = wlo[5]
                    Vp[5, t] = whi[5]
            # otherwise: keep the second-order reconstructed values

    # conserved interface values and longitudinal physical fluxes
    for t in range(ni):
        r = Vm[0, t]
        u = Vm[1, t]
        p = Vm[2, t]
        gg = Vm[3, t]
        qq = Vm[4, t]
        ke = u * u
        if has_t:
            ut = Vm[5, t]
            ke += ut * ut
        ee = gg * p + 0.5 * r * ke + qq
        mlv = r * u
        Um[0, t] = r
        Um[1, t] = mlv
        Um[2, t] = ee
        Um[3, t] = gg
        Um[4, t] = qq
        Fm[0, t] = mlv
        Fm[1, t] = mlv * u + p
        Fm[2, t] = u * (ee + p)
        Fm[3, t] = u * gg
        Fm[4, t] = u * qq
        if has_t:
            mtv = r * ut
            Um[5, t] = mtv
            Fm[5, t] = u * mtv

        r = Vp[0, t]
        u = Vp[1, t]
        p = Vp[2, t]
        gg = Vp[3, t]
        qq = Vp[4, t]
        ke = u * u
        if has_t:
            ut = Vp[5, t]
            ke += ut * ut
        ee = gg * p + 0.5 * r * ke + qq
        mlv = r * u
        Up[0, t] = r
        Up[1, t] = mlv
        Up[2, t] = ee
        Up[3, t] = gg
        Up[4, t] = qq
        Fp[0, t] = mlv
        Fp[1, t] = mlv * u + p
        Fp[2, t] = u * (ee + p)
        Fp[3, t] = u * gg
        Fp[4, t] = u * qq
        if has_t:
            mtv = r * ut
            Up[5, t] = mtv
            Fp[5, t] = u * mtv

    # global fluxes: subtract the accumulated nonconservative integral from
    # the Gamma/Pi components (the other components have no source)
    accg = 0.0
    accq = 0.0
    for t in range(ni):
        Fm[3, t] = Fm[3, t] - accg
        Fm[4, t] = Fm[4, t] - accq
        du = Vp[1, t] - Vm[1, t]
        accg = accg + 0.5 * (Vp[3, t] + Vm[3, t]) * du
        accq = accq + 0.5 * (Vp[4, t] + Vm[4, t]) * du
        Fp[3, t] = Fp[3, t] - accg
        Fp[4, t] = Fp[4, t] - accq
        if t < ni - 1:
            du_c = Vm[1, t + 1] - Vp[1, t]
            accg = accg + 0.5 * (Vm[3, t + 1] + Vp[3, t]) * du_c
            accq = accq + 0.5 * (Vm[4, t + 1] + Vp[4, t]) * du_c

    # interface fluxes (Fm/Fp now hold the one-sided global fluxes K-+)
    for t in range(ni):
        rm = Vm[0, t]
        um = Vm[1, t]
        pm = Vm[2, t]
        gm_ = Vm[3, t]
        qm = Vm[4, t]
        rp = Vp[0, t]
        up = Vp[1, t]
        pp = Vp[2, t]
        gp_ = Vp[3, t]
        qp = Vp[4, t]
        cm = math.sqrt(((1.0 + gm_) * pm + qm) / (gm_ * rm))
        cp = math.sqrt(((1.0 + gp_) * pp + qp) / (gp_ * rp))
        am, ap = local_speeds_pair(um, cm, up, cp)

        if ap < eps0 and am > -eps0:
            for c in range(ncomp):
                K[c, t] = 0.5 * (Fm[c, t] + Fp[c, t])
            continue

        inv_da = 1.0 / (ap - am)
        for c in range(ncomp):
            K[c, t] = cu_component(am, ap, inv_da, Fm[c, t], Fp[c, t], Um[c, t], Up[c, t])

        if scheme == SCHEME_PCCU:
            coef = -(ap * am) * inv_da
            for c in range(ncomp):
                us_c = star_component(am, ap, inv_da, Fm[c, t], Fp[c, t], Um[c, t], Up[c, t])
                K[c, t] += coef * minmod2(us_c - Um[c, t], Up[c, t] - us_c)
        else:
            rho_s = star_component(am, ap, inv_da, Fm[0, t], Fp[0, t], Um[0, t], Up[0, t])
            g_s = star_component(am, ap, inv_da, Fm[3, t], Fp[3, t], Um[3, t], Up[3, t])
            if rho_s > 0.0 and g_s > 0.0:
                ml_s = star_component(am, ap, inv_da, Fm[1, t], Fp[1, t], Um[1, t], Up[1, t])
                e_s = star_component(am, ap, inv_da, Fm[2, t], Fp[2, t], Um[2, t], Up[2, t])
                pi_s = star_component(am, ap, inv_da, Fm[4, t], Fp[4, t], Um[4, t], Up[4, t])
                u_s = ml_s / rho_s
                q_rho = minmod2(-am * (rho_s - Um[0, t]), ap * (Up[0, t] - rho_s))
                q_g = minmod2(-am * (g_s - Um[3, t]), ap * (Up[3, t] - g_s))
                q_pi = minmod2(-am * (pi_s - Um[4, t]), ap * (Up[4, t] - pi_s))
                w = q_energy_weight(e_s, ml_s, rho_s, pi_s, g_s)
                q_e = q_rho * (u_s * u_s * 0.5) + q_g * w + q_pi
                ok = True
                q_mt = 0.0
                if has_t:
                    mt_s = star_component(am, ap, inv_da, Fm[5, t], Fp[5, t], Um[5, t], Up[5, t])
                    q_mt = minmod2(-am * (mt_s - Um[5, t]), ap * (Up[5, t] - mt_s))
                    if ap >= eps0 and -am >= eps0:
                        den_p = rho_s + q_rho / ap
                        den_m = rho_s + q_rho / am
                        if den_p <= 0.0 or den_m <= 0.0:
                            ok = False
                        else:
                            q_e = q_energy_transverse(
                                am, ap, inv_da, rho_s, mt_s, q_rho, q_mt, q_g, g_s
                            ) + q_e
                if ok:
                    K[0, t] += q_rho
                    K[1, t] += q_rho * u_s
                    K[2, t] += q_e
                    K[3, t] += q_g
                    K[4, t] += q_pi
                    if has_t:
                        K[5, t] += q_mt

        if has_t:
            # energy flux needs one-sided desingularization when exactly one
            # local speed is below the threshold; each case takes the a->0
            # limit of the full formula, i.e. the upwind physical energy flux
            if ap < eps0 and am < -eps0:
                K[2, t] = up * (Up[2, t] + pp)
            elif am > -eps0 and ap > eps0:
                K[2, t] = um * (Um[2, t] + pm)

    nif = n + 1
    if not use_aw:
        for c in range(ncomp):
            for tt in range(nif):
                Hout[c, tt] = K[c, tt]
        return

    # fifth-order corrections from the five-interface flux stencil; hybrid
    # low-order interfaces keep the finite-volume flux, and so do interfaces
    # whose correction stencil would mix in a low-order flux or cross a
    # strong captured discontinuity (the corrections are linear differences
    # and would redistribute the dissipation spike into weak neighbors)
    for j in range(m):
        gate[j] = tags[j]
    for q in range(m - 1):
        s0 = (1.0 + V[3, q]) * V[2, q] + V[4, q]
        s1 = (1.0 + V[3, q + 1]) * V[2, q + 1] + V[4, q + 1]
        hi = max(s0, s1)
        lo2 = min(s0, s1)
        if hi > SHOCK_RATIO_GATE * lo2:
            j0 = max(q - 1, 0)
            j1 = min(q + 2, m - 1)
            for j in range(j0, j1 + 1):
                gate[j] = True

    cxx = h * h / 24.0
    cxxxx = 7.0 * h * h * h * h / 5760.0
    inv12h2 = 1.0 / (12.0 * h * h)
    inv_h4 = 1.0 / (h * h * h * h)
    for tt in range(nif):
        t = tt + ext
        jl = i0 + t
        low = False
        for jj in range(jl - 2, jl + 4):
            if gate[jj]:
                low = True
                break
        if low:
            for c in range(ncomp):
                Hout[c, tt] = K[c, t]
        else:
            for c in range(ncomp):
                k0 = K[c, t - 2]
                k1 = K[c, t - 1]
                k2 = K[c, t]
                k3 = K[c, t + 1]
                k4 = K[c, t + 2]
                kxx = (-k0 + 16.0 * k1 - 30.0 * k2 + 16.0 * k3 - k4) * inv12h2
                kxxxx = (k0 - 4.0 * k1 + 6.0 * k2 - 4.0 * k3 + k4) * inv_h4
                Hout[c, tt] = k2 - cxx * kxx + cxxxx * kxxxx


_EMPTY = np.empty(0)


@njit(cache=True)
def line_fluxes(
    rho, ml, en, gmv, piv, mt, has_t, g, n, h,
    thresholds, theta, tau_i, tau_s, eps0, scheme, hybrid_on,
):
    """Allocating wrapper around line_fluxes_into (tests and 1-D path)."""
    ncomp = 6 if has_t else 5
    ext = 2 if scheme == SCHEME_AIWENO else 0
    work = _alloc_work(ncomp, rho.shape[0], n + 1 + 2 * ext)
    H = np.empty((ncomp, n + 1))
    line_fluxes_into(
        rho, ml, en, gmv, piv, mt, has_t, g, n, h,
        thresholds, theta, tau_i, tau_s, eps0, scheme, hybrid_on, work, H,
    )
    return H


@njit(cache=True)
def rhs_1d_kernel(U, g, n, h, thresholds, theta, tau_i, tau_s, eps0, scheme, hybrid_on):
    H = line_fluxes(
        U[0], U[1], U[2], U[3], U[4], _EMPTY, False,
        g, n, h, thresholds, theta, tau_i, tau_s, eps0, scheme, hybrid_on,
    )
    out = np.empty((5, n))
    for c in range(5):
        for j in range(n):
            out[c, j] = -(H[c, j + 1] - H[c, j]) / h
    return out


# parallel functions cannot be disk-cached; this one compiles per process
@njit(parallel=True)
def sweep_2d_kernel(
    rho, ml, en, gmv, piv, mt, g, nlines, n, h,
    thresholds, theta, tau_i, tau_s, eps0, scheme, hybrid_on,
):
    """Line fluxes for every interior line; inputs are (nlines+2g, n+2g).

    Lines are independent; they run in parallel as per-thread chunks, each
    chunk reusing one scratch workspace.
    """
    ext = 2 if scheme == SCHEME_AIWENO else 0
    nthreads = get_num_threads()
    H = np.empty((6, nlines, n + 1))
    for tid in prange(nthreads):
        work = _alloc_work(6, n + 2 * g, n + 1 + 2 * ext)
        lo = tid * nlines // nthreads
        hi = (tid + 1) * nlines // nthreads
        for k in range(lo, hi):
            kk = g + k
            line_fluxes_into(
                rho[kk], ml[kk], en[kk], gmv[kk], piv[kk], mt[kk], True,
                g, n, h, thresholds, theta, tau_i, tau_s, eps0, scheme, hybrid_on,
                work, H[:, k, :],
            )
    return H


@njit(cache=True)
def max_speed_1d(U, g, n):
    """Largest |u| + c over interior cells."""
    s = 0.0
    for j in range(g, g + n):
        r = U[0, j]
        u = U[1, j] / r
        p = (U[2, j] - 0.5 * (U[1, j] * U[1, j]) / r - U[4, j]) / U[3, j]
        c = math.sqrt(((1.0 + U[3, j]) * p + U[4, j]) / (U[3, j] * r))
        v = abs(u) + c
        if v > s:
            s = v
    return s


@njit(cache=True)
def max_speeds_2d(U, g, ny, nx):
    """Largest (|u| + c, |v| + c) over interior cells."""
    sx = 0.0
    sy = 0.0
    for k in range(g, g + ny):
        for j in range(g, g + nx):
            r = U[0, k, j]
            mx = U[1, k, j]
            my = U[2, k, j]
            p = (U[3, k, j] - 0.5 * (mx * mx + my * my) / r - U[5, k, j]) / U[4, k, j]
            c = math.sqrt(((1.0 + U[4, k, j]) * p + U[5, k, j]) / (U[4, k, j] * r))
            vx = abs(mx / r) + c
            vy = abs(my / r) + c
            if vx > sx:
                sx = vx
            if vy > sy:
                sy = vy
    return sx, sy
