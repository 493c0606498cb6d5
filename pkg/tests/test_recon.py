"""Limiters, interface detection, slopes, and reconstructed interface values."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcu.core import FluidSpec
from mfcu.recon import (
    LimiterParams,
    detect_interfaces,
    interface_thresholds,
    interface_values,
    minmod,
    sbm_phi,
    slopes,
)

finite = st.floats(-1e6, 1e6, allow_nan=False)


class TestMinmod:
    def test_all_positive(self):
        assert minmod([2.0, 3.0]) == 2.0

    def test_mixed_signs(self):
        assert minmod([-1.0, 4.0]) == 0.0

    def test_all_negative(self):
        assert minmod([-2.0, -5.0, -3.0]) == -2.0

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            minmod([])

    @settings(max_examples=100, deadline=None)
    @given(st.lists(finite, min_size=1, max_size=6))
    def test_bounded_by_inputs(self, vals):
        out = minmod(vals)
        assert out == 0.0 or min(np.abs(vals)) >= abs(out) > 0.0


class TestSbmPhi:
    def test_negative_ratio(self):
        assert sbm_phi(-1.0, LimiterParams(1.3, 0.5)) == 0.0
        assert sbm_phi(-1.0, LimiterParams(1.3, -0.5)) == 0.0

    def test_dissipative_midrange(self):
        assert sbm_phi(0.9, LimiterParams(1.3, 0.5)) == pytest.approx(0.95)

    def test_overcompressive_midrange(self):
        assert sbm_phi(0.9, LimiterParams(1.3, -0.5)) == pytest.approx(1.05)

    def test_large_ratio_branch(self):
        # r phi(1/r): 2 * min(0.65, 1.25) = 1.3
        assert sbm_phi(2.0, LimiterParams(1.3, -0.5)) == pytest.approx(1.3)

    def test_zero_is_zero(self):
        assert sbm_phi(0.0, LimiterParams()) == 0.0

    def test_infinite_ratio_limit(self):
        assert sbm_phi(np.inf, LimiterParams(1.3, 0.5)) == pytest.approx(1.3)

    @settings(max_examples=200, deadline=None)
    @given(r=st.floats(1.0001, 1e6), theta=st.floats(1.0, 2.0), tau=st.floats(-1.0, 0.99))
    def test_upper_branch_is_scaled_reflection(self, r, theta, tau):
        params = LimiterParams(theta, tau)
        assert sbm_phi(r, params) == pytest.approx(r * sbm_phi(1.0 / r, params), rel=1e-12)


class TestDetectInterfaces:
    def test_two_fluid_jump(self):
        fluids = (FluidSpec(1.4, 0.0), FluidSpec(3.0, 0.0))  # Gamma 2.5 and 0.5
        gbar = np.array([2.5, 2.5, 0.5, 0.5])
        mask = detect_interfaces(gbar, fluids)
        # pair (1,2) crosses the midpoint: the whole 4-cell band is flagged
        assert mask.tolist() == [True, True, True, True]

    def test_band_extent(self):
        fluids = (FluidSpec(1.4, 0.0), FluidSpec(3.0, 0.0))
        gbar = np.full(12, 2.5)
        gbar[6:] = 0.5
        mask = detect_interfaces(gbar, fluids)
        assert np.flatnonzero(mask).tolist() == [4, 5, 6, 7]

    def test_constant_field_empty(self):
        fluids = (FluidSpec(1.4, 0.0), FluidSpec(3.0, 0.0))
        assert not detect_interfaces(np.full(10, 2.5), fluids).any()

    def test_single_fluid_empty(self):
        mask = detect_interfaces(np.array([2.5, 2.4, 2.6]), (FluidSpec(1.4, 0.0),))
        assert not mask.any()

    def test_three_fluid_adjacency(self):
        # explosive / air / water triple with two active thresholds
        fluids = (FluidSpec(2.0, 0.0), FluidSpec(1.4, 0.0), FluidSpec(7.15, 3309.0))
        adjacency = ((0, 2), (1, 2))
        th = interface_thresholds(fluids, adjacency)
        g1 = 0.5 * (fluids[0].Gamma + fluids[2].Gamma)
        g2 = 0.5 * (fluids[1].Gamma + fluids[2].Gamma)
        assert sorted(th.tolist()) == sorted([g1, g2])
        # air (2.5) to explosive (1.0) crosses only the air/water threshold g2
        gbar = np.array([2.5, 2.5, 2.5, 1.0, 1.0, 1.0])
        mask = detect_interfaces(gbar, fluids, adjacency=adjacency)
        crossings = [
            (gbar[q] - t) * (gbar[q + 1] - t) < 0.0
            for q in range(5)
            for t in th
        ]
        assert sum(crossings) == 1
        assert np.flatnonzero(mask).tolist() == [1, 2, 3, 4]

    def test_identical_gamma_rejected(self):
        with pytest.raises(ValueError):
            interface_thresholds((FluidSpec(1.4, 0.0), FluidSpec(1.4, 5.0)))

    def test_2d_directions(self):
        fluids = (FluidSpec(1.4, 0.0), FluidSpec(3.0, 0.0))
        gbar = np.full((4, 8), 2.5)
        gbar[:, 5:] = 0.5
        mx = detect_interfaces(gbar, fluids, direction="x")
        assert np.flatnonzero(mx[0]).tolist() == [3, 4, 5, 6]
        my = detect_interfaces(gbar, fluids, direction="y")
        assert not my.any()


class TestSlopes:
    def test_linear_data_both_modes(self):
        h = 0.1
        x = np.arange(8) * h
        data = 3.0 * x
        for tau in (0.5, -0.5):
            s = slopes(data, np.zeros(8, bool), h, tau_interface=tau, tau_smooth=tau)
            assert np.allclose(s[1:-1], 3.0, rtol=1e-14)

    def test_extremum_is_flat(self):
        data = np.array([0.0, 1.0, 0.0])
        for tau in (0.5, -0.5):
            s = slopes(data, np.array([True, True, True]), 1.0, tau_interface=tau, tau_smooth=tau)
            assert s[1] == 0.0

    def test_limiter_mode_values(self):
        # backward/forward ratio 0.9: phi = 0.95 (dissipative) or 1.05
        # (overcompressive) times the forward difference
        data = np.array([0.0, 0.09, 0.19])
        h = 1.0
        sd = slopes(data, np.zeros(3, bool), h)
        assert sd[1] == pytest.approx(0.95 * 0.1)
        so = slopes(data, np.ones(3, bool), h)
        assert so[1] == pytest.approx(1.05 * 0.1)

    def test_zero_forward_difference_guard(self):
        data = np.array([0.0, 1.0, 1.0])
        s = slopes(data, np.zeros(3, bool), 1.0)
        assert s[1] == 0.0

    @settings(max_examples=200, deadline=None)
    @given(vm=finite, v0=finite, vp=finite)
    def test_dissipative_equals_minmod3(self, vm, v0, vp):
        theta = 1.3
        s = slopes(np.array([vm, v0, vp]), np.zeros(3, bool), 1.0, theta=theta)[1]
        db = v0 - vm
        df = vp - v0
        expected = minmod([theta * db, 0.5 * (db + df), theta * df])
        assert s == pytest.approx(expected, rel=1e-12, abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(vm=finite, v0=finite, vp=finite, tau=st.floats(-0.5, 0.5))
    def test_reflection_antisymmetry(self, vm, v0, vp, tau):
        kw = dict(tau_interface=tau, tau_smooth=tau)
        s = slopes(np.array([vm, v0, vp]), np.zeros(3, bool), 1.0, **kw)[1]
        sr = slopes(np.array([vp, v0, vm]), np.zeros(3, bool), 1.0, **kw)[1]
        assert s == pytest.approx(-sr, rel=1e-12, abs=1e-14)


class TestInterfaceValues:
    def test_constant_field(self):
        V = np.tile(np.array([[1.0], [0.5], [2.0], [2.5], [0.0]]), (1, 6))
        S = np.zeros_like(V)
        Vm, Vp = interface_values(V, S, 0.1)
        assert np.allclose(Vm, V[:, :-1])
        assert np.allclose(Vp, V[:, 1:])

    def test_linear_reproduction(self):
        h = 0.25
        x = np.arange(6) * h
        V = np.vstack([1.0 + x, np.zeros(6), np.ones(6), np.full(6, 2.5), np.zeros(6)])
        mask = np.zeros(6, bool)
        S = slopes(V, mask, h)
        Vm, Vp = interface_values(V, S, h)
        mid = 1.0 + (x[:-1] + 0.5 * h)
        assert np.allclose(Vm[0, 1:-1], mid[1:-1], rtol=1e-14)
        assert np.allclose(Vp[0, 1:-1], mid[1:-1], rtol=1e-14)

    def test_jump_stays_one_sided(self):
        gl, gr = 2.5, 0.5
        V = np.vstack(
            [
                np.ones(10),
                np.zeros(10),
                np.ones(10),
                np.where(np.arange(10) < 5, gl, gr),
                np.zeros(10),
            ]
        )
        fluids = (FluidSpec(1.4, 0.0), FluidSpec(3.0, 0.0))
        mask = detect_interfaces(V[3], fluids)
        S = slopes(V, mask, 1.0)
        Vm, Vp = interface_values(V, S, 1.0)
        # away from the flagged band the one-sided values equal the constants
        assert Vm[3, 0] == gl and Vp[3, -1] == gr

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(0.1, 10.0), min_size=5, max_size=9))
    def test_dissipative_values_within_neighbor_hull(self, cells):
        data = np.array(cells)
        n = len(data)
        S = slopes(data, np.zeros(n, bool), 1.0)
        Vm, Vp = interface_values(np.atleast_2d(data), np.atleast_2d(S), 1.0)
        for q in range(1, n - 2):
            lo = min(data[q], data[q + 1]) - 1e-12
            hi = max(data[q], data[q + 1]) + 1e-12
            assert lo <= Vm[0, q] <= hi
            assert lo <= Vp[0, q] <= hi

    def test_positivity_fallback_rescales(self):
        # a slope that would drive the face pressure negative gets cut
        V = np.vstack(
            [
                np.ones(3),
                np.zeros(3),
                np.array([1.0, 0.05, 1.0]),
                np.full(3, 2.5),
                np.zeros(3),
            ]
        )
        S = np.zeros_like(V)
        S[2] = np.array([0.0, 0.4, 0.0])  # face p would be 0.05 - 0.2 < 0
        Vm, Vp = interface_values(V, S, 1.0)
        assert Vp[2, 0] > 0.0 and Vm[2, 1] > 0.0
