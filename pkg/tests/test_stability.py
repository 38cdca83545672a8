import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import C1_OPTIMUM, C2_OPTIMUM, ROBUST, RK3_LIKE, weights_st
from src.core.errors import DomainError
from src.optimizer.table1 import TABLE1, evaluate_table1, verdicts_frame
from src.vn import stability
from src.vn.amplification import amp_1d_batch, amplification_batch, build_amplification, semi_discrete_exact
from src.vn.spectrum import spectral_radius_batch
from src.vn.stability import (
    c2_integral,
    cost_C1,
    cost_C2,
    dispersion_curve,
    dissipation_dispersion,
    effective_cfl,
    lte_coefficients,
    nu_max,
    stability_limit,
)
from src.vn.types import LinearWaveParams


def _slope(x, y):
    return np.polyfit(np.log(x), np.log(y), 1)[0]


def test_published_rows_are_reproduced(table1_row):
    template = LinearWaveParams.template(table1_row.froude)
    assert nu_max(table1_row.weights, template) == pytest.approx(table1_row.nu_max, abs=0.01)


def test_evaluate_table1_passes_every_row():
    verdicts = evaluate_table1(tol=0.02)
    assert len(verdicts) == len(TABLE1) == 5
    assert all(v.passed for v in verdicts)
    frame = verdicts_frame(verdicts)
    assert list(frame["row"]) == [1, 2, 3, 4, 5]
    assert {"beta1", "beta2", "beta3", "published_numax", "achieved_numax", "passed"} <= set(frame.columns)


def test_evaluate_table1_flags_rows_outside_tolerance():
    assert not any(v.passed for v in evaluate_table1(tol=0.0))


def test_rk3_reduction_matches_fine_scan(zero_flow_template):
    tol = 1e-3
    nus = 1e-4 * np.arange(1, 40001)
    G, _ = amplification_batch(nus, zero_flow_template, RK3_LIKE)
    stable = spectral_radius_batch(G) <= 1.0 + 1e-10
    first_bad = int(np.argmin(stable))
    assert not stable.all() and first_bad > 0
    brute = nus[first_bad - 1]
    assert nu_max(RK3_LIKE, zero_flow_template, tol=tol) == pytest.approx(brute, abs=tol + 1e-4)


def test_no_instability_window_below_result(zero_flow_template):
    result = stability_limit(C2_OPTIMUM, zero_flow_template)
    nus = np.linspace(1e-3, result.value, 2000)
    G, _ = amplification_batch(nus, zero_flow_template, C2_OPTIMUM)
    assert np.all(spectral_radius_batch(G) <= 1.0 + 1e-10)
    assert not result.unstable and not result.open_bracket
    assert result.evaluations > 400


def test_universally_unstable_weights_give_zero_with_flag(zero_flow_template):
    result = stability_limit(C1_OPTIMUM, zero_flow_template, eps=-1.0)
    assert result.unstable
    assert result.value == 0.0


def test_open_bracket_when_scan_never_fails(zero_flow_template):
    result = stability_limit(C1_OPTIMUM, zero_flow_template, scan_max=0.5)
    assert result.open_bracket
    assert result.value == pytest.approx(0.5)


def test_bad_scan_settings_are_rejected(zero_flow_template):
    with pytest.raises(DomainError):
        stability_limit(C1_OPTIMUM, zero_flow_template, tol=0.0)


@pytest.mark.parametrize("weights,expected", [(C1_OPTIMUM, 1 / 1.767), (C2_OPTIMUM, 1 / 1.804)])
def test_cost_c1_is_reciprocal_of_nu_max(zero_flow_template, weights, expected):
    assert cost_C1(weights, zero_flow_template) == pytest.approx(expected, abs=0.004)


def test_cost_c1_sentinel_when_nothing_is_stable(zero_flow_template, monkeypatch):
    monkeypatch.setattr(stability, "nu_max", lambda *a, **k: 0.0)
    assert cost_C1(C1_OPTIMUM, zero_flow_template) == 1.0e6


def test_c2_reduces_to_c1_when_matrices_agree(zero_flow_template, monkeypatch):
    monkeypatch.setattr(stability, "analytic_G_batch", lambda nus, t: amplification_batch(nus, t, ROBUST)[0])
    assert c2_integral(ROBUST, zero_flow_template) == 0.0
    assert cost_C2(ROBUST, zero_flow_template) == cost_C1(ROBUST, zero_flow_template)


def test_c2_prefers_its_own_optimum(zero_flow_template):
    assert cost_C2(C2_OPTIMUM, zero_flow_template) <= cost_C2(C1_OPTIMUM, zero_flow_template)


@settings(max_examples=30, deadline=None)
@given(weights=weights_st)
def test_c2_integral_is_non_negative(weights):
    assert c2_integral(weights, LinearWaveParams.template(0.0)) >= 0.0


def test_c2_quadrature_is_converged(zero_flow_template):
    coarse = c2_integral(C2_OPTIMUM, zero_flow_template, intervals=48)
    fine = c2_integral(C2_OPTIMUM, zero_flow_template, intervals=96)
    assert abs(coarse - fine) < 1e-6


def test_c2_rejects_mean_flow_and_odd_intervals(zero_flow_template):
    with pytest.raises(DomainError):
        cost_C2(ROBUST, LinearWaveParams.template(0.05))
    with pytest.raises(DomainError):
        c2_integral(ROBUST, zero_flow_template, intervals=47)


def test_amplification_is_second_order_consistent():
    # Δt·f escala con ν: todo el generador es proporcional a Δt
    nus = np.geomspace(1e-3, 1e-1, 9)
    errors = []
    for nu in nus:
        params = LinearWaveParams(nu=nu, k_dx=1.0, l_dy=0.5, dt_f=0.01 * nu)
        G = build_amplification(params, ROBUST).G
        errors.append(np.linalg.norm(G - semi_discrete_exact(params), "fro"))
    assert _slope(nus, errors) >= 2.7


def test_1d_eigenvalues_approximate_exact_phase():
    y = np.geomspace(1e-3, 1e-1, 9)
    M = amp_1d_batch(y, ROBUST)
    errors = []
    for yi, Mi in zip(y, M):
        lam = sorted(np.linalg.eigvals(Mi), key=lambda z: z.imag)
        exact = [np.exp(-1j * yi), np.exp(1j * yi)]
        errors.append(max(abs(a - b) for a, b in zip(lam, exact)))
    assert _slope(y, errors) >= 2.8


def test_dispersion_curve_starts_at_one_and_is_conjugate_closed():
    curve = dispersion_curve(C2_OPTIMUM, 256)
    assert len(curve) == 256
    assert curve["ktilde_nu"].iloc[0] == 0.0
    assert curve["ktilde_nu"].iloc[-1] == pytest.approx(math.pi)
    np.testing.assert_allclose([curve["lambda1"].iloc[0], curve["lambda2"].iloc[0]], [1, 1], atol=1e-15)
    lam1, lam2 = curve["lambda1"].to_numpy(), curve["lambda2"].to_numpy()
    np.testing.assert_allclose(np.sort_complex(np.c_[lam1, lam2]), np.sort_complex(np.conj(np.c_[lam1, lam2])), atol=1e-12)


def test_dispersion_curve_is_stable_for_moderate_courant():
    curve = dispersion_curve(C2_OPTIMUM, 512)
    low = curve[curve["ktilde_nu"] <= 1.0]
    assert np.all(np.abs(low["lambda1"]) <= 1 + 1e-10)
    assert np.all(np.abs(low["lambda2"]) <= 1 + 1e-10)


def test_dispersion_tracks_are_continuous():
    curve = dispersion_curve(ROBUST, 1024)
    for name in ("lambda1", "lambda2"):
        jumps = np.abs(np.diff(curve[name].to_numpy()))
        assert jumps.max() < 0.1


def test_dispersion_curve_needs_two_samples():
    with pytest.raises(DomainError):
        dispersion_curve(ROBUST, 1)


def test_dissipation_and_phase_errors_vanish_at_origin():
    table = dissipation_dispersion(ROBUST, 128)
    assert list(table.columns) == ["ktilde_nu", "amplitude_error", "phase_error"]
    assert table["amplitude_error"].iloc[0] == pytest.approx(0.0, abs=1e-15)
    assert table["phase_error"].iloc[0] == pytest.approx(0.0, abs=1e-15)
    assert np.all(table.loc[table["ktilde_nu"] <= 1.0, "amplitude_error"] >= -1e-10)


def test_effective_cfl_values():
    assert effective_cfl(1.804, math.pi, 3) == pytest.approx(1.889, abs=1e-3)
    assert effective_cfl(2.141 / math.pi, math.pi, 2) == pytest.approx(1.071, abs=1e-3)
    assert effective_cfl(0.7, math.pi, 1) == pytest.approx(0.7 * math.pi)
    with pytest.raises(DomainError):
        effective_cfl(0.0, math.pi, 3)


def test_lte_coefficients_vanish_for_rk3_reduction():
    coeffs = lte_coefficients(RK3_LIKE)
    assert coeffs["u"] == pytest.approx(0.0)
    assert coeffs["eta"] == pytest.approx(0.0)
    assert lte_coefficients(ROBUST)["u"] == pytest.approx(0.313 / 6)
