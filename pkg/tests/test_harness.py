import numpy as np
import pytest

from conftest import C2_OPTIMUM, ROBUST, RK3_LIKE, FrozenValues
from src.core.errors import DomainError, NumericalFailure
from src.harness import cfl_table, convergence_study, lte_slope, max_stable_dt, solution_diff
from src.harness.cfl import StabilityProbe
from src.harness.convergence import fitted_slope, reference_self_error, rms
from src.harness.models import CFLReport, CFLTable, ConvergenceReport
from src.harness.tables import LONG_COLUMNS, cfl_long, convergence_long, dispersion_long
from src.optimizer.table1 import TABLE1
from src.swe import SWEState, build_case
from src.swe.schemes import SchemeKind, SchemeSpec
from src.vn.stability import dispersion_curve, lte_coefficients

SSPRK3 = SchemeSpec(SchemeKind.SSPRK3)
RK3 = SchemeSpec(SchemeKind.RK3)


def fbrk(weights):
    return SchemeSpec(SchemeKind.FBRK32, weights)


@pytest.fixture(scope="module")
def qlw16():
    return build_case("qlw", {"nx": 16, "ny": 16})


@pytest.fixture(scope="module")
def mode_case():
    # modo suave (1, 2) en la malla 8x8, problema exactamente lineal
    return build_case("mode", {"mx": 1, "my": 2})


# --- máximo dt estable ---

def test_rest_state_never_blows_up():
    case = build_case("rest", {"nx": 8, "ny": 8})
    report = max_stable_dt(case, SSPRK3, duration=12000.0)
    assert report.open_upper
    assert report.dt_max == pytest.approx(6000.0)
    assert report.probes == 2


def test_bad_bracket_is_rejected(qlw16):
    with pytest.raises(DomainError):
        max_stable_dt(qlw16, SSPRK3, dt_lo=100.0, dt_hi=50.0)
    with pytest.raises(DomainError):
        max_stable_dt(qlw16, SSPRK3, rel_tol=0.0)


def test_unstable_lower_bracket_is_a_numerical_failure(qlw16):
    with pytest.raises(NumericalFailure):
        max_stable_dt(qlw16, SSPRK3, duration=200000.0, dt_lo=20000.0, dt_hi=40000.0)


def test_bisection_brackets_the_threshold(qlw16):
    rel_tol = 0.02
    report = max_stable_dt(qlw16, SSPRK3, duration=43200.0, rel_tol=rel_tol)
    assert not report.open_upper
    probe = StabilityProbe(qlw16, SSPRK3, 43200.0)
    assert probe(report.dt_max)
    assert not probe(report.dt_max * (1.0 + rel_tol))
    assert report.courant == pytest.approx(qlw16.config.wave_speed * report.dt_max / qlw16.grid.dx)


def test_cfl_table_puts_reference_first():
    case = build_case("rest", {"nx": 8, "ny": 8})
    table = cfl_table(case, [RK3, SSPRK3], reference=SSPRK3, duration=12000.0)
    assert [r.scheme for r in table.reports] == ["ssprk3", "rk3"]
    assert table.reports[0].ratio_vs_reference == pytest.approx(1.0)


def test_rk3_and_ssprk3_share_the_linear_limit(qlw16):
    table = cfl_table(qlw16, [RK3], duration=86400.0, rel_tol=0.01)
    assert 0.95 <= table.reports[1].ratio_vs_reference <= 1.15


@pytest.mark.slow
def test_fbrk32_doubles_ssprk3_step_on_qlw():
    case = build_case("qlw")
    table = cfl_table(case, [fbrk(C2_OPTIMUM), RK3])
    ratios = {r.scheme: r.ratio_vs_reference for r in table.reports}
    assert ratios[str(fbrk(C2_OPTIMUM))] >= 2.0
    assert 0.95 <= ratios["rk3"] <= 1.15


@pytest.mark.slow
def test_fbrk32_gains_on_jet():
    case = build_case("jet")
    table = cfl_table(case, [fbrk(ROBUST)])
    assert table.reports[1].ratio_vs_reference >= 1.5


# --- convergencia ---

def test_fitted_slope_is_exact_on_power_law():
    dts = [8.0, 4.0, 2.0, 1.0]
    assert fitted_slope(dts, [3.0 * dt ** 2 for dt in dts]) == pytest.approx(2.0)
    assert rms(np.array([3.0, -3.0, 3.0, -3.0])) == pytest.approx(3.0)


def test_reference_velocity_drift_invalidates_the_reference():
    h = np.full((4, 4), 500.0)
    zeros = np.zeros((4, 4))
    reference = SWEState(h=h, u=zeros, v=zeros)
    same_h_other_u = SWEState(h=h.copy(), u=np.full((4, 4), 1e-3), v=zeros)

    err_h, err_u, valid = reference_self_error(reference, same_h_other_u, [1e-2, 1e-3], [1e-2, 1e-3])
    assert err_h == 0.0
    assert err_u == pytest.approx(1e-3)
    assert not valid

    err_h, err_u, valid = reference_self_error(reference, reference.copy(), [1e-2, 1e-3], [1e-2, 1e-3])
    assert (err_h, err_u, valid) == (0.0, 0.0, True)


def test_reference_step_must_be_fine_enough(mode_case):
    with pytest.raises(DomainError):
        convergence_study(mode_case, RK3, dt_list=[1200.0, 600.0], reference_dt=100.0, duration=86400.0)


def test_convergence_needs_two_steps(mode_case):
    with pytest.raises(DomainError):
        convergence_study(mode_case, RK3, dt_list=[600.0, 600.0], duration=86400.0)


@pytest.mark.parametrize("row", TABLE1, ids=lambda r: str(r.weights.as_tuple()))
def test_fbrk32_is_second_order_on_linear_mode(mode_case, row):
    report = convergence_study(mode_case, fbrk(row.weights), dt_list=[1200.0, 600.0, 300.0, 150.0], duration=86400.0)
    assert report.slope_h == pytest.approx(2.0, abs=0.15)
    assert report.slope_u == pytest.approx(2.0, abs=0.15)
    assert report.reference_valid
    assert report.dt == sorted(report.dt, reverse=True)


def test_rk3_is_third_order_on_linear_mode(mode_case):
    report = convergence_study(mode_case, RK3, dt_list=[1200.0, 600.0, 300.0, 150.0], duration=86400.0)
    assert report.slope_h == pytest.approx(3.0, abs=0.2)
    assert report.reference_valid


@pytest.mark.slow
def test_halving_steps_keeps_the_slope(mode_case):
    dts = [300.0, 150.0, 75.0, 37.5]
    a = convergence_study(mode_case, fbrk(ROBUST), dt_list=dts, duration=86400.0)
    b = convergence_study(mode_case, fbrk(ROBUST), dt_list=[dt / 2 for dt in dts], duration=86400.0)
    assert abs(a.slope_h - b.slope_h) <= 0.05


@pytest.mark.slow
@pytest.mark.parametrize("row", TABLE1, ids=lambda r: str(r.weights.as_tuple()))
def test_qlw_is_second_order_for_every_table_row(row):
    report = convergence_study(build_case("qlw"), fbrk(row.weights))
    assert report.slope_h == pytest.approx(2.0, abs=0.15)
    assert report.slope_u == pytest.approx(2.0, abs=0.15)
    assert report.reference_valid


@pytest.mark.slow
def test_qlw_rk3_is_third_order():
    report = convergence_study(build_case("qlw"), RK3)
    assert report.slope_h == pytest.approx(3.0, abs=0.2)
    assert report.reference_valid


# --- error local ---

DT_LIST = [0.02, 0.01, 0.005, 0.0025]


def test_generic_weights_have_third_order_one_step_error():
    report = lte_slope(fbrk(ROBUST), DT_LIST)
    assert report.slope == pytest.approx(3.0, abs=0.1)
    assert report.dt == DT_LIST


def test_rk3_reduction_thickness_path_is_at_least_third_order():
    report = lte_slope(fbrk(RK3_LIKE), DT_LIST)
    assert report.slope_eta >= 2.95


def test_measured_error_matches_leading_coefficients():
    coeffs = lte_coefficients(ROBUST)
    dt = DT_LIST[-1]
    from_eta = lte_slope(fbrk(ROBUST), DT_LIST, w0=(1.0, 0.0))
    from_u = lte_slope(fbrk(ROBUST), DT_LIST, w0=(0.0, 1.0))
    assert from_eta.error_u[-1] / dt ** 3 == pytest.approx(abs(coeffs["u"]), rel=1e-3)
    assert from_u.error_eta[-1] / dt ** 3 == pytest.approx(abs(coeffs["eta"]), rel=1e-3)


def test_lte_needs_two_steps():
    with pytest.raises(DomainError):
        lte_slope(fbrk(ROBUST), [0.01])


# --- diferencia entre soluciones ---

@pytest.fixture(scope="module")
def jet16():
    return build_case("jet", {"nx": 16, "ny": 16})


def test_identical_runs_have_no_difference(jet16):
    report = solution_diff(jet16, SSPRK3, 300.0, SSPRK3, 300.0, t_final=3600.0)
    assert report.max_abs_vorticity_diff == 0.0
    assert report.l2_h_diff == 0.0
    assert report.relative_vorticity_diff == 0.0
    assert report.max_abs_vorticity > 0.0


def test_diff_is_symmetric(jet16):
    ab = solution_diff(jet16, SSPRK3, 300.0, fbrk(ROBUST), 400.0, t_final=3600.0)
    ba = solution_diff(jet16, fbrk(ROBUST), 400.0, SSPRK3, 300.0, t_final=3600.0)
    assert ab.max_abs_vorticity_diff == pytest.approx(ba.max_abs_vorticity_diff)
    assert ab.l2_h_diff == pytest.approx(ba.l2_h_diff)
    assert ab.relative_vorticity_diff == pytest.approx(ba.relative_vorticity_diff)
    assert ab.max_abs_vorticity_diff > 0.0


def test_unstable_run_in_diff_is_a_numerical_failure(jet16):
    with pytest.raises(NumericalFailure):
        solution_diff(jet16, SSPRK3, 300.0, SSPRK3, 20000.0, t_final=4.0e5)


def test_frozen_values_record_then_detect_drift(tmp_path):
    path = tmp_path / "frozen.json"
    FrozenValues(path).check("x", 1.25e-4)
    reloaded = FrozenValues(path)
    assert reloaded.values == {"x": 1.25e-4}
    reloaded.check("x", 1.25e-4 * (1.0 + 1e-9))
    with pytest.raises(AssertionError):
        reloaded.check("x", 1.3e-4)


def test_short_jet_diff_is_frozen(jet16, frozen):
    report = solution_diff(jet16, SSPRK3, 300.0, fbrk(ROBUST), 400.0, t_final=3600.0)
    frozen.check("jet16:ssprk3@300:fbrk32-robust@400:t3600:rel_vort", report.relative_vorticity_diff)
    frozen.check("jet16:ssprk3@300:fbrk32-robust@400:t3600:l2_h", report.l2_h_diff)


@pytest.mark.slow
def test_fbrk32_at_larger_step_stays_close_on_jet(frozen):
    report = solution_diff(build_case("jet"), SSPRK3, 100.0, fbrk(ROBUST), 180.0)
    assert report.relative_vorticity_diff <= 1e-3
    frozen.check("jet:ssprk3@100:fbrk32-robust@180:rel_vort", report.relative_vorticity_diff)
    frozen.check("jet:ssprk3@100:fbrk32-robust@180:max_abs_vort_diff", report.max_abs_vorticity_diff)


# --- tablas largas ---

def test_dispersion_long_table():
    table = dispersion_long(dispersion_curve(ROBUST, 16))
    assert list(table.columns) == LONG_COLUMNS
    assert len(table) == 4 * 16
    assert set(table["series"]) == {"abs_lambda1", "arg_lambda1", "abs_lambda2", "arg_lambda2"}


def test_convergence_and_cfl_long_tables():
    report = ConvergenceReport(
        case="qlw", scheme="rk3", duration=100.0, dt=[2.0, 1.0], error_h=[8.0, 1.0], error_u=[4.0, 0.5],
        slope_h=3.0, slope_u=3.0, reference_dt=0.125, reference_error=1e-6, reference_error_u=1e-7, reference_valid=True,
    )
    conv = convergence_long(report)
    assert list(conv.columns) == LONG_COLUMNS
    assert list(conv["series"]) == ["rk3:h", "rk3:h", "rk3:u", "rk3:u"]

    table = CFLTable(case="qlw", reference="ssprk3", reports=[
        CFLReport(case="qlw", scheme="ssprk3", duration=1.0, dt_max=100.0, courant=0.6, ratio_vs_reference=1.0),
        CFLReport(case="qlw", scheme="rk3", duration=1.0, dt_max=101.0, courant=0.61, ratio_vs_reference=1.01),
    ])
    cfl = cfl_long(table)
    assert list(cfl.columns) == LONG_COLUMNS
    assert len(cfl) == 4
    assert cfl.loc[cfl["series"] == "rk3:ratio", "value"].item() == pytest.approx(1.01)
