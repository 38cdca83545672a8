"""Órdenes de convergencia temporal (caso completo) y de error local (sistema 1D)."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence, Tuple

import numpy as np

from src.core.config import get_config
from src.core.constants import FBRK_THREADS
from src.core.errors import DomainError, NumericalFailure
from src.core.logger import logger
from src.harness.models import ConvergenceReport, LTEReport
from src.swe.cases import Case
from src.swe.grid import SWEState
from src.swe.schemes import SchemeFactory, SchemeKind, SchemeSpec
from src.swe.solver import ShallowWaterModel
from src.vn.amplification import exact_1d


def rms(a: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.abs(a) ** 2)))


def fitted_slope(dts: Sequence[float], errors: Sequence[float]) -> float:
    """Pendiente por mínimos cuadrados de log(error) frente a log(dt)."""
    return float(np.polyfit(np.log(dts), np.log(errors), 1)[0])


def _effective_dt(duration: float, dt: float) -> float:
    n = int(np.ceil(duration / dt - 1e-9))
    return duration / n


def reference_self_error(
    reference: SWEState, reference_half: SWEState, error_h: Sequence[float], error_u: Sequence[float]
) -> Tuple[float, float, bool]:
    """
    Autoerror de la referencia RK4 (Δt_ref frente a Δt_ref/2) en h y en u.

    :returns: (error en h, error en u, válida) con válida si cada error queda por debajo
        del 1% del menor error medido del mismo campo.
    """
    ref_h = rms(reference_half.h - reference.h)
    ref_u = rms(reference_half.u - reference.u)
    return ref_h, ref_u, bool(ref_h < 0.01 * min(error_h) and ref_u < 0.01 * min(error_u))


def convergence_study(
    case: Case,
    scheme: SchemeSpec,
    dt_list: Optional[Sequence[float]] = None,
    reference_dt: Optional[float] = None,
    duration: Optional[float] = None,
) -> ConvergenceReport:
    """
    Errores L2 de h y u al final de la simulación frente a una referencia RK4.

    :raises DomainError: Si reference_dt > min(dt_list)/ratio o los pasos no son válidos.
    :raises NumericalFailure: Si alguna ejecución es inestable.
    """
    settings = case.settings.get("convergence", {})
    dt_list = settings.get("dt_list") if dt_list is None else dt_list
    duration = float(settings.get("duration", case.duration)) if duration is None else float(duration)
    if not dt_list:
        raise DomainError(f"case '{case.name}' has no convergence dt list")
    dts = sorted({float(dt) for dt in dt_list}, reverse=True)
    if len(dts) < 2 or dts[-1] <= 0:
        raise DomainError("need at least two distinct positive time steps")
    ratio = float(get_config().get("numerics.harness.reference_ratio"))
    reference_dt = dts[-1] / ratio if reference_dt is None else float(reference_dt)
    if reference_dt > dts[-1] / ratio * (1 + 1e-12):
        raise DomainError(f"reference_dt must be <= min(dt_list)/{ratio:g}, got {reference_dt}")

    model = ShallowWaterModel(case.grid, case.config)
    rk4 = SchemeSpec(SchemeKind.RK4)

    def run(spec: SchemeSpec, dt: float) -> SWEState:
        return model.run(case.state, spec, dt, t_final=duration)

    jobs = [(rk4, reference_dt), (rk4, reference_dt / 2.0)] + [(scheme, dt) for dt in dts]
    with ThreadPoolExecutor(max_workers=FBRK_THREADS) as pool:
        results = list(pool.map(lambda job: run(*job), jobs))
    reference, reference_half, runs = results[0], results[1], results[2:]

    unstable = [dt for dt, r in zip(dts, runs) if r.unstable]
    if reference.unstable or reference_half.unstable:
        unstable.append(reference_dt)
    if unstable:
        raise NumericalFailure(f"{scheme} unstable on '{case.name}' at dt = {unstable}")

    error_h = [rms(r.h - reference.h) for r in runs]
    error_u = [rms(r.u - reference.u) for r in runs]
    if min(error_h + error_u) <= 0.0:
        raise NumericalFailure("zero error against the reference: the case has no dynamics")
    reference_error, reference_error_u, reference_valid = reference_self_error(reference, reference_half, error_h, error_u)

    effective = [_effective_dt(duration, dt) for dt in dts]
    report = ConvergenceReport(
        case=case.name,
        scheme=str(scheme),
        duration=duration,
        dt=effective,
        error_h=error_h,
        error_u=error_u,
        slope_h=fitted_slope(effective, error_h),
        slope_u=fitted_slope(effective, error_u),
        reference_dt=reference_dt,
        reference_error=reference_error,
        reference_error_u=reference_error_u,
        reference_valid=reference_valid,
    )
    logger.info(f"Convergence '{case.name}' {scheme}: slope h {report.slope_h:.3f}, u {report.slope_u:.3f}")
    if not report.reference_valid:
        logger.warning(
            f"RK4 reference error (h {reference_error:.3e}, u {reference_error_u:.3e}) is not below 1% of the smallest error"
        )
    return report


def lte_slope(
    scheme: SchemeSpec,
    dt_list: Sequence[float],
    c: float = 1.0,
    k: float = 1.0,
    w0=(1.0, 1.0),
) -> LTEReport:
    """
    Error de un paso en el sistema de ondas 1D ∂u/∂t = −c∂η/∂x, ∂η/∂t = −c∂u/∂x para un único modo.

    :param scheme: Esquema (cualquiera del registro).
    :param dt_list: Pasos de tiempo; K̃ν = c·k·dt.
    :param w0: Estado inicial (η̂, û).
    :returns: LTEReport con la pendiente del error de un paso frente a dt.
    """
    dts = sorted({float(dt) for dt in dt_list}, reverse=True)
    if len(dts) < 2 or dts[-1] <= 0:
        raise DomainError("need at least two distinct positive time steps")
    stepper = SchemeFactory.stepper(scheme)
    eta0, u0 = (complex(x) for x in w0)
    ck = c * k

    def psi(m, h):
        return -1j * ck * h

    def phi(m, h):
        return -1j * ck * m

    err_eta, err_u, err = [], [], []
    for dt in dts:
        m, h = stepper(np.array([u0]), np.array([eta0]), dt, psi, phi)
        exact = exact_1d(ck * dt) @ np.array([eta0, u0])
        e_eta = abs(h[0] - exact[0])
        e_u = abs(m[0] - exact[1])
        err_eta.append(e_eta)
        err_u.append(e_u)
        err.append(float(np.hypot(e_eta, e_u)))

    def slope(errors):
        if min(errors) <= 0.0:
            return float("inf")
        return fitted_slope(dts, errors)

    return LTEReport(
        scheme=str(scheme),
        dt=dts,
        error_eta=err_eta,
        error_u=err_u,
        slope_eta=slope(err_eta),
        slope_u=slope(err_u),
        slope=slope(err),
    )
