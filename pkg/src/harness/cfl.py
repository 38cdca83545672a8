"""
Búsqueda del mayor paso de tiempo estable por bisección.

Una ejecución es estable si termina con todos los campos finitos, con
max|h − H| ≤ F·(perturbación inicial) y con max|u| ≤ F·(velocidad inicial),
donde F es `numerics.harness.blowup_factor`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from src.core.config import get_config
from src.core.constants import FBRK_THREADS
from src.core.errors import DomainError, NumericalFailure
from src.core.logger import logger
from src.harness.models import CFLReport, CFLTable
from src.swe.cases import Case
from src.swe.grid import SWEState
from src.swe.schemes import SchemeSpec
from src.swe.solver import ShallowWaterModel


def _harness(key: str) -> float:
    return float(get_config().get(f"numerics.harness.{key}"))


def _amplitudes(state: SWEState, H: float):
    perturbation = float(np.max(np.abs(state.h - H)))
    speed = float(max(np.max(np.abs(state.u)), np.max(np.abs(state.v))))
    return perturbation, speed


class StabilityProbe:
    """Predicado de estabilidad de un caso para un esquema y una duración."""

    def __init__(self, case: Case, scheme: SchemeSpec, duration: float):
        self.case = case
        self.scheme = scheme
        self.duration = duration
        self.model = ShallowWaterModel(case.grid, case.config)
        floor = _harness("amplitude_floor")
        factor = _harness("blowup_factor")
        pert0, speed0 = _amplitudes(case.state, case.config.H)
        self.max_perturbation = factor * max(pert0, floor)
        self.max_speed = factor * max(speed0, floor)
        self.probes = 0

    def __call__(self, dt: float) -> bool:
        self.probes += 1
        final = self.model.run(self.case.state, self.scheme, dt, t_final=self.duration)
        if final.unstable or not final.is_finite():
            return False
        pert, speed = _amplitudes(final, self.case.config.H)
        return pert <= self.max_perturbation and speed <= self.max_speed


def max_stable_dt(
    case: Case,
    scheme: SchemeSpec,
    duration: Optional[float] = None,
    dt_lo: Optional[float] = None,
    dt_hi: Optional[float] = None,
    rel_tol: Optional[float] = None,
) -> CFLReport:
    """
    Bisección (en escala logarítmica) entre un dt_lo estable y un dt_hi inestable.

    :raises DomainError: Si el intervalo no es válido.
    :raises NumericalFailure: Si dt_lo ya es inestable.
    """
    duration = case.duration if duration is None else float(duration)
    bracket = case.settings.get("cfl", {})
    dt_lo = float(bracket.get("dt_lo")) if dt_lo is None else float(dt_lo)
    dt_hi = float(bracket.get("dt_hi")) if dt_hi is None else float(dt_hi)
    rel_tol = _harness("rel_tol") if rel_tol is None else float(rel_tol)
    if not (0 < dt_lo < dt_hi) or not (rel_tol > 0) or not (duration > 0):
        raise DomainError(f"need 0 < dt_lo < dt_hi, rel_tol > 0 and duration > 0 (got {dt_lo}, {dt_hi}, {rel_tol}, {duration})")

    stable = StabilityProbe(case, scheme, duration)
    if not stable(dt_lo):
        raise NumericalFailure(f"{scheme} is unstable on '{case.name}' already at dt_lo={dt_lo}")

    open_upper = False
    if stable(dt_hi):
        lo, open_upper = dt_hi, True
    else:
        lo, hi = dt_lo, dt_hi
        while (hi - lo) / lo > rel_tol:
            mid = math.sqrt(lo * hi)
            if stable(mid):
                lo = mid
            else:
                hi = mid

    courant = case.config.wave_speed * lo / min(case.grid.dx, case.grid.dy)
    logger.info(f"CFL '{case.name}' {scheme}: dt_max={lo:.2f}s (nu={courant:.3f}, {stable.probes} runs{', open' if open_upper else ''})")
    return CFLReport(
        case=case.name,
        scheme=str(scheme),
        duration=duration,
        dt_max=lo,
        courant=courant,
        open_upper=open_upper,
        probes=stable.probes,
    )


def cfl_table(
    case: Case,
    schemes: Sequence[SchemeSpec],
    reference: SchemeSpec = SchemeSpec.parse("ssprk3"),
    **kwargs,
) -> CFLTable:
    """
    dt_max de cada esquema y su cociente frente al de `reference` (una fila de la tabla CFL).
    """
    ordered = [reference] + [s for s in schemes if s != reference]
    with ThreadPoolExecutor(max_workers=FBRK_THREADS) as pool:
        reports = list(pool.map(lambda s: max_stable_dt(case, s, **kwargs), ordered))
    ref_dt = reports[0].dt_max
    for report in reports:
        report.ratio_vs_reference = report.dt_max / ref_dt
    return CFLTable(case=case.name, reference=str(reference), reports=reports)
