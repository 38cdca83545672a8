from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from src.core.constants import FBRK_THREADS
from src.core.errors import NumericalFailure
from src.core.logger import logger
from src.harness.convergence import rms
from src.harness.models import DiffReport
from src.swe.cases import Case
from src.swe.schemes import SchemeSpec
from src.swe.solver import ShallowWaterModel


def solution_diff(
    case: Case,
    scheme_a: SchemeSpec,
    dt_a: float,
    scheme_b: SchemeSpec,
    dt_b: float,
    t_final: Optional[float] = None,
) -> DiffReport:
    """
    Diferencia de vorticidad y espesor entre dos configuraciones en la misma malla a t_final.

    :raises NumericalFailure: Si alguna de las dos ejecuciones es inestable.
    """
    if t_final is None:
        t_final = float(case.settings.get("diff_duration", case.duration))
    model = ShallowWaterModel(case.grid, case.config)

    with ThreadPoolExecutor(max_workers=min(2, FBRK_THREADS)) as pool:
        fut_a = pool.submit(model.run, case.state, scheme_a, dt_a, t_final)
        fut_b = pool.submit(model.run, case.state, scheme_b, dt_b, t_final)
        final_a, final_b = fut_a.result(), fut_b.result()

    for spec, dt, final in ((scheme_a, dt_a, final_a), (scheme_b, dt_b, final_b)):
        if final.unstable:
            raise NumericalFailure(f"{spec} unstable on '{case.name}' at dt={dt}")

    zeta_a = model.vorticity(final_a)
    zeta_b = model.vorticity(final_b)
    report = DiffReport(
        case=case.name,
        scheme_a=str(scheme_a),
        dt_a=dt_a,
        scheme_b=str(scheme_b),
        dt_b=dt_b,
        t_final=t_final,
        max_abs_vorticity_diff=float(np.max(np.abs(zeta_a - zeta_b))),
        l2_h_diff=rms(final_a.h - final_b.h),
        max_abs_vorticity=float(max(np.max(np.abs(zeta_a)), np.max(np.abs(zeta_b)))),
    )
    logger.info(f"Diff '{case.name}' {scheme_a}@{dt_a} vs {scheme_b}@{dt_b}: "
                f"max|dζ|={report.max_abs_vorticity_diff:.3e} ({report.relative_vorticity_diff:.3e} relative)")
    return report
