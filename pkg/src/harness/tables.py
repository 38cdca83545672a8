"""Tablas en formato largo (x, series, value) listas para dibujar."""

import numpy as np
import pandas as pd

from src.harness.models import CFLTable, ConvergenceReport

LONG_COLUMNS = ["x", "series", "value"]


def _long(x, series: str, values) -> pd.DataFrame:
    return pd.DataFrame({"x": np.asarray(x, dtype=float), "series": series, "value": np.asarray(values, dtype=float)})


def dispersion_long(curve: pd.DataFrame) -> pd.DataFrame:
    """|λ| y arg λ de cada rama frente a K̃ν."""
    x = curve["ktilde_nu"]
    parts = []
    for track in ("lambda1", "lambda2"):
        lam = curve[track].to_numpy()
        parts.append(_long(x, f"abs_{track}", np.abs(lam)))
        parts.append(_long(x, f"arg_{track}", np.angle(lam)))
    return pd.concat(parts, ignore_index=True)[LONG_COLUMNS]


def convergence_long(report: ConvergenceReport) -> pd.DataFrame:
    return pd.concat([
        _long(report.dt, f"{report.scheme}:h", report.error_h),
        _long(report.dt, f"{report.scheme}:u", report.error_u),
    ], ignore_index=True)[LONG_COLUMNS]


def cfl_long(table: CFLTable) -> pd.DataFrame:
    """Una fila por esquema y magnitud; x es el índice del esquema en la tabla."""
    rows = []
    for idx, r in enumerate(table.reports):
        rows.append({"x": idx, "series": f"{r.scheme}:dt_max", "value": r.dt_max})
        rows.append({"x": idx, "series": f"{r.scheme}:ratio", "value": r.ratio_vs_reference})
    return pd.DataFrame(rows, columns=LONG_COLUMNS)
