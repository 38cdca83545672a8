"""Pesos optimizados publicados y su comprobación frente a νmax recalculado."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import pandas as pd

from src.core.constants import RK3_REDUCTION_WEIGHTS, TABLE1_ROWS
from src.core.logger import logger
from src.optimizer.models import CostKind, Table1Verdict
from src.vn.stability import nu_max
from src.vn.types import FBWeights, LinearWaveParams


@dataclass(frozen=True)
class Table1Row:
    froude: float
    kind: CostKind
    weights: FBWeights
    nu_max: float


TABLE1: List[Table1Row] = [
    Table1Row(froude=fr, kind=CostKind(kind), weights=FBWeights(*w), nu_max=nm)
    for fr, kind, w, nm in TABLE1_ROWS
]


def rk3_reduction() -> FBWeights:
    """Pesos (0, 2/3, 0): el espesor avanza como RK3 y el momento casi también."""
    return FBWeights(*RK3_REDUCTION_WEIGHTS)


def evaluate_table1(tol: float = 0.02, nu_tol: Optional[float] = None) -> List[Table1Verdict]:
    """
    Recalcula νmax para cada fila publicada y lo compara con el valor de la tabla.

    :param tol: Diferencia máxima admitida |νmax calculado − νmax publicado|.
    :param nu_tol: Tolerancia de la bisección de νmax (por defecto la de config).
    :returns: Un veredicto por fila.
    """
    verdicts = []
    for idx, row in enumerate(TABLE1, start=1):
        achieved = nu_max(row.weights, LinearWaveParams.template(row.froude), tol=nu_tol)
        passed = abs(achieved - row.nu_max) <= tol
        if not passed:
            logger.warning(f"Row {idx} ({row.kind.value}, |U|={row.froude}): nu_max {achieved:.4f} vs {row.nu_max}")
        verdicts.append(Table1Verdict(
            row=idx,
            froude=row.froude,
            kind=row.kind,
            weights=row.weights.as_tuple(),
            published_numax=row.nu_max,
            achieved_numax=achieved,
            passed=passed,
        ))
    return verdicts


def verdicts_frame(verdicts: List[Table1Verdict]) -> pd.DataFrame:
    rows = []
    for v in verdicts:
        record = v.model_dump(exclude={"weights"})
        record["kind"] = v.kind.value
        record.update({"beta1": v.weights[0], "beta2": v.weights[1], "beta3": v.weights[2]})
        rows.append(record)
    return pd.DataFrame(rows)
