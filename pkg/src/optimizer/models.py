from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.vn.stability import cost_C1, cost_C2
from src.vn.types import FBWeights, LinearWaveParams

Triple = Tuple[float, float, float]


class CostKind(str, Enum):
    C1 = "C1"
    C2 = "C2"


class CostSpec(BaseModel):
    """Función de coste a minimizar y caja de búsqueda de los pesos FB."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: CostKind = Field(CostKind.C1, description="C1 = 1/νmax; C2 = C1 + error integrado frente a la evolución exacta.")
    froude: float = Field(0.0, ge=0.0, allow_inf_nan=False, description="Módulo |U| del flujo medio adimensional.")
    lower: Triple = Field((0.0, 0.0, 0.0), description="Esquina inferior de la caja de búsqueda.")
    upper: Triple = Field((1.0, 1.0, 1.0), description="Esquina superior de la caja de búsqueda.")

    @model_validator(mode="after")
    def _check(self):
        if self.kind is CostKind.C2 and self.froude != 0.0:
            raise ValueError("C2 requires zero mean flow (froude = 0)")
        for lo, hi in zip(self.lower, self.upper):
            if not (0.0 <= lo <= hi <= 1.0):
                raise ValueError(f"search box must satisfy 0 <= lower <= upper <= 1, got [{lo}, {hi}]")
        return self

    def template(self) -> LinearWaveParams:
        return LinearWaveParams.template(self.froude)

    def cost(self, weights: FBWeights, tol: Optional[float] = None) -> float:
        template = self.template()
        if self.kind is CostKind.C2:
            return cost_C2(weights, template, tol=tol)
        return cost_C1(weights, template, tol=tol)


class TraceEntry(BaseModel):
    weights: Triple
    cost: float


class OptimizationReport(BaseModel):
    """Resultado de `optimize`, serializable a JSON."""

    kind: CostKind
    froude: float
    seed: int
    weights: Triple = Field(description="Mejores pesos (β1, β2, β3) encontrados.")
    nu_max: float = Field(description="νmax de los pesos con la tolerancia final.")
    cost: float = Field(description="Coste re-evaluado con la tolerancia final.")
    evaluations: int = Field(description="Evaluaciones de coste consumidas (siembra incluida).")
    starts: int = Field(description="Arranques de Nelder-Mead ejecutados.")
    trace: List[TraceEntry] = Field(default_factory=list, description="Mejoras aceptadas, con coste estrictamente decreciente.")
    all_unstable: bool = Field(False, description="Ningún punto evaluado fue estable.")
    open_bracket: bool = Field(False, description="El barrido de νmax no encontró inestabilidad.")

    def fb_weights(self) -> FBWeights:
        return FBWeights.from_sequence(self.weights)


class Table1Verdict(BaseModel):
    row: int
    froude: float
    kind: CostKind
    weights: Triple
    published_numax: float
    achieved_numax: float
    passed: bool
