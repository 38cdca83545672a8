from typing import List, Optional

from pydantic import BaseModel, Field


class CFLReport(BaseModel):
    case: str
    scheme: str
    duration: float = Field(description="Duración simulada en cada prueba (s).")
    dt_max: float = Field(description="Mayor Δt estable encontrado (s).")
    courant: float = Field(description="c·dt_max/Δx con c = √(gH).")
    ratio_vs_reference: Optional[float] = Field(None, description="dt_max / dt_max del esquema de referencia.")
    open_upper: bool = Field(False, description="dt_hi resultó estable: dt_max es una cota inferior.")
    probes: int = Field(0, description="Simulaciones ejecutadas en la bisección.")


class CFLTable(BaseModel):
    case: str
    reference: str
    reports: List[CFLReport]


class ConvergenceReport(BaseModel):
    case: str
    scheme: str
    duration: float
    dt: List[float] = Field(description="Pasos efectivos, estrictamente decrecientes.")
    error_h: List[float]
    error_u: List[float]
    slope_h: float
    slope_u: float
    reference_dt: float
    reference_error: float = Field(description="Diferencia L2 de h entre la referencia RK4 a Δt_ref y a Δt_ref/2.")
    reference_error_u: float = Field(description="Diferencia L2 de u entre la referencia RK4 a Δt_ref y a Δt_ref/2.")
    reference_valid: bool = Field(description="Ambas diferencias de la referencia < 1% del menor error medido del mismo campo.")


class LTEReport(BaseModel):
    scheme: str
    dt: List[float]
    error_eta: List[float]
    error_u: List[float]
    slope_eta: float
    slope_u: float
    slope: float = Field(description="Pendiente del error conjunto (η, u).")


class DiffReport(BaseModel):
    case: str
    scheme_a: str
    dt_a: float
    scheme_b: str
    dt_b: float
    t_final: float
    max_abs_vorticity_diff: float
    l2_h_diff: float
    max_abs_vorticity: float = Field(description="max |ζ| de ambas soluciones, escala para la diferencia relativa.")

    @property
    def relative_vorticity_diff(self) -> float:
        return self.max_abs_vorticity_diff / self.max_abs_vorticity if self.max_abs_vorticity else 0.0
