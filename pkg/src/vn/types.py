"""Tipos de dominio del análisis de von Neumann."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Tuple

import numpy as np

from src.core.config import get_config
from src.core.errors import DomainError

_ANGLE_SLACK = 1e-12


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class FBWeights:
    """Pesos forward-backward (β1, β2, β3) de FB-RK(3,2)."""

    beta1: float
    beta2: float
    beta3: float

    def __post_init__(self):
        _require_finite(beta1=self.beta1, beta2=self.beta2, beta3=self.beta3)

    @classmethod
    def from_sequence(cls, values) -> "FBWeights":
        values = [float(v) for v in values]
        if len(values) != 3:
            raise DomainError(f"expected 3 FB weights, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.beta1, self.beta2, self.beta3)

    def in_unit_box(self) -> bool:
        return all(0.0 <= b <= 1.0 for b in self.as_tuple())


@dataclass(frozen=True)
class LinearWaveParams:
    """
    Parámetros adimensionales que entran en la matriz de amplificación.

    :param nu: Número de Courant ν = cΔt/Δx (νx = νy).
    :param k_dx: kΔx en radianes, en [0, π].
    :param l_dy: ℓΔy en radianes, en [0, π].
    :param dt_f: Producto Δt·f.
    :param U: Componente x del flujo medio adimensional.
    :param V: Componente y del flujo medio adimensional.
    """

    nu: float = 0.0
    k_dx: float = math.pi
    l_dy: float = math.pi
    dt_f: float = 1e-2
    U: float = 0.0
    V: float = 0.0

    def __post_init__(self):
        _require_finite(nu=self.nu, k_dx=self.k_dx, l_dy=self.l_dy, dt_f=self.dt_f, U=self.U, V=self.V)
        if self.nu < 0:
            raise DomainError(f"nu must be >= 0, got {self.nu}")
        for name, angle in (("k_dx", self.k_dx), ("l_dy", self.l_dy)):
            if not (-_ANGLE_SLACK <= angle <= math.pi + _ANGLE_SLACK):
                raise DomainError(f"{name} must lie in [0, pi], got {angle}")

    @property
    def K(self) -> float:
        return 2.0 * math.sin(self.k_dx / 2.0)

    @property
    def L(self) -> float:
        return 2.0 * math.sin(self.l_dy / 2.0)

    @property
    def phi(self) -> float:
        return self.dt_f * math.cos(self.k_dx / 2.0) * math.cos(self.l_dy / 2.0)

    @property
    def froude(self) -> float:
        return math.hypot(self.U, self.V)

    @property
    def has_mean_flow(self) -> bool:
        return self.U != 0.0 or self.V != 0.0

    def with_nu(self, nu: float) -> "LinearWaveParams":
        return replace(self, nu=float(nu))

    @classmethod
    def template(cls, froude: float = 0.0) -> "LinearWaveParams":
        """
        Plantilla con kΔx, ℓΔy y Δt·f fijados según config/numerics.yaml.

        El módulo |U| se reparte como U = V = |U|/√2.
        """
        if not math.isfinite(froude) or froude < 0:
            raise DomainError(f"froude must be a finite value >= 0, got {froude}")
        cfg = get_config()
        component = froude / math.sqrt(2.0)
        return cls(
            nu=0.0,
            k_dx=float(cfg.get("numerics.template.k_dx")),
            l_dy=float(cfg.get("numerics.template.l_dy")),
            dt_f=float(cfg.get("numerics.template.dt_f")),
            U=component,
            V=component,
        )


@dataclass(frozen=True)
class AmplificationSystem:
    """Mapa afín de un paso ŵ^{n+1} = G ŵ^n + b con ŵ = (û, v̂, η̂)."""

    G: np.ndarray
    b: np.ndarray

    def apply(self, w: np.ndarray) -> np.ndarray:
        return self.G @ np.asarray(w, dtype=complex) + self.b


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    spectral_radius: float
    eigenvectors: np.ndarray = field(repr=False, default=None)

    def residuals(self, G: np.ndarray) -> np.ndarray:
        """‖Gv − λv‖ para cada par propio (vectores unitarios)."""
        vecs = self.eigenvectors
        return np.array([
            np.linalg.norm(G @ vecs[:, j] - self.eigenvalues[j] * vecs[:, j])
            for j in range(len(self.eigenvalues))
        ])


@dataclass(frozen=True)
class NuMaxResult:
    """
    Resultado de la búsqueda de νmax.

    :param value: νmax estimado (0 si ningún ν probado es estable).
    :param unstable: True si el primer punto del barrido ya es inestable.
    :param open_bracket: True si no se encontró inestabilidad hasta el final del barrido.
    :param evaluations: Número de matrices G evaluadas.
    """

    value: float
    unstable: bool = False
    open_bracket: bool = False
    evaluations: int = 0

    def __float__(self) -> float:
        return float(self.value)
