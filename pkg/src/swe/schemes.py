"""
Integradores temporales intercambiables.

Todos trabajan sobre el par (m, h) con m = (u, v) apilado en un array
(2, nx, ny), y reciben las tendencias por separado:
  psi(m, h) -> dm/dt   (momento; h es el espesor que entra en el gradiente)
  phi(m, h) -> dh/dt   (espesor)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from src.core.errors import DomainError
from src.core.logger import logger
from src.vn.types import FBWeights

Tendency = Callable[[np.ndarray, np.ndarray], np.ndarray]
Stepper = Callable[..., Tuple[np.ndarray, np.ndarray]]


class SchemeKind(str, Enum):
    FBRK32 = "fbrk32"
    RK3 = "rk3"
    SSPRK3 = "ssprk3"
    RK4 = "rk4"


_STAGES = {SchemeKind.FBRK32: 3, SchemeKind.RK3: 3, SchemeKind.SSPRK3: 3, SchemeKind.RK4: 4}


@dataclass(frozen=True)
class SchemeSpec:
    kind: SchemeKind
    weights: Optional[FBWeights] = None

    def __post_init__(self):
        if self.kind is SchemeKind.FBRK32 and self.weights is None:
            raise DomainError("fbrk32 needs FB weights")
        if self.kind is not SchemeKind.FBRK32 and self.weights is not None:
            raise DomainError(f"{self.kind.value} does not take FB weights")

    @property
    def n_stages(self) -> int:
        return _STAGES[self.kind]

    @classmethod
    def parse(cls, text: str) -> "SchemeSpec":
        """Interpreta 'ssprk3', 'rk3', 'rk4' o 'fbrk32:b1,b2,b3'."""
        name, _, args = text.strip().lower().partition(":")
        try:
            kind = SchemeKind(name)
        except ValueError:
            raise DomainError(f"unknown scheme '{text}'") from None
        if kind is SchemeKind.FBRK32:
            try:
                weights = FBWeights.from_sequence(args.split(","))
            except ValueError as e:
                raise DomainError(f"bad FB weights in '{text}': {e}") from None
            return cls(kind, weights)
        if args:
            raise DomainError(f"scheme '{name}' takes no arguments")
        return cls(kind)

    def __str__(self) -> str:
        if self.weights is None:
            return self.kind.value
        return f"{self.kind.value}:" + ",".join(f"{b:g}" for b in self.weights.as_tuple())


class SchemeFactory:
    _schemes = {
        SchemeKind.FBRK32: "_step_fbrk32",
        SchemeKind.RK3: "_step_rk3",
        SchemeKind.SSPRK3: "_step_ssprk3",
        SchemeKind.RK4: "_step_rk4",
    }

    @classmethod
    def stepper(cls, spec: SchemeSpec) -> Stepper:
        if spec.kind not in cls._schemes:
            logger.error(f"Scheme '{spec.kind}' not supported")
            raise DomainError(f"Scheme '{spec.kind}' not supported")
        method = getattr(cls, cls._schemes[spec.kind])

        def step(m, h, dt, psi, phi):
            return method(m, h, dt, psi, phi, spec.weights)

        return step

    @staticmethod
    def _step_fbrk32(m, h, dt, psi: Tendency, phi: Tendency, weights: FBWeights):
        b1, b2, b3 = weights.as_tuple()

        h_13 = h + dt / 3.0 * phi(m, h)
        m_13 = m + dt / 3.0 * psi(m, b1 * h_13 + (1.0 - b1) * h)

        h_12 = h + dt / 2.0 * phi(m_13, h_13)
        m_12 = m + dt / 2.0 * psi(m_13, b2 * h_12 + (1.0 - b2) * h)

        h_1 = h + dt * phi(m_12, h_12)
        m_1 = m + dt * psi(m_12, b3 * h_1 + (1.0 - 2.0 * b3) * h_12 + b3 * h)
        return m_1, h_1

    @staticmethod
    def _step_rk3(m, h, dt, psi: Tendency, phi: Tendency, weights=None):
        m1, h1 = m + dt / 3.0 * psi(m, h), h + dt / 3.0 * phi(m, h)
        m2, h2 = m + dt / 2.0 * psi(m1, h1), h + dt / 2.0 * phi(m1, h1)
        return m + dt * psi(m2, h2), h + dt * phi(m2, h2)

    @staticmethod
    def _step_ssprk3(m, h, dt, psi: Tendency, phi: Tendency, weights=None):
        m1, h1 = m + dt * psi(m, h), h + dt * phi(m, h)
        m2 = 0.75 * m + 0.25 * (m1 + dt * psi(m1, h1))
        h2 = 0.75 * h + 0.25 * (h1 + dt * phi(m1, h1))
        m3 = m / 3.0 + 2.0 / 3.0 * (m2 + dt * psi(m2, h2))
        h3 = h / 3.0 + 2.0 / 3.0 * (h2 + dt * phi(m2, h2))
        return m3, h3

    @staticmethod
    def _step_rk4(m, h, dt, psi: Tendency, phi: Tendency, weights=None):
        k1m, k1h = psi(m, h), phi(m, h)
        m1, h1 = m + 0.5 * dt * k1m, h + 0.5 * dt * k1h
        k2m, k2h = psi(m1, h1), phi(m1, h1)
        m2, h2 = m + 0.5 * dt * k2m, h + 0.5 * dt * k2h
        k3m, k3h = psi(m2, h2), phi(m2, h2)
        m3, h3 = m + dt * k3m, h + dt * k3h
        k4m, k4h = psi(m3, h3), phi(m3, h3)
        return (
            m + dt / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m),
            h + dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h),
        )
