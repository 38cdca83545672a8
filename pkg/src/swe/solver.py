"""
Ecuaciones de aguas someras en forma vectorial invariante sobre la malla C:

  ∂u/∂t = −(ζ + f) k×u − ∇(K + g(h + zb))
  ∂h/∂t = −∇·(h u)

En modo cuasi-lineal (momentum_advection=False) se eliminan ζ y K.
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from src.core.errors import DomainError
from src.core.logger import logger
from src.swe import operators as op
from src.swe.grid import Grid, SWEConfig, SWEState
from src.swe.schemes import SchemeFactory, SchemeSpec


class ShallowWaterModel:
    """Tendencias y avance temporal para una malla y una configuración fijas."""

    def __init__(self, grid: Grid, config: SWEConfig):
        self.grid = grid
        self.config = config
        self.zb = config.bottom(grid)

    def psi(self, m: np.ndarray, h: np.ndarray) -> np.ndarray:
        """Tendencia del momento (2, nx, ny) con el espesor `h` en el gradiente de presión."""
        u, v = m[0], m[1]
        dx, dy = self.grid.dx, self.grid.dy
        cfg = self.config
        bernoulli = cfg.g * (h + self.zb)
        q_u = cfg.f * op.v_at_u(v)
        q_v = -cfg.f * op.u_at_v(u)
        if cfg.momentum_advection:
            zeta = op.curl(u, v, dx, dy)
            bernoulli = bernoulli + op.kinetic_energy(u, v)
            q_u = q_u + op.corner_to_u(zeta) * op.v_at_u(v)
            q_v = q_v - op.corner_to_v(zeta) * op.u_at_v(u)
        return np.stack([
            q_u - op.ddx_center_to_u(bernoulli, dx),
            q_v - op.ddy_center_to_v(bernoulli, dy),
        ])

    def phi(self, m: np.ndarray, h: np.ndarray) -> np.ndarray:
        """Tendencia del espesor −∇·(h u) con h en aristas por media de dos puntos."""
        u, v = m[0], m[1]
        if self.config.linear_mass_flux:
            fu, fv = self.config.H * u, self.config.H * v
        else:
            fu, fv = op.center_to_u(h) * u, op.center_to_v(h) * v
        return -op.divergence(fu, fv, self.grid.dx, self.grid.dy)

    def tendencies(self, state: SWEState) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not state.is_finite():
            raise DomainError("state contains non-finite values")
        m = np.stack([state.u, state.v])
        dm = self.psi(m, state.h)
        return dm[0], dm[1], self.phi(m, state.h)

    def step(self, state: SWEState, scheme: SchemeSpec, dt: float) -> SWEState:
        """
        Un paso de tiempo. Si el resultado no es finito se devuelve con unstable=True.
        """
        if not (dt > 0 and math.isfinite(dt)):
            raise DomainError(f"dt must be a positive finite number, got {dt}")
        return self._advance(state, SchemeFactory.stepper(scheme), dt, 1)

    def run(
        self,
        state: SWEState,
        scheme: SchemeSpec,
        dt: float,
        t_final: Optional[float] = None,
        n_steps: Optional[int] = None,
    ) -> SWEState:
        """
        Avanza con paso fijo hasta t_final (n = ⌈t_final/dt⌉ pasos de t_final/n) o n_steps pasos.

        Se detiene en cuanto aparece un valor no finito.
        """
        if (t_final is None) == (n_steps is None):
            raise DomainError("give exactly one of t_final or n_steps")
        if not (dt > 0 and math.isfinite(dt)):
            raise DomainError(f"dt must be a positive finite number, got {dt}")
        if t_final is not None:
            if t_final < 0:
                raise DomainError(f"t_final must be >= 0, got {t_final}")
            n_steps = math.ceil(t_final / dt - 1e-9)
            dt = t_final / n_steps if n_steps else dt
        if n_steps < 0:
            raise DomainError(f"n_steps must be >= 0, got {n_steps}")
        return self._advance(state, SchemeFactory.stepper(scheme), dt, n_steps)

    def _advance(self, state: SWEState, stepper, dt: float, n_steps: int) -> SWEState:
        m = np.stack([state.u, state.v])
        h = state.h.copy()
        t = state.t
        with np.errstate(over="ignore", invalid="ignore"):
            for n in range(n_steps):
                m, h = stepper(m, h, dt, self.psi, self.phi)
                t += dt
                if not (np.all(np.isfinite(m)) and np.all(np.isfinite(h))):
                    logger.warning(f"Non-finite values after step {n + 1} (t={t:.6g}s, dt={dt:.6g}s)")
                    return SWEState(h=h, u=m[0], v=m[1], t=t, unstable=True)
        return SWEState(h=h, u=m[0].copy(), v=m[1].copy(), t=t, unstable=state.unstable)

    def diagnostics(self, state: SWEState) -> Tuple[float, float, float]:
        """(masa total, energía total, max |ζ|)."""
        dA = self.grid.cell_area
        mass = float(np.sum(state.h) * dA)
        energy = float(np.sum(
            state.h * op.kinetic_energy(state.u, state.v) + 0.5 * self.config.g * (state.h + self.zb) ** 2
        ) * dA)
        zeta = op.curl(state.u, state.v, self.grid.dx, self.grid.dy)
        return mass, energy, float(np.max(np.abs(zeta)))

    def vorticity(self, state: SWEState) -> np.ndarray:
        return op.curl(state.u, state.v, self.grid.dx, self.grid.dy)


def tendencies(state: SWEState, config: SWEConfig, grid: Grid):
    return ShallowWaterModel(grid, config).tendencies(state)


def step(state: SWEState, scheme: SchemeSpec, dt: float, config: SWEConfig, grid: Grid) -> SWEState:
    return ShallowWaterModel(grid, config).step(state, scheme, dt)


def run(state: SWEState, scheme: SchemeSpec, dt: float, config: SWEConfig, grid: Grid,
        t_final: Optional[float] = None, n_steps: Optional[int] = None) -> SWEState:
    return ShallowWaterModel(grid, config).run(state, scheme, dt, t_final=t_final, n_steps=n_steps)


def diagnostics(state: SWEState, config: SWEConfig, grid: Grid) -> Tuple[float, float, float]:
    return ShallowWaterModel(grid, config).diagnostics(state)
