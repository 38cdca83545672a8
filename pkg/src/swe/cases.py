"""
Casos de prueba planos definidos en config/cases.yaml.

  rest  estado en reposo
  qlw   campana gaussiana de espesor, sin advección de momento
  jet   doble chorro zonal equilibrado con una perturbación de espesor
  mode  un único modo de Fourier en configuración lineal
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from src.core.config import get_config
from src.core.errors import DomainError
from src.core.logger import logger
from src.swe.balance import balanced_ic
from src.swe.grid import Grid, SWEConfig, SWEState
from src.vn.types import LinearWaveParams

TWO_PI = 2.0 * math.pi


@dataclass
class Case:
    name: str
    grid: Grid
    config: SWEConfig
    state: SWEState
    duration: float
    settings: Dict[str, Any] = field(default_factory=dict)


def _wrap(d: np.ndarray) -> np.ndarray:
    """Distancia periódica en [−π, π)."""
    return np.mod(d + math.pi, TWO_PI) - math.pi


def _case_settings(name: str) -> Dict[str, Any]:
    cases = get_config().get("cases")
    if name not in cases or name == "defaults":
        raise DomainError(f"unknown case '{name}'. Available: {available_cases()}")
    return {**cases["defaults"], **cases[name]}


def available_cases():
    return sorted(k for k in get_config().get("cases") if k != "defaults")


def _grid_and_config(s: Dict[str, Any], overrides: Dict[str, Any]) -> tuple:
    nx = int(overrides.get("nx", s["nx"]))
    ny = int(overrides.get("ny", s["ny"]))
    scale = float(s["scale"])
    grid = Grid(nx=nx, ny=ny, dx=TWO_PI * scale / nx, dy=TWO_PI * scale / ny)
    config = SWEConfig(
        g=float(s["g"]),
        f=float(overrides.get("f", s["f"])),
        H=float(s["H"]),
        momentum_advection=bool(s.get("momentum_advection", True)),
        linear_mass_flux=bool(s.get("linear_mass_flux", False)),
    )
    return grid, config


def _dimensionless(grid: Grid, location: str, scale: float):
    X, Y = grid.coords(location)
    return X / scale, Y / scale


def _rest(s, grid, config, overrides):
    return SWEState.at_rest(grid, config)


def _qlw(s, grid, config, overrides):
    x, y = _dimensionless(grid, "center", float(s["scale"]))
    x0, y0 = s["center"]
    bump = np.exp(-float(s["decay"]) * (_wrap(x - x0) ** 2 + _wrap(y - y0) ** 2))
    h = config.H + float(s["amplitude"]) * bump
    return SWEState(h=h, u=np.zeros(grid.shape), v=np.zeros(grid.shape))


def jet_profile(grid: Grid, scale: float, u_max: float, width: float, centers: Sequence[float]) -> np.ndarray:
    """Doble chorro zonal de signos opuestos en los puntos u, con media nula."""
    _, y = _dimensionless(grid, "u", scale)
    y1, y2 = centers
    U = u_max * (np.exp(-(_wrap(y - y1) / width) ** 2) - np.exp(-(_wrap(y - y2) / width) ** 2))
    return U - np.mean(U)


def _jet(s, grid, config, overrides):
    scale = float(s["scale"])
    u = jet_profile(grid, scale, float(s["u_max"]), float(s["width"]), s["centers"])
    state = balanced_ic((u, np.zeros(grid.shape)), config, grid)
    if overrides.get("perturb", True):
        x, y = _dimensionless(grid, "center", scale)
        xc, yc = s["perturbation_center"]
        state.h = state.h + float(s["perturbation"]) * np.exp(
            -float(s["perturbation_decay"]) * (_wrap(x - xc) ** 2 + _wrap(y - yc) ** 2)
        )
    return state


def fourier_mode_state(grid: Grid, config: SWEConfig, mx: int, my: int, w_hat) -> SWEState:
    """
    Campos reales Re(ŵ e^{i(kx+ℓy)}) en sus posiciones escalonadas.

    ŵ = (û, v̂, η̃) con η̃ = η·√(g/H), la escala en la que el modo es comparable con G.
    """
    u_hat, v_hat, eta_hat = (complex(c) for c in w_hat)
    k = TWO_PI * mx / (grid.nx * grid.dx)
    l = TWO_PI * my / (grid.ny * grid.dy)

    def wave(location: str, amplitude: complex) -> np.ndarray:
        X, Y = grid.coords(location)
        return np.real(amplitude * np.exp(1j * (k * X + l * Y)))

    eta_scale = math.sqrt(config.H / config.g)
    return SWEState(
        h=config.H + wave("center", eta_hat * eta_scale),
        u=wave("u", u_hat),
        v=wave("v", v_hat),
    )


def mode_params(grid: Grid, config: SWEConfig, mx: int, my: int, dt: float) -> LinearWaveParams:
    """Parámetros adimensionales del modo (mx, my) para un paso dt."""
    if not math.isclose(grid.dx, grid.dy, rel_tol=1e-12):
        raise DomainError("mode analysis assumes dx = dy")
    return LinearWaveParams(
        nu=config.wave_speed * dt / grid.dx,
        k_dx=TWO_PI * mx / grid.nx,
        l_dy=TWO_PI * my / grid.ny,
        dt_f=dt * config.f,
    )


def _mode(s, grid, config, overrides):
    mx = int(overrides.get("mx", s["mx"]))
    my = int(overrides.get("my", s["my"]))
    amplitude = float(s["amplitude"])
    w_hat = overrides.get("w_hat", (0.0, 0.0, amplitude))
    return fourier_mode_state(grid, config, mx, my, w_hat)


_BUILDERS: Dict[str, Callable] = {
    "rest": _rest,
    "qlw": _qlw,
    "jet": _jet,
    "mode": _mode,
}


def build_case(name: str, overrides: Optional[Dict[str, Any]] = None) -> Case:
    """
    Construye malla, configuración y estado inicial del caso `name`.

    :param name: Nombre del caso (rest, qlw, jet, mode).
    :param overrides: nx, ny, f y opciones específicas (mx, my, w_hat, perturb).
    :returns: Case listo para simular.
    """
    overrides = overrides or {}
    settings = _case_settings(name)
    if name not in _BUILDERS:
        raise DomainError(f"case '{name}' has no builder")
    grid, config = _grid_and_config(settings, overrides)
    state = _BUILDERS[name](settings, grid, config, overrides)
    logger.debug(f"Case '{name}' built on a {grid.nx}x{grid.ny} grid")
    return Case(name=name, grid=grid, config=config, state=state,
                duration=float(settings["duration"]), settings=settings)
