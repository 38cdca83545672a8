"""
Malla C de Arakawa doblemente periódica, configuración física y estado.

Los campos son arrays (nx, ny) indexados [i, j]:
  h[i, j] en el centro de la celda ((i+½)dx, (j+½)dy)
  u[i, j] en la arista oeste (i·dx, (j+½)dy)
  v[i, j] en la arista sur ((i+½)dx, j·dy)
  ζ[i, j] en la esquina (i·dx, j·dy)
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.errors import DomainError


class Grid(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    nx: int = Field(64, ge=4, description="Celdas en x.")
    ny: int = Field(64, ge=4, description="Celdas en y.")
    dx: float = Field(..., gt=0, allow_inf_nan=False, description="Ancho de celda en x (m).")
    dy: float = Field(..., gt=0, allow_inf_nan=False, description="Ancho de celda en y (m).")

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    def coords(self, location: str = "center") -> Tuple[np.ndarray, np.ndarray]:
        """Coordenadas (X, Y) de los puntos `center`, `u`, `v` o `corner` con indexing='ij'."""
        offsets = {"center": (0.5, 0.5), "u": (0.0, 0.5), "v": (0.5, 0.0), "corner": (0.0, 0.0)}
        if location not in offsets:
            raise DomainError(f"unknown grid location '{location}'")
        ox, oy = offsets[location]
        x = (np.arange(self.nx) + ox) * self.dx
        y = (np.arange(self.ny) + oy) * self.dy
        return np.meshgrid(x, y, indexing="ij")


class SWEConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    g: float = Field(9.80616, gt=0, allow_inf_nan=False, description="Gravedad (m/s²).")
    f: float = Field(1e-4, allow_inf_nan=False, description="Parámetro de Coriolis constante (1/s).")
    H: float = Field(..., gt=0, allow_inf_nan=False, description="Espesor en reposo (m).")
    zb: Union[float, List[List[float]]] = Field(0.0, description="Topografía en los centros (m): escalar o matriz nx×ny.")
    momentum_advection: bool = Field(True, description="False = modo cuasi-lineal (sin ζ ni K).")
    linear_mass_flux: bool = Field(False, description="Flujo de masa H·u en lugar de h·u.")

    @property
    def wave_speed(self) -> float:
        return float(np.sqrt(self.g * self.H))

    def bottom(self, grid: Grid) -> np.ndarray:
        zb = np.asarray(self.zb, dtype=float)
        if zb.ndim == 0:
            return np.full(grid.shape, float(zb))
        if zb.shape != grid.shape:
            raise DomainError(f"zb has shape {zb.shape}, expected {grid.shape}")
        return zb


@dataclass
class SWEState:
    h: np.ndarray
    u: np.ndarray
    v: np.ndarray
    t: float = 0.0
    unstable: bool = False

    def copy(self) -> "SWEState":
        return replace(self, h=self.h.copy(), u=self.u.copy(), v=self.v.copy())

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.h)) and np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v)))

    def shifted(self, di: int, dj: int) -> "SWEState":
        """Desplaza todos los campos di celdas en x y dj en y (periódico)."""
        roll = lambda a: np.roll(a, (di, dj), axis=(0, 1))  # noqa: E731
        return replace(self, h=roll(self.h), u=roll(self.u), v=roll(self.v))

    def validate(self, grid: Grid) -> None:
        for name in ("h", "u", "v"):
            arr = getattr(self, name)
            if arr.shape != grid.shape:
                raise DomainError(f"{name} has shape {arr.shape}, expected {grid.shape}")
        if not self.is_finite():
            raise DomainError("state contains non-finite values")
        if np.any(self.h <= 0):
            raise DomainError("thickness must be positive everywhere")

    @classmethod
    def at_rest(cls, grid: Grid, config: SWEConfig) -> "SWEState":
        return cls(h=np.full(grid.shape, config.H) - config.bottom(grid) + np.mean(config.bottom(grid)),
                   u=np.zeros(grid.shape), v=np.zeros(grid.shape))
