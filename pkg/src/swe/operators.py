"""Stencils de la malla C periódica (ver la disposición en `src.swe.grid`)."""

import numpy as np


def ddx_center_to_u(a: np.ndarray, dx: float) -> np.ndarray:
    return (a - np.roll(a, 1, axis=0)) / dx


def ddy_center_to_v(a: np.ndarray, dy: float) -> np.ndarray:
    return (a - np.roll(a, 1, axis=1)) / dy


def divergence(fu: np.ndarray, fv: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Divergencia en los centros de un flujo con componentes en aristas u y v."""
    return (np.roll(fu, -1, axis=0) - fu) / dx + (np.roll(fv, -1, axis=1) - fv) / dy


def curl(u: np.ndarray, v: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Vorticidad relativa ζ = ∂x v − ∂y u en las esquinas."""
    return (v - np.roll(v, 1, axis=0)) / dx - (u - np.roll(u, 1, axis=1)) / dy


def laplacian(a: np.ndarray, dx: float, dy: float) -> np.ndarray:
    return divergence(ddx_center_to_u(a, dx), ddy_center_to_v(a, dy), dx, dy)


def v_at_u(v: np.ndarray) -> np.ndarray:
    """Media de las cuatro v más cercanas a cada punto u."""
    west = np.roll(v, 1, axis=0)
    return 0.25 * (v + west + np.roll(v, -1, axis=1) + np.roll(west, -1, axis=1))


def u_at_v(u: np.ndarray) -> np.ndarray:
    """Media de las cuatro u más cercanas a cada punto v."""
    east = np.roll(u, -1, axis=0)
    return 0.25 * (u + east + np.roll(u, 1, axis=1) + np.roll(east, 1, axis=1))


def corner_to_u(z: np.ndarray) -> np.ndarray:
    return 0.5 * (z + np.roll(z, -1, axis=1))


def corner_to_v(z: np.ndarray) -> np.ndarray:
    return 0.5 * (z + np.roll(z, -1, axis=0))


def center_to_u(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + np.roll(a, 1, axis=0))


def center_to_v(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + np.roll(a, 1, axis=1))


def kinetic_energy(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """K = ½|u|² en los centros promediando u² y v² de las aristas vecinas."""
    u2 = u * u
    v2 = v * v
    return 0.25 * (u2 + np.roll(u2, -1, axis=0) + v2 + np.roll(v2, -1, axis=1))
