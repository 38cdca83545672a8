"""
Condición inicial equilibrada: espesor que anula la tendencia inicial del momento.

Tomando la divergencia de −(ζ+f)k×u − ∇(K + g(h+zb)) = 0 se obtiene
  L(h + zb) = −(1/g) D[(ζ+f)k×u + ∇K]
con L = D∇ el laplaciano discreto periódico. El núcleo (constantes) se fija
imponiendo mean(h) = H.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import cg

from src.core.config import get_config
from src.core.errors import ConvergenceError, DomainError, IncompatibilityError
from src.core.logger import logger
from src.swe import operators as op
from src.swe.grid import Grid, SWEConfig, SWEState
from src.swe.solver import ShallowWaterModel


def _periodic_second_difference(n: int, d: float) -> sp.csr_matrix:
    main = -2.0 * np.ones(n)
    off = np.ones(n - 1)
    D = sp.diags([off, main, off], [-1, 0, 1], format="lil")
    D[0, n - 1] = 1.0
    D[n - 1, 0] = 1.0
    return D.tocsr() / (d * d)


@lru_cache(maxsize=8)
def periodic_laplacian(grid: Grid) -> sp.csr_matrix:
    """Laplaciano de cinco puntos sobre el vector aplanado en orden C (índice i·ny + j)."""
    Lx = _periodic_second_difference(grid.nx, grid.dx)
    Ly = _periodic_second_difference(grid.ny, grid.dy)
    return (sp.kron(Lx, sp.identity(grid.ny)) + sp.kron(sp.identity(grid.nx), Ly)).tocsr()


def balance_rhs(u0: np.ndarray, v0: np.ndarray, config: SWEConfig, grid: Grid) -> np.ndarray:
    """Lado derecho −(1/g)·D[(ζ+f)k×u + ∇K] en los centros."""
    model = ShallowWaterModel(grid, config.model_copy(update={"zb": 0.0}))
    m = np.stack([u0, v0])
    # psi con h = 0 y sin topografía deja −(ζ+f)k×u − ∇K
    forcing = model.psi(m, np.zeros(grid.shape))
    return op.divergence(forcing[0], forcing[1], grid.dx, grid.dy) / config.g


def balanced_ic(u0, config: SWEConfig, grid: Grid) -> SWEState:
    """
    Resuelve el espesor equilibrado para el campo de velocidades u0 = (u, v).

    :param u0: Par (u, v) en las aristas.
    :param config: Configuración física (g, f, H, zb, advección).
    :param grid: Malla.
    :returns: SWEState con h equilibrado y mean(h) = H.
    :raises IncompatibilityError: Si el lado derecho no tiene media nula.
    :raises ConvergenceError: Si el gradiente conjugado no converge.
    """
    u, v = (np.asarray(a, dtype=float) for a in u0)
    if u.shape != grid.shape or v.shape != grid.shape:
        raise DomainError(f"velocity fields must have shape {grid.shape}")
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise DomainError("velocity fields must be finite")

    cfg = get_config()
    rtol = float(cfg.get("numerics.elliptic.rtol"))
    max_iter = int(cfg.get("numerics.elliptic.max_iter"))
    compat_tol = float(cfg.get("numerics.elliptic.compat_tol"))
    residual_tol = float(cfg.get("numerics.elliptic.residual_tol"))

    rhs = balance_rhs(u, v, config, grid).ravel()
    scale = float(np.max(np.abs(rhs)))
    mean = float(np.mean(rhs))
    if abs(mean) > compat_tol * scale:
        raise IncompatibilityError(f"elliptic right-hand side has mean {mean:.3e} (max |rhs| {scale:.3e})")
    rhs = rhs - mean

    L = periodic_laplacian(grid)
    if scale == 0.0:
        s = np.zeros_like(rhs)
    else:
        s, info = cg(-L, -rhs, rtol=rtol, maxiter=max_iter)
        if info != 0:
            raise ConvergenceError(f"conjugate gradient did not converge (info={info})")
        residual = np.linalg.norm(L @ s - rhs) / np.linalg.norm(rhs)
        if residual > residual_tol:
            raise ConvergenceError(f"elliptic residual {residual:.3e} above {residual_tol:.1e}")
        logger.debug(f"Balanced IC solved, relative residual {residual:.3e}")

    h = s.reshape(grid.shape) - config.bottom(grid)
    h += config.H - np.mean(h)
    return SWEState(h=h, u=u.copy(), v=v.copy())
