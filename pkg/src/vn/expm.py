"""
Exponencial de matrices pequeñas (3x3) para la evolución exacta de referencia.

Para A anti-hermítica se usa la descomposición espectral de iA (hermítica);
si la descomposición no reconstruye iA o A no es anti-hermítica se cae a
Padé [6/6] con escalado y cuadrado.
"""

from __future__ import annotations

import numpy as np

from src.core.config import get_config
from src.core.errors import NumericalFailure
from src.core.logger import logger

# coeficientes de Padé [6/6] para exp
_PADE6 = np.array([1.0, 1.0 / 2.0, 5.0 / 44.0, 1.0 / 66.0, 1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0])


def _is_skew_hermitian(A: np.ndarray, rtol: float = 1e-14) -> bool:
    scale = max(np.max(np.abs(A)), 1.0)
    return bool(np.max(np.abs(A + np.conj(np.swapaxes(A, -1, -2)))) <= rtol * scale)


def expm_pade(A: np.ndarray) -> np.ndarray:
    """exp(A) por Padé [6/6] con escalado y cuadrado (una sola matriz)."""
    A = np.asarray(A, dtype=complex)
    theta = float(get_config().get("numerics.expm.pade_theta"))
    norm = np.linalg.norm(A, 1)
    squarings = 0
    if norm > theta:
        squarings = int(np.ceil(np.log2(norm / theta)))
    X = A / (2.0 ** squarings)

    I = np.eye(A.shape[0], dtype=complex)
    N = _PADE6[0] * I
    D = _PADE6[0] * I
    power = I
    for j in range(1, len(_PADE6)):
        power = power @ X
        N = N + _PADE6[j] * power
        D = D + ((-1) ** j) * _PADE6[j] * power
    E = np.linalg.solve(D, N)
    for _ in range(squarings):
        E = E @ E
    if not np.all(np.isfinite(E)):
        raise NumericalFailure("matrix exponential produced non-finite values")
    return E


def _eigh(H: np.ndarray):
    return np.linalg.eigh(H)


def _decomposition_residual(H: np.ndarray, w: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Residuo relativo de H ≈ V·diag(w)·Vᴴ más la pérdida de unitariedad de V, por matriz."""
    Vh = np.conj(np.swapaxes(V, -1, -2))
    rebuilt = (V * w[..., None, :]) @ Vh
    scale = np.linalg.norm(H, axis=(-2, -1)) + 1.0
    unitarity = np.linalg.norm(Vh @ V - np.eye(V.shape[-1]), axis=(-2, -1))
    return np.linalg.norm(rebuilt - H, axis=(-2, -1)) / scale + unitarity


def expm_skew_hermitian(A: np.ndarray) -> np.ndarray:
    """
    exp(A) para una pila (..., n, n) de matrices anti-hermíticas vía eigh de iA.

    Las matrices cuya descomposición no reconstruye iA dentro de
    `numerics.expm.residual_tol` se recalculan con Padé.
    """
    A = np.asarray(A, dtype=complex)
    H = 1j * A
    H = 0.5 * (H + np.conj(np.swapaxes(H, -1, -2)))
    w, V = _eigh(H)
    E = (V * np.exp(-1j * w)[..., None, :]) @ np.conj(np.swapaxes(V, -1, -2))

    tol = float(get_config().get("numerics.expm.residual_tol"))
    residual = np.atleast_1d(_decomposition_residual(H, w, V))
    bad = ~(residual <= tol)
    if np.any(bad):
        logger.debug(f"expm: {int(bad.sum())} matrices fall back to Padé (max residual {np.nanmax(residual):.2e})")
        flat_A = A.reshape(-1, *A.shape[-2:])
        flat_E = E.reshape(-1, *E.shape[-2:]).copy()
        for idx in np.flatnonzero(bad.reshape(-1)):
            flat_E[idx] = expm_pade(flat_A[idx])
        E = flat_E.reshape(E.shape)
    return E


def expm(A: np.ndarray) -> np.ndarray:
    """exp(A) para una matriz cuadrada; ruta espectral si A es anti-hermítica."""
    A = np.asarray(A, dtype=complex)
    if _is_skew_hermitian(A):
        return expm_skew_hermitian(A)
    return expm_pade(A)
