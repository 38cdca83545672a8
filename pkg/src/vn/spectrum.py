"""
Autovalores de matrices 3x3 complejas por Cardano sobre el polinomio característico.

Vectorizado sobre pilas (n, 3, 3): el barrido de νmax evalúa cientos de G a la vez.
Cada raíz se pule con un paso de Newton y los autovectores salen del vector nulo
(SVD) de G − λI.
"""

from __future__ import annotations

import numpy as np

from src.core.errors import DomainError, NumericalFailure
from src.vn.types import AmplificationSystem, SpectrumResult

_OMEGA = np.exp(2j * np.pi / 3.0)


def char_poly(G: np.ndarray):
    """Coeficientes (c2, c1, c0) de λ³ + c2λ² + c1λ + c0 = det(λI − G)."""
    G = np.asarray(G, dtype=complex)
    g = lambda i, j: G[..., i, j]  # noqa: E731
    trace = g(0, 0) + g(1, 1) + g(2, 2)
    minors = (
        g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)
        + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0)
        + g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)
    )
    det = (
        g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
        - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
        + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
    )
    return -trace, minors, -det


def cubic_roots(c2, c1, c0) -> np.ndarray:
    """
    Raíces de λ³ + c2λ² + c1λ + c0 (arrays complejos de igual forma).

    :returns: Array (..., 3) de raíces.
    """
    c2 = np.asarray(c2, dtype=complex)
    c1 = np.asarray(c1, dtype=complex)
    c0 = np.asarray(c0, dtype=complex)
    shift = -c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0

    disc = np.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    s_plus = -q / 2.0 + disc
    s_minus = -q / 2.0 - disc
    s = np.where(np.abs(s_plus) >= np.abs(s_minus), s_plus, s_minus)

    # s = 0 solo si p = q = 0: raíz triple
    zero = s == 0
    C = np.where(zero, 0.0, np.where(zero, 1.0, s) ** (1.0 / 3.0))

    roots = []
    with np.errstate(divide="ignore", invalid="ignore"):
        for k in range(3):
            Ck = C * _OMEGA ** k
            t = np.where(zero, 0.0, Ck - p / (3.0 * np.where(zero, 1.0, Ck)))
            roots.append(t + shift)
    roots = np.stack(roots, axis=-1)
    return _newton_polish(roots, c2[..., None], c1[..., None], c0[..., None])


def _newton_polish(r, c2, c1, c0):
    P = ((r + c2) * r + c1) * r + c0
    dP = (3.0 * r + 2.0 * c2) * r + c1
    with np.errstate(divide="ignore", invalid="ignore"):
        candidate = r - P / dP
    P_new = ((candidate + c2) * candidate + c1) * candidate + c0
    accept = np.isfinite(candidate) & (np.abs(dP) > 1e-300) & (np.abs(P_new) <= np.abs(P))
    return np.where(accept, candidate, r)


def eigenvalues(G: np.ndarray) -> np.ndarray:
    """Autovalores de una matriz 3x3 o de una pila (n, 3, 3)."""
    G = np.asarray(G, dtype=complex)
    if G.shape[-2:] != (3, 3):
        raise DomainError(f"expected 3x3 matrices, got shape {G.shape}")
    return cubic_roots(*char_poly(G))


def spectral_radius_batch(G: np.ndarray) -> np.ndarray:
    """ρ(G) para cada matriz de la pila; NaN si alguna entrada no es finita."""
    lam = eigenvalues(G)
    rho = np.max(np.abs(lam), axis=-1)
    bad = ~np.all(np.isfinite(np.asarray(G).reshape(*np.shape(G)[:-2], 9)), axis=-1)
    return np.where(bad, np.nan, rho)


def null_vector(M: np.ndarray) -> np.ndarray:
    """Vector unitario asociado al menor valor singular de M."""
    _, _, vh = np.linalg.svd(M)
    return np.conj(vh[-1])


def spectrum(system, with_vectors: bool = True) -> SpectrumResult:
    """
    Autovalores, radio espectral y (opcionalmente) autovectores de G.

    :param system: AmplificationSystem o matriz 3x3.
    :param with_vectors: Calcular también los autovectores.
    :returns: SpectrumResult.
    :raises NumericalFailure: Si G contiene valores no finitos.
    """
    G = system.G if isinstance(system, AmplificationSystem) else np.asarray(system, dtype=complex)
    if not np.all(np.isfinite(G)):
        raise NumericalFailure("amplification matrix has non-finite entries")
    lam = eigenvalues(G)
    vecs = None
    if with_vectors:
        I = np.eye(3)
        vecs = np.stack([null_vector(G - lam[j] * I) for j in range(3)], axis=1)
    return SpectrumResult(eigenvalues=lam, spectral_radius=float(np.max(np.abs(lam))), eigenvectors=vecs)
