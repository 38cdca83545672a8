"""
Ensamblado de la matriz de amplificación G y del vector b de FB-RK(3,2).

Las etapas se escriben en forma de operadores (fila de espesor T, bloque de
momento M, columna de presión P y forzamiento F) y se aplican de una vez sobre
el estado cero y los tres vectores canónicos, vectorizado sobre un array de
números de Courant.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from src.core.errors import DomainError
from src.vn.expm import expm, expm_skew_hermitian
from src.vn.types import AmplificationSystem, FBWeights, LinearWaveParams

# columnas: estado cero, e_u, e_v, e_eta
_PROBE_STATES = np.concatenate([np.zeros((3, 1)), np.eye(3)], axis=1).astype(complex)


def amplification_batch(nus, params: LinearWaveParams, weights: FBWeights) -> Tuple[np.ndarray, np.ndarray]:
    """
    Construye G y b para cada número de Courant de `nus`.

    :param nus: Array 1D de números de Courant (se ignora params.nu).
    :param params: Plantilla con kΔx, ℓΔy, Δt·f, U, V.
    :param weights: Pesos FB.
    :returns: Tupla (G, b) con formas (n, 3, 3) y (n, 3).
    """
    nus = np.atleast_1d(np.asarray(nus, dtype=float))
    if not np.all(np.isfinite(nus)):
        raise DomainError("Courant numbers must be finite")
    n = nus.shape[0]
    b1, b2, b3 = weights.as_tuple()

    Knu = params.K * nus
    Lnu = params.L * nus
    adv = 1j * (params.U * Knu + params.V * Lnu)
    phi = params.phi

    T = np.stack([-1j * Knu, -1j * Lnu, -adv], axis=-1)

    M = np.zeros((n, 2, 3), dtype=complex)
    M[:, 0, 0] = -adv
    M[:, 0, 1] = phi
    M[:, 1, 0] = -phi
    M[:, 1, 1] = -adv

    P = np.stack([-1j * Knu, -1j * Lnu], axis=-1)
    F = np.array([params.dt_f * params.V, -params.dt_f * params.U], dtype=complex)

    W0 = np.broadcast_to(_PROBE_STATES, (n, 3, 4))
    eta0 = W0[:, 2, :]

    def advance(c, W_prev, eta_avg_of):
        eta_new = eta0 + c * np.einsum("nk,nkm->nm", T, W_prev)
        eta_avg = eta_avg_of(eta_new)
        momentum = W0[:, :2, :] + c * (
            np.einsum("nik,nkm->nim", M, W_prev)
            + P[:, :, None] * eta_avg[:, None, :]
            + F[None, :, None]
        )
        return np.concatenate([momentum, eta_new[:, None, :]], axis=1)

    W1 = advance(1.0 / 3.0, W0, lambda e: b1 * e + (1.0 - b1) * eta0)
    W2 = advance(0.5, W1, lambda e: b2 * e + (1.0 - b2) * eta0)
    eta_half = W2[:, 2, :]
    W3 = advance(1.0, W2, lambda e: b3 * e + (1.0 - 2.0 * b3) * eta_half + b3 * eta0)

    b = W3[:, :, 0]
    G = W3[:, :, 1:] - b[:, :, None]
    return G, b


def build_amplification(params: LinearWaveParams, weights: FBWeights) -> AmplificationSystem:
    """
    Sistema afín de un paso de FB-RK(3,2) para el modo descrito por `params`.

    :param params: Parámetros adimensionales (ν incluido).
    :param weights: Pesos FB.
    :returns: AmplificationSystem con G (3x3) y b (3,).
    :raises DomainError: Si algún parámetro no es finito.
    """
    G, b = amplification_batch([params.nu], params, weights)
    return AmplificationSystem(G=G[0], b=b[0])


def iterate(system: AmplificationSystem, w0, n_steps: int) -> np.ndarray:
    """
    Estado tras n pasos: ŵⁿ = Gⁿŵ⁰ + (I − Gⁿ)(I − G)⁻¹b.

    Si I − G es singular se itera explícitamente.
    """
    if n_steps < 0:
        raise DomainError(f"n_steps must be >= 0, got {n_steps}")
    w0 = np.asarray(w0, dtype=complex)
    Gn = np.linalg.matrix_power(system.G, n_steps)
    if not np.any(system.b):
        return Gn @ w0

    I = np.eye(3)
    if np.linalg.cond(I - system.G) > 1e12:
        w = w0.copy()
        for _ in range(n_steps):
            w = system.apply(w)
        return w
    return Gn @ w0 + (I - Gn) @ np.linalg.solve(I - system.G, system.b)


def continuous_generator(dt: float, c: float, k: float, l: float, f: float) -> np.ndarray:
    """A·Δt del sistema continuo en espacio (flujo medio nulo)."""
    return dt * np.array([
        [0.0, f, -1j * c * k],
        [-f, 0.0, -1j * c * l],
        [-1j * c * k, -1j * c * l, 0.0],
    ], dtype=complex)


def analytic_G(params: LinearWaveParams, dt: float, c: float, k: float, l: float, f: float) -> np.ndarray:
    """
    Matriz de amplificación exacta G̃ = exp(AΔt).

    :param params: Solo se usa para comprobar que el flujo medio es nulo.
    :param dt: Paso de tiempo (s).
    :param c: Velocidad de las ondas de gravedad.
    :param k: Número de onda en x.
    :param l: Número de onda en y.
    :param f: Parámetro de Coriolis.
    :returns: Matriz unitaria 3x3.
    :raises DomainError: Con flujo medio no nulo o entradas no finitas.
    """
    for name, value in (("dt", dt), ("c", c), ("k", k), ("l", l), ("f", f)):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
    if params.has_mean_flow:
        raise DomainError("the analytic amplification matrix is only defined for zero mean flow")
    return expm(continuous_generator(dt, c, k, l, f))


def analytic_G_batch(nus, params: LinearWaveParams) -> np.ndarray:
    """
    G̃(ν) adimensional con c·k·Δt = kΔx·ν, c·ℓ·Δt = ℓΔy·ν y f·Δt = Δt·f fijo.

    :returns: Array (n, 3, 3).
    """
    if params.has_mean_flow:
        raise DomainError("the analytic amplification matrix is only defined for zero mean flow")
    nus = np.atleast_1d(np.asarray(nus, dtype=float))
    n = nus.shape[0]
    A = np.zeros((n, 3, 3), dtype=complex)
    A[:, 0, 1] = params.dt_f
    A[:, 1, 0] = -params.dt_f
    A[:, 0, 2] = A[:, 2, 0] = -1j * params.k_dx * nus
    A[:, 1, 2] = A[:, 2, 1] = -1j * params.l_dy * nus
    return expm_skew_hermitian(A)


def semi_discrete_exact(params: LinearWaveParams) -> np.ndarray:
    """
    Evolución exacta durante Δt del sistema semidiscreto (símbolos K, L y φ de la malla C).

    Es el límite al que G converge con orden 2 cuando ν → 0 con f fijo.
    """
    if params.has_mean_flow:
        raise DomainError("the semi-discrete exact step is only defined for zero mean flow")
    Knu = params.K * params.nu
    Lnu = params.L * params.nu
    A = np.array([
        [0.0, params.phi, -1j * Knu],
        [-params.phi, 0.0, -1j * Lnu],
        [-1j * Knu, -1j * Lnu, 0.0],
    ], dtype=complex)
    return expm(A)


def amp_1d_batch(ktilde_nu, weights: FBWeights) -> np.ndarray:
    """
    Matrices 2x2 de un paso del sistema de ondas 1D sobre (η̂, û), para un array de K̃ν.

    Cada etapa se expresa como combinación por filas de los coeficientes de (η̂ⁿ, ûⁿ).
    """
    y = np.atleast_1d(np.asarray(ktilde_nu, dtype=float))
    if np.any(y < 0) or not np.all(np.isfinite(y)):
        raise DomainError("ktilde_nu must be finite and >= 0")
    b1, b2, b3 = weights.as_tuple()
    a = (1j * y)[:, None]
    e_eta = np.array([1.0, 0.0], dtype=complex)[None, :]
    e_u = np.array([0.0, 1.0], dtype=complex)[None, :]

    eta_13 = e_eta - a / 3.0 * e_u
    u_13 = e_u - a / 3.0 * (b1 * eta_13 + (1.0 - b1) * e_eta)
    eta_12 = e_eta - a / 2.0 * u_13
    u_12 = e_u - a / 2.0 * (b2 * eta_12 + (1.0 - b2) * e_eta)
    eta_1 = e_eta - a * u_12
    u_1 = e_u - a * (b3 * eta_1 + (1.0 - 2.0 * b3) * eta_12 + b3 * e_eta)

    return np.stack([eta_1, u_1], axis=1)


def amp_1d(ktilde_nu: float, weights: FBWeights) -> np.ndarray:
    """Matriz 2x2 (η̂, û) → (η̂, û) de un paso de FB-RK(3,2) en 1D."""
    return amp_1d_batch([ktilde_nu], weights)[0]


def exact_1d(ktilde_nu: float) -> np.ndarray:
    """exp de [[0, −iK̃ν], [−iK̃ν, 0]]: evolución exacta del sistema 1D durante Δt."""
    y = float(ktilde_nu)
    return np.array([[math.cos(y), -1j * math.sin(y)], [-1j * math.sin(y), math.cos(y)]], dtype=complex)
