"""
Transcripción directa, línea a línea, de las tres etapas de FB-RK(3,2) aplicadas
a los coeficientes de Fourier de las SWE linealizadas.

Se mantiene separada del ensamblado matricial de `amplification` para que sirva
de oráculo independiente: G·w + b debe coincidir con `stage_eval(w)`.
"""

from __future__ import annotations

from typing import Dict, Tuple

from src.vn.types import FBWeights, LinearWaveParams


def stage_trace(w, params: LinearWaveParams, weights: FBWeights) -> Dict[str, complex]:
    """
    Evalúa las tres etapas y devuelve todos los valores intermedios.

    :param w: Estado (û, v̂, η̂) en ese orden.
    :param params: Parámetros adimensionales del modo.
    :param weights: Pesos FB.
    :returns: Diccionario con los valores de cada etapa (claves u_13, eta_s, ..., u_1, v_1, eta_1).
    """
    u, v, eta = (complex(x) for x in w)
    b1, b2, b3 = weights.as_tuple()

    Knu = params.K * params.nu
    Lnu = params.L * params.nu
    adv = 1j * (params.U * Knu + params.V * Lnu)
    phi = params.phi
    fV = params.dt_f * params.V
    fU = params.dt_f * params.U

    # etapa 1
    eta_13 = eta - (1.0 / 3.0) * (1j * Knu * u + 1j * Lnu * v + adv * eta)
    eta_s = b1 * eta_13 + (1.0 - b1) * eta
    u_13 = u + (1.0 / 3.0) * (fV + phi * v - adv * u - 1j * Knu * eta_s)
    v_13 = v + (1.0 / 3.0) * (-fU - phi * u - adv * v - 1j * Lnu * eta_s)

    # etapa 2
    eta_12 = eta - 0.5 * (1j * Knu * u_13 + 1j * Lnu * v_13 + adv * eta_13)
    eta_ss = b2 * eta_12 + (1.0 - b2) * eta
    u_12 = u + 0.5 * (fV + phi * v_13 - adv * u_13 - 1j * Knu * eta_ss)
    v_12 = v + 0.5 * (-fU - phi * u_13 - adv * v_13 - 1j * Lnu * eta_ss)

    # etapa 3
    eta_1 = eta - (1j * Knu * u_12 + 1j * Lnu * v_12 + adv * eta_12)
    eta_sss = b3 * eta_1 + (1.0 - 2.0 * b3) * eta_12 + b3 * eta
    u_1 = u + (fV + phi * v_12 - adv * u_12 - 1j * Knu * eta_sss)
    v_1 = v + (-fU - phi * u_12 - adv * v_12 - 1j * Lnu * eta_sss)

    return {
        "eta_13": eta_13, "eta_s": eta_s, "u_13": u_13, "v_13": v_13,
        "eta_12": eta_12, "eta_ss": eta_ss, "u_12": u_12, "v_12": v_12,
        "eta_1": eta_1, "eta_sss": eta_sss, "u_1": u_1, "v_1": v_1,
    }


def stage_eval(w, params: LinearWaveParams, weights: FBWeights) -> Tuple[complex, complex, complex]:
    """Un paso completo: devuelve (û, v̂, η̂)^{n+1}."""
    trace = stage_trace(w, params, weights)
    return trace["u_1"], trace["v_1"], trace["eta_1"]


def stage_eval_1d(w, ktilde_nu: float, weights: FBWeights) -> Tuple[complex, complex]:
    """Un paso de FB-RK(3,2) para el sistema de ondas 1D sobre (η̂, û)."""
    eta, u = (complex(x) for x in w)
    b1, b2, b3 = weights.as_tuple()
    a = 1j * ktilde_nu

    eta_13 = eta - a / 3.0 * u
    u_13 = u - a / 3.0 * (b1 * eta_13 + (1.0 - b1) * eta)

    eta_12 = eta - a / 2.0 * u_13
    u_12 = u - a / 2.0 * (b2 * eta_12 + (1.0 - b2) * eta)

    eta_1 = eta - a * u_12
    u_1 = u - a * (b3 * eta_1 + (1.0 - 2.0 * b3) * eta_12 + b3 * eta)
    return eta_1, u_1
