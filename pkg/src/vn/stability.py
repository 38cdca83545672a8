"""
νmax, funciones de coste C1/C2 y curvas de disipación/dispersión 1D.
"""

from __future__ import annotations

import math
from typing import Dict, Optional

import numpy as np
import pandas as pd
from scipy.integrate import simpson

from src.core.config import get_config
from src.core.errors import DomainError
from src.vn.amplification import amp_1d_batch, amplification_batch, analytic_G_batch
from src.vn.spectrum import spectral_radius_batch
from src.vn.types import FBWeights, LinearWaveParams, NuMaxResult


def _numerics(key: str) -> float:
    return float(get_config().get(f"numerics.{key}"))


def _radius(nus, template: LinearWaveParams, weights: FBWeights) -> np.ndarray:
    G, _ = amplification_batch(nus, template, weights)
    return spectral_radius_batch(G)


def stability_limit(
    weights: FBWeights,
    template: LinearWaveParams,
    tol: Optional[float] = None,
    eps: Optional[float] = None,
    scan_step: Optional[float] = None,
    scan_max: Optional[float] = None,
) -> NuMaxResult:
    """
    Mayor ν tal que ρ(G(ν')) ≤ 1 + ε para todo ν' del barrido en (0, ν].

    Barrido uniforme de (0, scan_max] y bisección en el primer intervalo inestable.

    :param weights: Pesos FB.
    :param template: Plantilla de parámetros (se ignora template.nu).
    :param tol: Tolerancia absoluta de la bisección.
    :param eps: Holgura de estabilidad sobre el círculo unidad.
    :param scan_step: Paso del barrido.
    :param scan_max: Extremo superior del barrido.
    :returns: NuMaxResult.
    """
    tol = _numerics("nu_max.tol") if tol is None else float(tol)
    eps = _numerics("stability.eps_stab") if eps is None else float(eps)
    scan_step = _numerics("nu_max.scan_step") if scan_step is None else float(scan_step)
    scan_max = _numerics("nu_max.scan_max") if scan_max is None else float(scan_max)
    if not (tol > 0 and scan_step > 0 and scan_max > 0):
        raise DomainError("tol, scan_step and scan_max must be positive")

    n_scan = int(round(scan_max / scan_step))
    nus = scan_step * np.arange(1, n_scan + 1)
    stable = _radius(nus, template, weights) <= 1.0 + eps
    evaluations = n_scan

    if stable.all():
        return NuMaxResult(value=float(nus[-1]), open_bracket=True, evaluations=evaluations)

    first_bad = int(np.argmin(stable))
    if first_bad == 0:
        return NuMaxResult(value=0.0, unstable=True, evaluations=evaluations)

    lo, hi = float(nus[first_bad - 1]), float(nus[first_bad])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        evaluations += 1
        if _radius([mid], template, weights)[0] <= 1.0 + eps:
            lo = mid
        else:
            hi = mid
    return NuMaxResult(value=lo, evaluations=evaluations)


def nu_max(weights: FBWeights, template: LinearWaveParams, tol: Optional[float] = None) -> float:
    """νmax como número; 0 si todos los ν probados son inestables."""
    return float(stability_limit(weights, template, tol=tol))


def cost_C1(weights: FBWeights, template: LinearWaveParams, tol: Optional[float] = None) -> float:
    """C1 = 1/νmax, o el valor centinela si νmax = 0."""
    value = nu_max(weights, template, tol=tol)
    if value <= 0.0:
        return _numerics("cost.sentinel")
    return 1.0 / value


def c2_integral(weights: FBWeights, template: LinearWaveParams, intervals: Optional[int] = None) -> float:
    """
    ∫ ‖G̃(ν) − G(ν)‖_F dν sobre [0, π/6] por Simpson compuesto.

    :raises DomainError: Con flujo medio no nulo o número de intervalos impar.
    """
    if template.has_mean_flow:
        raise DomainError("C2 is only defined for zero mean flow")
    intervals = int(_numerics("cost.c2_intervals")) if intervals is None else int(intervals)
    if intervals < 2 or intervals % 2:
        raise DomainError(f"Simpson quadrature needs an even number of intervals, got {intervals}")

    nodes = np.linspace(0.0, _numerics("cost.c2_upper"), intervals + 1)
    G, _ = amplification_batch(nodes, template, weights)
    G_exact = analytic_G_batch(nodes, template)
    integrand = np.linalg.norm(G_exact - G, ord="fro", axis=(-2, -1))
    return float(simpson(integrand, x=nodes))


def cost_C2(
    weights: FBWeights,
    template: LinearWaveParams,
    tol: Optional[float] = None,
    intervals: Optional[int] = None,
) -> float:
    """C2 = C1 + error integrado respecto de la evolución exacta en ν ∈ [0, π/6]."""
    if template.has_mean_flow:
        raise DomainError("C2 is only defined for zero mean flow")
    return cost_C1(weights, template, tol=tol) + c2_integral(weights, template, intervals=intervals)


def effective_cfl(nu_max_val: float, k_dx: float, n_stages: int) -> float:
    """CFL efectivo por etapa: νmax·kΔx / número de etapas."""
    if not (nu_max_val > 0 and k_dx > 0 and n_stages > 0):
        raise DomainError("effective_cfl inputs must be positive")
    return nu_max_val * k_dx / n_stages


def _eig2(M: np.ndarray) -> np.ndarray:
    half_tr = 0.5 * (M[:, 0, 0] + M[:, 1, 1])
    det = M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
    root = np.sqrt(half_tr * half_tr - det)
    return np.stack([half_tr + root, half_tr - root], axis=-1)


def dispersion_curve(weights: FBWeights, n_samples: int) -> pd.DataFrame:
    """
    Autovalores de amp_1d en n_samples puntos equiespaciados de K̃ν ∈ [0, π].

    Las dos ramas se ordenan por continuidad (emparejamiento con la muestra anterior).

    :returns: DataFrame con columnas ktilde_nu, lambda1, lambda2 (complejas).
    """
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples}")
    y = np.linspace(0.0, math.pi, n_samples)
    lam = _eig2(amp_1d_batch(y, weights))

    tracks = np.empty_like(lam)
    first = lam[0]
    tracks[0] = first if first[0].imag >= first[1].imag else first[::-1]
    for i in range(1, n_samples):
        a, b = lam[i]
        p1, p2 = tracks[i - 1]
        keep = abs(a - p1) + abs(b - p2)
        swap = abs(b - p1) + abs(a - p2)
        tracks[i] = (a, b) if keep <= swap else (b, a)

    return pd.DataFrame({"ktilde_nu": y, "lambda1": tracks[:, 0], "lambda2": tracks[:, 1]})


def dissipation_dispersion(weights: FBWeights, n_samples: int) -> pd.DataFrame:
    """
    Error de amplitud 1 − |λ| y de fase arg λ − K̃ν de la rama física (la de fase positiva).
    """
    curve = dispersion_curve(weights, n_samples)
    lam = np.where(np.angle(curve["lambda1"]) >= np.angle(curve["lambda2"]), curve["lambda1"], curve["lambda2"])
    return pd.DataFrame({
        "ktilde_nu": curve["ktilde_nu"],
        "amplitude_error": 1.0 - np.abs(lam),
        "phase_error": np.angle(lam) - curve["ktilde_nu"].to_numpy(),
    })


def lte_coefficients(weights: FBWeights) -> Dict[str, float]:
    """
    Coeficientes de (K̃ν)³ del error de un paso del sistema 1D.

    u: (β3 + 1)/6 − 1/6 multiplica ∂x³η; η: β2/4 − 1/6 multiplica ∂x³u.
    """
    _, b2, b3 = weights.as_tuple()
    return {"u": (b3 + 1.0) / 6.0 - 1.0 / 6.0, "eta": b2 / 4.0 - 1.0 / 6.0}
