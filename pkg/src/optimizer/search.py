"""
Búsqueda global sin derivadas de los pesos FB.

Siembra en una rejilla uniforme de la caja, se quedan las mejores semillas y
desde cada una se lanza un Nelder-Mead acotado. Los arranques son
independientes y pueden ir en paralelo; la fusión es determinista.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.optimize import Bounds, minimize

from src.core.config import get_config
from src.core.constants import FBRK_THREADS
from src.core.errors import DomainError
from src.core.logger import logger
from src.optimizer.models import CostSpec, OptimizationReport, TraceEntry
from src.vn.stability import stability_limit
from src.vn.types import FBWeights


class _BudgetExhausted(Exception):
    pass


@dataclass
class _StartResult:
    weights: Tuple[float, float, float]
    cost: float
    evaluations: int
    improvements: List[Tuple[Tuple[float, float, float], float]] = field(default_factory=list)


def _opt(key: str):
    return get_config().get(f"numerics.optimizer.{key}")


def _key(weights, cost) -> tuple:
    return (cost, tuple(weights))


def _seed_grid(lower: np.ndarray, upper: np.ndarray, points: int) -> List[Tuple[float, float, float]]:
    axes = [np.unique(np.linspace(lo, hi, points)) for lo, hi in zip(lower, upper)]
    return [tuple(float(x) for x in p) for p in itertools.product(*axes)]


def _initial_simplex(x0: np.ndarray, lower: np.ndarray, upper: np.ndarray, step: float) -> np.ndarray:
    simplex = [x0.copy()]
    for j in range(3):
        vertex = x0.copy()
        if x0[j] + step <= upper[j]:
            vertex[j] += step
        else:
            vertex[j] = max(lower[j], x0[j] - step)
        simplex.append(vertex)
    return np.array(simplex)


def _run_start(spec: CostSpec, x0, lower, upper, step: float, max_evals: int, tol: float) -> _StartResult:
    state = {"evals": 0, "best": (tuple(x0), np.inf)}
    improvements = []

    def objective(x):
        if state["evals"] >= max_evals:
            raise _BudgetExhausted
        w = tuple(float(v) for v in np.clip(x, lower, upper))
        c = spec.cost(FBWeights(*w), tol=tol)
        state["evals"] += 1
        if c < state["best"][1]:
            state["best"] = (w, c)
            improvements.append((w, c))
        return c

    if max_evals > 0:
        try:
            minimize(
                objective,
                np.asarray(x0, dtype=float),
                method="Nelder-Mead",
                bounds=Bounds(lower, upper),
                options={
                    "initial_simplex": _initial_simplex(np.asarray(x0, dtype=float), lower, upper, step),
                    "xatol": float(_opt("xatol")),
                    "fatol": np.inf,
                    "maxfev": max_evals,
                },
            )
        except _BudgetExhausted:
            pass

    w, c = state["best"]
    return _StartResult(weights=w, cost=c, evaluations=state["evals"], improvements=improvements)


def optimize(spec: CostSpec, budget: int, seed: int) -> OptimizationReport:
    """
    Minimiza el coste de `spec` sobre la caja de búsqueda con un presupuesto de evaluaciones.

    :param spec: Coste y caja.
    :param budget: Número máximo de evaluaciones de coste.
    :param seed: Semilla del tamaño de los símplex iniciales.
    :returns: OptimizationReport (determinista dado spec, budget y seed).
    :raises DomainError: Si budget es menor que el mínimo configurado.
    """
    min_budget = int(_opt("min_budget"))
    if budget < min_budget:
        raise DomainError(f"budget must be >= {min_budget}, got {budget}")

    loose_tol = float(_opt("loose_tol"))
    final_tol = float(_opt("final_tol"))
    lower = np.asarray(spec.lower, dtype=float)
    upper = np.asarray(spec.upper, dtype=float)
    rng = np.random.default_rng(seed)

    seeds = _seed_grid(lower, upper, int(_opt("grid_points")))
    with ThreadPoolExecutor(max_workers=FBRK_THREADS) as pool:
        seed_costs = list(pool.map(lambda w: spec.cost(FBWeights(*w), tol=loose_tol), seeds))
    evaluations = len(seeds)
    ranked = sorted(zip(seeds, seed_costs), key=lambda wc: _key(*wc))
    best_seed = ranked[0]
    logger.info(f"Seeding done: {evaluations} points, best cost {best_seed[1]:.6g} at {best_seed[0]}")

    results: List[_StartResult] = []
    degenerate = bool(np.all(lower == upper))
    if not degenerate:
        starts = ranked[: int(_opt("keep_best"))]
        per_start = max(0, (budget - evaluations) // len(starts))
        base_step = float(_opt("initial_step"))
        steps = base_step * (1.0 + 0.1 * rng.uniform(size=len(starts)))
        with ThreadPoolExecutor(max_workers=FBRK_THREADS) as pool:
            futures = [
                pool.submit(_run_start, spec, w, lower, upper, float(s), per_start, loose_tol)
                for (w, _), s in zip(starts, steps)
            ]
            results = [f.result() for f in futures]
        evaluations += sum(r.evaluations for r in results)

    trace = [TraceEntry(weights=best_seed[0], cost=best_seed[1])]
    for r in results:
        for w, c in r.improvements:
            if c < trace[-1].cost:
                trace.append(TraceEntry(weights=w, cost=c))

    candidates = [best_seed] + [(r.weights, r.cost) for r in results if np.isfinite(r.cost)]
    best_w, _ = min(candidates, key=lambda wc: _key(*wc))

    weights = FBWeights(*best_w)
    limit = stability_limit(weights, spec.template(), tol=final_tol)
    cost = spec.cost(weights, tol=final_tol)
    logger.info(f"Optimization {spec.kind.value} |U|={spec.froude}: weights {best_w}, nu_max {limit.value:.4f}, {evaluations} evaluations")

    return OptimizationReport(
        kind=spec.kind,
        froude=spec.froude,
        seed=seed,
        weights=best_w,
        nu_max=limit.value,
        cost=cost,
        evaluations=evaluations,
        starts=len(results),
        trace=trace,
        all_unstable=limit.unstable,
        open_bracket=limit.open_bracket,
    )
