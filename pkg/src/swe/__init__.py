from src.swe.balance import balanced_ic
from src.swe.cases import Case, build_case
from src.swe.grid import Grid, SWEConfig, SWEState
from src.swe.schemes import SchemeKind, SchemeSpec
from src.swe.solver import ShallowWaterModel, diagnostics, run, step, tendencies

__all__ = [
    "balanced_ic",
    "Case",
    "build_case",
    "Grid",
    "SWEConfig",
    "SWEState",
    "SchemeKind",
    "SchemeSpec",
    "ShallowWaterModel",
    "diagnostics",
    "run",
    "step",
    "tendencies",
]
