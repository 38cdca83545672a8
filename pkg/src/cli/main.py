"""
Punto de entrada `fbrk`.

Códigos de salida: 0 éxito, 1 fallo numérico (inestabilidad, no convergencia),
2 error de uso o de dominio.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Callable, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, TypeAdapter, ValidationError

from src.cli.config import (
    CflRun,
    ConvergeRun,
    DiffRun,
    LteRun,
    NuMaxRun,
    OptimizeRun,
    SimulateRun,
    SpectrumRun,
    Table1Run,
    load_run_config,
)
from src.cli.svg import eigenvalue_tracks_svg
from src.core.constants import EXIT_NUMERICAL_FAILURE, EXIT_OK, EXIT_USAGE
from src.core.errors import DomainError, NumericalFailure
from src.core.logger import logger, set_level
from src.core.utils import atomic_write
from src.harness import cfl_table, convergence_study, lte_slope, solution_diff
from src.harness.models import CFLTable, ConvergenceReport, DiffReport, LTEReport
from src.harness.tables import cfl_long, convergence_long, dispersion_long
from src.optimizer import CostSpec, OptimizationReport, Table1Verdict, evaluate_table1, optimize
from src.swe import io as swe_io
from src.swe.cases import build_case
from src.swe.io import SimulationFile
from src.swe.schemes import SchemeSpec
from src.swe.solver import ShallowWaterModel
from src.vn.stability import dispersion_curve, stability_limit
from src.vn.types import FBWeights, LinearWaveParams

SCHEMAS: Dict[str, Callable[[], dict]] = {
    "optimization": OptimizationReport.model_json_schema,
    "table1": lambda: TypeAdapter(List[Table1Verdict]).json_schema(),
    "cfl": CFLTable.model_json_schema,
    "convergence": ConvergenceReport.model_json_schema,
    "lte": LTEReport.model_json_schema,
    "diff": DiffReport.model_json_schema,
    "simulation": SimulationFile.model_json_schema,
}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        atomic_write(out, text)
        logger.info(f"Written {out}")
    else:
        sys.stdout.write(text)


def _frame_csv(df: pd.DataFrame) -> str:
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, float_format="%.17g")
    return buffer.getvalue()


def _dump(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def _case_overrides(run) -> dict:
    return {k: v for k, v in (("nx", run.nx), ("ny", run.ny)) if v is not None}


def cmd_numax(args) -> int:
    run = load_run_config(NuMaxRun, args.config, {"beta": args.beta, "froude": args.froude, "tol": args.tol, "out": args.out})
    result = stability_limit(FBWeights(*run.beta), LinearWaveParams.template(run.froude), tol=run.tol)
    if result.unstable:
        logger.warning("Unstable at every tested Courant number")
    if result.open_bracket:
        logger.warning("No instability found up to the end of the scan")
    _emit(f"{result.value:.3f}\n", run.out)
    return EXIT_OK


def cmd_optimize(args) -> int:
    run = load_run_config(OptimizeRun, args.config, {
        "cost": args.cost, "froude": args.froude, "budget": args.budget, "seed": args.seed, "out": args.out,
    })
    report = optimize(CostSpec(kind=run.cost, froude=run.froude), budget=run.budget, seed=run.seed)
    _emit(_dump(report), run.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    run = load_run_config(SpectrumRun, args.config, {
        "beta": args.beta, "samples": args.samples, "svg": args.svg, "long": args.long or None, "out": args.out,
    })
    curve = dispersion_curve(FBWeights(*run.beta), run.samples)
    if run.long:
        table = dispersion_long(curve)
    else:
        table = pd.DataFrame({"ktilde_nu": curve["ktilde_nu"]})
        for track in ("lambda1", "lambda2"):
            lam = curve[track].to_numpy()
            table[f"re_{track}"] = lam.real
            table[f"im_{track}"] = lam.imag
            table[f"abs_{track}"] = abs(lam)
    _emit(_frame_csv(table), run.out)
    if run.svg:
        atomic_write(run.svg, eigenvalue_tracks_svg(curve))
    return EXIT_OK


def cmd_simulate(args) -> int:
    run = load_run_config(SimulateRun, args.config, {
        "case": args.case, "scheme": args.scheme, "dt": args.dt, "steps": args.steps,
        "duration": args.duration, "nx": args.nx, "ny": args.ny, "format": args.format, "out": args.out,
    })
    case = build_case(run.case, _case_overrides(run))
    model = ShallowWaterModel(case.grid, case.config)
    dt = run.dt if run.dt is not None else float(case.settings["cfl"]["dt_lo"])
    scheme = SchemeSpec.parse(run.scheme)
    if run.steps is not None:
        final = model.run(case.state, scheme, dt, n_steps=run.steps)
    else:
        final = model.run(case.state, scheme, dt, t_final=run.duration if run.duration is not None else case.duration)

    if run.out:
        writer = swe_io.write_binary if run.format == "swep" else swe_io.write_csv
        writer(final, run.out)
    mass0 = model.diagnostics(case.state)[0]
    summary = {"case": case.name, "scheme": str(scheme), "t": final.t, "unstable": final.unstable, "initial_mass": mass0}
    if not final.unstable:
        mass, energy, zeta = model.diagnostics(final)
        summary.update({"mass": mass, "energy": energy, "max_abs_vorticity": zeta})
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_NUMERICAL_FAILURE if final.unstable else EXIT_OK


def cmd_cfl(args) -> int:
    run = load_run_config(CflRun, args.config, {
        "case": args.case, "scheme": args.scheme, "ref": args.ref, "duration": args.duration, "dt_lo": args.dt_lo,
        "dt_hi": args.dt_hi, "rel_tol": args.rel_tol, "nx": args.nx, "ny": args.ny, "csv": args.csv, "out": args.out,
    })
    case = build_case(run.case, _case_overrides(run))
    table = cfl_table(
        case,
        [SchemeSpec.parse(s) for s in run.scheme],
        reference=SchemeSpec.parse(run.ref),
        duration=run.duration,
        dt_lo=run.dt_lo,
        dt_hi=run.dt_hi,
        rel_tol=run.rel_tol,
    )
    _emit(_dump(table), run.out)
    if run.csv:
        atomic_write(run.csv, _frame_csv(cfl_long(table)))
    return EXIT_OK


def cmd_converge(args) -> int:
    run = load_run_config(ConvergeRun, args.config, {
        "case": args.case, "scheme": args.scheme, "dt": args.dt, "reference_dt": args.reference_dt,
        "duration": args.duration, "nx": args.nx, "ny": args.ny, "csv": args.csv, "out": args.out,
    })
    case = build_case(run.case, _case_overrides(run))
    report = convergence_study(case, SchemeSpec.parse(run.scheme), run.dt, run.reference_dt, run.duration)
    _emit(_dump(report), run.out)
    if run.csv:
        atomic_write(run.csv, _frame_csv(convergence_long(report)))
    return EXIT_OK


def cmd_table1(args) -> int:
    run = load_run_config(Table1Run, args.config, {"tol": args.tol, "out": args.out})
    verdicts = evaluate_table1(tol=run.tol)
    payload = TypeAdapter(List[Table1Verdict]).dump_json(verdicts, indent=2).decode() + "\n"
    _emit(payload, run.out)
    return EXIT_OK


def cmd_lte(args) -> int:
    run = load_run_config(LteRun, args.config, {"scheme": args.scheme, "dt": args.dt, "out": args.out})
    _emit(_dump(lte_slope(SchemeSpec.parse(run.scheme), run.dt)), run.out)
    return EXIT_OK


def cmd_diff(args) -> int:
    run = load_run_config(DiffRun, args.config, {
        "case": args.case, "scheme_a": args.scheme_a, "dt_a": args.dt_a, "scheme_b": args.scheme_b,
        "dt_b": args.dt_b, "t_final": args.t_final, "nx": args.nx, "ny": args.ny, "out": args.out,
    })
    case = build_case(run.case, _case_overrides(run))
    report = solution_diff(case, SchemeSpec.parse(run.scheme_a), run.dt_a,
                           SchemeSpec.parse(run.scheme_b), run.dt_b, run.t_final)
    _emit(_dump(report), run.out)
    return EXIT_OK


def cmd_schema(args) -> int:
    _emit(json.dumps(SCHEMAS[args.name](), indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON con los parámetros del comando")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", help="fichero de salida (escritura atómica)")
    common.add_argument("-v", "--verbose", action="store_true", help="log a nivel DEBUG")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--case")
    grid.add_argument("--nx", type=int)
    grid.add_argument("--ny", type=int)

    parser = argparse.ArgumentParser(prog="fbrk", description="FB-RK(3,2): análisis de von Neumann, optimización y verificación")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("numax", parents=[common], help="νmax de unos pesos FB")
    p.add_argument("--beta", type=float, nargs=3, metavar=("B1", "B2", "B3"))
    p.add_argument("--froude", type=float)
    p.add_argument("--tol", type=float)
    p.set_defaults(handler=cmd_numax)

    p = sub.add_parser("optimize", parents=[common], help="optimiza los pesos FB")
    p.add_argument("--cost", choices=["C1", "C2"])
    p.add_argument("--froude", type=float)
    p.add_argument("--budget", type=int)
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("spectrum", parents=[common], help="curvas de autovalores 1D (CSV y SVG opcional)")
    p.add_argument("--beta", type=float, nargs=3, metavar=("B1", "B2", "B3"))
    p.add_argument("--samples", type=int)
    p.add_argument("--svg")
    p.add_argument("--long", action="store_true", help="formato largo x, series, value")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("simulate", parents=[common, grid], help="integra un caso plano")
    p.add_argument("--scheme")
    p.add_argument("--dt", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--duration", type=float)
    p.add_argument("--format", choices=["csv", "swep"])
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("cfl", parents=[common, grid], help="mayor Δt estable frente a la referencia")
    p.add_argument("--scheme", action="append")
    p.add_argument("--ref")
    p.add_argument("--duration", type=float)
    p.add_argument("--dt-lo", type=float, dest="dt_lo")
    p.add_argument("--dt-hi", type=float, dest="dt_hi")
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_cfl)

    p = sub.add_parser("converge", parents=[common, grid], help="orden de convergencia temporal")
    p.add_argument("--scheme")
    p.add_argument("--dt", type=float, nargs="+")
    p.add_argument("--reference-dt", type=float, dest="reference_dt")
    p.add_argument("--duration", type=float)
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_converge)

    p = sub.add_parser("table1", parents=[common], help="νmax de los pesos publicados")
    p.add_argument("--tol", type=float)
    p.set_defaults(handler=cmd_table1)

    p = sub.add_parser("lte", parents=[common], help="pendiente del error de un paso en 1D")
    p.add_argument("--scheme")
    p.add_argument("--dt", type=float, nargs="+")
    p.set_defaults(handler=cmd_lte)

    p = sub.add_parser("diff", parents=[common, grid], help="diferencia entre dos soluciones")
    p.add_argument("--scheme-a", dest="scheme_a")
    p.add_argument("--dt-a", type=float, dest="dt_a")
    p.add_argument("--scheme-b", dest="scheme_b")
    p.add_argument("--dt-b", type=float, dest="dt_b")
    p.add_argument("--t-final", type=float, dest="t_final")
    p.set_defaults(handler=cmd_diff)

    p = sub.add_parser("schema", parents=[common], help="JSON schema de un informe")
    p.add_argument("name", choices=sorted(SCHEMAS))
    p.set_defaults(handler=cmd_schema)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.verbose:
        set_level("DEBUG")

    try:
        return args.handler(args)
    except (DomainError, ValidationError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except NumericalFailure as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_NUMERICAL_FAILURE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
