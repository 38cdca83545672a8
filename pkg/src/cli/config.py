"""
Configuración validada de cada comando del CLI.

Los valores vienen de `--config <json>` y se sobrescriben con los flags dados
explícitamente. Las claves desconocidas se rechazan.
"""

import json
from typing import Annotated, Any, Dict, List, Optional, Tuple, Type

from pydantic import AfterValidator, BaseModel, ConfigDict, Field

from src.core.errors import DomainError
from src.optimizer.models import CostKind
from src.swe.schemes import SchemeSpec


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    out: Optional[str] = Field(None, description="Fichero de salida; stdout si se omite.")
    seed: int = Field(0, description="Semilla; todos los comandos son reproducibles dada la semilla.")


def _check_scheme(value: str) -> str:
    SchemeSpec.parse(value)
    return value


SchemeText = Annotated[str, AfterValidator(_check_scheme)]


class NuMaxRun(RunConfig):
    beta: Tuple[float, float, float]
    froude: float = Field(0.0, ge=0.0, allow_inf_nan=False)
    tol: Optional[float] = Field(None, gt=0.0)


class OptimizeRun(RunConfig):
    cost: CostKind = CostKind.C1
    froude: float = Field(0.0, ge=0.0, allow_inf_nan=False)
    budget: int = Field(5000, ge=100)


class SpectrumRun(RunConfig):
    beta: Tuple[float, float, float]
    samples: int = Field(256, ge=2)
    svg: Optional[str] = None
    long: bool = False


class SimulateRun(RunConfig):
    case: str = "qlw"
    scheme: SchemeText = "ssprk3"
    dt: Optional[float] = Field(None, gt=0.0)
    steps: Optional[int] = Field(None, ge=0)
    duration: Optional[float] = Field(None, ge=0.0)
    nx: Optional[int] = Field(None, ge=4)
    ny: Optional[int] = Field(None, ge=4)
    format: str = Field("csv", pattern="^(csv|swep)$")


class CflRun(RunConfig):
    case: str = "qlw"
    scheme: List[SchemeText] = Field(default_factory=lambda: ["fbrk32:0.516,0.532,0.331"])
    ref: SchemeText = "ssprk3"
    duration: Optional[float] = Field(None, gt=0.0)
    dt_lo: Optional[float] = Field(None, gt=0.0)
    dt_hi: Optional[float] = Field(None, gt=0.0)
    rel_tol: Optional[float] = Field(None, gt=0.0)
    nx: Optional[int] = Field(None, ge=4)
    ny: Optional[int] = Field(None, ge=4)
    csv: Optional[str] = None


class ConvergeRun(RunConfig):
    case: str = "qlw"
    scheme: SchemeText = "fbrk32:0.531,0.531,0.313"
    dt: Optional[List[float]] = None
    reference_dt: Optional[float] = Field(None, gt=0.0)
    duration: Optional[float] = Field(None, gt=0.0)
    nx: Optional[int] = Field(None, ge=4)
    ny: Optional[int] = Field(None, ge=4)
    csv: Optional[str] = None


class LteRun(RunConfig):
    scheme: SchemeText = "fbrk32:0.531,0.531,0.313"
    dt: List[float] = Field(default_factory=lambda: [0.1, 0.05, 0.025, 0.0125])


class DiffRun(RunConfig):
    case: str = "jet"
    scheme_a: SchemeText = "ssprk3"
    dt_a: float = Field(..., gt=0.0)
    scheme_b: SchemeText = "fbrk32:0.531,0.531,0.313"
    dt_b: float = Field(..., gt=0.0)
    t_final: Optional[float] = Field(None, gt=0.0)
    nx: Optional[int] = Field(None, ge=4)
    ny: Optional[int] = Field(None, ge=4)


class Table1Run(RunConfig):
    tol: float = Field(0.02, gt=0.0)


def load_run_config(model: Type[RunConfig], path: Optional[str], flags: Dict[str, Any]) -> RunConfig:
    """
    Fusiona el JSON de `--config` con los flags no nulos y valida.

    :raises DomainError: Si el fichero no se puede leer o no es un objeto JSON.
    """
    data: Dict[str, Any] = {}
    if path:
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except OSError as e:
            raise DomainError(f"cannot read config file {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise DomainError(f"invalid JSON in config file {path}: {e}") from e
        if not isinstance(data, dict):
            raise DomainError(f"config file {path} must hold a JSON object, got {type(data).__name__}")
    data.update({k: v for k, v in flags.items() if v is not None})
    return model.model_validate(data)
