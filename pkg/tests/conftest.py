import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from src.core.utils import atomic_write
from src.optimizer.table1 import TABLE1
from src.swe.grid import Grid, SWEConfig
from src.vn.types import FBWeights, LinearWaveParams

C1_OPTIMUM = FBWeights(0.500, 0.500, 0.344)
C2_OPTIMUM = FBWeights(0.516, 0.532, 0.331)
ROBUST = FBWeights(0.531, 0.531, 0.313)
RK3_LIKE = FBWeights(0.0, 2.0 / 3.0, 0.0)

finite = dict(allow_nan=False, allow_infinity=False)

weights_st = st.builds(
    FBWeights,
    st.floats(-0.5, 1.5, **finite),
    st.floats(-0.5, 1.5, **finite),
    st.floats(-0.5, 1.5, **finite),
)

params_st = st.builds(
    LinearWaveParams,
    nu=st.floats(0.0, 4.0, **finite),
    k_dx=st.floats(0.0, math.pi, **finite),
    l_dy=st.floats(0.0, math.pi, **finite),
    dt_f=st.floats(0.0, 0.1, **finite),
    U=st.floats(-0.3, 0.3, **finite),
    V=st.floats(-0.3, 0.3, **finite),
)

complex_st = st.builds(complex, st.floats(-10, 10, **finite), st.floats(-10, 10, **finite))
state_st = st.tuples(complex_st, complex_st, complex_st)


@pytest.fixture
def zero_flow_template() -> LinearWaveParams:
    return LinearWaveParams.template(0.0)


@pytest.fixture(params=TABLE1, ids=lambda r: f"{r.kind.value}-U{r.froude}")
def table1_row(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_grid() -> Grid:
    return Grid(nx=8, ny=8, dx=1.0e5, dy=1.0e5)


@pytest.fixture
def linear_config() -> SWEConfig:
    return SWEConfig(H=500.0, f=1.0e-4, momentum_advection=False, linear_mass_flux=True)


FROZEN_VALUES = Path(__file__).parent / "data" / "frozen_values.json"


class FrozenValues:
    """
    Valores numéricos congelados en `tests/data/frozen_values.json`.

    Una clave ausente se graba con el valor observado en la primera ejecución;
    a partir de ahí cualquier deriva mayor que `rel` hace fallar el test.
    Para regenerar, borrar la clave del fichero.
    """

    def __init__(self, path: Path):
        self.path = path
        self.values = json.loads(path.read_text(encoding="utf-8")) if path.exists() else {}

    def check(self, key: str, value: float, rel: float = 1e-6) -> None:
        if key not in self.values:
            self.values[key] = float(value)
            atomic_write(self.path, json.dumps(self.values, indent=2, sort_keys=True) + "\n")
            return
        assert value == pytest.approx(self.values[key], rel=rel), f"{key} drifted"


@pytest.fixture(scope="session")
def frozen() -> FrozenValues:
    return FrozenValues(FROZEN_VALUES)
