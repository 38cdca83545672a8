"""
Instantáneas del estado y configuración de simulación.

  CSV     columnas field, i, j, value
  SWEP    cabecera de 16 bytes (b"SWEP", u32 nx, u32 ny, u32 nº de campos) y
          después h, u, v como float64 little-endian en orden de filas
  JSON    SimulationFile (malla + física), claves desconocidas rechazadas
"""

from __future__ import annotations

import io
import json
import struct
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from src.core.errors import DomainError
from src.core.utils import atomic_write
from src.swe.grid import Grid, SWEConfig, SWEState

_MAGIC = b"SWEP"
_HEADER = struct.Struct("<4sIII")
_FIELDS = ("h", "u", "v")


class SimulationFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    grid: Grid
    physics: SWEConfig


def state_to_frame(state: SWEState) -> pd.DataFrame:
    frames = []
    for name in _FIELDS:
        arr = getattr(state, name)
        i, j = np.indices(arr.shape)
        frames.append(pd.DataFrame({"field": name, "i": i.ravel(), "j": j.ravel(), "value": arr.ravel()}))
    return pd.concat(frames, ignore_index=True)


def write_csv(state: SWEState, path) -> Path:
    buffer = io.StringIO()
    state_to_frame(state).to_csv(buffer, index=False, float_format="%.17g")
    return atomic_write(path, buffer.getvalue())


def read_csv(path) -> SWEState:
    df = pd.read_csv(path)
    if list(df.columns) != ["field", "i", "j", "value"]:
        raise DomainError(f"unexpected CSV header {list(df.columns)}")
    nx, ny = int(df["i"].max()) + 1, int(df["j"].max()) + 1
    arrays = {}
    for name in _FIELDS:
        sub = df[df["field"] == name]
        arr = np.full((nx, ny), np.nan)
        arr[sub["i"].to_numpy(), sub["j"].to_numpy()] = sub["value"].to_numpy()
        arrays[name] = arr
    return SWEState(**arrays)


def encode_binary(state: SWEState) -> bytes:
    nx, ny = state.h.shape
    body = b"".join(np.ascontiguousarray(getattr(state, n), dtype="<f8").tobytes() for n in _FIELDS)
    return _HEADER.pack(_MAGIC, nx, ny, len(_FIELDS)) + body


def decode_binary(payload: bytes) -> SWEState:
    if len(payload) < _HEADER.size:
        raise DomainError("SWEP payload shorter than its header")
    magic, nx, ny, nfields = _HEADER.unpack_from(payload)
    if magic != _MAGIC:
        raise DomainError(f"bad magic {magic!r}")
    if nfields != len(_FIELDS):
        raise DomainError(f"expected {len(_FIELDS)} fields, got {nfields}")
    expected = _HEADER.size + 8 * nx * ny * nfields
    if len(payload) != expected:
        raise DomainError(f"SWEP payload has {len(payload)} bytes, expected {expected}")
    data = np.frombuffer(payload, dtype="<f8", offset=_HEADER.size).reshape(nfields, nx, ny)
    return SWEState(**{n: data[k].astype(float) for k, n in enumerate(_FIELDS)})


def write_binary(state: SWEState, path) -> Path:
    return atomic_write(path, encode_binary(state))


def read_binary(path) -> SWEState:
    return decode_binary(Path(path).read_bytes())


def read_simulation_config(path) -> SimulationFile:
    with open(path, "r", encoding="utf-8") as f:
        return SimulationFile.model_validate(json.load(f))
