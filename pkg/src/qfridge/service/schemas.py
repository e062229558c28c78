"""Request/response models for the HTTP service.

JSON cannot carry non-finite floats, so fields that may be infinite (zeta,
grids) also accept the string token "inf"; responses ship tabular data as CSV
text inside the JSON envelope and use None where a float may be nan.
"""

from __future__ import annotations

import math
from typing import Annotated, Literal

from pydantic import BaseModel, BeforeValidator, Field, model_validator


def _parse_float_token(v):
    if isinstance(v, bool):
        raise ValueError("expected a number, got a boolean")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        return float(v)
    raise ValueError(f"expected a number or numeric string, got {type(v).__name__}")


FloatToken = Annotated[float, BeforeValidator(_parse_float_token)]


class RefrigeratorParams(BaseModel):
    omega_c: float = Field(gt=0)
    omega_h: float = Field(gt=0)
    omega_w: float = Field(gt=0)
    g: float = Field(ge=0)


class BathParams(BaseModel):
    temperature: float = Field(gt=0)
    kappa: float = Field(ge=0)
    zeta: FloatToken = Field(default=math.inf, gt=0)
    cutoff: float = Field(default=5000.0, gt=0)
    omega0: float | None = Field(default=None, gt=0)  # defaults to the qubit splitting


class ExperimentRequest(BaseModel):
    """One experiment. Either name a preset or give refrigerator + baths."""

    preset: str | None = None
    refrigerator: RefrigeratorParams | None = None
    baths: dict[Literal["c", "h", "w"], BathParams] | None = None
    zeta: FloatToken | None = Field(default=None, gt=0)
    zeta_grid: list[FloatToken] | None = None
    t_final: FloatToken | None = Field(default=None, gt=0)
    grid_points: int = Field(default=800, ge=3)
    include_channels: bool = False

    @model_validator(mode="after")
    def _one_source(self):
        named = self.preset is not None
        explicit = self.refrigerator is not None or self.baths is not None
        if named and explicit:
            raise ValueError("give either a preset name or explicit parameters, not both")
        if not named and (self.refrigerator is None or self.baths is None):
            raise ValueError("explicit parameters need both refrigerator and baths")
        return self


class EvolveResponse(BaseModel):
    csv: str
    samples: int
    steady_detected: bool
    accepted_steps: int
    rejected_steps: int
    max_trace_drift: float
    max_hermiticity_drift: float
    violations: list[str] = []
    channels_csv: str | None = None


class SweepResponse(BaseModel):
    csv: str
    failures: list[str] = []
    violations: list[str] = []
    monotone_delta_theta: bool = True
    channels_csv: str | None = None


class CrossingInfo(BaseModel):
    time: float | None  # None when the curves never cross
    sign_changes: int


class CurrentsResponse(BaseModel):
    currents_csv: str
    cop_csv: str
    crossings: dict[str, CrossingInfo] = {}
    failures: list[str] = []
    violations: list[str] = []


class PresetInfo(BaseModel):
    name: str
    sha256: str


class HealthResponse(BaseModel):
    status: str
    version: str
