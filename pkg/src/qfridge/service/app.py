"""FastAPI app wrapping the experiment runners.

Error envelope: config problems answer 400 with detail {kind: "config"},
numerical failures 500 with detail {kind: "solver"}; request-shape problems
are FastAPI's usual 422.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..bath import BathSpec
from ..errors import ConfigError, SolverError
from ..experiments import (
    CURRENTS_ZETA_GRID,
    PRESET_NAMES,
    ExperimentConfig,
    channels_csv,
    cop_csv,
    currents_csv,
    evolution_csv,
    preset,
    preset_fingerprint,
    run_currents_and_cop,
    run_evolution,
    run_min_temp_sweep,
    run_steady,
    run_zeta_sweep,
    sweep_csv,
)
from ..operators import QUBITS, RefrigeratorSpec
from .schemas import (
    CrossingInfo,
    CurrentsResponse,
    EvolveResponse,
    ExperimentRequest,
    HealthResponse,
    PresetInfo,
    SweepResponse,
)


def _to_config(request: ExperimentRequest, kind: str, default_grid=None) -> ExperimentConfig:
    kwargs = {"kind": kind, "grid_points": request.grid_points}
    if request.t_final is not None:
        if math.isinf(request.t_final):
            raise ConfigError("t_final must be finite")
        kwargs["t_final"] = request.t_final
    if request.zeta_grid is not None:
        kwargs["zeta_grid"] = tuple(request.zeta_grid)
    elif default_grid is not None:
        kwargs["zeta_grid"] = tuple(default_grid)

    if request.preset is not None:
        config = preset(request.preset, zeta=request.zeta or math.inf, **kwargs)
    else:
        try:
            spec = RefrigeratorSpec(**request.refrigerator.model_dump())
            baths = {}
            for alpha in QUBITS:
                if alpha not in request.baths:
                    raise ConfigError(f"missing bath for qubit {alpha!r}")
                p = request.baths[alpha]
                baths[alpha] = BathSpec(
                    temperature=p.temperature,
                    kappa=p.kappa,
                    zeta=p.zeta,
                    cutoff=p.cutoff,
                    omega0=p.omega0 if p.omega0 is not None else spec.omega(alpha),
                )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        config = ExperimentConfig(refrigerator=spec, baths=baths, **kwargs)
        if request.zeta is not None:
            config = config.with_zeta(request.zeta)
    return config


def create_app() -> FastAPI:
    app = FastAPI(title="qfridge", version=__version__)

    @app.exception_handler(ConfigError)
    async def _config_error(_: Request, exc: ConfigError):
        return JSONResponse(
            status_code=400, content={"detail": {"kind": "config", "message": str(exc)}}
        )

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError):
        return JSONResponse(
            status_code=400, content={"detail": {"kind": "config", "message": str(exc)}}
        )

    @app.exception_handler(SolverError)
    async def _solver_error(_: Request, exc: SolverError):
        detail = {"kind": "solver", "message": str(exc)}
        if exc.diagnostics:
            detail["diagnostics"] = {
                k: (repr(v) if not isinstance(v, (int, str, bool)) else v)
                for k, v in exc.diagnostics.items()
            }
        return JSONResponse(status_code=500, content={"detail": detail})

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.get("/presets", response_model=list[PresetInfo])
    def presets():
        return [PresetInfo(name=n, sha256=preset_fingerprint(n)) for n in PRESET_NAMES]

    @app.post("/evolve", response_model=EvolveResponse)
    def evolve_endpoint(request: ExperimentRequest):
        config = _to_config(request, "evolve")
        result = run_evolution(config)
        return EvolveResponse(
            csv=evolution_csv(result),
            samples=len(result.readouts),
            steady_detected=result.steady_detected,
            accepted_steps=result.trajectory.accepted_steps,
            rejected_steps=result.trajectory.rejected_steps,
            max_trace_drift=result.trajectory.max_trace_drift,
            max_hermiticity_drift=result.trajectory.max_hermiticity_drift,
            violations=result.violations,
            channels_csv=channels_csv(result.generator) if request.include_channels else None,
        )

    def _sweep_response(config: ExperimentConfig, result, include_channels: bool) -> SweepResponse:
        channels = None
        if include_channels:
            from ..experiments import build_generator_for

            channels = channels_csv(build_generator_for(config))
        return SweepResponse(
            csv=sweep_csv(result),
            failures=[f"zeta={z}: {msg}" for z, msg in result.failures],
            violations=result.violations,
            monotone_delta_theta=result.monotone_delta_theta,
            channels_csv=channels,
        )

    @app.post("/steady", response_model=SweepResponse)
    def steady_endpoint(request: ExperimentRequest):
        config = _to_config(request, "steady")
        return _sweep_response(config, run_steady(config), request.include_channels)

    @app.post("/sweep/zeta", response_model=SweepResponse)
    def sweep_zeta_endpoint(request: ExperimentRequest):
        config = _to_config(request, "sweep-zeta")
        return _sweep_response(config, run_zeta_sweep(config), request.include_channels)

    @app.post("/sweep/min-temp", response_model=SweepResponse)
    def min_temp_endpoint(request: ExperimentRequest):
        config = _to_config(request, "min-temp-sweep")
        return _sweep_response(config, run_min_temp_sweep(config), request.include_channels)

    @app.post("/currents", response_model=CurrentsResponse)
    def currents_endpoint(request: ExperimentRequest):
        config = _to_config(request, "currents", default_grid=CURRENTS_ZETA_GRID)
        result = run_currents_and_cop(config)
        crossings = {
            ("%.12g" % z): CrossingInfo(
                time=None if math.isnan(t) else t, sign_changes=n
            )
            for z, (t, n) in result.crossings.items()
        }
        return CurrentsResponse(
            currents_csv=currents_csv(result),
            cop_csv=cop_csv(result),
            crossings=crossings,
            failures=[f"zeta={z}: {msg}" for z, msg in result.failures],
            violations=result.violations,
        )

    return app
