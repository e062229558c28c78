"""Command-line client for the experiment service.

Every subcommand builds one request and posts it to the HTTP API; by default
the app is mounted in-process (no server needed), `--server URL` targets a
running instance instead. CSV goes to --out or stdout; summaries go to stderr
so piped CSV stays clean.

Exit codes: 0 success, 2 configuration error, 3 solver/transport error,
4 result-invariant violation.
"""

from __future__ import annotations

import argparse
import asyncio
import math
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_INVARIANT = 4

_ENDPOINTS = {
    "evolve": "/evolve",
    "steady": "/steady",
    "sweep-zeta": "/sweep/zeta",
    "min-temp": "/sweep/min-temp",
    "currents": "/currents",
    "cop": "/currents",
}


def _token(x: float):
    # JSON has no inf; the service accepts the string token.
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _parse_zeta_grid(text: str) -> list:
    try:
        return [_token(float(tok)) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --zeta-grid {text!r}: {exc}") from exc


def _payload_from_args(args) -> dict:
    payload: dict = {}
    if args.config is not None:
        from .experiments import load_config

        config = load_config(args.config)
        spec = config.refrigerator
        payload["refrigerator"] = {
            "omega_c": spec.omega_c,
            "omega_h": spec.omega_h,
            "omega_w": spec.omega_w,
            "g": spec.g,
        }
        payload["baths"] = {
            a: {
                "temperature": b.temperature,
                "kappa": b.kappa,
                "zeta": _token(b.zeta),
                "cutoff": b.cutoff,
                "omega0": b.omega0,
            }
            for a, b in config.baths.items()
        }
        if config.t_final is not None:
            payload["t_final"] = config.t_final
        payload["zeta_grid"] = [_token(z) for z in config.zeta_grid]
        payload["grid_points"] = config.grid_points
    else:
        payload["preset"] = args.preset
    if args.zeta is not None:
        payload["zeta"] = _token(args.zeta)
    if args.zeta_grid is not None:
        payload["zeta_grid"] = _parse_zeta_grid(args.zeta_grid)
    if args.t_final is not None:
        payload["t_final"] = args.t_final
    if args.grid_points is not None:
        payload["grid_points"] = args.grid_points
    if getattr(args, "dump_channels", None):
        payload["include_channels"] = True
    return {k: v for k, v in payload.items() if v is not None}


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    async def go():
        if server is not None:
            async with httpx.AsyncClient(base_url=server, timeout=None) as client:
                response = await client.post(path, json=payload)
                return response.status_code, response.json()
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://qfridge.internal", timeout=None
        ) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(go())


def _emit_csv(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _error_exit(status: int, body: dict) -> int:
    detail = body.get("detail", body)
    if isinstance(detail, dict):
        kind = detail.get("kind", "config" if status < 500 else "solver")
        _note(f"{kind} error: {detail.get('message', detail)}")
    else:
        _note(f"error: {detail}")
    return EXIT_CONFIG if status in (400, 422) else EXIT_SOLVER


def _run_experiment(args) -> int:
    try:
        payload = _payload_from_args(args)
    except Exception as exc:
        _note(f"config error: {exc}")
        return EXIT_CONFIG
    try:
        status, body = _post(args.server, _ENDPOINTS[args.command], payload)
    except httpx.HTTPError as exc:
        _note(f"transport error: {exc}")
        return EXIT_SOLVER
    if status != 200:
        return _error_exit(status, body)

    if args.command == "evolve":
        _emit_csv(body["csv"], args.out)
        _note(
            f"samples={body['samples']} steady_detected={body['steady_detected']} "
            f"steps={body['accepted_steps']}+{body['rejected_steps']}rej "
            f"trace_drift={body['max_trace_drift']:.3e} "
            f"herm_drift={body['max_hermiticity_drift']:.3e}"
        )
    elif args.command in ("steady", "sweep-zeta", "min-temp"):
        _emit_csv(body["csv"], args.out)
        if not body.get("monotone_delta_theta", True):
            _note("warning: delta_theta monotonicity violated")
    elif args.command == "currents":
        _emit_csv(body["currents_csv"], args.out)
    elif args.command == "cop":
        _emit_csv(body["cop_csv"], args.out)
        for zeta, info in sorted(body.get("crossings", {}).items(), key=lambda kv: float(kv[0])):
            t = info.get("time")
            t_text = "never" if t is None else f"t={t:.6g}"
            _note(f"cop crossing vs harmonic at zeta={zeta}: {t_text} "
                  f"(sign changes: {info.get('sign_changes')})")

    if getattr(args, "dump_channels", None) and body.get("channels_csv"):
        Path(args.dump_channels).write_text(body["channels_csv"])

    for failure in body.get("failures", []):
        _note(f"point failure: {failure}")
    for violation in body.get("violations", []):
        _note(f"invariant violation: {violation}")
    if body.get("failures"):
        return EXIT_SOLVER
    if body.get("violations"):
        return EXIT_INVARIANT
    return EXIT_OK


def _serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfridge",
        description="Three-qubit absorption refrigerator experiments over HTTP or in-process.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--preset", help="named parameter set")
        source.add_argument("--config", help="experiment config file")
        p.add_argument("--zeta", type=float, help="anharmonicity (inf = harmonic)")
        p.add_argument("--zeta-grid", help="comma-separated zeta values, inf allowed")
        p.add_argument("--t-final", type=float, help="integration horizon")
        p.add_argument("--grid-points", type=int, default=None, help="output grid size")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--dump-channels", help="write jump-channel table CSV here")
        p.add_argument("--server", help="remote service URL (default: in-process)")
        p.set_defaults(func=_run_experiment)
        return p

    add_run("evolve", "time evolution with per-sample readouts")
    add_run("steady", "steady state at one zeta")
    add_run("sweep-zeta", "steady-state sweep over a zeta grid")
    add_run("min-temp", "minimum-temperature sweep over a zeta grid")
    add_run("currents", "heat-current time series across zetas")
    add_run("cop", "COP time series across zetas, with crossing times")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
