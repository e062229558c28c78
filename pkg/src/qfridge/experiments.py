"""Experiment harness: named presets, config files, runners, CSV persistence.

Natural units throughout (hbar = k_B = 1): energies and temperatures share one
energy unit, times are inverse energies. Each runner maps to one CLI
subcommand / service endpoint; all tabular output is CSV with a fixed header,
non-finite values serialized as the tokens `inf` and `nan`.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .bath import BathSpec
from .dynamics import (
    Trajectory,
    evolve,
    initial_product_gibbs,
    slowest_rate,
    steady_state,
)
from .errors import ConfigError, SolverError
from .liouvillian import GeneratorMatrix, build_generator, channels_table, vec
from .observables import ThermoReadout, thermo_readout
from .operators import QUBITS, RefrigeratorSpec, build_hamiltonian, diagonalize

RUN_KINDS = ("evolve", "steady", "sweep-zeta", "min-temp-sweep", "currents", "cop")

DEFAULT_ZETA_GRID = (10.0, 20.0, 50.0, 100.0, 200.0, 400.0, 1000.0, 1e4, math.inf)
# Grid the current/COP comparisons are drawn for (finite entries vs harmonic).
CURRENTS_ZETA_GRID = (50.0, 100.0, math.inf)

EVOLVE_HEADER = (
    "t",
    "theta_c",
    "theta_h",
    "theta_w",
    "qdot_c",
    "qdot_h",
    "qdot_w",
    "cop",
    "coh_c",
    "coh_h",
    "coh_w",
)
SWEEP_HEADER = (
    "zeta",
    "theta_ss",
    "delta_theta",
    "theta_min",
    "min_at_steady",
    "qdot_c_ss",
    "qdot_w_ss",
    "cop_ss",
)
CURRENTS_HEADER = ("zeta", "t", "qdot_c", "qdot_h", "qdot_w")
COP_HEADER = ("zeta", "t", "cop")
CHANNELS_HEADER = ("alpha", "omega", "rate", "operator_norm")

# Steady-state detection: generator residual below this for 3 consecutive
# samples ends the run; the horizon is capped at 50 / slowest rate.
STEADY_RESIDUAL_ATOL = 1e-12
STEADY_CONSECUTIVE = 3
HORIZON_FACTOR = 50.0

# theta_min counts as "attained at steady state" when it matches the
# null-space value within this (relative to max(1, |theta_ss|)).
MIN_AT_STEADY_RTOL = 1e-6

# COP-crossing detection ignores curve differences below this fraction of the
# largest difference (the curves merge at steady state).
CROSSING_NOISE_FLOOR = 1e-3

_PRESET_TABLE = {
    # name: (g, {alpha: kappa coefficient in units of the qubit splitting})
    "transient-regime": (0.8, {"c": 1e-4, "h": 1e-5, "w": 1e-3}),
    "steady-regime": (0.1, {"c": 1e-4, "h": 1e-4, "w": 1e-4}),
}
PRESET_NAMES = tuple(_PRESET_TABLE)

_TEMPERATURES = {"c": 1.0, "h": 1.0, "w": 2.0}
_CUTOFF = 5000.0


@dataclass(frozen=True)
class ExperimentConfig:
    refrigerator: RefrigeratorSpec
    baths: Mapping[str, BathSpec]
    kind: str = "evolve"
    zeta_grid: tuple[float, ...] = DEFAULT_ZETA_GRID
    t_final: float | None = None
    grid_points: int = 800
    out: Path | None = None

    def __post_init__(self):
        if self.kind not in RUN_KINDS:
            raise ConfigError(f"unknown run kind {self.kind!r}, expected one of {RUN_KINDS}")
        missing = [a for a in QUBITS if a not in self.baths]
        if missing:
            raise ConfigError(f"missing baths for qubits {missing}")
        if not self.zeta_grid:
            raise ConfigError("zeta_grid must not be empty")
        for z in self.zeta_grid:
            if math.isnan(z) or z <= 0:
                raise ConfigError(f"zeta grid entries must be positive or inf, got {z!r}")
        if self.t_final is not None and not (math.isfinite(self.t_final) and self.t_final > 0):
            raise ConfigError(f"t_final must be positive, got {self.t_final!r}")
        if self.grid_points < 3:
            raise ConfigError(f"grid_points must be at least 3, got {self.grid_points}")

    def with_zeta(self, zeta: float) -> "ExperimentConfig":
        baths = {a: replace(b, zeta=zeta) for a, b in self.baths.items()}
        return replace(self, baths=baths)


def preset(name: str, *, zeta: float = math.inf, kind: str = "evolve", **overrides) -> ExperimentConfig:
    """Named parameter set. kappa coefficients scale with the qubit splitting
    (the couplings are quoted in units of the attached qubit's energy)."""
    if name not in _PRESET_TABLE:
        raise ConfigError(f"unknown preset {name!r}, expected one of {PRESET_NAMES}")
    g, coeffs = _PRESET_TABLE[name]
    spec = RefrigeratorSpec(omega_c=1.0, omega_h=2.0, omega_w=1.0, g=g)
    baths = {
        a: BathSpec(
            temperature=_TEMPERATURES[a],
            kappa=coeffs[a] * spec.omega(a),
            zeta=zeta,
            cutoff=_CUTOFF,
            omega0=spec.omega(a),
        )
        for a in QUBITS
    }
    return ExperimentConfig(refrigerator=spec, baths=baths, kind=kind, **overrides)


def preset_fingerprint(name: str) -> str:
    """sha256 over the canonical parameter listing, for pinning in docs."""
    config = preset(name)
    lines = [f"name={name}"]
    spec = config.refrigerator
    lines += [f"{k}={getattr(spec, k):.17g}" for k in ("omega_c", "omega_h", "omega_w", "g")]
    for a in QUBITS:
        b = config.baths[a]
        lines += [
            f"{a}.{k}={getattr(b, k):.17g}"
            for k in ("temperature", "kappa", "zeta", "cutoff", "omega0")
        ]
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


# ---------------------------------------------------------------------------
# Config files: one flat [experiment] section, keys documented in the README.
# ---------------------------------------------------------------------------

def load_config(path: str | Path) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file {path} not found or unreadable")
    if "experiment" not in parser:
        raise ConfigError(f"config file {path} has no [experiment] section")
    section = parser["experiment"]

    def need(key: str) -> float:
        if key not in section:
            raise ConfigError(f"config key {key!r} missing in {path}")
        try:
            return float(section[key])
        except ValueError as exc:
            raise ConfigError(f"config key {key!r} is not a number: {section[key]!r}") from exc

    def opt(key: str, default: float) -> float:
        if key not in section:
            return default
        try:
            return float(section[key])
        except ValueError as exc:
            raise ConfigError(f"config key {key!r} is not a number: {section[key]!r}") from exc

    try:
        spec = RefrigeratorSpec(
            omega_c=need("omega_c"), omega_h=need("omega_h"),
            omega_w=need("omega_w"), g=need("g"),
        )
        zeta = opt("zeta", math.inf)
        cutoff = opt("cutoff", _CUTOFF)
        baths = {
            a: BathSpec(
                temperature=need(f"temp_{a}"),
                kappa=need(f"kappa_{a}"),
                zeta=zeta,
                cutoff=cutoff,
                omega0=opt(f"omega0_{a}", spec.omega(a)),
            )
            for a in QUBITS
        }
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid parameters in {path}: {exc}") from exc

    kwargs = {}
    if "zeta_grid" in section:
        try:
            kwargs["zeta_grid"] = tuple(
                float(tok) for tok in section["zeta_grid"].split(",") if tok.strip()
            )
        except ValueError as exc:
            raise ConfigError(f"bad zeta_grid in {path}: {section['zeta_grid']!r}") from exc
    if "t_final" in section:
        kwargs["t_final"] = need("t_final")
    if "grid_points" in section:
        kwargs["grid_points"] = int(need("grid_points"))
    kind = section.get("kind", "evolve")
    return ExperimentConfig(refrigerator=spec, baths=baths, kind=kind, **kwargs)


def save_config(config: ExperimentConfig, path: str | Path) -> None:
    parser = configparser.ConfigParser()
    spec = config.refrigerator
    section = {
        "omega_c": repr(spec.omega_c),
        "omega_h": repr(spec.omega_h),
        "omega_w": repr(spec.omega_w),
        "g": repr(spec.g),
    }
    zetas = {b.zeta for b in config.baths.values()}
    cutoffs = {b.cutoff for b in config.baths.values()}
    if len(zetas) != 1 or len(cutoffs) != 1:
        raise ConfigError("config files hold one zeta and one cutoff shared by all baths")
    for a in QUBITS:
        b = config.baths[a]
        section[f"temp_{a}"] = repr(b.temperature)
        section[f"kappa_{a}"] = repr(b.kappa)
        section[f"omega0_{a}"] = repr(b.omega0)
    section["zeta"] = repr(zetas.pop())
    section["cutoff"] = repr(cutoffs.pop())
    section["kind"] = config.kind
    section["zeta_grid"] = ",".join(_fmt(z) for z in config.zeta_grid)
    if config.t_final is not None:
        section["t_final"] = repr(config.t_final)
    section["grid_points"] = str(config.grid_points)
    parser["experiment"] = section
    with open(path, "w") as fh:
        parser.write(fh)


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def build_generator_for(config: ExperimentConfig, zeta: float | None = None) -> GeneratorMatrix:
    cfg = config if zeta is None else config.with_zeta(zeta)
    spectrum = diagonalize(build_hamiltonian(cfg.refrigerator))
    return build_generator(spectrum, cfg.baths)


def steady_horizon(generator: GeneratorMatrix) -> float:
    return HORIZON_FACTOR / slowest_rate(generator)


def default_time_grid(t_final: float, points: int) -> np.ndarray:
    """t = 0 plus a log-spaced grid: transients and slow tails in one sweep."""
    lo = max(t_final * 1e-7, 1e-6)
    return np.concatenate([[0.0], np.geomspace(lo, t_final, points - 1)])


def _steady_stop(generator: GeneratorMatrix) -> Callable[[float, np.ndarray], bool]:
    matrix = np.asarray(generator.matrix)
    streak = [0]

    def stop(t: float, rho: np.ndarray) -> bool:
        residual = float(np.linalg.norm(matrix @ vec(rho)))
        streak[0] = streak[0] + 1 if residual < STEADY_RESIDUAL_ATOL else 0
        return streak[0] >= STEADY_CONSECUTIVE

    return stop


def _positivity_violations(trajectory: Trajectory, context: str) -> list[str]:
    out = []
    for t, rho in zip(trajectory.times, trajectory.states):
        lam = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
        if lam < -1e-10:
            out.append(f"{context}: state at t={t:.6g} has eigenvalue {lam:.3e} < -1e-10")
    return out


@dataclass
class EvolutionResult:
    zeta: float
    generator: GeneratorMatrix
    trajectory: Trajectory
    readouts: list[ThermoReadout]
    steady_detected: bool
    violations: list[str] = field(default_factory=list)


def run_evolution(config: ExperimentConfig) -> EvolutionResult:
    """Integrate the preset/config system and read out every sample."""
    gen = build_generator_for(config)
    zeta = next(iter(config.baths.values())).zeta
    t_final = config.t_final if config.t_final is not None else steady_horizon(gen)
    grid = default_time_grid(t_final, config.grid_points)
    rho0 = initial_product_gibbs(config.refrigerator, config.baths)
    try:
        trajectory = evolve(gen, rho0, t_final, grid, stop=_steady_stop(gen))
    except SolverError as exc:
        exc.diagnostics.setdefault("zeta", zeta)
        exc.diagnostics.setdefault("t_final", t_final)
        raise
    readouts = [thermo_readout(gen, config.refrigerator, rho) for rho in trajectory.states]
    return EvolutionResult(
        zeta=zeta,
        generator=gen,
        trajectory=trajectory,
        readouts=readouts,
        steady_detected=trajectory.stopped,
        violations=_positivity_violations(trajectory, f"zeta={_fmt(zeta)}"),
    )


@dataclass
class SweepPoint:
    zeta: float
    theta_ss: float
    delta_theta: float
    theta_min: float
    min_at_steady: bool | None
    qdot_c_ss: float
    qdot_w_ss: float
    cop_ss: float


@dataclass
class SweepResult:
    points: list[SweepPoint]
    failures: list[tuple[float, str]]
    violations: list[str] = field(default_factory=list)

    @property
    def monotone_delta_theta(self) -> bool:
        return not any("monotonicity" in v for v in self.violations)


def _refine_minimum(times: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Global minimum of a sampled curve, parabolically refined."""
    i = int(np.argmin(values))
    t_min, v_min = float(times[i]), float(values[i])
    if 0 < i < len(values) - 1:
        t0, t1, t2 = times[i - 1 : i + 2]
        y0, y1, y2 = values[i - 1 : i + 2]
        denom = (t0 - t1) * (t0 - t2) * (t1 - t2)
        if denom != 0.0:
            a = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / denom
            b = (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / denom
            if a > 0:
                tv = -b / (2 * a)
                if t0 < tv < t2:
                    c = (
                        t1 * t2 * (t1 - t2) * y0
                        + t2 * t0 * (t2 - t0) * y1
                        + t0 * t1 * (t0 - t1) * y2
                    ) / denom
                    t_min, v_min = float(tv), float(a * tv * tv + b * tv + c)
    return t_min, v_min


def _sweep(config: ExperimentConfig, worker: Callable[[float], SweepPoint]) -> SweepResult:
    """Run one worker per grid zeta on a bounded pool, keep grid order."""
    zetas = list(config.zeta_grid)
    points: dict[int, SweepPoint] = {}
    failures: list[tuple[float, str]] = []
    with ThreadPoolExecutor(max_workers=min(4, len(zetas))) as pool:
        futures = {i: pool.submit(worker, z) for i, z in enumerate(zetas)}
        for i, fut in futures.items():
            try:
                points[i] = fut.result()
            except Exception as exc:  # per-point failure; sweep continues
                failures.append((zetas[i], f"{type(exc).__name__}: {exc}"))
    ordered = [points[i] for i in sorted(points)]
    result = SweepResult(points=ordered, failures=failures)
    _check_sweep_invariants(config, result)
    return result


def _check_sweep_invariants(config: ExperimentConfig, result: SweepResult) -> None:
    pts = sorted(result.points, key=lambda p: p.zeta)
    for a, b in zip(pts, pts[1:]):
        if a.delta_theta > b.delta_theta + 1e-12:
            result.violations.append(
                "monotonicity: delta_theta decreases from zeta="
                f"{_fmt(a.zeta)} ({a.delta_theta:.6g}) to zeta={_fmt(b.zeta)} ({b.delta_theta:.6g})"
            )
    t_c = config.baths["c"].temperature
    for p in result.points:
        if abs(p.delta_theta - (p.theta_ss - t_c)) > 1e-12 * max(1.0, abs(p.theta_ss)):
            result.violations.append(f"delta_theta inconsistent at zeta={_fmt(p.zeta)}")


def run_zeta_sweep(config: ExperimentConfig) -> SweepResult:
    """Steady-state solve (null space) per grid zeta."""
    return _sweep(config, _steady_worker(config))


def run_steady(config: ExperimentConfig) -> SweepResult:
    """Single steady-state solve at the configured zeta, as a one-row sweep."""
    zeta = next(iter(config.baths.values())).zeta
    return _sweep(replace(config, zeta_grid=(zeta,)), _steady_worker(config))


def _steady_worker(config: ExperimentConfig):
    def worker(zeta: float) -> SweepPoint:
        gen = build_generator_for(config, zeta)
        readout = thermo_readout(gen, config.refrigerator, steady_state(gen))
        t_c = config.baths["c"].temperature
        return SweepPoint(
            zeta=zeta,
            theta_ss=readout.theta_c.value,
            delta_theta=readout.theta_c.value - t_c,
            theta_min=math.nan,
            min_at_steady=None,
            qdot_c_ss=readout.qdot_c,
            qdot_w_ss=readout.qdot_w,
            cop_ss=readout.cop,
        )

    return worker


def run_min_temp_sweep(config: ExperimentConfig) -> SweepResult:
    """Per-zeta trajectory minimum of theta_c plus the steady-state value.

    Each point integrates to steady-state detection (capped at the standard
    horizon), refines the sampled minimum parabolically, and flags whether the
    minimum is the steady value itself.
    """

    def worker(zeta: float) -> SweepPoint:
        sub = config.with_zeta(zeta)
        result = run_evolution(sub)
        theta = np.array([r.theta_c.value for r in result.readouts])
        finite = np.isfinite(theta)
        _, theta_min = _refine_minimum(result.trajectory.times[finite], theta[finite])
        readout = thermo_readout(
            result.generator, config.refrigerator, steady_state(result.generator)
        )
        t_c = config.baths["c"].temperature
        theta_ss = readout.theta_c.value
        return SweepPoint(
            zeta=zeta,
            theta_ss=theta_ss,
            delta_theta=theta_ss - t_c,
            theta_min=theta_min,
            min_at_steady=abs(theta_min - theta_ss) <= MIN_AT_STEADY_RTOL * max(1.0, abs(theta_ss)),
            qdot_c_ss=readout.qdot_c,
            qdot_w_ss=readout.qdot_w,
            cop_ss=readout.cop,
        )

    return _sweep(config, worker)


@dataclass
class CurrentsResult:
    times: np.ndarray
    zetas: list[float]
    qdots: dict[float, np.ndarray]  # per zeta: (n, 3) columns c, h, w
    cops: dict[float, np.ndarray]
    crossings: dict[float, tuple[float, int]]  # finite zeta: (first crossing t, sign changes)
    failures: list[tuple[float, str]]
    violations: list[str] = field(default_factory=list)


def find_cop_crossing(
    times: np.ndarray, cop_finite: np.ndarray, cop_harmonic: np.ndarray
) -> tuple[float, int]:
    """First time the finite-zeta COP curve crosses the harmonic one.

    Differences below CROSSING_NOISE_FLOOR of the largest difference are
    treated as merged and excluded from sign counting. Returns (nan, 0) when
    the curves never separate or never cross.
    """
    diff = np.asarray(cop_finite) - np.asarray(cop_harmonic)
    ok = np.isfinite(diff)
    diff, t = diff[ok], np.asarray(times)[ok]
    if diff.size == 0 or np.abs(diff).max() == 0.0:
        return math.nan, 0
    keep = np.abs(diff) > CROSSING_NOISE_FLOOR * np.abs(diff).max()
    d, tk = diff[keep], t[keep]
    if d.size < 2:
        return math.nan, 0
    flips = np.nonzero(np.diff(np.sign(d)) != 0)[0]
    if flips.size == 0:
        return math.nan, 0
    i = flips[0]
    t_cross = tk[i] + (tk[i + 1] - tk[i]) * abs(d[i]) / (abs(d[i]) + abs(d[i + 1]))
    return float(t_cross), int(flips.size)


def run_currents_and_cop(config: ExperimentConfig) -> CurrentsResult:
    """Heat-current and COP time series on one shared grid across zetas."""
    zetas = list(config.zeta_grid)
    gens: dict[float, GeneratorMatrix] = {}
    failures: list[tuple[float, str]] = []
    for z in zetas:
        try:
            gens[z] = build_generator_for(config, z)
        except Exception as exc:
            failures.append((z, f"{type(exc).__name__}: {exc}"))
    if not gens:
        return CurrentsResult(
            times=np.zeros(0), zetas=zetas, qdots={}, cops={}, crossings={}, failures=failures
        )
    t_final = config.t_final if config.t_final is not None else max(
        steady_horizon(g) for g in gens.values()
    )
    grid = default_time_grid(t_final, config.grid_points)
    rho0 = initial_product_gibbs(config.refrigerator, config.baths)

    qdots: dict[float, np.ndarray] = {}
    cops: dict[float, np.ndarray] = {}
    violations: list[str] = []

    def worker(z: float):
        gen = gens[z]
        trajectory = evolve(gen, rho0, t_final, grid)
        readouts = [thermo_readout(gen, config.refrigerator, rho) for rho in trajectory.states]
        q = np.array([[r.qdot_c, r.qdot_h, r.qdot_w] for r in readouts])
        c = np.array([r.cop for r in readouts])
        return q, c, _positivity_violations(trajectory, f"zeta={_fmt(z)}")

    with ThreadPoolExecutor(max_workers=min(4, len(gens))) as pool:
        futures = {z: pool.submit(worker, z) for z in gens}
        for z, fut in futures.items():
            try:
                q, c, viol = fut.result()
                qdots[z], cops[z] = q, c
                violations.extend(viol)
            except Exception as exc:
                failures.append((z, f"{type(exc).__name__}: {exc}"))

    crossings: dict[float, tuple[float, int]] = {}
    harmonic = cops.get(math.inf)
    if harmonic is not None:
        for z in sorted(c for c in cops if math.isfinite(c)):
            crossings[z] = find_cop_crossing(grid, cops[z], harmonic)
    return CurrentsResult(
        times=grid,
        zetas=[z for z in zetas if z in qdots],
        qdots=qdots,
        cops=cops,
        crossings=crossings,
        failures=failures,
        violations=violations,
    )


# ---------------------------------------------------------------------------
# CSV persistence
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    return "%.12g" % x


def _theta_token(theta) -> str:
    return _fmt(theta.value)


def evolution_rows(result: EvolutionResult) -> list[tuple]:
    rows = []
    for t, r in zip(result.trajectory.times, result.readouts):
        rows.append(
            (
                t,
                r.theta_c.value,
                r.theta_h.value,
                r.theta_w.value,
                r.qdot_c,
                r.qdot_h,
                r.qdot_w,
                r.cop,
                r.theta_c.coherence,
                r.theta_h.coherence,
                r.theta_w.coherence,
            )
        )
    return rows


def evolution_csv(result: EvolutionResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EVOLVE_HEADER)
    for row in evolution_rows(result):
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def sweep_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for p in result.points:
        writer.writerow(
            [
                _fmt(p.zeta),
                _fmt(p.theta_ss),
                _fmt(p.delta_theta),
                _fmt(p.theta_min),
                _fmt(p.min_at_steady),
                _fmt(p.qdot_c_ss),
                _fmt(p.qdot_w_ss),
                _fmt(p.cop_ss),
            ]
        )
    return buf.getvalue()


def currents_csv(result: CurrentsResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURRENTS_HEADER)
    for z in result.zetas:
        q = result.qdots[z]
        for t, (qc, qh, qw) in zip(result.times, q):
            writer.writerow([_fmt(z), _fmt(t), _fmt(qc), _fmt(qh), _fmt(qw)])
    return buf.getvalue()


def cop_csv(result: CurrentsResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COP_HEADER)
    for z in result.zetas:
        for t, c in zip(result.times, result.cops[z]):
            writer.writerow([_fmt(z), _fmt(t), _fmt(c)])
    return buf.getvalue()


def channels_csv(generator: GeneratorMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CHANNELS_HEADER)
    for row in channels_table(generator.channels):
        writer.writerow([row["alpha"], _fmt(row["omega"]), _fmt(row["rate"]), _fmt(row["operator_norm"])])
    return buf.getvalue()


def write_text(text: str, path: str | Path) -> None:
    Path(path).write_text(text)
