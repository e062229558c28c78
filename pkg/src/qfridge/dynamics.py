"""Time evolution and steady states of the refrigerator generator.

`evolve` integrates the master equation with an adaptive Dormand-Prince 4(5)
pair and cubic Hermite dense output. Because the secular jump operators are
eigenoperators of the Hamiltonian, the dissipative superoperator commutes with
the commutator superoperator; in the default `frame="interaction"` the stepper
integrates only the dissipative part in the Hamiltonian eigenbasis and the
unitary phases are restored analytically at each sample time. That removes
the Hamiltonian's oscillation-limited step size (the weak-coupling horizons
are ~ 1/kappa, many orders above 1/omega) without any approximation; the
commutation is checked at runtime. `frame="schrodinger"` integrates the full
generator directly with the same stepper for cross-validation on short
horizons.

Accepted steps re-Hermitize ((rho + rho^dag)/2) and renormalize the trace,
logging the drift each correction removes; drift beyond 1e-8 aborts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .bath import BathSpec
from .errors import DegenerateSteadyStateError, SolverError
from .liouvillian import (
    GeneratorMatrix,
    JumpChannel,
    dissipator_superoperator,
    unvec,
    vec,
)
from .operators import QUBITS, RefrigeratorSpec

# Dormand-Prince 4(5) tableau. The seventh stage equals the fifth-order
# solution (FSAL); _E is the difference between the fifth- and fourth-order
# weights, so h * sum(_E k) estimates the local error.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

MAX_TRACE_DRIFT = 1e-8
MAX_HERMITICITY_DRIFT = 1e-8


@dataclass
class Trajectory:
    """Sampled solution plus integrator diagnostics.

    states[i] is the density matrix (product basis) at times[i]. The drift
    fields are maxima over accepted steps of what the per-step correction
    removed; max_error_estimate is the largest accepted scaled local error
    (<= 1 by construction).
    """

    times: np.ndarray
    states: np.ndarray
    accepted_steps: int
    rejected_steps: int
    max_error_estimate: float
    max_trace_drift: float
    max_hermiticity_drift: float
    stopped: bool


def validate_density_matrix(
    rho: np.ndarray,
    *,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-10,
    eig_floor: float = -1e-10,
) -> None:
    """Raise ValueError unless rho is Hermitian, unit-trace, and positive."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > herm_tol:
        raise ValueError(f"density matrix is not Hermitian: max|rho - rho^dag| = {herm:.3e}")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {trace} is not 1 within {trace_tol:.1e}")
    lam_min = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if lam_min < eig_floor:
        raise ValueError(f"density matrix has negative eigenvalue {lam_min:.3e}")


def initial_product_gibbs(
    spec: RefrigeratorSpec, baths: Mapping[str, BathSpec]
) -> np.ndarray:
    """Product of single-qubit Gibbs states at each bath's temperature."""
    missing = [a for a in QUBITS if a not in baths]
    if missing:
        raise ValueError(f"missing baths for qubits {missing}")
    rho = np.ones((1, 1))
    for alpha in QUBITS:
        p1 = 1.0 / (1.0 + math.exp(spec.omega(alpha) / baths[alpha].temperature))
        rho = np.kron(rho, np.diag([1.0 - p1, p1]))
    return rho


def _rms(v: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.abs(v) ** 2)))


def _initial_step(g: np.ndarray, y0: np.ndarray, f0: np.ndarray, t_final: float,
                  rtol: float, atol: float) -> float:
    sc = atol + rtol * np.abs(y0)
    d0 = _rms(y0 / sc)
    d1 = _rms(f0 / sc)
    h0 = 0.01 * d0 / d1 if (d0 >= 1e-5 and d1 >= 1e-5) else 1e-6
    h0 = min(h0, t_final)
    f1 = g @ (y0 + h0 * f0)
    d2 = _rms((f1 - f0) / sc) / h0
    dm = max(d1, d2)
    h1 = (0.01 / dm) ** 0.2 if dm > 1e-15 else max(1e-6, h0 * 1e3)
    return min(100 * h0, h1, t_final)


def _hermite(theta: float, h: float, y0, f0, y1, f1):
    t2 = theta * theta
    t3 = t2 * theta
    return (
        (2 * t3 - 3 * t2 + 1) * y0
        + (t3 - 2 * t2 + theta) * h * f0
        + (-2 * t3 + 3 * t2) * y1
        + (t3 - t2) * h * f1
    )


def _correct(y: np.ndarray) -> tuple[np.ndarray, float, float]:
    # Hermitize and renormalize in matrix space; return what was removed.
    m = unvec(y)
    herm_drift = 0.5 * float(np.abs(m - m.conj().T).max())
    m = 0.5 * (m + m.conj().T)
    trace = float(np.trace(m).real)
    trace_drift = abs(trace - 1.0)
    return vec(m / trace), trace_drift, herm_drift


def _eigenbasis_channels(gen: GeneratorMatrix) -> tuple[JumpChannel, ...]:
    v = gen.spectrum.vectors
    return tuple(
        JumpChannel(
            alpha=ch.alpha,
            omega=ch.omega,
            rate=ch.rate,
            operator=v.conj().T @ ch.operator @ v,
        )
        for ch in gen.channels
    )


def evolve(
    generator: GeneratorMatrix,
    rho0: np.ndarray,
    t_final: float,
    t_eval: np.ndarray | None = None,
    *,
    rtol: float = 1e-9,
    atol: float = 1e-12,
    frame: str = "interaction",
    stop: Callable[[float, np.ndarray], bool] | None = None,
    max_steps: int = 5_000_000,
) -> Trajectory:
    """Integrate rho' = L(rho) from a valid initial state.

    Parameters
    ----------
    generator : GeneratorMatrix
        Output of `build_generator`.
    rho0 : ndarray
        Initial density matrix in the product basis (validated).
    t_final : float
        End of the integration window, > 0.
    t_eval : ndarray, optional
        Ascending sample times within [0, t_final]; defaults to 201 uniform
        points. Samples come from third-order dense output, so they do not
        constrain the step size.
    rtol, atol : float
        Local error tolerances (scaled rms norm).
    frame : str
        "interaction" (default, fast) or "schrodinger" (direct integration of
        the full generator).
    stop : callable, optional
        stop(t, rho) -> bool checked at every emitted sample; True truncates
        the trajectory after including that sample.
    max_steps : int
        Budget on accepted + rejected steps.

    Raises
    ------
    SolverError
        On step-size underflow (stiffness guard), step-budget exhaustion,
        drift beyond 1e-8, or a non-secular generator in interaction frame.
    """
    validate_density_matrix(rho0)
    if not (math.isfinite(t_final) and t_final > 0):
        raise ValueError(f"t_final must be positive and finite, got {t_final!r}")
    if t_eval is None:
        t_eval = np.linspace(0.0, t_final, 201)
    ts = np.asarray(t_eval, dtype=float)
    if ts.size and (np.any(np.diff(ts) < 0) or ts[0] < 0 or ts[-1] > t_final * (1 + 1e-12)):
        raise ValueError("t_eval must be ascending and within [0, t_final]")

    energies = generator.spectrum.energies
    v = generator.spectrum.vectors
    freq = np.subtract.outer(energies, energies)
    d_super = dissipator_superoperator(_eigenbasis_channels(generator))
    ham_diag = -1j * vec(freq)

    if frame == "interaction":
        # [H-part, dissipator] must vanish elementwise: (d_u - d_v) D_uv = 0.
        comm = np.abs(np.subtract.outer(ham_diag, ham_diag) * d_super).max()
        tol = 1e-8 * max(1.0, np.abs(ham_diag).max()) * max(np.abs(d_super).max(), 1e-300)
        if comm > tol:
            raise SolverError(
                "generator is not secular; interaction-frame integration is invalid, "
                'use frame="schrodinger"',
                diagnostics={"commutator_max": float(comm), "tolerance": float(tol)},
            )
        g = d_super
    elif frame == "schrodinger":
        g = np.diag(ham_diag) + d_super
    else:
        raise ValueError(f'frame must be "interaction" or "schrodinger", got {frame!r}')

    y = vec(v.conj().T @ np.asarray(rho0) @ v).astype(complex)
    if np.all(g.imag == 0) and np.all(y.imag == 0):
        g = np.ascontiguousarray(g.real)
        y = np.ascontiguousarray(y.real)

    def to_product(t: float, yv: np.ndarray) -> np.ndarray:
        m = unvec(yv).astype(complex)
        if frame == "interaction":
            m = m * np.exp(-1j * freq * t)
        return v @ m @ v.conj().T

    times_out: list[float] = []
    states_out: list[np.ndarray] = []
    stopped = False

    def emit(t: float, yv: np.ndarray) -> bool:
        rho = to_product(t, yv)
        times_out.append(t)
        states_out.append(rho)
        return not (stop is not None and stop(t, rho))

    idx = 0
    while idx < ts.size and ts[idx] <= 0.0:
        if not emit(float(ts[idx]), y):
            stopped = True
        idx += 1
        if stopped:
            break

    accepted = rejected = 0
    max_err = 0.0
    max_td = 0.0
    max_hd = 0.0
    t = 0.0
    f = g @ y
    h = _initial_step(g, y, f, t_final, rtol, atol)
    eps = np.finfo(float).eps
    just_rejected = False

    while not stopped and t < t_final and idx < ts.size:
        if accepted + rejected >= max_steps:
            raise SolverError(
                f"step budget {max_steps} exhausted at t = {t:.6g}",
                diagnostics={"t": t, "h": h, "accepted": accepted, "rejected": rejected},
            )
        if h < 16 * eps * max(abs(t), 1.0):
            raise SolverError(
                f"step size underflow at t = {t:.6g} (stiffness guard)",
                diagnostics={"t": t, "h": h, "accepted": accepted, "rejected": rejected},
            )
        clamped = t + h >= t_final
        if clamped:
            h = t_final - t

        k = [f]
        for i in range(1, 7):
            yi = y + h * sum(aij * k[j] for j, aij in enumerate(_A[i]) if aij != 0.0)
            k.append(g @ yi)
        y1 = y + h * sum(b * k[j] for j, b in enumerate(_B5) if b != 0.0)
        # Last stage sits at the step end; reuse it for the error estimate.
        k[6] = g @ y1
        err_vec = h * sum(e * k[j] for j, e in enumerate(_E) if e != 0.0)
        sc = atol + rtol * np.maximum(np.abs(y), np.abs(y1))
        err = _rms(err_vec / sc)

        if err > 1.0:
            rejected += 1
            h *= max(0.2, 0.9 * err**-0.2)
            just_rejected = True
            continue

        t1 = t_final if clamped else t + h
        y1, td, hd = _correct(y1)
        if y.dtype != complex:
            y1 = y1.real
        max_td = max(max_td, td)
        max_hd = max(max_hd, hd)
        if td > MAX_TRACE_DRIFT or hd > MAX_HERMITICITY_DRIFT:
            raise SolverError(
                f"state drift exceeded 1e-8 in one step at t = {t1:.6g}",
                diagnostics={"trace_drift": td, "hermiticity_drift": hd, "t": t1, "h": h},
            )
        f1 = g @ y1
        max_err = max(max_err, err)
        accepted += 1

        while idx < ts.size and ts[idx] <= t1:
            tsamp = float(ts[idx])
            theta = min(max((tsamp - t) / h, 0.0), 1.0)
            ysamp = y1 if theta == 1.0 else _hermite(theta, h, y, f, y1, f1)
            idx += 1
            if not emit(tsamp, ysamp):
                stopped = True
                break

        t, y, f = t1, y1, f1
        factor = min(5.0, max(0.2, 0.9 * err**-0.2)) if err > 0 else 5.0
        if just_rejected:
            factor = min(factor, 1.0)
        h *= factor
        just_rejected = False

    return Trajectory(
        times=np.array(times_out),
        states=np.array(states_out) if states_out else np.zeros((0, 8, 8), dtype=complex),
        accepted_steps=accepted,
        rejected_steps=rejected,
        max_error_estimate=max_err,
        max_trace_drift=max_td,
        max_hermiticity_drift=max_hd,
        stopped=stopped,
    )


def steady_state(
    generator: GeneratorMatrix,
    *,
    degeneracy_rtol: float = 1e-12,
    residual_rtol: float = 1e-11,
) -> np.ndarray:
    """Unique kernel vector of the generator as a density matrix.

    SVD null-space solve. Raises DegenerateSteadyStateError (with the singular
    value spectrum attached) when the second-smallest singular value is below
    degeneracy_rtol * s_max, i.e. the kernel is not one-dimensional; raises
    SolverError when the normalized candidate fails the residual check
    ||L vec(rho)|| <= residual_rtol * s_max or is not a valid state.
    """
    matrix = np.asarray(generator.matrix)
    _, s, vh = np.linalg.svd(matrix)
    if s[0] == 0.0 or s[-2] <= degeneracy_rtol * s[0]:
        raise DegenerateSteadyStateError(
            "generator kernel is not one-dimensional; steady state is not unique",
            diagnostics={"singular_values": s.tolist()},
        )
    rho = unvec(vh[-1].conj())
    rho = 0.5 * (rho + rho.conj().T)
    trace = float(np.trace(rho).real)
    if abs(trace) < 1e-8:
        raise SolverError(
            "steady-state candidate is numerically traceless",
            diagnostics={"trace": trace, "singular_values": s.tolist()},
        )
    rho = rho / trace
    residual = float(np.linalg.norm(matrix @ vec(rho)))
    if residual > residual_rtol * s[0]:
        raise SolverError(
            f"steady-state residual {residual:.3e} exceeds {residual_rtol:.1e} * ||L||",
            diagnostics={"residual": residual, "s_max": float(s[0]), "s_min": float(s[-1])},
        )
    try:
        validate_density_matrix(rho)
    except ValueError as exc:
        raise SolverError(f"steady-state candidate is not a valid state: {exc}") from exc
    return rho


def slowest_rate(generator: GeneratorMatrix, *, zero_rtol: float = 1e-6) -> float:
    """Smallest nonzero |Re| eigenvalue of the generator (slowest decay rate).

    Eigenvalues with |Re| below zero_rtol times the largest are treated as the
    stationary kernel and skipped.
    """
    re = np.abs(np.linalg.eigvals(np.asarray(generator.matrix)).real)
    scale = re.max()
    if scale == 0.0:
        raise SolverError("generator has no decaying modes; relaxation time is undefined")
    nonzero = re[re > zero_rtol * scale]
    if nonzero.size == 0:
        raise SolverError(
            "generator has no decaying modes; relaxation time is undefined",
            diagnostics={"real_parts": re.tolist()},
        )
    return float(nonzero.min())
