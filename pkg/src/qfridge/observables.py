"""Readouts: local temperatures, virtual temperature, heat currents, COP."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .liouvillian import GeneratorMatrix, JumpChannel, dissipator_apply
from .operators import QUBITS, RefrigeratorSpec

# Work input below this magnitude makes the COP quotient meaningless.
COP_CURRENT_FLOOR = 1e-14
# Heat currents are real by construction; larger imaginary residue means a
# broken state or channel set.
IMAG_RESIDUE_ATOL = 1e-12

_REDUCE = {"c": "ijkljk->il", "h": "ijkilk->jl", "w": "ijkijl->kl"}


def reduced_qubit(rho: np.ndarray, alpha: str) -> np.ndarray:
    """Partial trace down to the 2x2 state of qubit alpha."""
    if alpha not in QUBITS:
        raise ValueError(f"unknown qubit label {alpha!r}, expected one of {QUBITS}")
    r = np.asarray(rho).reshape(2, 2, 2, 2, 2, 2)
    return np.einsum(_REDUCE[alpha], r)


@dataclass(frozen=True)
class LocalTemperature:
    """Population-ratio temperature of one qubit.

    value = omega / ln(p0/p1); +inf when the populations are exactly equal,
    negative (and `inverted` set) when the excited state dominates. coherence
    is |<0|rho|1>| of the reduced state, a diagnostic for how far the reading
    is from a genuine Gibbs state.
    """

    value: float
    coherence: float
    inverted: bool


def local_temperature(rho: np.ndarray, alpha: str, omega: float) -> LocalTemperature:
    """Temperature read off the population ratio of qubit alpha.

    Requires both reduced populations strictly inside (0, 1); a pure reduced
    state has no temperature and raises ValueError.
    """
    if not (math.isfinite(omega) and omega > 0):
        raise ValueError(f"omega must be positive, got {omega!r}")
    red = reduced_qubit(rho, alpha)
    p0 = float(red[0, 0].real)
    p1 = float(red[1, 1].real)
    if not (0.0 < p0 < 1.0 and 0.0 < p1 < 1.0):
        raise ValueError(
            f"reduced populations ({p0!r}, {p1!r}) of qubit {alpha!r} must lie strictly in (0, 1)"
        )
    coherence = float(abs(red[0, 1]))
    ratio = math.log(p0 / p1)
    value = math.inf if ratio == 0.0 else omega / ratio
    return LocalTemperature(value=value, coherence=coherence, inverted=p1 > p0)


def virtual_temperature(omega_h: float, omega_w: float, t_h: float, t_w: float) -> float:
    """T_v = (omega_h - omega_w) / (omega_h/T_h - omega_w/T_w).

    The temperature the virtual qubit (the pair of levels the cold qubit
    exchanges with) equilibrates to; +inf when the two Boltzmann slopes
    cancel exactly.
    """
    if not (t_h > 0 and t_w > 0):
        raise ValueError("bath temperatures must be positive")
    if not (omega_h > 0 and omega_w > 0):
        raise ValueError("splittings must be positive")
    denominator = omega_h / t_h - omega_w / t_w
    if denominator == 0.0:
        return math.inf
    return (omega_h - omega_w) / denominator


def heat_current(
    channels: Iterable[JumpChannel], hamiltonian: np.ndarray, rho: np.ndarray
) -> float:
    """Energy flow into the system through the given channels: tr(H D(rho)).

    Positive means the bath heats the system. The trace is real up to
    roundoff; an imaginary residue above 1e-12 (relative) raises ValueError.
    """
    value = complex(np.trace(np.asarray(hamiltonian) @ dissipator_apply(channels, rho)))
    if abs(value.imag) > IMAG_RESIDUE_ATOL * max(1.0, abs(value.real)):
        raise ValueError(f"heat current has imaginary residue {value.imag:.3e}")
    return value.real


def cop(qdot_c: float, qdot_w: float) -> float:
    """Coefficient of performance qdot_c / qdot_w; nan when the work input
    is below the floor (no meaningful quotient)."""
    if abs(qdot_w) < COP_CURRENT_FLOOR:
        return math.nan
    return qdot_c / qdot_w


@dataclass(frozen=True)
class ThermoReadout:
    """All readouts of one state under one generator."""

    theta_c: LocalTemperature
    theta_h: LocalTemperature
    theta_w: LocalTemperature
    qdot_c: float
    qdot_h: float
    qdot_w: float
    cop: float


def thermo_readout(
    generator: GeneratorMatrix, spec: RefrigeratorSpec, rho: np.ndarray
) -> ThermoReadout:
    """Local temperatures, per-bath heat currents, and COP for one state."""
    thetas = {a: local_temperature(rho, a, spec.omega(a)) for a in QUBITS}
    qdots = {
        a: heat_current(generator.channels_for(a), generator.hamiltonian, rho)
        for a in QUBITS
    }
    return ThermoReadout(
        theta_c=thetas["c"],
        theta_h=thetas["h"],
        theta_w=thetas["w"],
        qdot_c=qdots["c"],
        qdot_h=qdots["h"],
        qdot_w=qdots["w"],
        cop=cop(qdots["c"], qdots["w"]),
    )
