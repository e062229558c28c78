"""Secular GKSL generator for the refrigerator.

Each bath couples through sigma_x on its qubit. In the eigenbasis of the full
Hamiltonian that coupling splits into eigenoperators A_omega, one per Bohr
frequency omega (energy differences e_k - e_l with a nonzero matrix element),
built from full spectral projectors so degenerate-subspace gauge choices drop
out. Rates come from `bath.decay_rate`; the assembled generator acts on
column-stacked density matrices: vec(A rho B) = (B^T kron A) vec(rho).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .bath import BathSpec, decay_rate
from .errors import DegenerateTransitionError
from .operators import QUBITS, Spectrum, local_pauli_x

# Bohr frequencies closer than this (relative to the largest one) share a
# channel; the same scale separates degenerate eigenvalue clusters.
GROUPING_RTOL = 1e-9
# sigma_x matrix elements in the eigenbasis are O(1); below this they are
# treated as exact zeros.
ELEMENT_ATOL = 1e-12


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stack a matrix (Fortran order)."""
    return np.asarray(m).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    """Inverse of `vec` for square matrices."""
    v = np.asarray(v)
    d = int(round(v.size**0.5))
    if d * d != v.size:
        raise ValueError(f"cannot unvec a vector of length {v.size}")
    return v.reshape((d, d), order="F")


def energy_clusters(energies: np.ndarray, *, rtol: float = GROUPING_RTOL) -> list[list[int]]:
    """Group ascending eigenvalues into degenerate clusters.

    Consecutive gaps below rtol * max(1, |E|_max) merge; returns index lists.
    """
    energies = np.asarray(energies, dtype=float)
    tol = rtol * max(1.0, np.abs(energies).max(initial=0.0))
    clusters: list[list[int]] = []
    for i, e in enumerate(energies):
        if clusters and e - energies[clusters[-1][-1]] <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def bohr_frequencies(
    spectrum: Spectrum, alpha: str
) -> list[tuple[float, tuple[tuple[int, int], ...]]]:
    """Bohr frequencies of sigma_x on qubit alpha, with contributing index pairs.

    Returns (omega, pairs) sorted by omega, both signs included; omega is the
    energy of the eigenstate annihilated (column index k) minus the energy of
    the one created (row index l), and pairs are (l, k) eigenstate indices at
    cluster granularity. Frequencies within GROUPING_RTOL of each other
    (relative to the largest) are merged into one entry.

    Raises DegenerateTransitionError when sigma_x connects states inside one
    degenerate cluster: that would be a zero-frequency channel, which the
    secular construction cannot host.
    """
    x = spectrum.vectors.conj().T @ local_pauli_x(alpha) @ spectrum.vectors
    clusters = energy_clusters(spectrum.energies)
    means = [float(np.mean(spectrum.energies[c])) for c in clusters]

    raw: list[tuple[float, list[tuple[int, int]]]] = []
    for a, ca in enumerate(clusters):
        for b, cb in enumerate(clusters):
            block = x[np.ix_(ca, cb)]
            if np.abs(block).max() <= ELEMENT_ATOL:
                continue
            if a == b:
                raise DegenerateTransitionError(
                    f"sigma_x on qubit {alpha!r} couples degenerate eigenstates "
                    f"{ca} at energy {means[a]:.6g} (zero Bohr frequency)",
                    diagnostics={
                        "alpha": alpha,
                        "cluster": tuple(ca),
                        "energy": means[a],
                        "max_element": float(np.abs(block).max()),
                    },
                )
            raw.append((means[b] - means[a], [(l, k) for l in ca for k in cb]))

    raw.sort(key=lambda item: item[0])
    tol = GROUPING_RTOL * max((abs(w) for w, _ in raw), default=1.0)
    merged: list[tuple[float, list[tuple[int, int]]]] = []
    for w, pairs in raw:
        if merged and abs(w - merged[-1][0]) <= tol:
            merged[-1][1].extend(pairs)
        else:
            merged.append((w, list(pairs)))
    return [(w, tuple(sorted(set(pairs)))) for w, pairs in merged]


@dataclass(frozen=True)
class JumpChannel:
    """One secular channel: bath label, Bohr frequency, rate, jump operator.

    The operator is expressed in the product basis. Channels come in adjoint
    pairs: the entry at -omega carries the Hermitian conjugate operator.
    """

    alpha: str
    omega: float
    rate: float
    operator: np.ndarray

    def __post_init__(self):
        op = np.array(self.operator, dtype=complex)
        op.setflags(write=False)
        object.__setattr__(self, "operator", op)


def build_jump_channels(
    spectrum: Spectrum, baths: Mapping[str, BathSpec]
) -> tuple[JumpChannel, ...]:
    """Assemble every (alpha, omega) channel with its golden-rule rate."""
    unknown = set(baths) - set(QUBITS)
    if unknown:
        raise ValueError(f"unknown bath labels {sorted(unknown)}, expected subset of {QUBITS}")
    v = spectrum.vectors
    channels = []
    for alpha in QUBITS:
        if alpha not in baths:
            continue
        x = v.conj().T @ local_pauli_x(alpha) @ v
        for omega, pairs in bohr_frequencies(spectrum, alpha):
            a_eig = np.zeros((spectrum.dim, spectrum.dim), dtype=complex)
            for l, k in pairs:
                a_eig[l, k] = x[l, k]
            channels.append(
                JumpChannel(
                    alpha=alpha,
                    omega=omega,
                    rate=decay_rate(baths[alpha], omega),
                    operator=v @ a_eig @ v.conj().T,
                )
            )
    return tuple(channels)


def dissipator_apply(channels: Iterable[JumpChannel], rho: np.ndarray) -> np.ndarray:
    """Sum of gamma (A rho A^dag - {A^dag A, rho}/2) over the given channels."""
    rho = np.asarray(rho)
    out = np.zeros_like(rho, dtype=complex)
    for ch in channels:
        if ch.rate == 0.0:
            continue
        a = ch.operator
        ada = a.conj().T @ a
        out += ch.rate * (a @ rho @ a.conj().T - 0.5 * (ada @ rho + rho @ ada))
    return out


def hamiltonian_superoperator(h: np.ndarray) -> np.ndarray:
    """Superoperator of -i[H, .] under column stacking."""
    h = np.asarray(h)
    eye = np.eye(h.shape[0])
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def dissipator_superoperator(channels: Iterable[JumpChannel]) -> np.ndarray:
    """Superoperator of the summed dissipator under column stacking."""
    channels = tuple(channels)
    dim = channels[0].operator.shape[0] if channels else 8
    eye = np.eye(dim)
    out = np.zeros((dim * dim, dim * dim), dtype=complex)
    for ch in channels:
        if ch.rate == 0.0:
            continue
        a = ch.operator
        ada = a.conj().T @ a
        out += ch.rate * (
            np.kron(a.conj(), a) - 0.5 * (np.kron(eye, ada) + np.kron(ada.T, eye))
        )
    return out


@dataclass(frozen=True)
class GeneratorMatrix:
    """Full GKSL generator: matrix form plus the pieces it was built from."""

    matrix: np.ndarray
    channels: tuple[JumpChannel, ...]
    spectrum: Spectrum
    hamiltonian: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        h = np.array(self.hamiltonian, dtype=complex)
        h.setflags(write=False)
        object.__setattr__(self, "hamiltonian", h)

    def channels_for(self, alpha: str) -> tuple[JumpChannel, ...]:
        return tuple(ch for ch in self.channels if ch.alpha == alpha)


def build_generator(spectrum: Spectrum, baths: Mapping[str, BathSpec]) -> GeneratorMatrix:
    """Hamiltonian commutator plus secular dissipator as one 64x64 matrix.

    Verifies trace preservation (the trace functional annihilates the
    generator) to 1e-12 before returning.
    """
    channels = build_jump_channels(spectrum, baths)
    h = spectrum.hamiltonian()
    matrix = hamiltonian_superoperator(h) + dissipator_superoperator(channels)
    trace_row = vec(np.eye(spectrum.dim)).conj() @ matrix
    tol = 1e-12 * max(1.0, np.abs(matrix).max())
    if np.abs(trace_row).max() > tol:
        raise AssertionError(
            f"generator violates trace preservation: residual {np.abs(trace_row).max():.3e}"
        )
    return GeneratorMatrix(matrix=matrix, channels=channels, spectrum=spectrum, hamiltonian=h)


def channels_table(channels: Iterable[JumpChannel]) -> list[dict]:
    """Rows (alpha, omega, rate, operator norm) for debugging dumps."""
    return [
        {
            "alpha": ch.alpha,
            "omega": ch.omega,
            "rate": ch.rate,
            "operator_norm": float(np.linalg.norm(ch.operator)),
        }
        for ch in channels
    ]
