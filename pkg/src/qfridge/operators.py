"""Operators for the three-qubit absorption refrigerator.

Everything lives in the fixed product basis |n_c n_h n_w> with the cold qubit
as the most significant bit, so the basis index is n = 4 n_c + 2 n_h + n_w.
The machine is self-contained: the hot splitting must equal the sum of the
cold and work splittings, which makes |101> and |010> degenerate under the
free Hamiltonian and lets the swap interaction move energy without external
driving.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

QUBITS = ("c", "h", "w")
DIM = 8

# Occupation of each qubit for every basis index, cold most significant.
_N_C = (np.arange(DIM) >> 2) & 1
_N_H = (np.arange(DIM) >> 1) & 1
_N_W = np.arange(DIM) & 1

BASIS_LABELS = tuple(f"|{c}{h}{w}>" for c, h, w in zip(_N_C, _N_H, _N_W))

# |101> and |010>, the degenerate pair exchanged by the interaction.
IDX_101 = 0b101
IDX_010 = 0b010

MATCHING_RTOL = 1e-12
HERMITICITY_RTOL = 1e-12

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_I2 = np.eye(2)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RefrigeratorSpec:
    """Qubit splittings and interaction strength, natural units (hbar = k_B = 1).

    Raises ValueError unless all splittings are positive, g >= 0, and the
    self-containment condition omega_h = omega_c + omega_w holds to relative
    precision 1e-12. Warns (without failing) when g exceeds the smallest
    splitting, where the weak-coupling treatment of the baths gets dubious.
    """

    omega_c: float
    omega_h: float
    omega_w: float
    g: float

    def __post_init__(self):
        for name in ("omega_c", "omega_h", "omega_w"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if not (np.isfinite(self.g) and self.g >= 0):
            raise ValueError(f"g must be nonnegative and finite, got {self.g!r}")
        mismatch = abs(self.omega_h - (self.omega_c + self.omega_w))
        scale = max(self.omega_h, self.omega_c + self.omega_w)
        if mismatch > MATCHING_RTOL * scale:
            raise ValueError(
                "energy matching omega_h = omega_c + omega_w violated: "
                f"|{self.omega_h} - ({self.omega_c} + {self.omega_w})| = {mismatch:.3e}"
            )
        if self.g > min(self.omega_c, self.omega_h, self.omega_w):
            warnings.warn(
                "interaction strength g exceeds the smallest qubit splitting; "
                "the weak internal coupling assumption is strained",
                stacklevel=2,
            )

    def omega(self, alpha: str) -> float:
        """Splitting of qubit alpha in ('c', 'h', 'w')."""
        if alpha not in QUBITS:
            raise ValueError(f"unknown qubit label {alpha!r}, expected one of {QUBITS}")
        return {"c": self.omega_c, "h": self.omega_h, "w": self.omega_w}[alpha]


def build_free_hamiltonian(spec: RefrigeratorSpec) -> np.ndarray:
    """H_0 = sum_alpha omega_alpha |1><1|_alpha, diagonal in the product basis."""
    diag = _N_C * spec.omega_c + _N_H * spec.omega_h + _N_W * spec.omega_w
    return _freeze(np.diag(diag.astype(float)))


def build_interaction(spec: RefrigeratorSpec) -> np.ndarray:
    """Degenerate-pair swap g(|101><010| + |010><101|)."""
    h = np.zeros((DIM, DIM))
    h[IDX_101, IDX_010] = spec.g
    h[IDX_010, IDX_101] = spec.g
    return _freeze(h)


def build_hamiltonian(spec: RefrigeratorSpec) -> np.ndarray:
    """Full refrigerator Hamiltonian H_0 + H_int."""
    return _freeze(build_free_hamiltonian(spec) + build_interaction(spec))


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition H = V diag(energies) V^dag, energies ascending.

    Columns of `vectors` are orthonormal eigenvectors in the product basis.
    """

    energies: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "energies", _freeze(np.array(self.energies, dtype=float)))
        object.__setattr__(self, "vectors", _freeze(np.array(self.vectors)))

    @property
    def dim(self) -> int:
        return self.energies.shape[0]

    def hamiltonian(self) -> np.ndarray:
        """Reconstruct H = V diag(E) V^dag (re-Hermitized against roundoff)."""
        v = self.vectors
        h = (v * self.energies) @ v.conj().T
        return 0.5 * (h + h.conj().T)


def diagonalize(h: np.ndarray, *, rtol: float = HERMITICITY_RTOL) -> Spectrum:
    """Exact eigendecomposition of a Hermitian matrix.

    Rejects non-Hermitian input (relative tolerance `rtol` on the largest
    element) and verifies the residual ||H V - V E|| and unitarity of V to
    1e-12 before returning.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = max(np.abs(h).max(), 1e-300)
    if np.abs(h - h.conj().T).max() > rtol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    energies, vectors = np.linalg.eigh(h)
    residual = np.abs(h @ vectors - vectors * energies).max()
    ortho = np.abs(vectors.conj().T @ vectors - np.eye(h.shape[0])).max()
    if residual > 1e-12 * max(scale, 1.0) or ortho > 1e-12:
        raise ValueError(
            f"eigendecomposition failed its residual check: |HV-VE|={residual:.3e}, "
            f"|V+V-I|={ortho:.3e}"
        )
    return Spectrum(energies=energies, vectors=vectors)


def local_pauli_x(alpha: str) -> np.ndarray:
    """sigma_x on qubit alpha tensored with identity on the other two."""
    if alpha not in QUBITS:
        raise ValueError(f"unknown qubit label {alpha!r}, expected one of {QUBITS}")
    factors = [_I2, _I2, _I2]
    factors[QUBITS.index(alpha)] = _SIGMA_X
    return _freeze(np.kron(np.kron(factors[0], factors[1]), factors[2]))
