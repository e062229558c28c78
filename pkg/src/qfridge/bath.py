"""Thermal bath model: Ohmic spectral density and mode occupation.

Each bath is a collection of oscillators with a Kerr-type nonlinearity; the
single-mode spectrum is E_n = omega n + omega n^2 / zeta, so zeta = inf is the
harmonic (free boson) gas and smaller zeta compresses the thermal occupation
toward the two-level value. Negative zeta (inverted ladder) is rejected: the
partition sum diverges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import SeriesConvergenceError

# ---------------------------------------------------------------------------
# Series truncation contract
# ---------------------------------------------------------------------------
# The sums S0 = sum w_n and S1 = sum n w_n with w_n = exp(-beta(omega n +
# omega n^2/zeta)) stop once the current term is below 1e-16 * S0 AND a
# geometric majorant certifies the dropped tails at <= 1e-15 relative.  All
# term ratios past n satisfy w_{m+1}/w_m <= r_n = exp(-beta omega (1 +
# (2n+1)/zeta)), so tail(S0) <= w_n r/(1-r) and tail(S1) <= w_n (n r/(1-r) +
# r/(1-r)^2).
MAX_SERIES_TERMS = 10_000_000
_TERM_RTOL = 1e-16
_TAIL_RTOL = 1e-15


@dataclass(frozen=True)
class BathSpec:
    """One bath: temperature, system coupling, anharmonicity, spectral knobs.

    Parameters
    ----------
    temperature : float
        Bath temperature, > 0 (natural units, k_B = 1).
    kappa : float
        Dimensionless system-bath coupling, >= 0; kappa = 0 decouples the bath.
    zeta : float
        Anharmonicity scale, > 0 or math.inf for the harmonic limit.
    cutoff : float
        Exponential cutoff of the Ohmic spectral density, > 0.
    omega0 : float
        Reference frequency normalizing the Ohmic slope, > 0 (conventionally
        the splitting of the qubit this bath attaches to).
    """

    temperature: float
    kappa: float
    zeta: float
    cutoff: float
    omega0: float

    def __post_init__(self):
        if not (math.isfinite(self.temperature) and self.temperature > 0):
            raise ValueError(f"temperature must be positive, got {self.temperature!r}")
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise ValueError(f"kappa must be nonnegative, got {self.kappa!r}")
        if math.isnan(self.zeta) or self.zeta <= 0:
            raise ValueError(
                f"zeta must be positive (math.inf for harmonic), got {self.zeta!r}; "
                "zeta <= 0 inverts the oscillator ladder and the partition sum diverges"
            )
        if not (math.isfinite(self.cutoff) and self.cutoff > 0):
            raise ValueError(f"cutoff must be positive, got {self.cutoff!r}")
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")


@dataclass(frozen=True)
class OccupationResult:
    """Occupation value with series diagnostics.

    truncation_bound dominates the discarded tail's effect on `value`;
    terms_used is 1 for the closed-form harmonic branch.
    """

    value: float
    terms_used: int
    truncation_bound: float


def spectral_density(bath: BathSpec, omega: float) -> float:
    """Ohmic density J(omega) = (2/pi) kappa (|omega|/omega0) exp(-|omega|/cutoff).

    Defined for omega != 0 only; symmetric in omega by construction.
    """
    if omega == 0:
        raise ValueError("spectral density is not defined at omega = 0")
    if not math.isfinite(omega):
        raise ValueError(f"omega must be finite, got {omega!r}")
    a = abs(omega)
    return (2.0 / math.pi) * bath.kappa * (a / bath.omega0) * math.exp(-a / bath.cutoff)


def _bose_einstein(x: float) -> float:
    # x = beta omega > 0; large x underflows cleanly to 0.
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


@lru_cache(maxsize=65536)
def _occupation_series(omega: float, temperature: float, zeta: float):
    beta = 1.0 / temperature
    bw = beta * omega
    s0 = 0.0
    s1 = 0.0
    n = 0
    while True:
        exponent = -bw * n * (1.0 + n / zeta)
        w = math.exp(exponent) if exponent > -745.0 else 0.0
        s0 += w
        s1 += n * w
        # Ratio bound for every term past n; strictly < 1 since bw > 0.
        r = math.exp(-bw * (1.0 + (2.0 * n + 1.0) / zeta)) if zeta > 0 else 0.0
        if w <= _TERM_RTOL * s0:
            tail0 = w * r / (1.0 - r)
            tail1 = w * (n * r / (1.0 - r) + r / (1.0 - r) ** 2)
            value = s1 / s0
            # Worst-case effect of the dropped tails on the quotient.
            bound = (tail1 + value * tail0) / s0
            if bound <= _TAIL_RTOL * max(value, 1.0):
                return value, n + 1, bound
        n += 1
        if n >= MAX_SERIES_TERMS:
            raise SeriesConvergenceError(
                f"occupation series did not converge within {MAX_SERIES_TERMS} terms",
                diagnostics={
                    "omega": omega,
                    "temperature": temperature,
                    "zeta": zeta,
                    "partial_value": s1 / s0 if s0 else math.nan,
                    "terms": n,
                },
            )


def occupation(bath: BathSpec, omega: float) -> OccupationResult:
    """Mean occupation of a bath mode at frequency omega > 0.

    Harmonic baths (zeta = inf) use the closed Bose-Einstein form; finite zeta
    sums the Boltzmann series over the Kerr ladder under the module truncation
    contract. Results are cached on (omega, temperature, zeta).

    Returns
    -------
    OccupationResult
        value in [0, bose_einstein), terms_used, truncation_bound.
    """
    if not (math.isfinite(omega) and omega > 0):
        raise ValueError(f"occupation requires omega > 0, got {omega!r}")
    if math.isinf(bath.zeta):
        return OccupationResult(
            value=_bose_einstein(omega / bath.temperature), terms_used=1, truncation_bound=0.0
        )
    value, terms, bound = _occupation_series(omega, bath.temperature, bath.zeta)
    return OccupationResult(value=value, terms_used=terms, truncation_bound=bound)


def decay_rate(bath: BathSpec, omega: float) -> float:
    """Golden-rule rate for the transition at Bohr frequency omega.

    gamma(omega > 0) = (pi/2) J(omega) (n(omega) + 1)  (emission into the bath)
    gamma(omega < 0) = (pi/2) J(|omega|) n(|omega|)    (absorption from it)

    omega = 0 is a hard error: the secular construction has no zero-frequency
    channel. kappa = 0 short-circuits to 0 without evaluating the series.
    """
    if omega == 0:
        raise ValueError("decay rate is not defined at omega = 0")
    j = spectral_density(bath, omega)
    if j == 0.0:
        return 0.0
    n = occupation(bath, abs(omega)).value
    weight = n + 1.0 if omega > 0 else n
    return 0.5 * math.pi * j * weight
