"""Extended-precision reference implementations, independent of the package.

Used to freeze expected values and for live cross-checks; mpmath only, no
imports from the package under test.
"""

import mpmath as mp


def occupation_oracle(omega, temperature, zeta, dps=60):
    """Mean occupation of one Kerr mode by direct partial summation."""
    with mp.workdps(dps):
        beta = 1 / mp.mpf(temperature)
        w = mp.mpf(omega)
        z = mp.mpf(zeta)
        s0 = mp.mpf(0)
        s1 = mp.mpf(0)
        n = 0
        while True:
            term = mp.e ** (-beta * (w * n + w * n * n / z))
            s0 += term
            s1 += n * term
            if n > 2 and term < mp.mpf(10) ** (-dps) * s0:
                break
            n += 1
        return float(s1 / s0)


def bose_einstein_oracle(omega, temperature, dps=60):
    with mp.workdps(dps):
        return float(1 / mp.expm1(mp.mpf(omega) / mp.mpf(temperature)))


def spectral_density_oracle(omega, kappa, omega0, cutoff, dps=60):
    with mp.workdps(dps):
        a = abs(mp.mpf(omega))
        return float(2 / mp.pi * mp.mpf(kappa) * (a / mp.mpf(omega0)) * mp.e ** (-a / mp.mpf(cutoff)))


def decay_rate_oracle(omega, temperature, kappa, zeta, cutoff, omega0, dps=60):
    with mp.workdps(dps):
        j = mp.mpf(spectral_density_oracle(omega, kappa, omega0, cutoff, dps))
        if mp.isinf(mp.mpf(zeta)):
            n = mp.mpf(bose_einstein_oracle(abs(omega), temperature, dps))
        else:
            n = mp.mpf(occupation_oracle(abs(omega), temperature, zeta, dps))
        weight = n + 1 if omega > 0 else n
        return float(mp.pi / 2 * j * weight)
