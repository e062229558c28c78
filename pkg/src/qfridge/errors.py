"""Exception types shared across the package.

Configuration problems (bad parameters, malformed config files) raise
ConfigError or plain ValueError; numerical failures raise SolverError or one
of its subclasses, each carrying a diagnostics dict with the state of the
computation at the point of failure.
"""

from __future__ import annotations


class ConfigError(ValueError):
    """Invalid experiment configuration (unknown preset, bad file, bad combo)."""


class SolverError(RuntimeError):
    """A numerical routine failed to meet its contract."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class SeriesConvergenceError(SolverError):
    """Occupation series failed to converge within the term budget."""


class DegenerateTransitionError(SolverError):
    """A coupling operator connects degenerate eigenstates (zero Bohr frequency)."""


class DegenerateSteadyStateError(SolverError):
    """The generator kernel is more than one-dimensional; no unique steady state."""
