"""Centralized numerical tolerances and the belief-lag cap."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Single knob record for every numerical threshold in the library.

    algebraic:   exact-identity checks (row sums, stationarity, orderings)
    convergence: matrix-power convergence used for lag clamping
    limit:       long-lag limit comparisons against the steady-state reward
    """

    algebraic: float = 1e-12
    convergence: float = 1e-9
    limit: float = 1e-6
    lag_cap: int = 64


DEFAULT_TOL = Tolerances()
