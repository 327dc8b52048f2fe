"""Closed-form bounds on the two-user sum reward capacity.

The upper bound is the genie-aided system's capacity: with both previous
states known, the scheduler earns p_3 alpha whenever at least one user was in
state 3, p_2 alpha when the best previous state was 2, and p_1 alpha when
both were in state 1, with the three weights coming from the joint steady
distribution of two independent chains.

The Type II lower bound follows the interpretation "earn p_3 alpha if at
least one user was in state 3, p_1 alpha otherwise": the second weight
multiplies p_1 alpha, not p_3 alpha, which would otherwise collapse the
expression to p_3 alpha identically.
"""

from dataclasses import dataclass

from .channel import RewardVector, TransitionMatrix
from .policy import SystemType, classify_system


class NotTypeI(ValueError):
    """Bound defined only for Type I systems."""


class NotTypeII(ValueError):
    """Bound defined only for Type II systems."""


@dataclass(frozen=True)
class BoundsReport:
    system: SystemType
    lower: float
    upper: float
    components: dict

    def to_json_dict(self):
        return {
            "type": self.system.value,
            "lower": self.lower,
            "upper": self.upper,
            "weights": self.components,
        }


def _row_rewards(P: TransitionMatrix, alpha: RewardVector):
    a = alpha.alpha
    return (float(P.row(1) @ a), float(P.row(2) @ a), float(P.row(3) @ a))


def type1_lower_value(P: TransitionMatrix, alpha: RewardVector) -> float:
    """p_2 alpha - p_ss(1)^2 (p_2 alpha - p_1 alpha), without the type gate."""
    r1, r2, _ = _row_rewards(P, alpha)
    w1 = float(P.steady_state[0])
    return r2 - w1 * w1 * (r2 - r1)


def type2_lower_value(P: TransitionMatrix, alpha: RewardVector) -> float:
    """(2q - q^2) p_3 alpha + (1 - q)^2 p_1 alpha with q = p_ss(3), ungated."""
    r1, _, r3 = _row_rewards(P, alpha)
    q = float(P.steady_state[2])
    return (2.0 * q - q * q) * r3 + (1.0 - q) ** 2 * r1


def lb_type1(P: TransitionMatrix, alpha: RewardVector) -> float:
    """Lower bound on the greedy sum reward for a Type I system."""
    if classify_system(P, alpha) is not SystemType.TYPE_I:
        raise NotTypeI("Type I lower bound requested for a Type II system")
    return type1_lower_value(P, alpha)


def lb_type2(P: TransitionMatrix, alpha: RewardVector) -> float:
    """Lower bound on the greedy sum reward for a Type II system."""
    if classify_system(P, alpha) is not SystemType.TYPE_II:
        raise NotTypeII("Type II lower bound requested for a Type I system")
    return type2_lower_value(P, alpha)


def upper_bound(P: TransitionMatrix, alpha: RewardVector) -> float:
    """Genie-aided capacity; upper-bounds every feedback-based policy."""
    r1, r2, r3 = _row_rewards(P, alpha)
    w = upper_bound_weights(P)
    return w["state3"] * r3 + w["state2"] * r2 + w["state1"] * r1


def upper_bound_weights(P: TransitionMatrix) -> dict:
    """Probabilities of the best-previous-state classes; they sum to 1."""
    q1, q2, q3 = (float(x) for x in P.steady_state)
    return {
        "state3": 2.0 * q3 - q3 * q3,
        "state2": 2.0 * q1 * q2 + q2 * q2,
        "state1": q1 * q1,
    }


def bounds_report(P: TransitionMatrix, alpha: RewardVector) -> BoundsReport:
    """The applicable lower bound plus the genie upper bound, with weights."""
    system = classify_system(P, alpha)
    if system is SystemType.TYPE_I:
        lower = lb_type1(P, alpha)
    else:
        lower = lb_type2(P, alpha)
    return BoundsReport(system, lower, upper_bound(P, alpha),
                        upper_bound_weights(P))
