"""Lag-indexed belief over a user's channel state.

A belief is either Steady (no usable past observation, belief = p_ss) or
Observed(j, l): state j was fed back l+1 slots ago, belief = p_j P^l.  These
are the only forms ARQ feedback can produce, so beliefs are kept symbolic and
materialized on demand.  Advancing past the matrix's clamp lag collapses to
Steady, where the materialized vector is already indistinguishable from p_ss.
"""

from dataclasses import dataclass

from .channel import RewardVector, TransitionMatrix

F1, F2, F3 = 1, 2, 3
FEEDBACK_VALUES = (F1, F2, F3)


@dataclass(frozen=True)
class BeliefState:
    origin: int  # 0 = Steady, else last observed state in {1, 2, 3}
    lag: int = 0

    @property
    def is_steady(self) -> bool:
        return self.origin == 0

    def render(self) -> str:
        return "S" if self.is_steady else f"{self.origin}@{self.lag}"

    def __str__(self):
        return self.render()


STEADY = BeliefState(0, 0)


def observe(feedback: int) -> BeliefState:
    """Fresh belief right after feedback F_j: Observed(j, 0), i.e. p_j."""
    if feedback not in FEEDBACK_VALUES:
        raise ValueError(f"feedback must be one of {FEEDBACK_VALUES}")
    return BeliefState(feedback, 0)


def advance(b: BeliefState, P: TransitionMatrix) -> BeliefState:
    """One unscheduled slot: belief moves from pi to pi P (lag + 1)."""
    if b.is_steady:
        return STEADY
    if b.lag + 1 > P.clamp_lag:
        return STEADY
    return BeliefState(b.origin, b.lag + 1)


def materialize(b: BeliefState, P: TransitionMatrix):
    """The probability vector this belief stands for."""
    if b.is_steady:
        return P.steady_state
    return P.row(b.origin) @ P.n_step(b.lag)


def expected_reward(b: BeliefState, P: TransitionMatrix, alpha: RewardVector) -> float:
    """Expected immediate reward pi alpha if this user is scheduled now."""
    return float(materialize(b, P) @ alpha.alpha)


def parse_belief(text: str) -> BeliefState:
    """Inverse of BeliefState.render ('S' or 'j@l')."""
    if text == "S":
        return STEADY
    origin, lag = text.split("@")
    return BeliefState(int(origin), int(lag))
