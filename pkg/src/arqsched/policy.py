"""Scheduling policies for the two-user downlink.

Covers the greedy policy in both its defining argmax form and its
feedback-driven round-robin form, the genie baseline that sees both users'
previous states, the state-3 decay threshold L, the Type I / Type II system
split, and exact finite-horizon dynamic programming over the symbolic belief
lattice for optimality experiments.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .belief import STEADY, BeliefState, expected_reward, materialize
from .channel import RewardVector, TransitionMatrix


class SystemType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"


class Rationale(Enum):
    RETAIN_ON_F3 = "RetainOnF3"
    RETAIN_ON_F2 = "RetainOnF2"
    SWITCH_ON_F1 = "SwitchOnF1"
    COMPARED_REWARDS = "ComparedRewards"
    ARGMAX_TIE = "ArgmaxTie"


class NotTypeI(ValueError):
    """Operation defined only for Type I systems."""


class CapTooSmall(ValueError):
    """DP horizon exceeds the lag cap, so deep lags would be clamped."""


@dataclass(frozen=True)
class JointInfoState:
    """Both users' beliefs plus who held the channel last (0 = nobody yet)."""

    belief_a: BeliefState
    belief_b: BeliefState
    scheduled_last: int = 0

    def belief_of(self, user: int) -> BeliefState:
        return self.belief_a if user == 1 else self.belief_b

    def render(self) -> str:
        return f"{self.belief_a}|{self.belief_b}|last={self.scheduled_last}"

    def __str__(self):
        return self.render()


ROOT_STATE = JointInfoState(STEADY, STEADY, 0)


@dataclass(frozen=True)
class PolicyDecision:
    action: int
    expected_immediate: float
    rationale: Rationale


def classify_system(P: TransitionMatrix, alpha: RewardVector) -> SystemType:
    """Type I when p_2 alpha >= p_ss alpha, Type II otherwise.

    Equality counts as Type I: the retain-on-F2 argument only needs the
    fresh-state-2 reward to dominate the decayed state-1 curve.
    """
    p2a = float(P.row(2) @ alpha.alpha)
    pssa = float(P.steady_state @ alpha.alpha)
    # Equality at the algebraic tolerance counts as Type I; the steady reward
    # carries linear-solve roundoff that must not flip boundary systems.
    return SystemType.TYPE_I if p2a >= pssa - P.tol.algebraic else SystemType.TYPE_II


def threshold_L(P: TransitionMatrix, alpha: RewardVector):
    """Smallest lag L with p_3 P^L alpha <= p_2 alpha (Type I only).

    Returns math.inf when the state-3 curve stays strictly above p_2 alpha
    for every lag up to the cap (the boundary case where p_2 alpha equals
    the steady reward and is only reached in the limit).
    """
    if classify_system(P, alpha) is not SystemType.TYPE_I:
        raise NotTypeI("threshold L is defined for Type I systems")
    tol = P.tol.algebraic
    p2a = float(P.row(2) @ alpha.alpha)
    pssa = float(P.steady_state @ alpha.alpha)
    r3_0 = float(P.row(3) @ alpha.alpha)
    if r3_0 <= p2a + tol:
        return 0
    if p2a <= pssa + tol:
        # Boundary Type I: the state-3 curve decreases to p_2 alpha but only
        # reaches it in the limit, so no finite crossing exists.
        return math.inf
    v = P.row(3).copy()
    for k in range(1, 16 * P.tol.lag_cap + 1):
        v = v @ P.P
        if float(v @ alpha.alpha) <= p2a + tol:
            return k
    return math.inf


def _other(user: int) -> int:
    return 2 if user == 1 else 1


def greedy_argmax(state: JointInfoState, P: TransitionMatrix,
                  alpha: RewardVector) -> PolicyDecision:
    """Schedule the user with the larger expected immediate reward.

    Exact ties retain the currently scheduled user (user 1 if nobody holds
    the channel yet).
    """
    r1 = expected_reward(state.belief_a, P, alpha)
    r2 = expected_reward(state.belief_b, P, alpha)
    if r1 == r2:
        action = state.scheduled_last if state.scheduled_last else 1
        return PolicyDecision(action, r1, Rationale.ARGMAX_TIE)
    action = 1 if r1 > r2 else 2
    return PolicyDecision(action, max(r1, r2), Rationale.COMPARED_REWARDS)


def greedy_structured(feedback: int, state: JointInfoState, system: SystemType,
                      P: TransitionMatrix, alpha: RewardVector) -> PolicyDecision:
    """Feedback-driven form of the greedy policy.

    Valid when `feedback` came from the previously scheduled user and the
    trajectory has been greedy from its start.  Type I: retain on F3 or F2,
    switch on F1.  Type II: retain on F3, switch on F1, and on F2 compare
    p_2 alpha against the waiting user's expected reward.
    """
    s = state.scheduled_last
    if s not in (1, 2):
        raise ValueError("structured greedy needs a previously scheduled user")
    u = _other(s)
    p2a = float(P.row(2) @ alpha.alpha)
    if feedback == 3:
        return PolicyDecision(s, expected_reward(state.belief_of(s), P, alpha),
                              Rationale.RETAIN_ON_F3)
    if feedback == 1:
        return PolicyDecision(u, expected_reward(state.belief_of(u), P, alpha),
                              Rationale.SWITCH_ON_F1)
    # feedback F2
    if system is SystemType.TYPE_I:
        return PolicyDecision(s, p2a, Rationale.RETAIN_ON_F2)
    ru = expected_reward(state.belief_of(u), P, alpha)
    if p2a >= ru:
        return PolicyDecision(s, p2a, Rationale.COMPARED_REWARDS)
    return PolicyDecision(u, ru, Rationale.COMPARED_REWARDS)


def genie_decide(prev_states, scheduled_last: int = 1) -> int:
    """Genie baseline: schedule a user whose previous state is maximal."""
    s1, s2 = prev_states
    if s1 > s2:
        return 1
    if s2 > s1:
        return 2
    return scheduled_last if scheduled_last else 1


# --- exact finite-horizon DP -------------------------------------------------

class DPSolver:
    """Backward induction over the symbolic (origin, lag) belief lattice.

    States reachable from (Steady, Steady) keep min(lag) = 0 after the first
    slot, so the lattice is finite and every expectation is exact: the
    scheduled user's three-way feedback distribution comes from its
    materialized belief, the other belief advances by one lag.  With
    `restricted`, dropping a user that just fed back F3 is forbidden.
    """

    def __init__(self, P: TransitionMatrix, alpha: RewardVector,
                 lag_cap: int = 16, restricted: bool = False):
        self.P = P
        self.alpha = alpha
        self.lag_cap = lag_cap
        self.restricted = restricted
        self._values = {}
        self._qvalues = {}
        self._actions = {}
        self._pi_cache = {}

    def _pi(self, b: BeliefState):
        v = self._pi_cache.get(b)
        if v is None:
            v = materialize(b, self.P)
            self._pi_cache[b] = v
        return v

    def _advance(self, b: BeliefState) -> BeliefState:
        if b.is_steady:
            return STEADY
        if b.lag + 1 > self.lag_cap:
            raise CapTooSmall("belief lag exceeded the DP lag cap")
        return BeliefState(b.origin, b.lag + 1)

    def allowed_actions(self, state: JointInfoState):
        last = state.scheduled_last
        if (self.restricted and last
                and state.belief_of(last) == BeliefState(3, 0)):
            return (last,)
        return (1, 2)

    def q(self, state: JointInfoState, k: int, action: int) -> float:
        """Total expected reward of taking `action` now, greedy-optimal after."""
        mine = state.belief_of(action)
        theirs = self._advance(state.belief_of(_other(action)))
        pi = self._pi(mine)
        total = float(pi @ self.alpha.alpha)
        if k > 1:
            for f in (1, 2, 3):
                if pi[f - 1] == 0.0:
                    continue
                if action == 1:
                    nxt = JointInfoState(BeliefState(f, 0), theirs, 1)
                else:
                    nxt = JointInfoState(theirs, BeliefState(f, 0), 2)
                total += pi[f - 1] * self.value(nxt, k - 1)
        return total

    def value(self, state: JointInfoState, k: int) -> float:
        if k <= 0:
            return 0.0
        key = (state, k)
        v = self._values.get(key)
        if v is not None:
            return v
        allowed = self.allowed_actions(state)
        qs = {a: self.q(state, k, a) for a in allowed}
        best = max(qs.values())
        candidates = [a for a, qv in qs.items() if qv == best]
        last = state.scheduled_last
        action = last if last in candidates else candidates[0]
        self._values[key] = best
        self._qvalues[key] = qs
        self._actions[key] = action
        return best

    def action(self, state: JointInfoState, k: int) -> int:
        self.value(state, k)
        return self._actions[(state, k)]

    def entries(self):
        """All solved (state, k) pairs (the reachable set once run from root)."""
        return self._qvalues.items()


@dataclass
class ValueTable:
    horizon: int
    restricted: bool
    values: dict
    actions: dict
    qvalues: dict

    def value(self, state: JointInfoState, k: int) -> float:
        return self.values[(state, k)]

    def action(self, state: JointInfoState, k: int) -> int:
        return self.actions[(state, k)]


def optimal_dp(P: TransitionMatrix, alpha: RewardVector, horizon: int,
               lag_cap: int = 16, restricted: bool = False) -> ValueTable:
    """Exact optimal policy over all states reachable from (Steady, Steady)."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if horizon > lag_cap:
        raise CapTooSmall(f"horizon {horizon} exceeds lag cap {lag_cap}")
    solver = DPSolver(P, alpha, lag_cap=lag_cap, restricted=restricted)
    solver.value(ROOT_STATE, horizon)
    return ValueTable(horizon, restricted,
                      dict(solver._values), dict(solver._actions),
                      dict(solver._qvalues))


def greedy_value(P: TransitionMatrix, alpha: RewardVector, horizon: int,
                 lag_cap: int = 16) -> float:
    """Total expected reward of following greedy_argmax from (Steady, Steady)."""
    solver = DPSolver(P, alpha, lag_cap=lag_cap, restricted=False)
    memo = {}

    def walk(state, k):
        if k <= 0:
            return 0.0
        key = (state, k)
        if key in memo:
            return memo[key]
        a = greedy_argmax(state, P, alpha).action
        mine = state.belief_of(a)
        theirs = solver._advance(state.belief_of(_other(a)))
        pi = solver._pi(mine)
        total = float(pi @ alpha.alpha)
        for f in (1, 2, 3):
            if pi[f - 1] == 0.0:
                continue
            if a == 1:
                nxt = JointInfoState(BeliefState(f, 0), theirs, 1)
            else:
                nxt = JointInfoState(theirs, BeliefState(f, 0), 2)
            total += pi[f - 1] * walk(nxt, k - 1)
        memo[key] = total
        return total

    return walk(ROOT_STATE, horizon)


@dataclass
class OptimalityReport:
    horizon: int
    restricted_gap: float
    unrestricted_gap: float
    agreement: float
    restricted_agreement: float
    counterexample: str | None = None

    def to_json_dict(self):
        return {
            "horizon": self.horizon,
            "restricted_gap": self.restricted_gap,
            "unrestricted_gap": self.unrestricted_gap,
            "agreement": self.agreement,
            "counterexample": self.counterexample,
        }


def _agreement(table: ValueTable, P, alpha, tol: float):
    """Fraction of solved states where the greedy action is optimal."""
    total = 0
    agree = 0
    counterexample = None
    for (state, k), qs in table.qvalues.items():
        total += 1
        g = greedy_argmax(state, P, alpha).action
        best = max(qs.values())
        if g in qs and qs[g] >= best - tol:
            agree += 1
        elif counterexample is None:
            counterexample = f"{state};k={k}"
    return (agree / total if total else 1.0), counterexample


def compare_greedy_vs_optimal(P: TransitionMatrix, alpha: RewardVector,
                              horizon: int, lag_cap: int = 16) -> OptimalityReport:
    """Measure how far greedy falls short of the exact DP optimum.

    Gaps are V_optimal - V_greedy at the root (nonnegative up to roundoff);
    agreement is over every reachable state of the respective table.  A
    positive unrestricted gap is reported as data, never raised: it would be
    a counterexample to global optimality of greedy, which is unproven.
    """
    tol = P.tol.algebraic
    restricted = optimal_dp(P, alpha, horizon, lag_cap, restricted=True)
    unrestricted = optimal_dp(P, alpha, horizon, lag_cap, restricted=False)
    vg = greedy_value(P, alpha, horizon, lag_cap)
    agreement, counterexample = _agreement(unrestricted, P, alpha, tol)
    restricted_agreement, r_counter = _agreement(restricted, P, alpha, tol)
    return OptimalityReport(
        horizon=horizon,
        restricted_gap=restricted.value(ROOT_STATE, horizon) - vg,
        unrestricted_gap=unrestricted.value(ROOT_STATE, horizon) - vg,
        agreement=agreement,
        restricted_agreement=restricted_agreement,
        counterexample=counterexample if counterexample else r_counter,
    )
