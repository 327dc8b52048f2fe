"""Seeded Monte Carlo engine for the two-user downlink.

Episodes consume counter-seeded uniform streams (master seed + episode
index), so results are independent of execution order and identical between
the compiled and pure-Python kernels.  The hot slot loop lives in the kernel
selected at import time; everything here is setup and aggregation.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .belief import BeliefState
from .bounds import bounds_report
from .channel import RewardVector, TransitionMatrix, reward_curve
from .policy import SystemType, classify_system

try:
    from . import _kernel as kernel
except ImportError:  # extension not built; same results, just slower
    from . import _kernel_py as kernel

from ._kernel_py import (GENIE, GREEDY_ARGMAX, GREEDY_STRUCTURED, RANDOM,
                         ROUND_ROBIN)

KERNEL_IMPL = kernel.IMPL

POLICY_CODES = {
    "greedy-structured": GREEDY_STRUCTURED,
    "greedy-argmax": GREEDY_ARGMAX,
    "genie": GENIE,
    "round-robin": ROUND_ROBIN,
    "random": RANDOM,
}
POLICY_NAMES = {v: k for k, v in POLICY_CODES.items()}


@dataclass(frozen=True)
class SimConfig:
    P: TransitionMatrix
    alpha: RewardVector
    policy: int = GREEDY_STRUCTURED
    horizon: int = 10_000
    episodes: int = 100
    seed: int = 0
    burn_in: int | None = None  # defaults to horizon // 10

    def __post_init__(self):
        if self.horizon < 1 or self.episodes < 1:
            raise ValueError("horizon and episodes must be positive")
        if self.burn_in is not None and self.burn_in >= self.horizon:
            raise ValueError("burn_in must be smaller than horizon")

    @property
    def effective_burn_in(self) -> int:
        return self.horizon // 10 if self.burn_in is None else self.burn_in


@dataclass(frozen=True)
class SimResult:
    eta_hat: float
    std_err: float
    episodes: int
    slots_accounted: int
    seed: int
    policy: str

    def to_json_dict(self):
        return {
            "eta_hat": self.eta_hat,
            "std_err": self.std_err,
            "episodes": self.episodes,
            "slots_accounted": self.slots_accounted,
            "seed": self.seed,
            "policy": self.policy,
        }


@dataclass
class EpisodeTrace:
    """Per-slot records: true states, action, feedback, reward, beliefs."""

    states: np.ndarray   # (horizon, 2) int32
    actions: np.ndarray  # (horizon,) int32
    feedback: np.ndarray  # (horizon,) int32
    rewards: np.ndarray  # (horizon,) float64
    beliefs: np.ndarray  # (horizon, 4) int32: o1, l1, o2, l2 at decision time
    episode_seed: int

    def belief_strings(self, t: int):
        o1, l1, o2, l2 = self.beliefs[t]
        b1 = BeliefState(int(o1), int(l1)).render()
        b2 = BeliefState(int(o2), int(l2)).render()
        return b1, b2

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["slot", "s1", "s2", "action", "feedback", "reward",
                        "belief1", "belief2"])
            for t in range(len(self.actions)):
                b1, b2 = self.belief_strings(t)
                w.writerow([t, self.states[t, 0], self.states[t, 1],
                            self.actions[t], self.feedback[t],
                            repr(float(self.rewards[t])), b1, b2])


def _kernel_inputs(config: SimConfig):
    P, alpha = config.P, config.alpha
    cap = P.clamp_lag
    cum_rows = np.ascontiguousarray(np.cumsum(P.P, axis=1))
    cum_ss = np.cumsum(P.steady_state)
    erew_obs = np.ascontiguousarray(
        np.vstack([reward_curve(P, alpha, j, cap) for j in (1, 2, 3)]))
    erew_ss = float(P.steady_state @ alpha.alpha)
    p2a = float(P.row(2) @ alpha.alpha)
    type1 = 1 if classify_system(P, alpha) is SystemType.TYPE_I else 0
    # fresh writable copy: the kernel memoryviews reject read-only buffers
    al = np.array(alpha.alpha, dtype=float)
    return cum_rows, cum_ss, al, erew_obs, erew_ss, p2a, type1, cap


def _episode_uniforms(config: SimConfig, episode_index: int):
    ss = np.random.SeedSequence((config.seed, episode_index))
    rng = np.random.Generator(np.random.PCG64(ss))
    u_init = rng.random(2)
    u_chain = rng.random((config.horizon, 2))
    u_act = rng.random(config.horizon)
    return u_init, u_chain, u_act


_DUMMY_TRACE = np.zeros((1, 8), dtype=np.int32)


def _run_kernel(config, inputs, episode_index, trace_out=None):
    cum_rows, cum_ss, al, erew_obs, erew_ss, p2a, type1, cap = inputs
    u_init, u_chain, u_act = _episode_uniforms(config, episode_index)
    trace = trace_out is not None
    return kernel.run_slots(
        config.policy, config.horizon, config.effective_burn_in,
        cum_rows, cum_ss, al,
        erew_obs, erew_ss, p2a, type1, cap,
        u_init, u_chain, u_act,
        1 if trace else 0, trace_out if trace else _DUMMY_TRACE)


def run_episode(config: SimConfig, episode_index: int = 0) -> EpisodeTrace:
    """Simulate one traced episode; deterministic given (seed, index)."""
    inputs = _kernel_inputs(config)
    out = np.zeros((config.horizon, 8), dtype=np.int32)
    _run_kernel(config, inputs, episode_index, trace_out=out)
    rewards = np.asarray(config.alpha.alpha)[out[:, 3] - 1]
    return EpisodeTrace(states=out[:, 0:2], actions=out[:, 2],
                        feedback=out[:, 3], rewards=rewards,
                        beliefs=out[:, 4:8], episode_seed=episode_index)


def estimate_sum_reward(config: SimConfig) -> SimResult:
    """Per-slot sum reward estimate with a standard error across episodes."""
    inputs = _kernel_inputs(config)
    slots = config.horizon - config.effective_burn_in
    means = np.empty(config.episodes)
    for ep in range(config.episodes):
        means[ep] = _run_kernel(config, inputs, ep) / slots
    eta = float(means.mean())
    if config.episodes > 1:
        se = float(means.std(ddof=1) / np.sqrt(config.episodes))
    else:
        se = 0.0
    return SimResult(eta, se, config.episodes, slots * config.episodes,
                     config.seed, POLICY_NAMES[config.policy])


def sandwich_check(P: TransitionMatrix, alpha: RewardVector,
                   horizon: int = 10_000, episodes: int = 100,
                   seed: int = 0, burn_in: int | None = None) -> dict:
    """Simulated greedy and genie rewards against the closed-form bounds.

    Margins are in standard-error units; an inequality passes when it holds
    with 3 standard errors of slack.
    """
    report = bounds_report(P, alpha)
    greedy = estimate_sum_reward(SimConfig(P, alpha, GREEDY_STRUCTURED,
                                           horizon, episodes, seed, burn_in))
    genie = estimate_sum_reward(SimConfig(P, alpha, GENIE,
                                          horizon, episodes, seed, burn_in))

    def entry(label, lhs, rhs, se):
        margin = (rhs - lhs) / se if se > 0 else float("inf")
        return {"check": label, "lhs": lhs, "rhs": rhs,
                "margin_sigma": margin, "passed": bool(margin >= -3.0)}

    combined = float(np.hypot(greedy.std_err, genie.std_err))
    gap = (abs(genie.eta_hat - report.upper) / genie.std_err
           if genie.std_err > 0 else 0.0)
    checks = [
        entry("lower <= greedy", report.lower, greedy.eta_hat, greedy.std_err),
        entry("greedy <= upper", greedy.eta_hat, report.upper, greedy.std_err),
        entry("greedy <= genie", greedy.eta_hat, genie.eta_hat, combined),
        {"check": "genie matches upper", "lhs": genie.eta_hat,
         "rhs": report.upper, "margin_sigma": gap, "passed": bool(gap <= 3.0)},
    ]
    return {
        "type": report.system.value,
        "lower": report.lower,
        "upper": report.upper,
        "greedy": greedy.to_json_dict(),
        "genie": genie.to_json_dict(),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def simulate_reduced_two_state(reduced, alpha_bad: float, alpha_good: float,
                               horizon: int = 10_000, episodes: int = 100,
                               seed: int = 0,
                               burn_in: int | None = None) -> SimResult:
    """Greedy scheduling on the merged two-state system, vectorized.

    `reduced` is the 2x2 matrix with row/column 1 = bad state, row/column 2 =
    the merged good state.  Greedy here is retain-on-good / switch-on-bad.
    """
    Q = np.asarray(reduced, dtype=float)
    burn = horizon // 10 if burn_in is None else burn_in
    p_good_stay = Q[1, 1]
    p_bad_to_good = Q[0, 1]
    pi_good = p_bad_to_good / (p_bad_to_good + (1.0 - p_good_stay))

    ss = np.random.SeedSequence((seed, 0x2d2d))
    rng = np.random.Generator(np.random.PCG64(ss))
    good1 = rng.random(episodes) < pi_good
    good2 = rng.random(episodes) < pi_good
    sched = np.zeros(episodes, dtype=np.int8)  # 0 = user 1, 1 = user 2
    totals = np.zeros(episodes)

    for t in range(horizon):
        fb_good = np.where(sched == 0, good1, good2)
        if t >= burn:
            totals += np.where(fb_good, alpha_good, alpha_bad)
        sched = np.where(fb_good, sched, 1 - sched)
        u = rng.random((episodes, 2))
        good1 = np.where(good1, u[:, 0] < p_good_stay, u[:, 0] < p_bad_to_good)
        good2 = np.where(good2, u[:, 1] < p_good_stay, u[:, 1] < p_bad_to_good)

    means = totals / (horizon - burn)
    eta = float(means.mean())
    se = float(means.std(ddof=1) / np.sqrt(episodes)) if episodes > 1 else 0.0
    return SimResult(eta, se, episodes, (horizon - burn) * episodes, seed,
                     "reduced-two-state")
