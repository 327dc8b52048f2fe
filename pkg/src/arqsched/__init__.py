"""Greedy ARQ-feedback scheduling for a two-user three-state Markov downlink.

Subpackages: channel (validated matrices), belief (lag-indexed beliefs),
policy (greedy / genie / exact DP), bounds (closed-form capacity bounds),
analysis (numerical verifiers), sim (seeded Monte Carlo), cli (entry point).
The simulation slot loop runs in a compiled kernel when available; import
`sim.KERNEL_IMPL` to see which one is active.
"""

from .belief import STEADY, BeliefState, advance, expected_reward, materialize, observe
from .channel import (ChannelError, DegenerateChain, NotStochastic,
                      OrderingViolation, RewardVector, TransitionMatrix,
                      is_regular, n_step, reward_curve, steady_reward,
                      steady_state, validate_matrix)
from .policy import (JointInfoState, PolicyDecision, SystemType,
                     classify_system, compare_greedy_vs_optimal, genie_decide,
                     greedy_argmax, greedy_structured, optimal_dp, threshold_L)
from .sim import KERNEL_IMPL, SimConfig, SimResult, estimate_sum_reward, run_episode

__version__ = "0.1.0"
