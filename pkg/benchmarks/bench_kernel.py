"""Benchmark the compiled slot kernel against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernel.py [--horizon N] [--episodes N]

Prints slots-per-second for each implementation and the speedup, and checks
that both produce identical totals on the benchmarked workload.
"""

import argparse
import time

import numpy as np

from arqsched import _kernel_py
from arqsched.channel import RewardVector, validate_matrix
from arqsched.sim import SimConfig, _episode_uniforms, _kernel_inputs

try:
    from arqsched import _kernel as _kernel_c
except ImportError:
    _kernel_c = None

P_BENCH = [[0.8, 0.15, 0.05], [0.1, 0.7, 0.2], [0.05, 0.15, 0.8]]
DUMMY = np.zeros((1, 8), dtype=np.int32)


def run(kernel, cfg, inputs):
    cum_rows, cum_ss, al, erew_obs, erew_ss, p2a, type1, cap = inputs
    total = 0.0
    start = time.perf_counter()
    for ep in range(cfg.episodes):
        u_init, u_chain, u_act = _episode_uniforms(cfg, ep)
        total += kernel.run_slots(cfg.policy, cfg.horizon,
                                  cfg.effective_burn_in, cum_rows, cum_ss, al,
                                  erew_obs, erew_ss, p2a, type1, cap,
                                  u_init, u_chain, u_act, 0, DUMMY)
    return total, time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=int, default=100_000)
    ap.add_argument("--episodes", type=int, default=10)
    args = ap.parse_args()

    cfg = SimConfig(validate_matrix(P_BENCH), RewardVector((0.0, 0.5, 1.0)),
                    horizon=args.horizon, episodes=args.episodes, seed=0)
    inputs = _kernel_inputs(cfg)
    slots = cfg.horizon * cfg.episodes

    total_py, t_py = run(_kernel_py, cfg, inputs)
    print(f"python : {t_py:8.3f}s  {slots / t_py:12.0f} slots/s")
    if _kernel_c is None:
        print("cython : extension not built (pure-Python fallback active)")
        return
    total_c, t_c = run(_kernel_c, cfg, inputs)
    print(f"cython : {t_c:8.3f}s  {slots / t_c:12.0f} slots/s")
    print(f"speedup: {t_py / t_c:.1f}x")
    assert total_c == total_py, "kernel implementations disagree"
    print("totals identical across implementations")


if __name__ == "__main__":
    main()
