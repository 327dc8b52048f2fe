"""Command line front end.

One instance JSON file ({"P": [[...]], "alpha": [...], ...}) feeds every
subcommand.  Results go to stdout as JSON; curve and trace exports go to
--out paths as CSV.  Exit codes: 0 success, 2 invalid instance, 3 check
failure, 4 usage error.
"""

import argparse
import json
import math
import sys

from . import analysis, bounds, channel, policy, sim

EXIT_OK = 0
EXIT_INVALID_INSTANCE = 2
EXIT_CHECK_FAILURE = 3
EXIT_USAGE = 4


class CliError(Exception):
    def __init__(self, message, code, error="UsageError"):
        super().__init__(message)
        self.code = code
        self.error = error


def _emit(doc):
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _fail(error, message, code):
    _emit({"error": error, "message": message})
    return code


def _load_instance(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read instance file: {exc}",
                       EXIT_INVALID_INSTANCE, "InvalidInstance")
    if "P" not in doc or "alpha" not in doc:
        raise CliError("instance file needs 'P' and 'alpha'",
                       EXIT_INVALID_INSTANCE, "InvalidInstance")
    try:
        P = channel.validate_matrix(doc["P"])
        alpha = channel.RewardVector(doc["alpha"])
    except (channel.ChannelError, ValueError) as exc:
        raise CliError(str(exc), EXIT_INVALID_INSTANCE, type(exc).__name__)
    return doc, P, alpha


def _threshold_json(P, alpha):
    if policy.classify_system(P, alpha) is not policy.SystemType.TYPE_I:
        return None
    L = policy.threshold_L(P, alpha)
    return "inf" if L is math.inf else int(L)


def cmd_validate(args):
    _, P, _ = _load_instance(args.instance)
    _emit({
        "valid": True,
        "steady_state": P.steady_state.tolist(),
        "clamp_lag": P.clamp_lag,
        "regularity_exponent": P.regularity_exponent(),
    })
    return EXIT_OK


def cmd_steady_state(args):
    _, P, _ = _load_instance(args.instance)
    _emit({"steady_state": P.steady_state.tolist()})
    return EXIT_OK


def cmd_classify(args):
    _, P, alpha = _load_instance(args.instance)
    _emit({
        "type": policy.classify_system(P, alpha).value,
        "p2_alpha": float(P.row(2) @ alpha.alpha),
        "pss_alpha": channel.steady_reward(P, alpha),
        "threshold_L": _threshold_json(P, alpha),
    })
    return EXIT_OK


def cmd_curves(args):
    _, P, alpha = _load_instance(args.instance)
    k_max = args.kmax if args.kmax is not None else 64
    curves = {i: channel.reward_curve(P, alpha, i, k_max) for i in (1, 2, 3)}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("k,r1,r2,r3\n")
            for k in range(k_max + 1):
                fh.write("%d,%.12g,%.12g,%.12g\n"
                         % (k, curves[1][k], curves[2][k], curves[3][k]))
    _emit({
        "kmax": k_max,
        "out": args.out,
        "pss_alpha": channel.steady_reward(P, alpha),
        "p2_alpha": float(P.row(2) @ alpha.alpha),
        "threshold_L": _threshold_json(P, alpha),
    })
    return EXIT_OK


def cmd_bounds(args):
    _, P, alpha = _load_instance(args.instance)
    _emit(bounds.bounds_report(P, alpha).to_json_dict())
    return EXIT_OK


def _sim_config(doc, args, P, alpha):
    block = doc.get("sim", {})
    name = args.policy or block.get("policy", "greedy-structured")
    if name == "greedy":
        name = "greedy-structured"
    if name not in sim.POLICY_CODES:
        raise CliError(f"unknown policy '{name}'", EXIT_USAGE)
    horizon = args.horizon or block.get("horizon", 10_000)
    episodes = args.episodes or block.get("episodes", 100)
    seed = args.seed if args.seed is not None else block.get("seed", 0)
    burn_in = args.burn_in if args.burn_in is not None else block.get("burn_in")
    return sim.SimConfig(P, alpha, sim.POLICY_CODES[name],
                         horizon, episodes, seed, burn_in)


def cmd_simulate(args):
    doc, P, alpha = _load_instance(args.instance)
    config = _sim_config(doc, args, P, alpha)
    result = sim.estimate_sum_reward(config)
    if args.out:
        sim.run_episode(config, 0).write_csv(args.out)
    _emit(result.to_json_dict())
    return EXIT_OK


def cmd_sandwich(args):
    doc, P, alpha = _load_instance(args.instance)
    config = _sim_config(doc, args, P, alpha)
    report = sim.sandwich_check(P, alpha, config.horizon, config.episodes,
                                config.seed, config.burn_in)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILURE


def cmd_compare_optimal(args):
    doc, P, alpha = _load_instance(args.instance)
    block = doc.get("dp", {})
    horizon = args.horizon or block.get("horizon", 4)
    lag_cap = block.get("lag_cap", 16)
    try:
        report = policy.compare_greedy_vs_optimal(P, alpha, horizon, lag_cap)
    except policy.CapTooSmall as exc:
        raise CliError(str(exc), EXIT_USAGE)
    _emit(report.to_json_dict())
    return EXIT_OK


def cmd_verify(args):
    doc, P, alpha = _load_instance(args.instance)
    block = doc.get("verify", {})
    k_max = args.kmax or block.get("k_max", 64)
    reports = [
        analysis.verify_reward_ordering(P, alpha, k_max),
        analysis.verify_monotone_curves(P, alpha, k_max),
    ]
    cond_a = analysis.check_condition_A(P, k_max)
    reports.append(analysis.VerificationReport(
        "condition_A_direction", cond_a["direction_consistent"],
        0.0 if cond_a["direction_consistent"] else abs(cond_a["margin"]),
        f"margin={cond_a['margin']:.6g}, holds={cond_a['holds']}"))
    if cond_a["holds"]:
        reports.append(analysis.verify_lemma11(P, k_max))
    if analysis.check_prop12_conditions(P):
        reports.extend(analysis.verify_condition_S(P, alpha, k_max))
    docs = [r.to_json_dict() for r in reports]
    mode = analysis.detect_equivalence_mode(P, alpha)
    docs.append({"name": "equivalence_mode", "passed": True,
                 "max_violation": 0.0, "witness": mode.mode})
    _emit(docs)
    failed = [r for r in reports if not r.passed]
    return EXIT_CHECK_FAILURE if failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="arqsched",
        description="Greedy ARQ-feedback scheduling for a two-user "
                    "three-state Markov downlink")
    sub = parser.add_subparsers(dest="command")
    commands = {
        "validate": cmd_validate,
        "steady-state": cmd_steady_state,
        "classify": cmd_classify,
        "curves": cmd_curves,
        "bounds": cmd_bounds,
        "simulate": cmd_simulate,
        "sandwich": cmd_sandwich,
        "compare-optimal": cmd_compare_optimal,
        "verify": cmd_verify,
    }
    for name, fn in commands.items():
        p = sub.add_parser(name)
        p.add_argument("instance", help="instance JSON file")
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--kmax", type=int, default=None)
        p.add_argument("--horizon", type=int, default=None)
        p.add_argument("--episodes", type=int, default=None)
        p.add_argument("--burn-in", type=int, default=None)
        p.add_argument("--policy", default=None)
        p.add_argument("--restricted", choices=("true", "false"), default=None)
        p.set_defaults(func=fn)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args, unknown = parser.parse_known_args(argv)
    except SystemExit as exc:
        if exc.code and exc.code != 0:
            return _fail("UsageError", "invalid command line", EXIT_USAGE)
        return EXIT_OK  # --help and friends
    if unknown:
        return _fail("UsageError", f"unknown arguments: {unknown}", EXIT_USAGE)
    if not getattr(args, "func", None):
        return _fail("UnknownCommand", "no subcommand given", EXIT_USAGE)
    try:
        return args.func(args)
    except CliError as exc:
        return _fail(exc.error, str(exc), exc.code)
    except (channel.ChannelError, policy.NotTypeI,
            bounds.NotTypeI, bounds.NotTypeII,
            analysis.ConditionAFailed, analysis.Prop12ConditionsFailed) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_INVALID_INSTANCE)


if __name__ == "__main__":
    sys.exit(main())
