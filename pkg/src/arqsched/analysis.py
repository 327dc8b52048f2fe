"""Numerical verifiers for the structural results the policies rely on.

Each verifier checks an inequality family over lags on the symbolic belief
lattice and reports the worst margin with a witness, instead of proving
anything symbolically.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import RewardVector, TransitionMatrix, reward_curve, steady_reward
from .policy import NotTypeI, SystemType, classify_system, threshold_L

E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


class ConditionAFailed(ValueError):
    """Verifier precondition: the state-3 contraction condition must hold."""


class Prop12ConditionsFailed(ValueError):
    """Verifier precondition: equal middle column + cross-product inequality."""


@dataclass(frozen=True)
class VerificationReport:
    name: str
    passed: bool
    max_violation: float
    witness: str = ""

    def to_json_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "max_violation": self.max_violation,
            "witness": self.witness,
        }


def _report(name, violations, tol):
    """violations: list of (magnitude, witness) where positive means broken."""
    worst, witness = 0.0, ""
    for mag, wit in violations:
        if mag > worst:
            worst, witness = float(mag), wit
    return VerificationReport(name, bool(worst <= tol), worst, witness)


def verify_reward_ordering(P: TransitionMatrix, alpha: RewardVector,
                           k_max: int = 64) -> VerificationReport:
    """r_1(k) <= r_2(k) <= r_3(k) for every lag k."""
    r1 = reward_curve(P, alpha, 1, k_max)
    r2 = reward_curve(P, alpha, 2, k_max)
    r3 = reward_curve(P, alpha, 3, k_max)
    violations = []
    for k in range(k_max + 1):
        violations.append((r1[k] - r2[k], f"r1>r2 at k={k}"))
        violations.append((r2[k] - r3[k], f"r2>r3 at k={k}"))
    return _report("reward_ordering", violations, P.tol.algebraic)


def verify_monotone_curves(P: TransitionMatrix, alpha: RewardVector,
                           k_max: int = 64) -> VerificationReport:
    """r_3 nonincreasing, r_1 nondecreasing, all limits at p_ss alpha."""
    r1 = reward_curve(P, alpha, 1, k_max)
    r2 = reward_curve(P, alpha, 2, k_max)
    r3 = reward_curve(P, alpha, 3, k_max)
    pssa = steady_reward(P, alpha)
    violations = []
    for k in range(k_max):
        violations.append((r3[k + 1] - r3[k], f"r3 rose at k={k}"))
        violations.append((r1[k] - r1[k + 1], f"r1 fell at k={k}"))
    tol = P.tol.algebraic
    # Limit checks carry their own coarser tolerance; scale them onto the
    # monotonicity scale so one report covers both.
    scale = tol / P.tol.limit
    for name, curve in (("r1", r1), ("r2", r2), ("r3", r3)):
        violations.append((abs(curve[k_max] - pssa) * scale,
                           f"{name} limit off at k={k_max}"))
    return _report("monotone_curves", violations, tol)


def condition_a_margin(P: TransitionMatrix) -> float:
    """p_23 - p_2 P [0 0 1]^T; the condition holds iff nonnegative."""
    return float(P.P[1, 2] - P.row(2) @ P.P @ E3)


def check_condition_A(P: TransitionMatrix, k_max: int = 64):
    """Margin plus a check that the sequence p_2 P^k [0 0 1]^T is
    nonincreasing exactly when the margin is nonnegative.

    A negative margin means the first step rises, which already breaks
    nonincreasing; the sequence need not be globally nondecreasing after
    that (it can overshoot the steady value and come back down).
    """
    margin = condition_a_margin(P)
    seq = _projection_sequence(P, 2, E3, k_max)
    tol = P.tol.algebraic
    diffs = np.diff(seq)
    nonincreasing = bool(np.all(diffs <= tol))
    if margin >= 0.0:
        direction_ok = nonincreasing
        limit_ok = seq[-1] <= P.P[1, 2] + P.tol.limit
    else:
        direction_ok = not nonincreasing
        limit_ok = True
    return {
        "holds": margin >= 0.0,
        "margin": margin,
        "direction_consistent": direction_ok,
        "limit_ok": bool(limit_ok),
    }


def verify_lemma11(P: TransitionMatrix, k_max: int = 64) -> VerificationReport:
    """Under the contraction condition, p_1 P^k [0 0 1]^T rises to p_ss(3)."""
    if condition_a_margin(P) < 0.0:
        raise ConditionAFailed("state-3 contraction condition does not hold")
    seq = _projection_sequence(P, 1, E3, k_max)
    violations = [(seq[k] - seq[k + 1], f"fell at k={k}") for k in range(k_max)]
    scale = P.tol.algebraic / P.tol.limit
    violations.append((abs(seq[k_max] - float(P.steady_state[2])) * scale,
                       "limit off"))
    violations.append(((float(P.steady_state[2]) - P.P[1, 2]) * scale,
                       "p_ss(3) above p_23"))
    return _report("lemma11_state3_rise", violations, P.tol.algebraic)


def _projection_sequence(P: TransitionMatrix, origin: int, e, k_max: int):
    out = np.empty(k_max + 1)
    v = P.row(origin).copy()
    for k in range(k_max + 1):
        out[k] = float(v @ e)
        v = v @ P.P
    return out


def check_prop12_conditions(P: TransitionMatrix) -> bool:
    """Equal middle column and p_23 p_31 >= p_21 p_13, both exact."""
    tol = P.tol.algebraic
    M = P.P
    equal_column = (abs(M[0, 1] - M[1, 1]) <= tol
                    and abs(M[1, 1] - M[2, 1]) <= tol)
    cross = M[1, 2] * M[2, 0] >= M[1, 0] * M[0, 2] - tol
    if not (equal_column and cross):
        return False
    # Derived consequences, asserted because downstream verifiers rely on them.
    assert abs(float(P.steady_state[1]) - M[1, 1]) <= P.tol.limit, \
        "equal middle column should force p_ss(2) = p_22"
    assert condition_a_margin(P) >= -tol, \
        "these conditions should imply the state-3 contraction condition"
    assert float(P.steady_state[2]) <= M[1, 2] + P.tol.limit
    return True


def _cross_margin(pi_hat, pi_tilde) -> float:
    """Condition (S) slack: pi_hat(3) pi_tilde(2) - pi_hat(2) pi_tilde(3)."""
    return float(pi_hat[2] * pi_tilde[1] - pi_hat[1] * pi_tilde[2])


def verify_condition_S(P: TransitionMatrix, alpha: RewardVector,
                       k_max: int = 64):
    """Check the cross-product inequality over the six reachable belief-pair
    families, plus the middle-column symmetry identity.

    Families (hat = greedy choice, tilde = the other user):
      1. hat = p_3, tilde = p_i P^k or p_ss
      2. tilde = p_1, hat = p_i P^k or p_ss
      3. hat = p_2, tilde = p_1 P^k
      4. hat = p_2, tilde = p_2 P^k
      5. hat = p_2, tilde = p_3 P^k with k >= L
      6. hat = p_3 P^k with k < L, tilde = p_2
    Lags run 1..k_max.  Returns a list of per-case VerificationReports plus
    the symmetry report.
    """
    if not check_prop12_conditions(P):
        raise Prop12ConditionsFailed("equal-middle-column conditions not met")
    tol = P.tol.algebraic
    L = threshold_L(P, alpha)  # Type I is guaranteed by the conditions

    rows = {i: P.row(i) for i in (1, 2, 3)}
    decayed = {i: [] for i in (1, 2, 3)}  # decayed[i][k-1] = p_i P^k
    for i in (1, 2, 3):
        v = rows[i].copy()
        for _ in range(k_max):
            v = v @ P.P
            decayed[i].append(v)

    def family(name, pairs):
        violations = [(-_cross_margin(h, t), wit) for h, t, wit in pairs]
        return _report(name, violations, tol)

    reports = []
    pss = P.steady_state
    case1 = [(rows[3], decayed[i][k - 1], f"i={i},k={k}")
             for i in (1, 2, 3) for k in range(1, k_max + 1)]
    case1.append((rows[3], pss, "tilde=steady"))
    reports.append(family("condition_S_case1", case1))

    case2 = [(decayed[i][k - 1], rows[1], f"i={i},k={k}")
             for i in (1, 2, 3) for k in range(1, k_max + 1)]
    case2.append((pss, rows[1], "hat=steady"))
    reports.append(family("condition_S_case2", case2))

    reports.append(family("condition_S_case3",
                          [(rows[2], decayed[1][k - 1], f"k={k}")
                           for k in range(1, k_max + 1)]))
    reports.append(family("condition_S_case4",
                          [(rows[2], decayed[2][k - 1], f"k={k}")
                           for k in range(1, k_max + 1)]))

    lo5 = 1 if L is math.inf else max(1, int(L))
    case5 = ([] if L is math.inf else
             [(rows[2], decayed[3][k - 1], f"k={k}")
              for k in range(lo5, k_max + 1)])
    reports.append(family("condition_S_case5", case5))

    hi6 = k_max if L is math.inf else min(k_max, int(L) - 1)
    case6 = [(decayed[3][k - 1], rows[2], f"k={k}")
             for k in range(1, hi6 + 1)]
    reports.append(family("condition_S_case6", case6))

    sym_violations = []
    c = float(P.P[1, 1])
    for i in (1, 2, 3):
        for k in range(1, k_max + 1):
            sym_violations.append((abs(float(decayed[i][k - 1] @ E2) - c),
                                   f"i={i},k={k}"))
    reports.append(_report("middle_column_symmetry", sym_violations, tol))

    # Contraction factor used by the value-difference recursion.
    factor = float(P.P[2, 2] * P.P[1, 1] - P.P[1, 2] * P.P[2, 1])
    reports.append(_report("value_contraction_factor",
                           [(-factor, "p33*p22 - p23*p32 < 0")], tol))
    return reports


@dataclass(frozen=True)
class EquivalenceMode:
    mode: str  # "merge23", "synonymous12", or "none"
    reduced_matrix: tuple | None = None

    def to_json_dict(self):
        return {"mode": self.mode, "reduced_matrix": self.reduced_matrix}


def detect_equivalence_mode(P: TransitionMatrix,
                            alpha: RewardVector) -> EquivalenceMode:
    """Detect when the feedback system matches the genie-aided system.

    merge23: alpha2 = alpha3 and p21 = p31 (states 2 and 3 collapse into one
    good state with the 2x2 reduced matrix).  synonymous12: alpha2 = alpha3
    and p11 = p21 (no true merger, but the scheduling decisions coincide).
    merge23 wins if both hold.
    """
    tol = P.tol.algebraic
    M = P.P
    if abs(alpha.alpha[1] - alpha.alpha[2]) > tol:
        return EquivalenceMode("none")
    if abs(M[1, 0] - M[2, 0]) <= tol:
        reduced = ((float(M[0, 0]), float(M[0, 1] + M[0, 2])),
                   (float(M[1, 0]), float(M[1, 1] + M[1, 2])))
        return EquivalenceMode("merge23", reduced)
    if abs(M[0, 0] - M[1, 0]) <= tol:
        return EquivalenceMode("synonymous12")
    return EquivalenceMode("none")
