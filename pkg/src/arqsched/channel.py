"""Validated three-state channel matrices and their derived quantities.

State 1 is the weakest channel, state 3 the strongest.  Admission enforces
row-stochasticity, the positive-correlation / smooth-evolution orderings

    p11 >= p21 >= p31,   p22 >= p12 >= p32,   p33 >= p23 >= p13,

and the positivity constraints that guarantee a unique all-positive steady
state (diagonal entries, p12, p21, p23 all positive; p31 and p32 not both
zero).  Under these constraints P^2 is entrywise positive, so the chain is
regular with regularity exponent at most 2.
"""

import numpy as np

from .config import DEFAULT_TOL, Tolerances


class ChannelError(ValueError):
    """Base class for matrix admission failures."""


class NotStochastic(ChannelError):
    """A row does not sum to 1 or an entry is outside [0, 1]."""


class OrderingViolation(ChannelError):
    """One of the column ordering constraints fails."""


class DegenerateChain(ChannelError):
    """A positivity constraint needed for an all-positive steady state fails."""


# (name, (i, j) of larger entry, (i, j) of smaller entry), 1-based
_ORDERINGS = [
    ("p11 >= p21", (1, 1), (2, 1)),
    ("p21 >= p31", (2, 1), (3, 1)),
    ("p22 >= p12", (2, 2), (1, 2)),
    ("p12 >= p32", (1, 2), (3, 2)),
    ("p33 >= p23", (3, 3), (2, 3)),
    ("p23 >= p13", (2, 3), (1, 3)),
]

_MUST_BE_POSITIVE = [(1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (2, 3)]


class TransitionMatrix:
    """Immutable validated 3x3 transition matrix.

    Matrix powers up to the lag cap are precomputed at construction, so all
    reads are lock-free and the instance can be shared freely across tasks.
    """

    def __init__(self, raw, tol: Tolerances = DEFAULT_TOL):
        P = np.asarray(raw, dtype=float)
        if P.shape != (3, 3):
            raise NotStochastic(f"expected a 3x3 matrix, got shape {P.shape}")
        if np.any(P < 0.0) or np.any(P > 1.0):
            raise NotStochastic("entries must lie in [0, 1]")
        row_sums = P.sum(axis=1)
        if np.max(np.abs(row_sums - 1.0)) > tol.algebraic:
            raise NotStochastic(f"row sums {row_sums} differ from 1")

        for name, big, small in _ORDERINGS:
            if P[big[0] - 1, big[1] - 1] < P[small[0] - 1, small[1] - 1]:
                raise OrderingViolation(f"ordering {name} violated")
        for i, j in _MUST_BE_POSITIVE:
            if P[i - 1, j - 1] <= 0.0:
                raise DegenerateChain(f"p{i}{j} must be positive")
        if P[2, 0] == 0.0 and P[2, 1] == 0.0:
            raise DegenerateChain("p31 and p32 cannot both be zero")

        P.setflags(write=False)
        self.P = P
        self.tol = tol
        self.steady_state = _stationary(P, tol)
        self._powers = [np.eye(3)]
        for _ in range(tol.lag_cap):
            Pk = self._powers[-1] @ P
            Pk.setflags(write=False)
            self._powers.append(Pk)
        self.clamp_lag = self._find_clamp_lag()

    def _find_clamp_lag(self):
        target = np.tile(self.steady_state, (3, 1))
        for k, Pk in enumerate(self._powers):
            if np.max(np.abs(Pk - target)) <= self.tol.convergence:
                return k
        return self.tol.lag_cap

    def n_step(self, k: int):
        """P^k (P^0 is the identity); memoized up to the lag cap."""
        if k < 0:
            raise ValueError("power must be nonnegative")
        if k <= self.tol.lag_cap:
            return self._powers[k]
        return self._powers[-1] @ np.linalg.matrix_power(self.P, k - self.tol.lag_cap)

    def row(self, i: int):
        """The belief vector p_i right after state i was observed (1-based)."""
        return self.P[i - 1]

    def regularity_exponent(self) -> int:
        """Smallest r with P^r entrywise positive; at most 2 for admitted P."""
        if np.all(self.P > 0.0):
            return 1
        return 2

    def __repr__(self):
        return f"TransitionMatrix({self.P.tolist()})"


class RewardVector:
    """Nondecreasing nonnegative per-state reward (alpha1, alpha2, alpha3)."""

    def __init__(self, values=(0.0, 0.5, 1.0)):
        a = np.asarray(values, dtype=float)
        if a.shape != (3,):
            raise ValueError("reward vector must have 3 entries")
        if a[0] < 0.0 or a[0] > a[1] or a[1] > a[2]:
            raise ValueError(f"rewards must satisfy 0 <= a1 <= a2 <= a3, got {a}")
        a.setflags(write=False)
        self.alpha = a

    def __repr__(self):
        return f"RewardVector({self.alpha.tolist()})"


def _stationary(P, tol):
    # Solve pi (P - I) = 0 with sum(pi) = 1 as an overdetermined system.
    A = np.vstack([(P - np.eye(3)).T, np.ones(3)])
    b = np.array([0.0, 0.0, 0.0, 1.0])
    pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.any(pi <= 0.0):
        raise DegenerateChain(f"steady state {pi} not entrywise positive")
    if np.max(np.abs(pi @ P - pi)) > tol.algebraic:
        raise DegenerateChain("stationary solve failed to converge")
    return pi


def validate_matrix(raw, tol: Tolerances = DEFAULT_TOL) -> TransitionMatrix:
    """Admit a raw 3x3 matrix, or raise the specific admission error."""
    return TransitionMatrix(raw, tol)


def steady_state(P: TransitionMatrix):
    """Stationary vector pi with pi P = pi, entrywise positive, summing to 1."""
    return P.steady_state


def n_step(P: TransitionMatrix, k: int):
    return P.n_step(k)


def is_regular(P: TransitionMatrix) -> int:
    return P.regularity_exponent()


def reward_curve(P: TransitionMatrix, alpha: RewardVector, origin: int, k_max: int):
    """Expected-reward decay curve r_origin(k) = p_origin P^k alpha, k = 0..k_max.

    r_3 is nonincreasing, r_1 nondecreasing, and all three curves share the
    limit p_ss alpha.
    """
    if origin not in (1, 2, 3):
        raise ValueError("origin state must be 1, 2, or 3")
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    out = np.empty(k_max + 1)
    v = P.row(origin).copy()
    for k in range(k_max + 1):
        out[k] = v @ alpha.alpha
        v = v @ P.P
    return out


def steady_reward(P: TransitionMatrix, alpha: RewardVector) -> float:
    """p_ss alpha, the reward expected with no past observation."""
    return float(P.steady_state @ alpha.alpha)


# --- random instance generators (test / verification support) ---------------

# Diagonal-heavy Dirichlet concentrations keep the rejection rate workable
# while still covering the admissible region broadly.
_ROW_CONC = np.array([[4.0, 2.0, 1.0], [1.5, 4.0, 1.5], [1.0, 2.0, 4.0]])


def _mixes_fast_enough(P, tol):
    # Reject chains whose memory survives past the lag cap: the clamping rule
    # (and every limit check at the cap) presumes convergence by then.
    lam = np.sort(np.abs(np.linalg.eigvals(P)))[1]
    return lam ** tol.lag_cap <= tol.convergence


def random_valid_matrix(rng, tol: Tolerances = DEFAULT_TOL, max_tries: int = 100000):
    """Rejection-sample an admissible transition matrix that mixes within
    the lag cap."""
    for _ in range(max_tries):
        P = np.vstack([rng.dirichlet(_ROW_CONC[i]) for i in range(3)])
        if not _mixes_fast_enough(P, tol):
            continue
        try:
            return validate_matrix(P, tol)
        except ChannelError:
            continue
    raise RuntimeError("random matrix generation failed to find a valid sample")


def random_reward(rng, allow_positive_floor: bool = False) -> RewardVector:
    """Random nondecreasing reward; normalized (0, u, 1) unless floored."""
    if allow_positive_floor and rng.random() < 0.5:
        return RewardVector(np.sort(rng.random(3)))
    return RewardVector((0.0, float(rng.random()), 1.0))


def random_equal_middle_column_matrix(rng, tol: Tolerances = DEFAULT_TOL,
                                      require_cross_product: bool = True,
                                      max_tries: int = 100000):
    """Random valid matrix with an equal middle column (p12 = p22 = p32).

    With require_cross_product, also enforces p23 p31 >= p21 p13, which
    together with the equal column triggers the restricted-class optimality
    structure.
    """
    for _ in range(max_tries):
        c = rng.uniform(0.05, 0.6)
        x = np.sort(rng.random(3))[::-1]  # x1 >= x2 >= x3, column-1 shares
        P = np.empty((3, 3))
        P[:, 0] = (1.0 - c) * x
        P[:, 1] = c
        P[:, 2] = (1.0 - c) * (1.0 - x)
        if require_cross_product and P[1, 2] * P[2, 0] < P[1, 0] * P[0, 2]:
            continue
        if not _mixes_fast_enough(P, tol):
            continue
        try:
            return validate_matrix(P, tol)
        except ChannelError:
            continue
    raise RuntimeError("equal-middle-column generation failed")


def random_merge_equivalence_matrix(rng, tol: Tolerances = DEFAULT_TOL,
                                    max_tries: int = 100000):
    """Random valid matrix with p21 = p31 (states 2 and 3 mergeable when
    alpha2 = alpha3)."""
    for _ in range(max_tries):
        row1 = rng.dirichlet(_ROW_CONC[0])
        row2 = rng.dirichlet(_ROW_CONC[1])
        y = rng.uniform(0.0, 1.0 - row2[0])
        row3 = np.array([row2[0], y, 1.0 - row2[0] - y])
        P = np.vstack([row1, row2, row3])
        if not _mixes_fast_enough(P, tol):
            continue
        try:
            return validate_matrix(P, tol)
        except ChannelError:
            continue
    raise RuntimeError("merge-equivalence generation failed")
