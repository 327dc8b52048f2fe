import numpy as np
import pytest

from arqsched.analysis import (ConditionAFailed, Prop12ConditionsFailed,
                               check_condition_A, check_prop12_conditions,
                               condition_a_margin, detect_equivalence_mode,
                               verify_condition_S, verify_lemma11,
                               verify_monotone_curves, verify_reward_ordering)
from arqsched.channel import (RewardVector, random_equal_middle_column_matrix,
                              random_reward, random_valid_matrix,
                              validate_matrix)


def find_condition_a_violator(rng, max_tries=5000):
    for _ in range(max_tries):
        P = random_valid_matrix(rng)
        if condition_a_margin(P) < -1e-6:
            return P
    raise AssertionError("no condition-A violator found")


class TestLemmaVerifiers:
    def test_ordering_pass(self, P_iid, P_A, alpha_half):
        assert verify_reward_ordering(P_iid, alpha_half).passed
        rep = verify_reward_ordering(P_A, alpha_half)
        assert rep.passed and rep.max_violation <= 1e-12

    def test_monotone_pass(self, P_S, P_iid, alpha_half):
        assert verify_monotone_curves(P_S, alpha_half).passed
        rep = verify_monotone_curves(P_iid, alpha_half)
        assert rep.passed and rep.max_violation <= 1e-15

    def test_randomized(self, rng):
        for _ in range(100):
            P = random_valid_matrix(rng)
            alpha = random_reward(rng, allow_positive_floor=True)
            assert verify_reward_ordering(P, alpha).passed
            assert verify_monotone_curves(P, alpha).passed


class TestConditionA:
    def test_equal_column_margin(self, P_eqcol):
        assert condition_a_margin(P_eqcol) == pytest.approx(0.02, abs=1e-12)
        rep = check_condition_A(P_eqcol)
        assert rep["holds"] and rep["direction_consistent"] and rep["limit_ok"]

    def test_iid_boundary(self, P_iid):
        rep = check_condition_A(P_iid)
        assert abs(rep["margin"]) <= 1e-15
        assert rep["direction_consistent"]

    def test_violator_breaks_nonincreasing(self, rng):
        P = find_condition_a_violator(rng)
        rep = check_condition_A(P)
        assert not rep["holds"]
        assert rep["direction_consistent"]

    def test_necessity_randomized(self, rng):
        for _ in range(100):
            P = random_valid_matrix(rng)
            assert check_condition_A(P)["direction_consistent"]


class TestLemma11:
    def test_equal_column_pass(self, P_eqcol):
        assert verify_lemma11(P_eqcol).passed

    def test_iid_constant(self, P_iid):
        assert verify_lemma11(P_iid).passed

    def test_requires_condition_a(self, rng):
        P = find_condition_a_violator(rng)
        with pytest.raises(ConditionAFailed):
            verify_lemma11(P)

    def test_randomized_under_condition(self, rng):
        checked = 0
        while checked < 30:
            P = random_valid_matrix(rng)
            if condition_a_margin(P) < 0:
                continue
            assert verify_lemma11(P).passed
            checked += 1


class TestProp12Conditions:
    def test_example_true(self, P_eqcol):
        assert check_prop12_conditions(P_eqcol)
        assert P_eqcol.steady_state[1] == pytest.approx(0.2, abs=1e-12)

    def test_example_false(self, P_A):
        assert not check_prop12_conditions(P_A)

    def test_random_generator_satisfies(self, rng):
        for _ in range(10):
            P = random_equal_middle_column_matrix(rng)
            assert check_prop12_conditions(P)
            assert P.steady_state[1] == pytest.approx(P.P[1, 1], abs=1e-12)


class TestConditionS:
    def test_requires_prop12(self, P_A, alpha_half):
        with pytest.raises(Prop12ConditionsFailed):
            verify_condition_S(P_A, alpha_half)

    def test_equal_column_all_cases(self, P_eqcol):
        alpha = RewardVector((0.0, 0.4, 1.0))
        reports = verify_condition_S(P_eqcol, alpha, 64)
        assert all(r.passed for r in reports), \
            [(r.name, r.max_violation, r.witness) for r in reports]
        names = {r.name for r in reports}
        assert "middle_column_symmetry" in names
        assert "value_contraction_factor" in names

    def test_iid_zero_margins(self, alpha_half):
        P = validate_matrix([[1 / 3, 1 / 3, 1 / 3]] * 3)
        reports = verify_condition_S(P, alpha_half, 16)
        for r in reports:
            assert r.passed

    def test_randomized(self, rng):
        for _ in range(5):
            P = random_equal_middle_column_matrix(rng)
            alpha = random_reward(rng)
            assert all(r.passed for r in verify_condition_S(P, alpha, 64))


class TestEquivalenceModes:
    def test_merge_example(self, P_merge):
        mode = detect_equivalence_mode(P_merge, RewardVector((0.0, 1.0, 1.0)))
        assert mode.mode == "merge23"
        assert np.allclose(mode.reduced_matrix, ((0.6, 0.4), (0.2, 0.8)),
                           atol=1e-12)
        for row in mode.reduced_matrix:
            assert sum(row) == pytest.approx(1.0, abs=1e-12)

    def test_none_when_rewards_differ(self, P_A, alpha_half):
        assert detect_equivalence_mode(P_A, alpha_half).mode == "none"

    def test_synonymous12(self):
        P = validate_matrix([[0.5, 0.3, 0.2], [0.5, 0.3, 0.2],
                             [0.2, 0.3, 0.5]])
        mode = detect_equivalence_mode(P, RewardVector((0.0, 1.0, 1.0)))
        assert mode.mode == "synonymous12"
