import numpy as np
import pytest

from arqsched.channel import RewardVector, validate_matrix

P_IID_ROWS = [[1 / 3, 1 / 3, 1 / 3]] * 3
P_A_ROWS = [[0.8, 0.15, 0.05], [0.1, 0.7, 0.2], [0.05, 0.15, 0.8]]
P_S_ROWS = [[0.6, 0.3, 0.1], [0.3, 0.4, 0.3], [0.1, 0.3, 0.6]]
P_EQCOL_ROWS = [[0.7, 0.2, 0.1], [0.3, 0.2, 0.5], [0.1, 0.2, 0.7]]
P_MERGE_ROWS = [[0.6, 0.3, 0.1], [0.2, 0.5, 0.3], [0.2, 0.3, 0.5]]


@pytest.fixture(scope="session")
def P_iid():
    return validate_matrix(P_IID_ROWS)


@pytest.fixture(scope="session")
def P_A():
    return validate_matrix(P_A_ROWS)


@pytest.fixture(scope="session")
def P_S():
    return validate_matrix(P_S_ROWS)


@pytest.fixture(scope="session")
def P_eqcol():
    return validate_matrix(P_EQCOL_ROWS)


@pytest.fixture(scope="session")
def P_merge():
    return validate_matrix(P_MERGE_ROWS)


@pytest.fixture(scope="session")
def alpha_half():
    return RewardVector((0.0, 0.5, 1.0))


@pytest.fixture(scope="session")
def alpha_high():
    return RewardVector((0.0, 0.9, 1.0))


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
