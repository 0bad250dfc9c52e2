import numpy as np
import pytest

from quditkit.basis import cached_basis, cached_tensors


@pytest.fixture(scope="session")
def bases():
    return {N: cached_basis(N) for N in range(2, 7)}


@pytest.fixture(scope="session")
def tensors():
    return {N: cached_tensors(N) for N in range(2, 7)}


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
