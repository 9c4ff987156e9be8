import numpy as np
import pytest

from isacnet import SystemParams


@pytest.fixture(scope="session")
def paper_params():
    """Default operating point used throughout: Mt=10, Mr=6, beta=4, even split."""
    return SystemParams(lam=1e-4, mt=10, mr=6, beta=4.0, ps=0.5, pc=0.5,
                        sigma2=1.0, L=1, N=1)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=12345))
