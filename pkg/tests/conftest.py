import numpy as np
import pytest

import edgesampling as es


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session")
def p3():
    return es.build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture(scope="session")
def p3_weighted():
    # weights 4 and 9: sqrt products and degree sums stay integer
    return es.build_graph(3, [(0, 1, 4.0), (1, 2, 9.0)])


@pytest.fixture(scope="session")
def k3():
    return es.build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture(scope="session")
def star3():
    """Center 0 with three unit leaves."""
    return es.build_graph(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])


@pytest.fixture(scope="session")
def community100():
    return es.gen_community(100, 5, seed=0)
