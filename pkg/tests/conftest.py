import math

import pytest

from curvetrace.formats import load_graph
from curvetrace.moduli import AngleVector, TwistVector, build_representation, sample_point


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size suite runs")


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep every test away from a user's curvetrace.conf."""
    monkeypatch.setenv('CURVETRACE_CONFIG', str(tmp_path / 'curvetrace.conf'))
    monkeypatch.setenv('CURVETRACE_THREADS', '1')
    return tmp_path / 'curvetrace.conf'


@pytest.fixture
def genus2():
    return load_graph('genus2')


@pytest.fixture
def torus():
    return load_graph('one_holed_torus')


@pytest.fixture
def sphere4():
    return load_graph('four_holed_sphere')


@pytest.fixture
def genus2_point(genus2):
    return sample_point(genus2, 0.05, 7)


@pytest.fixture
def torus_point(torus):
    return sample_point(torus, 0.05, 11)


@pytest.fixture
def genus2_boundary(genus2):
    """a3 = a1 + a2: one face of both trinions is tight."""
    alpha = AngleVector({'e1': 0.8, 'e2': 1.0, 'e3': 1.8})
    return build_representation(genus2, alpha, TwistVector({'e1': 0.1, 'e2': 0.2, 'e3': 0.3}))


@pytest.fixture
def genus2_central(genus2):
    alpha = AngleVector({'e1': 0.0, 'e2': 1.0, 'e3': 1.0})
    return build_representation(genus2, alpha)


HALF_PI = math.pi / 2
