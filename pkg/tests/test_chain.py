import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from duplexchain import ChainConfig, DomainError, FieldSign, make_qubit, validate_config


@pytest.mark.parametrize("theta, phi, alpha, beta", [
    (0.0, 0.0, 1.0, 0.0),
    (math.pi, 0.0, 0.0, 1.0),
    (math.pi / 2, math.pi / 2, 1 / math.sqrt(2), 1j / math.sqrt(2)),
])
def test_make_qubit_poles_and_equator(theta, phi, alpha, beta):
    q = make_qubit(theta, phi)
    assert abs(q.alpha - alpha) < 1e-15
    assert abs(q.beta - beta) < 1e-15


@pytest.mark.parametrize("theta", [-1e-9, math.pi + 1e-9, 4.0, float("nan")])
def test_make_qubit_rejects_bad_theta(theta):
    with pytest.raises(DomainError):
        make_qubit(theta, 0.0)


def test_make_qubit_rejects_infinite_phi():
    with pytest.raises(DomainError):
        make_qubit(1.0, float("inf"))


angles = st.tuples(st.floats(0.0, math.pi), st.floats(-50.0, 50.0))


@given(angles)
def test_qubit_is_normalised(a):
    q = make_qubit(*a)
    assert abs(abs(q.alpha) ** 2 + abs(q.beta) ** 2 - 1.0) < 1e-12


@given(angles)
def test_phi_is_periodic(a):
    theta, phi = a
    q1, q2 = make_qubit(theta, phi), make_qubit(theta, phi + 2 * math.pi)
    assert abs(q1.alpha - q2.alpha) < 1e-12
    assert abs(q1.beta - q2.beta) < 1e-12
    assert 0.0 <= q1.phi < 2 * math.pi


def test_validate_config_accepts_and_returns_same_object():
    cfg = ChainConfig(10, 1.0, 0.0)
    assert validate_config(cfg) is cfg


@pytest.mark.parametrize("kwargs", [
    dict(n_sites=1),
    dict(n_sites=10, coupling=0.0),
    dict(n_sites=10, coupling=float("inf")),
    dict(n_sites=10, field=float("nan")),
    dict(n_sites=2.5),
])
def test_validate_config_rejects(kwargs):
    with pytest.raises(DomainError):
        ChainConfig(**kwargs)


def test_field_sign_parsing():
    assert ChainConfig(4).field_sign is FieldSign.EQ3
    assert ChainConfig(4, field_sign="eq1_literal").field_sign is FieldSign.EQ1
    with pytest.raises(DomainError):
        ChainConfig(4, field_sign="eq2")


def test_config_is_hashable_and_immutable():
    cfg = ChainConfig(5, 1.0, 0.3)
    assert hash(cfg) == hash(ChainConfig(5, 1.0, 0.3))
    with pytest.raises(Exception):
        cfg.n_sites = 6
    assert np.isclose(cfg.with_(field=0.5).field, 0.5)
