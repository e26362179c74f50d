import math

import pytest
from hypothesis import given, strategies as st

from duplexchain import ChainConfig, DomainError, Experiment, Grid, SweepSpec, TimeWindow
from duplexchain.fileio import (ExperimentConfig, csv_text, parse_angle, parse_config,
                                serialize_config)


@pytest.mark.parametrize("text, value", [
    ("0.6pi", 0.6 * math.pi),
    ("pi", math.pi),
    ("-2pi", -2 * math.pi),
    ("pi/2", math.pi / 2),
    ("2pi/3", 2 * math.pi / 3),
    ("1.5", 1.5),
    (0.25, 0.25),
    ("1e-3pi", 1e-3 * math.pi),
])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=1e-15)


@given(st.floats(-10, 10, allow_nan=False))
def test_pi_suffix_agrees_with_radians(x):
    assert abs(parse_angle(f"{x!r}pi") - parse_angle(repr(x * math.pi))) <= 1e-15 * max(1, abs(x))


@pytest.mark.parametrize("text", ["", "abc", "pi pi", "0.6 rad"])
def test_parse_angle_rejects(text):
    with pytest.raises(DomainError):
        parse_angle(text)


def test_csv_format():
    text = csv_text(("t", "f_max"), [(0.1 + 0.2, 0.123456789), (3, 1.0)], {"f_max": 6})
    assert text == "t,f_max\n0.3,0.123457\n3,1\n"


def test_config_round_trip_defaults():
    cfg = ExperimentConfig()
    assert parse_config(serialize_config(cfg)) == cfg


def test_config_round_trip_custom():
    spec = SweepSpec(Experiment.LENGTH_SCAN, chain=ChainConfig(7, 0.9, 0.37, "eq1"),
                     window=TimeWindow(5.0, 25.0, 0.02, 1e-5), end="alice",
                     theta1=2 * math.pi / 3, phi1=0.1, theta2=0.3, phi2=1.0 / 3,
                     theta1_grid=Grid(0.1, 3.0, 7), dphi_grid=Grid(-1, 1, 3),
                     sites=(5, 9, 13), inner_phi_grid=Grid(0, 2 * math.pi, 9), refine_count=5)
    cfg = ExperimentConfig(spec, "out/x.csv", 4)
    assert parse_config(serialize_config(cfg)) == cfg


def test_config_accepts_pi_strings_and_partial_documents():
    cfg = parse_config("experiment: phase_scan\ntheta1: 0.5pi\nchain: {field: 0.1}\n"
                       "dphi_grid: {start: -2pi, stop: 2pi, count: 9}\n")
    assert cfg.spec.experiment is Experiment.PHASE_SCAN
    assert cfg.spec.theta1 == pytest.approx(math.pi / 2)
    assert cfg.spec.chain == ChainConfig(10, 1.0, 0.1)
    assert cfg.spec.dphi_grid.count == 9 and cfg.workers == 1


@pytest.mark.parametrize("doc", ["bogus: 1\n", "- a\n- b\n", "window: {t_min: 60}\n"])
def test_config_rejects(doc):
    with pytest.raises(DomainError):
        parse_config(doc)
