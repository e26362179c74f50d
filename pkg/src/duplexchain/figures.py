"""Sweep presets for the published figure panels."""

from __future__ import annotations

import math

from .chain import ChainConfig
from .exceptions import DomainError
from .sweep import ALICE_THETA_LENGTH_SCAN, End, Experiment, SweepSpec

FIELDS = {"a": 0.0, "b": 0.1, "c": 1.0}
FIGURES = ("fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b")

# Fixed polar angle for both senders in the phase scans. theta = pi/2 is the
# value at which the h = 0 scan has its extrema exactly at multiples of pi/2.
PHASE_SCAN_THETA = math.pi / 2


def figure_spec(name: str) -> SweepSpec:
    if name not in FIGURES:
        raise DomainError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    number, panel = name[3], name[4]
    if number == "2":
        return SweepSpec(Experiment.THETA_GRID, chain=ChainConfig(10, field=FIELDS[panel]),
                         phi1=0.0, phi2=0.0, end=End.BOB)
    if number == "3":
        return SweepSpec(Experiment.PHASE_SCAN, chain=ChainConfig(10, field=FIELDS[panel]),
                         theta1=PHASE_SCAN_THETA, theta2=PHASE_SCAN_THETA, end=End.BOB)
    field = {"a": 0.0, "b": 1.0}[panel]
    return SweepSpec(Experiment.LENGTH_SCAN, chain=ChainConfig(10, field=field),
                     theta1=ALICE_THETA_LENGTH_SCAN, phi1=0.0, end=End.BOB)
