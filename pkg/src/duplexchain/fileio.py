"""Angle parsing, CSV formatting and the YAML experiment file.

Experiment file schema (all keys optional, defaults from :class:`SweepSpec`)::

    experiment: theta_grid | phase_scan | length_scan | single_point
    chain: {n_sites: 10, coupling: 1.0, field: 0.0, field_sign: eq3}
    window: {t_min: 10.0, t_max: 50.0, coarse_step: 0.05, refine_tol: 0.0001}
    end: bob | alice
    theta1: 0.6pi          # numbers are radians; "<x>pi" strings also accepted
    phi1: 0.0
    theta2: 0.6pi
    phi2: 0.0
    theta1_grid: {start: 0.0, stop: pi, count: 51}
    theta2_grid: {start: 0.0, stop: pi, count: 51}
    dphi_grid: {start: -2pi, stop: 2pi, count: 161}
    sites: [3, 4, 5]
    inner_theta_grid: {start: 0.0, stop: pi, count: 21}
    inner_phi_grid: {start: 0.0, stop: 2pi, count: 21}
    refine_count: 11
    output: {path: results.csv, workers: 1}
"""

from __future__ import annotations

import io
import math
import re
from dataclasses import dataclass, fields
from typing import Iterable

import yaml

from .exceptions import DomainError
from .sweep import End, Experiment, Grid, SweepSpec, SweepTable, TimeWindow

_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")

FIDELITY_COLUMNS = {"f_max", "f_max_with_bob", "f_max_without_bob"}


def parse_angle(text) -> float:
    """Radians from a number or a ``<x>pi`` string ("0.6pi", "-2pi", "pi/2")."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    s = str(text).strip().lower()
    m = _PI_RE.match(s)
    if m:
        if m.group(1) in (None, "+", "-"):
            coeff = -1.0 if m.group(1) == "-" else 1.0
        else:
            coeff = float(m.group(1))
        value = coeff * math.pi
        if m.group(2):
            value /= float(m.group(2))
        return value
    try:
        return float(s)
    except ValueError:
        raise DomainError(f"cannot parse angle {text!r}") from None


def fmt(value, digits: int = 12) -> str:
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return format(float(value), f".{digits}g")


def csv_text(columns: Iterable[str], rows: Iterable[Iterable], digits: dict | None = None) -> str:
    """CSV with '\\n' line endings; ``digits`` maps column name to significant digits."""
    columns = list(columns)
    digits = digits or {}
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v, digits.get(c, 12)) for c, v in zip(columns, row)) + "\n")
    return buf.getvalue()


def table_csv(table: SweepTable) -> str:
    return csv_text(table.columns, table.rows, {c: 6 for c in FIDELITY_COLUMNS})


@dataclass(frozen=True)
class ExperimentConfig:
    spec: SweepSpec = SweepSpec()
    out: str | None = None
    workers: int = 1


def _grid_from(d) -> Grid:
    return Grid(parse_angle(d["start"]), parse_angle(d["stop"]), int(d["count"]))


def spec_to_dict(spec: SweepSpec) -> dict:
    c, w = spec.chain, spec.window
    d = {
        "experiment": spec.experiment.value,
        "chain": {"n_sites": c.n_sites, "coupling": float(c.coupling),
                  "field": float(c.field), "field_sign": c.field_sign.value},
        "window": {"t_min": float(w.t_min), "t_max": float(w.t_max),
                   "coarse_step": float(w.coarse_step), "refine_tol": float(w.refine_tol)},
        "end": spec.end.value,
    }
    for f in fields(SweepSpec):
        v = getattr(spec, f.name)
        if isinstance(v, Grid):
            d[f.name] = {"start": float(v.start), "stop": float(v.stop), "count": int(v.count)}
        elif f.name in ("theta1", "phi1", "theta2", "phi2"):
            d[f.name] = float(v)
    d["sites"] = list(spec.sites)
    d["refine_count"] = int(spec.refine_count)
    return d


def spec_from_dict(d: dict, base: SweepSpec | None = None) -> SweepSpec:
    base = base or SweepSpec()
    known = {f.name for f in fields(SweepSpec)}
    unknown = set(d) - known - {"output"}
    if unknown:
        raise DomainError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    kw = {}
    if "experiment" in d:
        kw["experiment"] = Experiment(d["experiment"])
    if "chain" in d:
        ch = dict(d["chain"])
        kw["chain"] = base.chain.with_(**{k: ch[k] for k in ("n_sites", "coupling", "field", "field_sign") if k in ch})
    if "window" in d:
        wd = {f.name: getattr(base.window, f.name) for f in fields(TimeWindow)}
        wd.update({k: float(v) for k, v in d["window"].items()})
        kw["window"] = TimeWindow(**wd)
    if "end" in d:
        kw["end"] = End(d["end"])
    for name in ("theta1", "phi1", "theta2", "phi2"):
        if name in d:
            kw[name] = parse_angle(d[name])
    for name in ("theta1_grid", "theta2_grid", "dphi_grid", "inner_theta_grid", "inner_phi_grid"):
        if name in d:
            kw[name] = _grid_from(d[name])
    if "sites" in d:
        kw["sites"] = tuple(int(n) for n in d["sites"])
    if "refine_count" in d:
        kw["refine_count"] = int(d["refine_count"])
    params = {f.name: getattr(base, f.name) for f in fields(SweepSpec)}
    params.update(kw)
    try:
        return SweepSpec(**params)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def serialize_config(cfg: ExperimentConfig) -> str:
    d = spec_to_dict(cfg.spec)
    d["output"] = {"path": cfg.out, "workers": int(cfg.workers)}
    return yaml.safe_dump(d, sort_keys=False)


def parse_config(text: str) -> ExperimentConfig:
    d = yaml.safe_load(text) or {}
    if not isinstance(d, dict):
        raise DomainError("experiment file must be a mapping")
    spec = spec_from_dict(d)
    out = d.get("output") or {}
    return ExperimentConfig(spec, out.get("path"), int(out.get("workers", 1)))


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
