"""Maximum-fidelity search over a time window, and parameter sweeps built on it.

Every grid point is evaluated independently by :func:`fmax_search`; sweeps
may farm points out to worker processes but always assemble rows in grid
order, so the output does not depend on the worker count.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .chain import ChainConfig, QubitState, make_qubit
from .exceptions import DomainError
from .fidelity import end_fidelities
from .propagator import mode_table

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Alice's qubit for the length scan: (1/2)|0> + (sqrt(3)/2)|1>
ALICE_THETA_LENGTH_SCAN = 2.0 * math.pi / 3.0


class End(str, enum.Enum):
    ALICE = "alice"
    BOB = "bob"


class Experiment(str, enum.Enum):
    THETA_GRID = "theta_grid"
    PHASE_SCAN = "phase_scan"
    LENGTH_SCAN = "length_scan"
    SINGLE_POINT = "single_point"


@dataclass(frozen=True)
class TimeWindow:
    t_min: float = 10.0
    t_max: float = 50.0
    coarse_step: float = 0.05
    refine_tol: float = 1e-4

    def __post_init__(self):
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)):
            raise DomainError("time window bounds must be finite")
        if not self.t_min < self.t_max:
            raise DomainError(f"need t_min < t_max, got [{self.t_min}, {self.t_max}]")
        if not self.coarse_step > 0 or not self.refine_tol > 0:
            raise DomainError("coarse_step and refine_tol must be positive")

    def grid(self) -> np.ndarray:
        count = int(math.floor((self.t_max - self.t_min) / self.coarse_step + 1e-9)) + 1
        return self.t_min + self.coarse_step * np.arange(count)


@dataclass(frozen=True)
class Grid:
    """``count`` evenly spaced values from ``start`` to ``stop`` inclusive."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise DomainError(f"grid count must be a positive integer, got {self.count}")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([float(self.start)])
        return np.linspace(self.start, self.stop, int(self.count))


@dataclass(frozen=True)
class SearchResult:
    f_max: float
    tau: float
    end: End
    params: dict = field(default_factory=dict, compare=False)
    coarse_f_max: float = float("nan")
    coarse_tau: float = float("nan")
    evaluations: int = 0


def golden_section_max(func: Callable[[float], float], a: float, b: float,
                       tol: float) -> tuple[float, float]:
    """Maximise a unimodal ``func`` on [a, b]; returns (x, func(x)) with bracket <= tol."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = func(d)
    return (c, fc) if fc >= fd else (d, fd)


@lru_cache(maxsize=32)
def _coarse_rows(cfg: ChainConfig, window: TimeWindow):
    times = window.grid()
    f1, fn = mode_table(cfg).end_rows(times)
    for arr in (times, f1, fn):
        arr.setflags(write=False)
    return times, f1, fn


def fidelity_at(cfg: ChainConfig, s1: QubitState, s2: QubitState, t: float,
                end: End | str = End.BOB) -> float:
    f1, fn = mode_table(cfg).end_rows([t])
    bob, alice = end_fidelities(f1, fn, s1, s2)
    return float(bob[0] if End(end) is End.BOB else alice[0])


def fmax_search(cfg: ChainConfig, s1: QubitState, s2: QubitState,
                window: TimeWindow = TimeWindow(), end: End | str = End.BOB) -> SearchResult:
    """Largest fidelity at one end within ``window`` and the time it occurs.

    Scans the coarse time grid, keeps the earliest best point, then refines
    by golden-section search within one coarse step on either side.
    """
    end = End(end)
    times, f1, fn = _coarse_rows(cfg, window)
    bob, alice = end_fidelities(f1, fn, s1, s2)
    values = bob if end is End.BOB else alice
    k = int(np.argmax(values))  # first occurrence: earliest time wins ties
    coarse_f, coarse_t = float(values[k]), float(times[k])

    lo = max(window.t_min, coarse_t - window.coarse_step)
    hi = min(window.t_max, coarse_t + window.coarse_step)
    calls = 0

    def objective(t):
        nonlocal calls
        calls += 1
        return fidelity_at(cfg, s1, s2, t, end)

    t_ref, f_ref = golden_section_max(objective, lo, hi, window.refine_tol)
    if f_ref > coarse_f:
        f_max, tau = f_ref, t_ref
    else:
        f_max, tau = coarse_f, coarse_t
    params = dict(n_sites=cfg.n_sites, coupling=cfg.coupling, field=cfg.field,
                  field_sign=cfg.field_sign.value, theta1=s1.theta, phi1=s1.phi,
                  theta2=s2.theta, phi2=s2.phi)
    return SearchResult(f_max, tau, end, params, coarse_f, coarse_t, len(times) + calls)


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one sweep.

    Only the fields relevant to ``experiment`` are read. Angles are radians.
    """

    experiment: Experiment = Experiment.SINGLE_POINT
    chain: ChainConfig = ChainConfig(10)
    window: TimeWindow = TimeWindow()
    end: End = End.BOB
    theta1: float = 0.6 * math.pi
    phi1: float = 0.0
    theta2: float = 0.6 * math.pi
    phi2: float = 0.0
    theta1_grid: Grid = Grid(0.0, math.pi, 51)
    theta2_grid: Grid = Grid(0.0, math.pi, 51)
    dphi_grid: Grid = Grid(-2.0 * math.pi, 2.0 * math.pi, 161)
    sites: tuple[int, ...] = tuple(range(3, 26))
    inner_theta_grid: Grid = Grid(0.0, math.pi, 21)
    inner_phi_grid: Grid = Grid(0.0, 2.0 * math.pi, 21)
    refine_count: int = 11

    def __post_init__(self):
        object.__setattr__(self, "experiment", Experiment(self.experiment))
        object.__setattr__(self, "end", End(self.end))
        object.__setattr__(self, "sites", tuple(int(n) for n in self.sites))
        if not self.sites:
            raise DomainError("length scan needs at least one chain length")
        if self.refine_count < 1:
            raise DomainError("refine_count must be >= 1")


@dataclass(frozen=True)
class SweepTable:
    columns: tuple[str, ...]
    rows: list

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([r[k] for r in self.rows])


# A point is (cfg, window, end, theta1, phi1, theta2, phi2); module-level so it pickles.
def _evaluate_point(point) -> tuple[float, float]:
    cfg, window, end, t1, p1, t2, p2 = point
    res = fmax_search(cfg, make_qubit(t1, p1), make_qubit(t2, p2), window, end)
    return res.f_max, res.tau


def parallel_map(fn, items: Sequence, workers: int = 1) -> list:
    """``list(map(fn, items))``, optionally across processes; order is preserved."""
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def sweep_theta(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """F_max and tau on the (theta1, theta2) grid, rows in row-major order."""
    th1 = spec.theta1_grid.values()
    th2 = spec.theta2_grid.values()
    points = [(spec.chain, spec.window, spec.end, float(a), spec.phi1, float(b), spec.phi2)
              for a in th1 for b in th2]
    results = parallel_map(_evaluate_point, points, workers)
    rows = [(p[3], p[5], f, tau) for p, (f, tau) in zip(points, results)]
    return SweepTable(("theta1", "theta2", "f_max", "tau"), rows)


def sweep_phase(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """F_max versus dphi = phi2 - phi1 with phi1 held at 0."""
    points = [(spec.chain, spec.window, spec.end, spec.theta1, 0.0, spec.theta2, float(d))
              for d in spec.dphi_grid.values()]
    results = parallel_map(_evaluate_point, points, workers)
    rows = [(p[6], f, tau) for p, (f, tau) in zip(points, results)]
    return SweepTable(("dphi", "f_max", "tau"), rows)


def _local_grid(center: float, step: float, count: int, lo=None, hi=None) -> np.ndarray:
    a, b = center - step, center + step
    if lo is not None:
        a = max(a, lo)
    if hi is not None:
        b = min(b, hi)
    return np.linspace(a, b, count) if count > 1 else np.array([center])


def sweep_length(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """Alice -> Bob F_max versus chain length, with and without Bob's qubit.

    With Bob, his (theta2, phi2) is chosen to maximise F_max: first on the
    inner grid, then on a ``refine_count`` x ``refine_count`` grid spanning one
    inner cell around the best point. Without Bob means theta2 = 0.
    """
    window, end = spec.window, spec.end
    t1, p1 = spec.theta1, spec.phi1
    inner_t = spec.inner_theta_grid.values()
    inner_p = spec.inner_phi_grid.values()
    dt = (inner_t[1] - inner_t[0]) if len(inner_t) > 1 else 0.0
    dp = (inner_p[1] - inner_p[0]) if len(inner_p) > 1 else 0.0
    chains = [spec.chain.with_(n_sites=n) for n in spec.sites]

    # stage 1: no-Bob point followed by the inner grid, per chain length
    stage1 = []
    for cfg in chains:
        stage1.append((cfg, window, end, t1, p1, 0.0, 0.0))
        stage1.extend((cfg, window, end, t1, p1, float(a), float(b))
                      for a in inner_t for b in inner_p)
    res1 = parallel_map(_evaluate_point, stage1, workers)

    per_chain = 1 + len(inner_t) * len(inner_p)
    best = []
    for k, cfg in enumerate(chains):
        block = res1[k * per_chain:(k + 1) * per_chain]
        pts = stage1[k * per_chain:(k + 1) * per_chain]
        without = block[0]
        j = 1 + int(np.argmax([f for f, _ in block[1:]]))
        best.append((without, block[j], pts[j][5], pts[j][6]))

    # stage 2: one refinement pass around each chain's best inner point
    stage2 = []
    for cfg, (_, _, bt, bp) in zip(chains, best):
        stage2.extend((cfg, window, end, t1, p1, float(a), float(b))
                      for a in _local_grid(bt, dt, spec.refine_count, 0.0, math.pi)
                      for b in _local_grid(bp, dp, spec.refine_count))
    res2 = parallel_map(_evaluate_point, stage2, workers)

    per_refine = spec.refine_count ** 2
    rows = []
    for k, cfg in enumerate(chains):
        without, (f_with, tau_with), bt, bp = best[k]
        block = res2[k * per_refine:(k + 1) * per_refine]
        pts = stage2[k * per_refine:(k + 1) * per_refine]
        j = int(np.argmax([f for f, _ in block]))
        if block[j][0] > f_with:
            f_with, tau_with = block[j]
            bt, bp = pts[j][5], pts[j][6]
        rows.append((cfg.n_sites, f_with, without[0], tau_with, without[1], bt, bp % (2.0 * math.pi)))
    return SweepTable(("n", "f_max_with_bob", "f_max_without_bob", "tau_with",
                       "tau_without", "theta2_opt", "phi2_opt"), rows)


def single_point(spec: SweepSpec, workers: int = 1) -> SweepTable:
    f, tau = _evaluate_point((spec.chain, spec.window, spec.end, spec.theta1,
                              spec.phi1, spec.theta2, spec.phi2))
    return SweepTable(("theta1", "phi1", "theta2", "phi2", "f_max", "tau"),
                      [(spec.theta1, spec.phi1, spec.theta2, spec.phi2, f, tau)])


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    runner = {
        Experiment.THETA_GRID: sweep_theta,
        Experiment.PHASE_SCAN: sweep_phase,
        Experiment.LENGTH_SCAN: sweep_length,
        Experiment.SINGLE_POINT: single_point,
    }[spec.experiment]
    return runner(spec, workers)

