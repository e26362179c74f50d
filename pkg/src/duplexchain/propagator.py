"""Single-excitation propagator of the open XY chain.

An excitation created at site j is found at site l after time t with amplitude

    f[j, l](t) = 2/(N+1) * sum_m sin(q_m j) sin(q_m l) exp(-i E_m t),

with q_m = pi m / (N+1) and E_m = 2h - 2J cos(q_m). Pairs of excitations evolve
as 2x2 minors of this matrix (free fermions after Jordan-Wigner).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chain import ChainConfig
from .exceptions import DomainError


@dataclass(frozen=True)
class ModeSpectrum:
    wavenumbers: np.ndarray
    energies: np.ndarray

    def __len__(self):
        return len(self.energies)


def mode_spectrum(cfg: ChainConfig) -> ModeSpectrum:
    """Normal-mode wavenumbers and single-excitation energies of ``cfg``."""
    n = cfg.n_sites
    q = np.pi * np.arange(1, n + 1) / (n + 1)
    energies = 2.0 * cfg.field_sign.sign * cfg.field - 2.0 * cfg.coupling * np.cos(q)
    return ModeSpectrum(q, energies)


class ModeTable:
    """Precomputed mode shapes for one chain, shared across time points.

    Holds the N x N table ``sin(q_m j)`` with the 2/(N+1) normalisation folded
    in symmetrically. Instances are read-only after construction; use
    :func:`mode_table` to get the cached instance for a config.
    """

    def __init__(self, cfg: ChainConfig):
        self.cfg = cfg
        spec = mode_spectrum(cfg)
        n = cfg.n_sites
        sites = np.arange(1, n + 1)
        # rows are sites, columns are modes
        shapes = np.sqrt(2.0 / (n + 1)) * np.sin(np.outer(sites, spec.wavenumbers))
        shapes.setflags(write=False)
        self.shapes = shapes
        self.energies = spec.energies
        self.energies.setflags(write=False)

    @property
    def n_sites(self) -> int:
        return self.cfg.n_sites

    def phases(self, times) -> np.ndarray:
        return np.exp(-1j * np.multiply.outer(np.asarray(times, dtype=float), self.energies))

    def matrix(self, t: float) -> np.ndarray:
        return (self.shapes * self.phases(t)) @ self.shapes.T

    def rows(self, sites, times) -> np.ndarray:
        """Propagator rows ``f[j, :]`` for each site j, at every time.

        Returns an array of shape ``(len(times), len(sites), N)``.
        """
        idx = np.asarray(sites) - 1
        ph = self.phases(np.atleast_1d(times))  # (T, M)
        weighted = ph[:, None, :] * self.shapes[idx][None, :, :]  # (T, S, M)
        return weighted @ self.shapes.T

    def end_rows(self, times) -> tuple[np.ndarray, np.ndarray]:
        """Rows ``f[1, :]`` and ``f[N, :]`` at each time, each of shape (T, N)."""
        r = self.rows([1, self.n_sites], times)
        return r[:, 0, :], r[:, 1, :]


@lru_cache(maxsize=64)
def mode_table(cfg: ChainConfig) -> ModeTable:
    return ModeTable(cfg)


@dataclass(frozen=True)
class PropagatorMatrix:
    """f[j, l](t) for a fixed time. ``entries`` is 0-based; use :meth:`at` for sites."""

    time: float
    entries: np.ndarray

    @property
    def n_sites(self) -> int:
        return self.entries.shape[0]

    def at(self, j: int, l: int) -> complex:
        _check_site(j, self.n_sites)
        _check_site(l, self.n_sites)
        return complex(self.entries[j - 1, l - 1])

    def row(self, j: int) -> np.ndarray:
        _check_site(j, self.n_sites)
        return self.entries[j - 1]


def propagator_matrix(cfg: ChainConfig, t: float) -> PropagatorMatrix:
    t = float(t)
    if not np.isfinite(t):
        raise DomainError(f"time must be finite, got {t}")
    m = mode_table(cfg).matrix(t)
    # the mode sum is symmetric in (j, l); remove rounding asymmetry
    m = 0.5 * (m + m.T)
    m.setflags(write=False)
    return PropagatorMatrix(t, m)


def pair_amplitude(f: PropagatorMatrix, j1: int, j2: int, l1: int, l2: int) -> complex:
    """Amplitude for excitations created at (j1, j2) to sit at (l1, l2), l1 < l2."""
    n = f.n_sites
    for s in (j1, j2, l1, l2):
        _check_site(s, n)
    if j1 == j2:
        raise DomainError("source sites must differ")
    if l1 >= l2:
        raise DomainError(f"target sites must be ordered l1 < l2, got ({l1}, {l2})")
    e = f.entries
    a, b = j1 - 1, j2 - 1
    c, d = l1 - 1, l2 - 1
    return complex(e[a, c] * e[b, d] - e[a, d] * e[b, c])


def _check_site(site: int, n: int) -> None:
    if not 1 <= site <= n:
        raise DomainError(f"site {site} outside 1..{n}")
