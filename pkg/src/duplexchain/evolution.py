"""Time evolution of the two-sender product state in the <=2 excitation sectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainConfig, QubitState
from .exceptions import DomainError
from .propagator import PropagatorMatrix, propagator_matrix


@dataclass(frozen=True)
class DuplexAmplitudes:
    """Sector-resolved chain state.

    The full state is ``c0|vac> + sum_i a[i] c_i^+|vac> + sum_{i<i'} b[i, i'] c_i^+ c_i'^+|vac>``.
    Arrays are 0-based: ``a[i-1]`` is the amplitude on site i and ``b`` is an
    N x N array whose strictly upper triangle holds the pair amplitudes
    (the diagonal and lower triangle are zero).
    """

    c0: complex
    a: np.ndarray
    b: np.ndarray

    @property
    def n_sites(self) -> int:
        return len(self.a)

    def norm_squared(self) -> float:
        return float(abs(self.c0) ** 2 + np.sum(np.abs(self.a) ** 2)
                     + np.sum(np.abs(np.triu(self.b, 1)) ** 2))

    def pair(self, i: int, ip: int) -> complex:
        """B_{i,i'} for any distinct sites, with B_{i',i} = -B_{i,i'}."""
        n = self.n_sites
        if not (1 <= i <= n and 1 <= ip <= n) or i == ip:
            raise DomainError(f"invalid site pair ({i}, {ip})")
        if i < ip:
            return complex(self.b[i - 1, ip - 1])
        return -complex(self.b[ip - 1, i - 1])


def _freeze(c0, a, b) -> DuplexAmplitudes:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a.setflags(write=False)
    b.setflags(write=False)
    return DuplexAmplitudes(complex(c0), a, b)


def initial_state(s1: QubitState, s2: QubitState, cfg: ChainConfig) -> DuplexAmplitudes:
    """Alice's qubit on site 1, Bob's on site N, channel in between all |0>."""
    n = cfg.n_sites
    a = np.zeros(n, dtype=complex)
    b = np.zeros((n, n), dtype=complex)
    a[0] += s1.beta * s2.alpha
    a[n - 1] += s1.alpha * s2.beta
    b[0, n - 1] = s1.beta * s2.beta
    return _freeze(s1.alpha * s2.alpha, a, b)


def evolve_duplex(s1: QubitState, s2: QubitState, cfg: ChainConfig, t: float,
                  propagator: PropagatorMatrix | None = None) -> DuplexAmplitudes:
    """Evolve the product state for time ``t``.

    ``propagator`` may be supplied to reuse an f(t) already computed for this
    chain and time; it is not recomputed then.
    """
    if propagator is None:
        propagator = propagator_matrix(cfg, t)
    elif propagator.n_sites != cfg.n_sites:
        raise DomainError("propagator size does not match the chain")
    f = propagator.entries
    f1, fn = f[0], f[-1]
    a = s1.alpha * s2.beta * fn + s1.beta * s2.alpha * f1
    minors = np.outer(f1, fn) - np.outer(fn, f1)
    b = s1.beta * s2.beta * np.triu(minors, 1)
    return _freeze(s1.alpha * s2.alpha, a, b)
