"""Reception fidelities at the two chain ends.

Fidelity is ``sqrt(<phi|rho|phi>)`` (not squared), with ``rho`` the reduced
state of the receiving spin. Bob (site N) receives Alice's qubit and Alice
(site 1) receives Bob's, both read out at the same instant.

Two routes are provided: closed-form sums over the sector amplitudes, and an
explicit 2x2 reduced density matrix. :func:`end_fidelities` is a vectorised
form of the closed sums used by the sweep engine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import QubitState
from .evolution import DuplexAmplitudes
from .exceptions import ConsistencyError, DomainError

RADICAND_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix2x2:
    """Single-spin density matrix in the (|0>, |1>) basis."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > 1e-10:
            raise DomainError(f"density matrix trace {np.trace(m).real} != 1")
        if np.min(np.linalg.eigvalsh(m)) < -1e-10:
            raise DomainError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)


@dataclass(frozen=True)
class FidelityResult:
    f_bob: float
    f_alice: float
    time: float | None = None


def _sqrt_radicand(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < -RADICAND_TOL):
        raise ConsistencyError(f"negative fidelity radicand {np.min(x)}")
    return np.sqrt(np.clip(x, 0.0, None))


def fidelity_closed_form(amps: DuplexAmplitudes, s1: QubitState, s2: QubitState,
                         time: float | None = None) -> FidelityResult:
    """F_N (Alice -> Bob) and F_1 (Bob -> Alice) from the sector amplitudes."""
    n = amps.n_sites
    if amps.a.shape != (n,) or amps.b.shape != (n, n):
        raise DomainError("amplitude arrays have inconsistent sizes")
    a, b = amps.a, amps.b
    a1, b1, a2, b2 = s1.alpha, s1.beta, s2.alpha, s2.beta

    # Bob's end, target = Alice's qubit
    bob = abs(abs(a1) ** 2 * a2 + b1.conjugate() * a[n - 1]) ** 2
    for i in range(n - 1):
        bob += abs(a1.conjugate() * a[i] + b1.conjugate() * b[i, n - 1]) ** 2
    for i in range(n - 1):
        for ip in range(i + 1, n - 1):
            bob += abs(a1) ** 2 * abs(b[i, ip]) ** 2

    # Alice's end, target = Bob's qubit
    alice = abs(abs(a2) ** 2 * a1 + b2.conjugate() * a[0]) ** 2
    for i in range(1, n):
        alice += abs(a2.conjugate() * a[i] + b2.conjugate() * b[0, i]) ** 2
    for i in range(1, n):
        for ip in range(i + 1, n):
            alice += abs(a2) ** 2 * abs(b[i, ip]) ** 2

    return FidelityResult(float(_sqrt_radicand(bob)), float(_sqrt_radicand(alice)), time)


def reduced_density(amps: DuplexAmplitudes, site: int) -> DensityMatrix2x2:
    """Reduced state of one spin, tracing out every other site.

    The two-excitation spin state |1_i 1_i'> (i < i') carries amplitude
    ``b[i, i']`` with no extra sign: acting with c_i^+ c_i'^+ on the vacuum, the
    Jordan-Wigner strings only pass over unexcited sites. Off-diagonal
    coherences pair states that differ only at ``site``:

        rho_01 = c0 * conj(A_site) + sum_{i != site} A_i * conj(B_{min(i,site), max(i,site)})

    which at site N is c0 conj(A_N) + sum_{i<N} A_i conj(B_{i,N}) and at site 1
    is c0 conj(A_1) + sum_{i>1} A_i conj(B_{1,i}).
    """
    n = amps.n_sites
    if not 1 <= site <= n:
        raise DomainError(f"site {site} outside 1..{n}")
    k = site - 1
    a = amps.a
    upper = np.triu(amps.b, 1)
    # spin amplitudes of |1_i 1_k>, indexed by the partner site i
    partner = upper[:, k] + upper[k, :]
    others = np.arange(n) != k

    p_pairs = float(np.sum(np.abs(upper) ** 2))
    p_pairs_with_k = float(np.sum(np.abs(partner) ** 2))
    rho11 = abs(a[k]) ** 2 + p_pairs_with_k
    rho00 = (abs(amps.c0) ** 2 + float(np.sum(np.abs(a[others]) ** 2))
             + p_pairs - p_pairs_with_k)
    rho01 = amps.c0 * np.conj(a[k]) + np.sum(a[others] * np.conj(partner[others]))
    m = np.array([[rho00, rho01], [np.conj(rho01), rho11]], dtype=complex)
    return DensityMatrix2x2(m)


def fidelity_via_rho(rho: DensityMatrix2x2, target: QubitState) -> float:
    v = target.vector
    return float(_sqrt_radicand(np.real(np.conj(v) @ rho.entries @ v)))


def end_fidelities(f1: np.ndarray, fn: np.ndarray, s1: QubitState, s2: QubitState):
    """Vectorised F_N and F_1 given propagator rows ``f[1, :]`` and ``f[N, :]``.

    ``f1`` and ``fn`` have shape ``(T, N)``; returns two arrays of length T.
    Sums of squared pair amplitudes over a block of sites use Lagrange's
    identity sum_{i<i'} |u_i v_i' - u_i' v_i|^2 = |u|^2 |v|^2 - |<u, v>|^2.
    """
    f1 = np.atleast_2d(f1)
    fn = np.atleast_2d(fn)
    a1, b1, a2, b2 = s1.alpha, s1.beta, s2.alpha, s2.beta
    bb = b1 * b2
    amp = a1 * b2 * fn + b1 * a2 * f1  # A_i(t)

    # B_{i,N} for i < N and B_{1,i} for i > 1
    b_to_n = bb * (f1 * fn[:, -1:] - f1[:, -1:] * fn)
    b_from_1 = bb * (f1[:, :1] * fn - f1 * fn[:, :1])

    def block_pairs(u, v):
        uu = np.sum(np.abs(u) ** 2, axis=1)
        vv = np.sum(np.abs(v) ** 2, axis=1)
        uv = np.sum(u * np.conj(v), axis=1)
        return abs(bb) ** 2 * (uu * vv - np.abs(uv) ** 2)

    bob = (np.abs(abs(a1) ** 2 * a2 + np.conj(b1) * amp[:, -1]) ** 2
           + np.sum(np.abs(np.conj(a1) * amp[:, :-1] + np.conj(b1) * b_to_n[:, :-1]) ** 2, axis=1)
           + abs(a1) ** 2 * block_pairs(f1[:, :-1], fn[:, :-1]))
    alice = (np.abs(abs(a2) ** 2 * a1 + np.conj(b2) * amp[:, 0]) ** 2
             + np.sum(np.abs(np.conj(a2) * amp[:, 1:] + np.conj(b2) * b_from_1[:, 1:]) ** 2, axis=1)
             + abs(a2) ** 2 * block_pairs(f1[:, 1:], fn[:, 1:]))
    return _sqrt_radicand(bob), _sqrt_radicand(alice)
