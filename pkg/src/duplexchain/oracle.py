"""Brute-force reference: dense 2^N Hamiltonian and exact evolution.

Nothing here uses the mode-sum propagator. Basis states are bitstrings with
bit (l - 1) holding the occupation of site l, so site 1 is the least
significant bit. |0> is spin down, |1> spin up.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .chain import ChainConfig, FieldSign, QubitState
from .evolution import DuplexAmplitudes, evolve_duplex
from .exceptions import ConsistencyError, DomainError, ResourceError
from .fidelity import fidelity_closed_form
from .propagator import mode_spectrum

MAX_SITES = 14
LEAKAGE_TOL = 1e-8

# Pauli matrices in the (|0> = down, |1> = up) ordering
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SZ = np.array([[-1, 0], [0, 1]], dtype=complex)
ID = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class FullStateVector:
    n_sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 ** self.n_sites,):
            raise DomainError(f"expected {2 ** self.n_sites} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-10:
            raise ConsistencyError(f"state norm {norm} != 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2 ** self.n_sites


def _guard(n: int) -> None:
    if n > MAX_SITES:
        raise ResourceError(f"dense oracle is limited to {MAX_SITES} sites, got {n}")


def site_operator(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """``op`` acting on ``site`` (1-based), identity elsewhere."""
    factors = [ID] * n
    factors[n - site] = op  # most significant factor is site N
    return reduce(np.kron, factors)


def build_hamiltonian(cfg: ChainConfig, relative_to_vacuum: bool = False) -> np.ndarray:
    """-(J/2) sum (sx sx + sy sy) plus the field term for ``cfg.field_sign``.

    EQ1 uses ``-h sum sz``; EQ3 uses ``+h sum sz``, which is the sign that
    puts single excitations at 2h - 2J cos(q_m) above the all-down state.
    With ``relative_to_vacuum`` the all-down energy is subtracted so that the
    vacuum amplitude does not rotate.
    """
    n = cfg.n_sites
    _guard(n)
    dim = 2 ** n
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(1, n):
        for p in (SX, SY):
            h -= 0.5 * cfg.coupling * site_operator(p, i, n) @ site_operator(p, i + 1, n)
    field_coeff = cfg.field if cfg.field_sign is FieldSign.EQ3 else -cfg.field
    for i in range(1, n + 1):
        h += field_coeff * site_operator(SZ, i, n)
    if relative_to_vacuum:
        h -= h[0, 0].real * np.eye(dim)
    return h


def excitation_number(n: int) -> np.ndarray:
    _guard(n)
    return sum(site_operator((SZ + ID) / 2, i, n) for i in range(1, n + 1))


def product_state(qubits: dict[int, QubitState], n: int) -> FullStateVector:
    """Tensor product with the given qubits on their sites and |0> elsewhere."""
    _guard(n)
    zero = np.array([1, 0], dtype=complex)
    factors = [zero] * n
    for site, q in qubits.items():
        if not 1 <= site <= n:
            raise DomainError(f"site {site} outside 1..{n}")
        factors[n - site] = q.vector
    return FullStateVector(n, reduce(np.kron, factors))


def duplex_product_state(s1: QubitState, s2: QubitState, n: int) -> FullStateVector:
    return product_state({1: s1, n: s2}, n)


def evolve_full(h: np.ndarray, psi0: FullStateVector, t: float,
                eigh: tuple[np.ndarray, np.ndarray] | None = None) -> FullStateVector:
    """exp(-i H t) psi0 via the eigendecomposition of H (pass ``eigh`` to reuse it)."""
    if eigh is None:
        eigh = np.linalg.eigh(h)
    w, v = eigh
    coeffs = v.conj().T @ psi0.amplitudes
    out = v @ (np.exp(-1j * w * t) * coeffs)
    return FullStateVector(psi0.n_sites, out)


def _popcount(n: int) -> np.ndarray:
    idx = np.arange(2 ** n)
    return np.array([bin(k).count("1") for k in idx])


def extract_amplitudes(psi: FullStateVector) -> DuplexAmplitudes:
    n = psi.n_sites
    amps = psi.amplitudes
    weight = _popcount(n)
    leak = float(np.linalg.norm(amps[weight > 2]))
    if leak > LEAKAGE_TOL:
        raise ConsistencyError(f"state has weight above 2 excitations: {leak:.3e}")
    a = np.array([amps[1 << (l - 1)] for l in range(1, n + 1)])
    b = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for ip in range(i + 1, n):
            b[i, ip] = amps[(1 << i) | (1 << ip)]
    a.setflags(write=False)
    b.setflags(write=False)
    return DuplexAmplitudes(complex(amps[0]), a, b)


def reduced_density_full(psi: FullStateVector, site: int) -> np.ndarray:
    n = psi.n_sites
    if not 1 <= site <= n:
        raise DomainError(f"site {site} outside 1..{n}")
    tensor = psi.amplitudes.reshape((2,) * n)
    m = np.moveaxis(tensor, n - site, 0).reshape(2, -1)
    return m @ m.conj().T


def oracle_fidelity(psi: FullStateVector, site: int, target: QubitState) -> float:
    rho = reduced_density_full(psi, site)
    v = target.vector
    val = float(np.real(np.conj(v) @ rho @ v))
    return float(np.sqrt(max(val, 0.0)))


def single_excitation_energies(h: np.ndarray, n: int) -> np.ndarray:
    """Sorted eigenvalues of the one-excitation block, measured from the all-down energy."""
    idx = [1 << l for l in range(n)]
    block = h[np.ix_(idx, idx)]
    return np.sort(np.linalg.eigvalsh(block)) - h[0, 0].real


@dataclass(frozen=True)
class CaseReport:
    cfg: ChainConfig
    s1: QubitState
    s2: QubitState
    t: float
    amplitude_dev: float
    fidelity_dev: float


def compare_case(cfg: ChainConfig, s1: QubitState, s2: QubitState, t: float,
                 h: np.ndarray | None = None, eigh=None) -> CaseReport:
    """Closed-form vs dense evolution for one parameter set."""
    n = cfg.n_sites
    if h is None:
        h = build_hamiltonian(cfg, relative_to_vacuum=True)
    psi = evolve_full(h, duplex_product_state(s1, s2, n), t, eigh=eigh)
    ref = extract_amplitudes(psi)
    amps = evolve_duplex(s1, s2, cfg, t)
    amp_dev = max(abs(ref.c0 - amps.c0),
                  float(np.max(np.abs(ref.a - amps.a))),
                  float(np.max(np.abs(np.triu(ref.b, 1) - np.triu(amps.b, 1)))))
    fid = fidelity_closed_form(amps, s1, s2)
    fid_dev = max(abs(fid.f_bob - oracle_fidelity(psi, n, s1)),
                  abs(fid.f_alice - oracle_fidelity(psi, 1, s2)))
    return CaseReport(cfg, s1, s2, t, amp_dev, fid_dev)


def energy_audit(cfg: ChainConfig) -> float:
    """Max deviation of the oracle's one-excitation energies from 2h - 2J cos(q_m)."""
    h = build_hamiltonian(cfg)
    published = mode_spectrum(cfg.with_(field_sign=FieldSign.EQ3)).energies
    return float(np.max(np.abs(single_excitation_energies(h, cfg.n_sites) - np.sort(published))))
