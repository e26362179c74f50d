import math

import numpy as np
import pytest

from duplexchain import ChainConfig, ConsistencyError, DomainError, ResourceError, make_qubit, mode_spectrum
from duplexchain.oracle import (FullStateVector, build_hamiltonian, compare_case, duplex_product_state,
                                energy_audit, evolve_full, excitation_number, extract_amplitudes,
                                oracle_fidelity, single_excitation_energies)

SQ2 = math.sqrt(2)


@pytest.mark.parametrize("n, h, expected", [
    (2, 0.0, [-1.0, 1.0]),
    (3, 0.0, [-SQ2, 0.0, SQ2]),
])
def test_single_excitation_energies(n, h, expected):
    h_mat = build_hamiltonian(ChainConfig(n, 1.0, h))
    np.testing.assert_allclose(single_excitation_energies(h_mat, n), expected, atol=1e-12)


def test_eq3_energies_match_mode_spectrum():
    cfg = ChainConfig(4, 1.0, 0.5)
    e = single_excitation_energies(build_hamiltonian(cfg), 4)
    np.testing.assert_allclose(e, np.sort(mode_spectrum(cfg).energies), atol=1e-10)


def test_sign_convention_audit_detects_literal_hamiltonian():
    # Under the literal -h sum sigma_z the one-excitation levels sit at -2h - 2J cos(q_m),
    # not at the published 2h - 2J cos(q_m).
    h = 1.0
    cfg = ChainConfig(4, 1.0, h, "eq1")
    q = np.pi * np.arange(1, 5) / 5
    e = single_excitation_energies(build_hamiltonian(cfg), 4)
    np.testing.assert_allclose(e, np.sort(-2 * h - 2 * np.cos(q)), atol=1e-12)
    assert energy_audit(cfg) == pytest.approx(4 * h, abs=1e-12)
    assert energy_audit(cfg.with_(field_sign="eq3")) < 1e-12


@pytest.mark.parametrize("sign", ["eq3", "eq1"])
def test_hamiltonian_hermitian_and_conserves_excitations(sign):
    cfg = ChainConfig(5, 1.0, 0.8, sign)
    h = build_hamiltonian(cfg)
    nop = excitation_number(5)
    assert np.max(np.abs(h - h.conj().T)) < 1e-12
    assert np.max(np.abs(h @ nop - nop @ h)) < 1e-12


def test_resource_cap():
    with pytest.raises(ResourceError):
        build_hamiltonian(ChainConfig(15))


def test_evolve_identity_at_zero_and_diagonal_phase():
    cfg = ChainConfig(3, 1.0, 0.2)
    psi0 = duplex_product_state(make_qubit(1.0, 0.3), make_qubit(2.0), 3)
    h = build_hamiltonian(cfg)
    np.testing.assert_allclose(evolve_full(h, psi0, 0.0).amplitudes, psi0.amplitudes, atol=1e-14)

    diag = np.diag(np.arange(8, dtype=float))
    basis = np.zeros(8, dtype=complex)
    basis[5] = 1
    out = evolve_full(diag, FullStateVector(3, basis), 1.3).amplitudes
    assert abs(out[5] - np.exp(-1j * 5 * 1.3)) < 1e-14
    assert np.count_nonzero(np.abs(out) > 1e-14) == 1


def test_extract_basic_states():
    vac = np.zeros(8, dtype=complex)
    vac[0] = 1
    assert extract_amplitudes(FullStateVector(3, vac)).c0 == 1
    one = np.zeros(8, dtype=complex)
    one[1] = 1  # site 1 excited
    assert extract_amplitudes(FullStateVector(3, one)).a[0] == 1


def test_extract_rejects_three_excitations():
    psi = np.zeros(8, dtype=complex)
    psi[7] = 1
    with pytest.raises(ConsistencyError):
        extract_amplitudes(FullStateVector(3, psi))


def test_extracted_state_is_normalised():
    cfg = ChainConfig(5, 1.0, 0.4)
    psi = evolve_full(build_hamiltonian(cfg), duplex_product_state(make_qubit(1.3, 1), make_qubit(2.5, 4), 5), 9.0)
    assert abs(extract_amplitudes(psi).norm_squared() - 1) < 1e-10


def test_unnormalised_state_rejected():
    with pytest.raises(ConsistencyError):
        FullStateVector(2, np.ones(4))


def test_oracle_fidelity_at_time_zero():
    s1, s2 = make_qubit(0.9, 0.1), make_qubit(2.1, 3.3)
    psi = duplex_product_state(s1, s2, 4)
    assert abs(oracle_fidelity(psi, 4, s2) - 1) < 1e-14
    assert abs(oracle_fidelity(psi, 4, s1) - abs(np.conj(s1.vector) @ s2.vector)) < 1e-14
    with pytest.raises(DomainError):
        oracle_fidelity(psi, 5, s1)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_closed_form_agrees_with_oracle(n, rng):
    from conftest import random_qubit

    for _ in range(20):
        cfg = ChainConfig(n, 1.0, float(rng.uniform(0, 1.5)))
        rep = compare_case(cfg, random_qubit(rng), random_qubit(rng), float(rng.uniform(0, 60)))
        assert rep.amplitude_dev < 1e-9
        assert rep.fidelity_dev < 1e-9
