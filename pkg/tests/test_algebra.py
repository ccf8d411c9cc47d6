import numpy as np
import pytest

from dirac88.algebra import (dirac44, dirac88, gamma88, generators,
                             pauli_matrices, transformed_dirac88, unitary_u,
                             verify_identities)


def test_pauli_entries_and_products():
    sx, sy, sz = pauli_matrices()
    assert sz[0, 0] == 1 and sz[1, 1] == -1
    assert np.array_equal(sx @ sx, np.eye(2))
    assert np.array_equal(sx @ sy, 1j * sz)


def test_dirac44_blocks_and_conditions():
    alpha, beta = dirac44()
    sx, _, _ = pauli_matrices()
    assert np.array_equal(alpha[0][0:2, 2:4], sx)
    assert np.array_equal(beta @ beta, np.eye(4))
    for a in alpha:
        assert np.max(np.abs(a @ beta + beta @ a)) == 0.0


def test_dirac88_kronecker_structure():
    alpha8, beta8 = dirac88()
    alpha4, beta4 = dirac44()
    assert np.array_equal(alpha8[0][:4, :4], alpha4[0])
    assert np.array_equal(alpha8[0][4:, 4:], alpha4[0])
    assert np.max(np.abs(alpha8[0][:4, 4:])) == 0.0
    for i in range(3):
        for j in range(3):
            anti = alpha8[i] @ alpha8[j] + alpha8[j] @ alpha8[i]
            target = 2.0 * np.eye(8) if i == j else 0.0
            assert np.max(np.abs(anti - target)) == 0.0
        assert np.max(np.abs(alpha8[i] @ beta8 + beta8 @ alpha8[i])) == 0.0
    assert np.array_equal(beta8 @ beta8, np.eye(8))


def test_generator_entries_as_printed():
    kappa, theta, eta = generators()
    assert kappa[0][0, 1] == -1j and kappa[0][1, 0] == 1j
    assert kappa[1][0, 2] == -1j and kappa[2][0, 3] == -1j
    assert theta[2][1, 2] == -1j and theta[2][2, 1] == 1j
    assert theta[0][2, 3] == -1j and theta[0][3, 2] == 1j
    assert theta[1][1, 3] == 1j and theta[1][3, 1] == -1j
    assert np.array_equal(eta, np.diag([1, -1, -1, -1]))


def test_kappa_commutator_closes_on_theta():
    # oracle: build both generators literally and take the 4x4 product
    k1 = np.zeros((4, 4), dtype=complex)
    k1[0, 1], k1[1, 0] = -1j, 1j
    k2 = np.zeros((4, 4), dtype=complex)
    k2[0, 2], k2[2, 0] = -1j, 1j
    t3 = np.zeros((4, 4), dtype=complex)
    t3[1, 2], t3[2, 1] = -1j, 1j
    assert np.max(np.abs(k1 @ k2 - k2 @ k1 - 1j * t3)) == 0.0
    kappa, theta, _ = generators()
    assert np.max(np.abs(kappa[0] @ kappa[1] - kappa[1] @ kappa[0] - 1j * theta[2])) == 0.0
    assert np.max(np.abs(theta[0] @ theta[1] - theta[1] @ theta[0] - 1j * theta[2])) == 0.0


def test_unitary_u_properties():
    u = unitary_u()
    assert np.max(np.abs(u @ u.conj().T - np.eye(8))) < 1e-15
    alpha8, beta8 = dirac88()
    alpha_p, beta_p = transformed_dirac88()
    for i in range(3):
        assert np.max(np.abs(u @ alpha8[i] @ u.conj().T - alpha_p[i])) < 1e-15
    assert np.max(np.abs(u @ beta8 @ u.conj().T - beta_p)) < 1e-15


def test_transformed_blocks_match_generators():
    kappa, theta, eta = generators()
    alpha_p, beta_p = transformed_dirac88()
    assert np.array_equal(alpha_p[2][:4, :4], kappa[2])
    assert np.array_equal(alpha_p[2][:4, 4:], theta[2])
    assert np.array_equal(beta_p[:4, :4], -eta)
    assert np.array_equal(beta_p[4:, 4:], eta)


def test_gamma_metric():
    gam = gamma88()
    assert np.array_equal(gam[0] @ gam[0], np.eye(8))
    assert np.array_equal(gam[1] @ gam[1], -np.eye(8))
    assert np.max(np.abs(gam[0] @ gam[1] + gam[1] @ gam[0])) == 0.0


def test_verify_identities_all_pass():
    reports = verify_identities()
    assert len(reports) >= 12
    for rep in reports:
        assert rep.passed, rep.identity
        assert rep.deviation <= 1e-15
    exact = [r for r in reports if r.tolerance == 0.0]
    assert all(r.deviation == 0.0 for r in exact)


def test_verify_identities_negative_control():
    kappa, _, _ = generators()
    bad = kappa[0].copy()
    bad[0, 1] = -0.5j
    reports = verify_identities(overrides={"kappa1": bad})
    failed = [r for r in reports if not r.passed]
    assert any("kappa" in r.identity for r in failed)
    # untouched families still pass
    assert all(r.passed for r in reports if "theta_i, theta_j" in r.identity)


def test_report_serialisation():
    import json

    rep = verify_identities()[0]
    d = rep.to_dict()
    assert set(d) == {"identity", "deviation", "tolerance", "pass"}
    parsed = json.loads(rep.to_json())
    assert parsed == d
