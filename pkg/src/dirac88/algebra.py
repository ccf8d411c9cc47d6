"""Constant matrices of the unified 8x8 wave equation and their identity checks.

Everything here is a pure constructor: Pauli matrices, the 4x4 and 8x8
Dirac sets, the boost/rotation generators kappa and theta, the unitary
change of basis that turns the 8x8 alpha into its block kappa/theta form,
and the 8x8 chiral gamma matrices.  ``verify_identities`` runs the whole
identity catalogue and reports measured deviations.

Entries are drawn from {0, +-1, +-i, +-1/sqrt(2)}, so most checks are
exact in double precision; only products involving 1/sqrt(2) pick up one
ulp of rounding (tolerance 1e-15 for those).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AlgebraReport",
    "pauli_matrices",
    "dirac44",
    "dirac88",
    "generators",
    "levi_civita",
    "unitary_u",
    "transformed_dirac88",
    "gamma88",
    "verify_identities",
]

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)

_EPS = np.zeros((3, 3, 3))
for _perm, _sgn in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                    ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
    _EPS[_perm] = _sgn


def levi_civita() -> np.ndarray:
    """Rank-3 Levi-Civita symbol as a (3, 3, 3) array."""
    return _EPS.copy()


@dataclass(frozen=True)
class AlgebraReport:
    """Outcome of one identity check."""

    identity: str
    deviation: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _report(identity: str, deviation: float, tolerance: float) -> AlgebraReport:
    deviation = float(deviation)
    return AlgebraReport(identity, deviation, tolerance, deviation <= tolerance)


def pauli_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three 2x2 Pauli matrices (sigma_x, sigma_y, sigma_z)."""
    return _SIGMA_X.copy(), _SIGMA_Y.copy(), _SIGMA_Z.copy()


def dirac44() -> tuple[np.ndarray, np.ndarray]:
    """Original 4x4 Dirac set: alpha as a (3, 4, 4) stack and beta.

    alpha_i carries sigma_i in the off-diagonal 2x2 blocks and
    beta = diag(I2, -I2).
    """
    z2 = np.zeros((2, 2), dtype=complex)
    alpha = np.stack([np.block([[z2, s], [s, z2]]) for s in pauli_matrices()])
    beta = np.block([[_I2, z2], [z2, -_I2]])
    return alpha, beta


def dirac88() -> tuple[np.ndarray, np.ndarray]:
    """8x8 Dirac set built as I2 (x) (4x4 set): (3, 8, 8) alpha stack and beta."""
    alpha4, beta4 = dirac44()
    alpha = np.stack([np.kron(_I2, a) for a in alpha4])
    beta = np.kron(_I2, beta4)
    return alpha, beta


def generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Boost generators kappa, rotation generators theta, and eta.

    kappa_i mixes the time row with spatial row i (entries -i / +i);
    theta_k acts on the spatial 3x3 block as (theta_k)_{ml} = -i eps_{kml};
    eta = diag(1, -1, -1, -1).
    """
    kappa = np.zeros((3, 4, 4), dtype=complex)
    for i in range(3):
        kappa[i, 0, 1 + i] = -1j
        kappa[i, 1 + i, 0] = 1j
    theta = np.zeros((3, 4, 4), dtype=complex)
    theta[:, 1:, 1:] = -1j * _EPS
    eta = np.diag([1, -1, -1, -1]).astype(complex)
    return kappa, theta, eta


def unitary_u() -> np.ndarray:
    """The 8x8 unitary mapping the Kronecker basis to the kappa/theta block basis.

    U = (1/sqrt 2) P (block matrix of M1 = diag(1, i) and M2 = M1 sigma_x),
    with P the permutation exchanging basis vectors 0 and 4.  That swap is
    the one (out of the candidate readings) under which U alpha U+ lands
    exactly on the block kappa/theta form; ``verify_identities`` checks it
    entrywise.
    """
    m1 = np.diag([1, 1j]).astype(complex)
    m2 = m1 @ _SIGMA_X
    z2 = np.zeros((2, 2), dtype=complex)
    blocks = np.block([
        [m1, z2, m2, z2],
        [m2, z2, -m1, z2],
        [z2, m1, z2, m2],
        [z2, m2, z2, -m1],
    ])
    perm = np.eye(8, dtype=complex)
    perm[[0, 4]] = perm[[4, 0]]
    return perm @ blocks / np.sqrt(2)


def transformed_dirac88() -> tuple[np.ndarray, np.ndarray]:
    """alpha' and beta' in the kappa/theta block basis (exact entries).

    alpha'_i = [[kappa_i, theta_i], [theta_i, kappa_i]] and
    beta' = diag(-eta, eta).  Equal to U alpha U+ / U beta U+ up to
    rounding; built directly so downstream arithmetic stays exact.
    """
    kappa, theta, eta = generators()
    z4 = np.zeros((4, 4), dtype=complex)
    alpha = np.stack([np.block([[k, t], [t, k]]) for k, t in zip(kappa, theta)])
    beta = np.block([[-eta, z4], [z4, eta]])
    return alpha, beta


def gamma88() -> np.ndarray:
    """Chiral 8x8 gamma matrices as a (4, 8, 8) stack (gamma^0, gamma^1..3).

    gamma^0 has I2 (x) I2 off-diagonal blocks, gamma^i has +-I2 (x) sigma_i.
    Verified by their anticommutation relations only.
    """
    z4 = np.zeros((4, 4), dtype=complex)
    i4 = np.eye(4, dtype=complex)
    out = [np.block([[z4, i4], [i4, z4]])]
    for s in pauli_matrices():
        blk = np.kron(_I2, s)
        out.append(np.block([[z4, blk], [-blk, z4]]))
    return np.stack(out)


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


def verify_identities(overrides: dict[str, np.ndarray] | None = None) -> list[AlgebraReport]:
    """Run the full identity catalogue and return one report per check.

    ``overrides`` may replace individual constructed matrices by name
    ("kappa1".."kappa3", "theta1".."theta3", "u") for negative controls;
    failures are reported, never raised.
    """
    overrides = overrides or {}
    reports: list[AlgebraReport] = []

    kappa, theta, eta = generators()
    kappa = np.stack([overrides.get(f"kappa{i + 1}", kappa[i]) for i in range(3)])
    theta = np.stack([overrides.get(f"theta{i + 1}", theta[i]) for i in range(3)])

    for label, (alpha, beta), dim in (("4x4", dirac44(), 4), ("8x8", dirac88(), 8)):
        ident = np.eye(dim)
        dev = 0.0
        for i in range(3):
            for j in range(3):
                target = 2.0 * ident if i == j else np.zeros((dim, dim))
                dev = max(dev, _max_abs(alpha[i] @ alpha[j] + alpha[j] @ alpha[i] - target))
        reports.append(_report(f"alpha anticommutation ({label})", dev, 0.0))
        dev = max(_max_abs(alpha[i] @ beta + beta @ alpha[i]) for i in range(3))
        reports.append(_report(f"alpha-beta anticommutation ({label})", dev, 0.0))
        reports.append(_report(f"beta squared = identity ({label})", _max_abs(beta @ beta - ident), 0.0))

    u = overrides.get("u", unitary_u())
    reports.append(_report("U unitarity", _max_abs(u @ u.conj().T - np.eye(8)), 1e-15))

    alpha8, beta8 = dirac88()
    z4 = np.zeros((4, 4), dtype=complex)
    for i, name in enumerate("xyz"):
        block = np.block([[kappa[i], theta[i]], [theta[i], kappa[i]]])
        dev = _max_abs(u @ alpha8[i] @ u.conj().T - block)
        reports.append(_report(f"U alpha_{name} U+ block form", dev, 1e-15))
    beta_block = np.block([[-eta, z4], [z4, eta]])
    reports.append(_report("U beta U+ = diag(-eta, eta)", _max_abs(u @ beta8 @ u.conj().T - beta_block), 1e-15))

    # generator commutators; realised structure constants are +i eps_ijk
    # for all three families (so(4) convention of the complex-coordinate
    # boosts), recorded in the identity names.
    def family(a: np.ndarray, b: np.ndarray, closes_onto: np.ndarray) -> float:
        dev = 0.0
        for i in range(3):
            for j in range(3):
                target = 1j * np.einsum("k,kml->ml", _EPS[i, j], closes_onto)
                dev = max(dev, _max_abs(a[i] @ b[j] - b[j] @ a[i] - target))
        return dev

    reports.append(_report("[kappa_i, kappa_j] = +i eps_ijk theta_k", family(kappa, kappa, theta), 0.0))
    reports.append(_report("[theta_i, theta_j] = +i eps_ijk theta_k", family(theta, theta, theta), 0.0))
    reports.append(_report("[kappa_i, theta_j] = +i eps_ijk kappa_k", family(kappa, theta, kappa), 0.0))

    gammas = gamma88()
    metric = np.diag([1.0, -1.0, -1.0, -1.0])
    dev = 0.0
    for mu in range(4):
        for nu in range(4):
            target = 2.0 * metric[mu, nu] * np.eye(8)
            dev = max(dev, _max_abs(gammas[mu] @ gammas[nu] + gammas[nu] @ gammas[mu] - target))
    reports.append(_report("gamma anticommutation, metric (+,-,-,-)", dev, 0.0))

    return reports
