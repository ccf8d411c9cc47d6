import numpy as np
import pytest

from dirac88.fields import GridSpec
from dirac88.evolution import run_free
from dirac88.spin import (SpinOperator, angular_momentum_series,
                          closure_deviation, photon_spin_selection, spin_half,
                          spin_one, verify_spin_evolution,
                          write_angular_momentum_csv)
from dirac88 import states

TWO_PI = 2 * np.pi


def test_hermiticity():
    for op in (spin_half(), spin_one()):
        for comp in op.components:
            assert np.max(np.abs(comp - comp.conj().T)) == 0.0


def test_spin_half_spectrum():
    evals = np.sort(np.linalg.eigvalsh(spin_half().components[2]))
    assert np.allclose(evals, [-0.5] * 4 + [0.5] * 4, atol=1e-13)


def test_spin_one_spectrum_and_casimir():
    op = spin_one()
    evals = np.sort(np.linalg.eigvalsh(op.components[2]))
    assert np.allclose(evals, [-1, -1, 0, 0, 0, 0, 1, 1], atol=1e-13)
    s2 = sum(c @ c for c in op.components)
    evals2 = np.sort(np.linalg.eigvalsh(s2))
    assert np.allclose(evals2, [0, 0] + [2.0] * 6, atol=1e-13)


def test_hbar_scaling():
    op = spin_half(hbar=2.5)
    evals = np.sort(np.linalg.eigvalsh(op.components[2]))
    assert np.allclose(evals, [-1.25] * 4 + [1.25] * 4, atol=1e-13)
    assert closure_deviation(op) < 1e-14


def test_evolution_identity_exact():
    for op in (spin_half(), spin_one()):
        rep = verify_spin_evolution(op)
        assert rep.passed and rep.deviation == 0.0


def test_evolution_identity_negative_control():
    base = spin_half()
    comps = base.components.copy()
    comps[2] = 2.0 * comps[2]
    bad = SpinOperator(comps, "scaled")
    assert not verify_spin_evolution(bad).passed


def test_closure():
    assert closure_deviation(spin_half()) == 0.0
    assert closure_deviation(spin_one()) == 0.0


def test_photon_selection():
    g = GridSpec((16,), (TWO_PI,))
    psi = states.travelling_wave(g, 1, "x")
    rep = photon_spin_selection(psi)
    assert rep.spin_one_max == 0.0
    assert rep.spin_half_max > 0.1
    assert rep.witness_row in (0, 4)
    assert abs(rep.witness_value) == rep.spin_half_max
    assert rep.selects_spin_one


def test_selection_zero_field():
    g = GridSpec((8,), (TWO_PI,))
    from dirac88.fields import EMField, embed_em
    rep = photon_spin_selection(embed_em(EMField.zero(g)))
    assert rep.spin_one_max == 0.0 and rep.spin_half_max == 0.0


def test_selection_structural_invariance():
    # spin-1 components have empty rows/cols 0 and 4: they cannot touch the
    # constrained subspace for any state
    op = spin_one()
    for comp in op.components:
        assert np.max(np.abs(comp[0, :])) == 0.0
        assert np.max(np.abs(comp[4, :])) == 0.0
        assert np.max(np.abs(comp[:, 0])) == 0.0
        assert np.max(np.abs(comp[:, 4])) == 0.0


def test_circular_wave_helicity_and_conservation():
    g = GridSpec((64,), (TWO_PI,))
    for hel in (+1, -1):
        psi = states.circular_wave_analytic(g, 2, hel)
        run = run_free(psi, np.linspace(0.0, 5.0, 41))
        orbital, spin, total = angular_momentum_series(run)
        assert spin.values[0, 2] == pytest.approx(hel * 1.0, abs=1e-12)
        assert np.ptp(spin.values[:, 2]) < 1e-10
        assert np.max(np.abs(orbital.values)) < 1e-12


@pytest.mark.filterwarnings("ignore:density RMS width")
def test_linear_wave_no_spin():
    # a full-box wave triggers the width warning by design; its spin
    # expectation is still exact
    g = GridSpec((64,), (TWO_PI,))
    psi = states.travelling_wave(g, 2, "x")
    run = run_free(psi, np.linspace(0.0, 4.0, 33))
    _, spin, _ = angular_momentum_series(run)
    assert np.max(np.abs(spin.values[:, 2])) < 1e-12


def test_total_conserved_while_parts_move():
    g = GridSpec((16, 16, 16), (TWO_PI,) * 3)
    spinor = np.zeros(8, complex)
    spinor[3], spinor[0], spinor[2] = 1.0, 0.6, 0.4j
    psi = states.electron_gaussian_packet(g, mass=12.0, sigma=TWO_PI / 14,
                                          k0_mode=(1, 0, 1),
                                          plus_weight=1.0, minus_weight=0.7,
                                          spinor=spinor)
    times = np.linspace(0.0, 10 * np.pi / 12.0, 25)
    run = run_free(psi, times)
    orbital, spin, total = angular_momentum_series(run)
    assert np.ptp(spin.values, axis=0).max() > 1e-4
    scale = max(np.max(np.abs(total.values)), 1.0)
    assert np.ptp(total.values, axis=0).max() / scale < 1e-7


def test_wide_packet_warns():
    g = GridSpec((16, 16, 16), (TWO_PI,) * 3)
    spinor = np.zeros(8, complex)
    spinor[3] = 1.0
    psi = states.electron_gaussian_packet(g, mass=5.0, sigma=TWO_PI / 3,
                                          plus_weight=1.0, spinor=spinor)
    run = run_free(psi, np.linspace(0.0, 0.5, 17))
    with pytest.warns(UserWarning, match="wrap-around"):
        angular_momentum_series(run)


def test_narrow_packet_does_not_warn():
    g = GridSpec((16, 16, 16), (TWO_PI,) * 3)
    spinor = np.zeros(8, complex)
    spinor[3] = 1.0
    psi = states.electron_gaussian_packet(g, mass=5.0, sigma=TWO_PI / 14,
                                          plus_weight=1.0, spinor=spinor)
    run = run_free(psi, np.linspace(0.0, 0.2, 17))
    import warnings as _w
    with _w.catch_warnings():
        _w.simplefilter("error")
        angular_momentum_series(run)


def test_angular_momentum_csv(tmp_path):
    g = GridSpec((16,), (TWO_PI,))
    psi = states.circular_wave_analytic(g, 1, +1)
    run = run_free(psi, np.linspace(0.0, 1.0, 17))
    orbital, spin, total = angular_momentum_series(run)
    path = tmp_path / "am.csv"
    write_angular_momentum_csv(path, orbital, spin, total)
    header = path.read_text().splitlines()[0]
    assert header == "t,Lx,Ly,Lz,Sx,Sy,Sz,Jx,Jy,Jz"
    assert len(path.read_text().splitlines()) == 18
