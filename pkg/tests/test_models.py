import numpy as np
import pytest

from djtransmon.models import (ModelId, ej_eff_internal, ej_eff_slow, f_of_phi,
                               fast_hamiltonian_at_phi, g_envelope, theta_min,
                               u_classical, u_prime, u_simple, u_transformed)
from djtransmon.operators import eigensolve
from djtransmon.params import from_energies

PHI = np.linspace(-np.pi, np.pi, 1001)


@pytest.fixture(scope="module")
def asym_params():
    return from_energies(0.2, 1.25, 0.9, 40.0, k=0.3)


@pytest.fixture(scope="module")
def fig1_params():
    return from_energies(0.2, 1.25, 1.0, 40.0)


class TestClassicalPotential:
    def test_anchor_values(self):
        assert u_classical(0.0, 0.7, 40.0) == pytest.approx(-40.0)
        assert u_classical(np.pi, 1.0, 40.0) == pytest.approx(0.0, abs=1e-12)

    def test_balanced_is_abs_cos_half(self):
        got = u_classical(PHI, 1.0, 40.0)
        assert got == pytest.approx(-40.0 * np.abs(np.cos(PHI / 2.0)), abs=1e-12)

    def test_even_and_periodic(self):
        assert u_classical(PHI, 0.8, 40.0) == pytest.approx(
            u_classical(-PHI, 0.8, 40.0), abs=1e-12)
        assert u_classical(PHI, 0.8, 40.0) == pytest.approx(
            u_classical(PHI + 2 * np.pi, 0.8, 40.0), abs=1e-11)


class TestTwoModePotentials:
    def test_u_prime_matches_transformed_form(self, asym_params):
        theta = np.linspace(-np.pi, np.pi, 17)[:, None]
        a = u_prime(PHI[None, :], theta, asym_params)
        b = u_transformed(PHI[None, :], theta, asym_params)
        assert a == pytest.approx(b, abs=1e-12 * asym_params.E_J_Sigma)

    def test_minima_line_is_classical(self, asym_params):
        got = u_prime(PHI, theta_min(PHI, asym_params), asym_params)
        want = u_classical(PHI, asym_params.lam, asym_params.E_J_Sigma)
        assert got == pytest.approx(want, abs=1e-12 * asym_params.E_J_Sigma)

    def test_maxima_line_is_minus_classical(self, asym_params):
        got = u_prime(PHI, theta_min(PHI, asym_params) + np.pi, asym_params)
        want = -u_classical(PHI, asym_params.lam, asym_params.E_J_Sigma)
        assert got == pytest.approx(want, abs=1e-12 * asym_params.E_J_Sigma)

    def test_f_of_phi_symmetric_case(self, fig1_params):
        # E_J_Delta = 0 and k = 0: no minima-line drag at all
        assert np.max(np.abs(f_of_phi(PHI, fig1_params))) < 1e-12

    def test_f_of_phi_continuous_and_finite_at_pi(self, asym_params):
        f = f_of_phi(PHI, asym_params)
        assert np.all(np.isfinite(f))
        assert np.max(np.abs(np.diff(f))) < 0.05  # no branch jumps inside (-pi, pi)
        beta = asym_params.E_J_Delta / asym_params.E_J_Sigma
        limit = asym_params.k * np.pi / 2 + np.sign(beta) * np.pi / 2
        assert f_of_phi(np.pi, asym_params) == pytest.approx(limit, abs=1e-9)

    def test_u_simple_theta_lines(self, asym_params):
        classical = u_classical(PHI, asym_params.lam, asym_params.E_J_Sigma)
        assert u_simple(PHI, 0.0, asym_params) == pytest.approx(classical, abs=1e-12)
        assert u_simple(PHI, np.pi, asym_params) == pytest.approx(-classical, abs=1e-12)

    def test_u_simple_lambda_zero_flat_in_phi(self):
        p = from_energies(0.2, 1.25, 0.0, 40.0)
        vals = u_simple(PHI, 0.7, p)
        assert vals == pytest.approx(-40.0 * np.cos(0.7) * np.ones_like(PHI), abs=1e-12)

    def test_symmetric_point_value(self, fig1_params):
        got = u_prime(np.pi / 2, 0.0, fig1_params)
        assert got == pytest.approx(-40.0 * np.sqrt(0.5), rel=1e-12)

    def test_u_prime_even_when_symmetric(self, fig1_params):
        theta = 0.63
        a = u_prime(PHI, theta, fig1_params)
        b = u_prime(-PHI, -theta, fig1_params)
        assert a == pytest.approx(b, abs=1e-12 * 40.0)


class TestEffectiveEnergies:
    def test_internal_parallel_combination(self, asym_params):
        assert ej_eff_internal(0.0, asym_params) == pytest.approx(
            asym_params.E_J_Sigma)

    def test_slow_series_combination(self):
        p = from_energies(0.2, 1.25, 1.0, 40.0)  # E_J1 = E_J2 = 20
        assert ej_eff_slow(p) == pytest.approx(10.0)
        assert ej_eff_slow(p) == pytest.approx(
            p.E_J1 * p.E_J2 / (p.E_J1 + p.E_J2))

    def test_balanced_vanishes_at_pi(self, fig1_params):
        assert ej_eff_internal(np.pi, fig1_params) == pytest.approx(0.0, abs=1e-12)

    def test_envelope_clipped_nonnegative(self):
        assert g_envelope(np.pi, 1.0) == 0.0
        assert np.all(g_envelope(PHI, 1.0) >= 0.0)


class TestFastHamiltonian:
    def test_harmonic_limit_with_anharmonic_correction(self, fig1_params):
        spec = eigensolve(fast_hamiltonian_at_phi(0.0, fig1_params, 0.0, 25), 1)
        e0 = spec.energies[0]
        # harmonic zero-point sqrt(2 E_C_int E_J_Sigma) = 10 GHz; the quartic
        # term shifts it down by ~E_C_int/4
        assert e0 == pytest.approx(10.0, abs=0.35)
        assert e0 == pytest.approx(10.0 - fig1_params.E_C_int / 4.0, rel=5e-3)

    def test_free_rotor_at_balanced_pi(self, fig1_params):
        spec = eigensolve(fast_hamiltonian_at_phi(np.pi, fig1_params, 0.0, 10), 3)
        assert spec.energies[0] == pytest.approx(0.0, abs=1e-12)

    def test_half_charge_raises_ground_by_dispersion(self):
        from djtransmon.bo import eps0_int

        p = from_energies(0.2, 5.0, 1.0, 40.0)  # internal ratio 8
        e0 = eigensolve(fast_hamiltonian_at_phi(0.0, p, 0.0, 25), 1).energies[0]
        eh = eigensolve(fast_hamiltonian_at_phi(0.0, p, 0.5, 25), 1).energies[0]
        assert eh > e0
        # frozen from the two-diagonalization oracle; the asymptotic formula
        # overshoots it by ~13% at this ratio
        assert eh - e0 == pytest.approx(0.10668, abs=2e-3)
        assert abs((eh - e0) - eps0_int(p)) / eps0_int(p) < 0.2

    def test_ground_energy_monotone_in_abs_phi(self):
        p = from_energies(0.2, 1.25, 0.6, 40.0)
        phis = np.linspace(0.0, np.pi, 21)
        energies = [eigensolve(fast_hamiltonian_at_phi(ph, p, 0.0, 25), 1).energies[0]
                    for ph in phis]
        assert np.all(np.diff(energies) <= 1e-10)


def test_model_id_enumeration():
    assert ModelId("classical") is ModelId.CLASSICAL
    assert {m.value for m in ModelId} == {
        "full-two-mode", "simplified-two-mode", "classical",
        "bo-analytic", "bo-numeric", "fast-only"}
    with pytest.raises(ValueError):
        ModelId("nope")
