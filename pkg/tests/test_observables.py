import math

import numpy as np
import pytest

from isingsweep import linalg, model, observables
from isingsweep.errors import DegenerateDeviationError

_YY = np.kron(linalg.SIGMA_Y, linalg.SIGMA_Y)


def brute_force_concurrence(rho):
    """Independent lambda-spectrum oracle: eigenvalues of rho (yy) rho* (yy)."""
    r = rho @ _YY @ rho.conj() @ _YY
    lam = np.sqrt(np.abs(np.linalg.eigvals(r).real))
    lam = np.sort(lam)[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def random_ket(rng, n=4):
    psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return psi / np.sqrt(np.vdot(psi, psi).real)


def random_density(rng, n=4):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_local_unitary(rng):
    def u2():
        q, r = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        return q * (np.diag(r) / np.abs(np.diag(r)))
    return np.kron(u2(), u2())


class TestPseudoPure:
    def test_up_up_entry_pattern(self):
        pp = observables.pseudo_pure(linalg.KET_UU, 1e-5)
        alpha = 1e-5
        expected = np.diag([1 + 4 * alpha, 1.0, 1.0, 1.0]) / (4 * (1 + alpha))
        assert np.allclose(pp.rho, expected, atol=1e-18)

    def test_large_alpha_approaches_pure_state(self):
        psi = linalg.PSI_PLUS
        pp = observables.pseudo_pure(psi, 1e6)
        assert np.max(np.abs(pp.rho - linalg.outer(psi))) < 1e-5

    def test_round_trip_extraction(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            psi = random_ket(rng)
            alpha = 10 ** rng.uniform(-6, -2)
            pp = observables.pseudo_pure(psi, alpha)
            dev = observables.extract_deviation(pp)
            assert np.max(np.abs(dev - linalg.outer(psi))) < 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            observables.pseudo_pure(2.0 * linalg.KET_UU, 1e-5)
        with pytest.raises(ValueError):
            observables.pseudo_pure(linalg.KET_UU, 0.0)


class TestExtractDeviation:
    def test_spectral_path_recovers_projector(self):
        pp = observables.pseudo_pure(linalg.PSI_PLUS, 1e-5)
        dev = observables.extract_deviation(pp.rho)  # bare matrix, spectral path
        assert np.max(np.abs(dev - linalg.outer(linalg.PSI_PLUS))) < 1e-10

    def test_fully_mixed_raises(self):
        with pytest.raises(DegenerateDeviationError):
            observables.extract_deviation(linalg.ID4 / 4.0)

    def test_channel_evolved_pseudo_pure_stays_usable(self):
        # dephase a pseudo-pure state, then extract: unit trace, Hermitian,
        # and the order parameters stay within bounds
        pp = observables.pseudo_pure(linalg.PSI_PLUS, 1e-4)
        lam = 0.3
        k0 = np.diag([1.0, math.sqrt(1.0 - lam)]).astype(complex)
        k1 = np.diag([0.0, math.sqrt(lam)]).astype(complex)
        kraus = [linalg.kron(a, b) for a in (k0, k1) for b in (k0, k1)]
        rho = linalg.apply_channel(pp.rho, kraus)
        dev = observables.extract_deviation(observables.PseudoPureState(rho, pp.alpha))
        assert abs(np.trace(dev).real - 1.0) < 1e-10
        assert np.max(np.abs(dev - dev.conj().T)) < 1e-12
        assert 0.0 <= observables.concurrence(dev) <= 1.0


class TestConcurrence:
    def test_bell_state(self):
        assert observables.concurrence(linalg.outer(linalg.PSI_PLUS)) == pytest.approx(1.0, abs=1e-12)

    def test_product_state(self):
        assert observables.concurrence(linalg.outer(linalg.KET_UU)) == pytest.approx(0.0, abs=1e-12)

    def test_werner_states(self):
        for p in (0.4, 0.6, 0.8, 1.0):
            rho = p * linalg.outer(linalg.PSI_PLUS) + (1 - p) * linalg.ID4 / 4.0
            expected = max(0.0, (3 * p - 1) / 2)
            assert brute_force_concurrence(rho) == pytest.approx(expected, abs=1e-10)
            assert observables.concurrence(rho) == pytest.approx(expected, abs=1e-10)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(32)
        for _ in range(300):
            rho = random_density(rng)
            assert observables.concurrence(rho) == pytest.approx(
                brute_force_concurrence(rho), abs=1e-9)

    def test_invariant_under_local_unitaries(self):
        rng = np.random.default_rng(33)
        for _ in range(200):
            rho = random_density(rng)
            u = random_local_unitary(rng)
            c0 = observables.concurrence(rho)
            c1 = observables.concurrence(u @ rho @ u.conj().T)
            assert c1 == pytest.approx(c0, abs=1e-9)


class TestFidelity:
    def test_self_overlap(self):
        psi = model.ground_state_ket(0.129, 0.7)
        assert observables.fidelity_vs_ground(linalg.outer(psi), 0.129, 0.7) == \
            pytest.approx(1.0, abs=1e-10)

    def test_far_apart_grounds_nearly_orthogonal(self):
        psi = model.ground_state_ket(0.129, -3.0)
        f = observables.fidelity_vs_ground(linalg.outer(psi), 0.129, 3.0)
        assert f < 0.05

    def test_triplet_mixture_uniform_overlap(self):
        s = linalg.SYMMETRY_BASIS
        rho = (s[:, :3] @ s[:, :3].conj().T) / 3.0  # maximally mixed triplet block
        assert observables.fidelity_vs_ground(rho, 0.129, 1.3) == pytest.approx(1 / 3, abs=1e-10)

    def test_pseudo_pure_input_uses_deviation(self):
        psi = model.ground_state_ket(0.129, -1.4)
        pp = observables.pseudo_pure(psi, 1e-5)
        assert observables.fidelity_vs_ground(pp, 0.129, -1.4) == pytest.approx(1.0, abs=1e-9)

    def test_numeric_ground_at_zero_transverse_field(self):
        rho = linalg.outer(linalg.KET_DD)
        assert observables.fidelity_vs_ground(rho, 0.0, 3.0) == pytest.approx(1.0, abs=1e-12)


class TestZZCorrelator:
    def test_ferromagnetic(self):
        assert observables.zz_correlator(linalg.outer(linalg.KET_UU)) == pytest.approx(1.0)

    def test_antiferromagnetic(self):
        assert observables.zz_correlator(linalg.outer(linalg.PSI_PLUS)) == pytest.approx(-1.0)

    def test_maximally_mixed(self):
        assert observables.zz_correlator(linalg.ID4 / 4.0) == pytest.approx(0.0, abs=1e-14)


class TestGroundStateSweep:
    def test_order_parameters_symmetric_under_gz_flip(self):
        for gz in np.linspace(0.0, 3.0, 31):
            up = linalg.outer(model.ground_state_ket(0.129, gz))
            dn = linalg.outer(model.ground_state_ket(0.129, -gz))
            assert observables.concurrence(up) == pytest.approx(
                observables.concurrence(dn), abs=1e-9)
            assert observables.zz_correlator(up) == pytest.approx(
                observables.zz_correlator(dn), abs=1e-9)

    def test_concurrence_profile(self):
        c0 = observables.concurrence(linalg.outer(model.ground_state_ket(0.129, 0.0)))
        c3 = observables.concurrence(linalg.outer(model.ground_state_ket(0.129, 3.0)))
        assert c0 > 0.95
        assert c3 < 0.05

    def test_zero_transverse_field_product_phase(self):
        for gz in (1.5, 2.0, 3.0, -1.5, -3.0):
            rho = linalg.outer(model.ground_state_ket(0.0, gz))
            assert observables.concurrence(rho) == pytest.approx(0.0, abs=1e-12)
