import math

import numpy as np
import pytest

from isingsweep import decoherence, linalg, observables, sweep
from isingsweep.decoherence import DecoherenceParams, evolve_scan, step_channel
from isingsweep.errors import NonPositiveTimeError, UnphysicalNoiseError
from isingsweep.pulse import HardwareParams

_YY = np.kron(linalg.SIGMA_Y, linalg.SIGMA_Y)


def brute_force_concurrence(rho):
    r = rho @ _YY @ rho.conj() @ _YY
    lam = np.sort(np.sqrt(np.abs(np.linalg.eigvals(r).real)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def apply(kraus, rho):
    return sum(k @ rho @ k.conj().T for k in kraus)


class TestParams:
    def test_physicality_bound(self):
        with pytest.raises(UnphysicalNoiseError):
            DecoherenceParams(t2=0.130, t1=0.060)
        DecoherenceParams(t2=0.130, t1=0.065)  # exactly t2/2 is allowed

    def test_disabled_skips_validation(self):
        p = DecoherenceParams(t2=-1.0, t1=-1.0, enabled=False)
        assert not p.enabled

    def test_pure_dephasing_split(self):
        p = DecoherenceParams(t2=0.130, t1=1.30)
        # 1/t2 = 1/(2 t1) + 1/t2p
        assert 1.0 / p.t2 == pytest.approx(1.0 / (2 * p.t1) + 1.0 / p.pure_dephasing_time)

    def test_t1_saturated_t2_means_no_pure_dephasing(self):
        p = DecoherenceParams(t2=0.2, t1=0.1)
        assert math.isinf(p.pure_dephasing_time)

    def test_from_total_time_modes(self):
        per_qubit = DecoherenceParams.from_total_time(0.130, mode="per-qubit-t2")
        entangled = DecoherenceParams.from_total_time(0.130, mode="entangled-coherence")
        assert per_qubit.t2 == pytest.approx(0.130)
        assert entangled.t2 == pytest.approx(0.260)
        assert per_qubit.t1 == pytest.approx(1.30)
        with pytest.raises(ValueError):
            DecoherenceParams.from_total_time(0.130, mode="whatever")


class TestStepChannel:
    def test_zero_duration_is_identity(self):
        assert len(step_channel(0.0, DecoherenceParams())) == 1
        assert np.array_equal(step_channel(0.0, DecoherenceParams())[0], linalg.ID4)

    def test_negative_duration_rejected(self):
        with pytest.raises(NonPositiveTimeError):
            step_channel(-1.0, DecoherenceParams())

    def test_completeness(self):
        p = DecoherenceParams(t2=0.130, t1=1.30)
        for dt in (1e-4, 1.8e-3, 0.05, 1.0):
            ks = step_channel(dt, p)
            total = sum(k.conj().T @ k for k in ks)
            assert np.max(np.abs(total - linalg.ID4)) < 1e-12

    def test_full_dephasing_limit(self):
        # long idle with no amplitude damping kills coherences, keeps populations
        p = DecoherenceParams(t2=0.1, t1=math.inf)
        ks = step_channel(1e3, p)
        rho = linalg.outer(linalg.PSI_PLUS)
        out = apply(ks, rho)
        assert np.allclose(out, np.diag([0.0, 0.5, 0.5, 0.0]), atol=1e-12)

    def test_bell_concurrence_decay_matches_coherence_scaling(self):
        # dt = t2 with t1 = inf: off-diagonal scales by exp(-2 dt/t2p) = e^-2
        t2 = 0.130
        p = DecoherenceParams(t2=t2, t1=math.inf)
        out = apply(step_channel(t2, p), linalg.outer(linalg.PSI_PLUS))
        assert out[1, 2].real == pytest.approx(0.5 * math.exp(-2.0), rel=1e-12)
        c = brute_force_concurrence(out)
        assert c == pytest.approx(math.exp(-2.0), rel=1e-10)
        assert c == pytest.approx(0.1353, abs=5e-4)
        assert observables.concurrence(out) == pytest.approx(c, abs=1e-10)

    def test_single_qubit_coherence_decays_at_t2(self):
        p = DecoherenceParams(t2=0.130, t1=1.30)
        dt = 0.033
        plus = (linalg.KET_UP + linalg.KET_DOWN) / math.sqrt(2.0)
        rho = linalg.kron(np.outer(plus, plus.conj()), np.diag([1.0, 0.0]))
        out = apply(step_channel(dt, p), rho)
        assert abs(out[0, 2]) == pytest.approx(0.5 * math.exp(-dt / p.t2), rel=1e-12)

    def test_semigroup_composition(self):
        p = DecoherenceParams(t2=0.130, t1=1.30)
        a, b = 0.8e-3, 2.3e-3
        k_ab = step_channel(a + b, p)
        k_a = step_channel(a, p)
        k_b = step_channel(b, p)
        for i in range(4):
            for j in range(4):
                unit = np.zeros((4, 4), dtype=np.complex128)
                unit[i, j] = 1.0
                once = apply(k_ab, unit)
                twice = apply(k_b, apply(k_a, unit))
                assert np.max(np.abs(once - twice)) < 1e-10

    def test_amplitude_damping_relaxes_toward_up(self):
        p = DecoherenceParams(t2=0.2, t1=0.1)
        out = apply(step_channel(10.0, p), linalg.outer(linalg.KET_DD))
        assert out[0, 0].real == pytest.approx(1.0, abs=1e-12)


class TestEvolveScan:
    def test_noise_only_concurrence_monotone(self):
        p = DecoherenceParams(t2=0.130, t1=1.30)
        rho = linalg.outer(linalg.PSI_PLUS)
        ks = step_channel(2e-3, p)
        last = observables.concurrence(rho)
        for _ in range(40):
            rho = linalg.apply_channel(rho, ks)
            c = observables.concurrence(rho)
            assert c <= last + 1e-12
            last = c

    def test_single_step_diagonal_state_changes_only_by_channel(self):
        # g_x = g_z = 0 compiles to a sigma_z sigma_z precession, which acts
        # trivially on a diagonal state, so only the channel moves rho
        hw = HardwareParams()
        p = DecoherenceParams(t2=0.130, t1=1.30, step_overhead=0.0)
        schedule = sweep.SweepSchedule(
            times=np.array([0.0, 2e-3]), g_z=np.array([0.0, 0.0]), g_x=0.0,
            total_time=2e-3, mode="discretized", steps=1)
        rho0 = linalg.outer(linalg.KET_DD)
        trajectory = evolve_scan(rho0, schedule, hw, p, j_i=hw.j_12 / 4)
        expected = apply(step_channel(2e-3, p), rho0)
        assert np.max(np.abs(trajectory.records[-1].rho - expected)) < 1e-12

    def test_requires_discretized_schedule(self, continuous_default, default_config):
        rho0 = linalg.ID4 / 4.0
        with pytest.raises(ValueError):
            evolve_scan(rho0, continuous_default, default_config.hardware,
                        DecoherenceParams.disabled())

    def test_trace_and_positivity_over_decohered_scan(self, decohered_trajectory):
        assert decohered_trajectory.trace_defect() < 1e-9
        assert decohered_trajectory.min_eigenvalue() > -1e-9

    def test_record_bounds_and_indices(self, decohered_trajectory):
        for i, record in enumerate(decohered_trajectory.records):
            assert record.step == i
            assert 0.0 <= record.fidelity <= 1.0
            assert 0.0 <= record.concurrence <= 1.0
            assert -1.0 <= record.zz <= 1.0

    def test_decohered_peak_concurrence_band(self, decohered_trajectory):
        peak = decohered_trajectory.peak_concurrence()
        assert 0.5 < peak < 0.85

    def test_ideal_scan_tracks_ground_state(self, ideal_trajectory):
        assert ideal_trajectory.final_fidelity() >= 0.95
        assert ideal_trajectory.peak_concurrence() > 0.95
