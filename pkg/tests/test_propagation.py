import cmath
import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.linalg import expm

from lambda_mixer.errors import DomainError, IntegrationError, SingularityError
from lambda_mixer.model import CouplingMatrix, EitMedium, FieldPair
from lambda_mixer.propagation import (
    analytic_resonant_output,
    approx_output_with_absorber,
    build_coupling_matrix,
    coupling_entries,
    eit_reference_transmission,
    expm2,
    n_fwm,
    noise_suppression_ratio,
    propagate,
    transfer_matrix,
)

RNG_SEED = 20240811


def lossless_matrix(eit: EitMedium) -> CouplingMatrix:
    """Resonant generator with the idler self-gain diagonal zeroed."""
    m = np.array(build_coupling_matrix(eit, 0j, 0.0).m)
    m[1, 1] = 0.0
    return CouplingMatrix(m=m, delta=0.0)


def fig2_calibration_eit() -> EitMedium:
    # hyperbolic mixing parameter arccosh(sqrt(2)): doubled output intensity
    theta = math.acosh(math.sqrt(2.0))
    return EitMedium(gamma_ge=300.0, gamma_gs=0.0, delta_control=300.0 / (theta / 10.0), omega_c=50.0, depth=10.0)


class TestCouplingMatrix:
    def test_required_resonant_limit(self, sec5_eit):
        eit = replace(sec5_eit, gamma_gs=0.0)
        m = build_coupling_matrix(eit, 0j, 0.0).m
        theta = 15.0 * 300.0 / 3036.0
        expected = np.array([[0.0, -1j * theta], [1j * theta, 15.0 * (300.0 / 3036.0) ** 2]])
        assert np.abs(m - expected).max() < 1e-12

    def test_absorber_loss_subtracted_from_idler_diagonal(self, sec5_eit):
        eit = replace(sec5_eit, gamma_gs=0.0)
        base = build_coupling_matrix(eit, 0j, 0.0).m
        loss = 2.5 + 0.7j
        with_loss = build_coupling_matrix(eit, loss, 0.0).m
        assert with_loss[1, 1] == pytest.approx(base[1, 1] - loss)
        assert np.abs(with_loss[:1] - base[:1]).max() == 0.0

    def test_non_normal_off_resonance(self, sec5_eit):
        m = build_coupling_matrix(sec5_eit, 0j, 2.0).m
        commutator = m @ m.conj().T - m.conj().T @ m
        assert np.abs(commutator).max() > 1e-6

    def test_eigenvalue_gain_matches_hyperbolic_oracle(self):
        eit = fig2_calibration_eit()
        theta = eit.depth * eit.gamma_ge / eit.delta_control
        eigenvalues = np.linalg.eigvals(np.array(lossless_matrix(eit).m))
        net_gain = math.exp(max(eigenvalues.real))
        assert net_gain == pytest.approx(math.cosh(theta) + math.sinh(theta), rel=1e-6)

    def test_zero_control_reduces_to_two_level_line(self):
        eit = EitMedium(gamma_ge=300.0, gamma_gs=0.0, delta_control=1e12, omega_c=0.0, depth=4.0)
        for delta in (0.0, 17.0, -230.0):
            m00, m01, m10, m11 = coupling_entries(eit, 0j, delta)
            assert m01 == m10 == 0j
            assert m00 == pytest.approx(-1j * 4.0 * 300.0 / complex(delta, 300.0))

    def test_singularity_raised_for_degenerate_inputs(self):
        # only reachable with unphysical gamma_ge = 0 and no control
        eit = EitMedium(gamma_ge=0.0, gamma_gs=0.0, delta_control=3036.0, omega_c=1.0, depth=1.0)
        with pytest.raises(SingularityError):
            coupling_entries(eit, 0j, delta=1.0)


class TestExpm2:
    def test_matches_scipy_on_random_matrices(self):
        rng = np.random.default_rng(RNG_SEED)
        worst = 0.0
        for _ in range(300):
            scale = rng.uniform(0.01, 30.0)
            m = scale * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            ours = np.array(expm2(*map(complex, m.ravel()))).reshape(2, 2)
            reference = expm(m)
            worst = max(worst, np.abs(ours - reference).max() / np.abs(reference).max())
        assert worst < 1e-11

    def test_small_generator_series_branch(self):
        m = np.array([[1e-6 + 1e-7j, -1e-5j], [1e-5j, -1e-6]])
        ours = np.array(expm2(*map(complex, m.ravel()))).reshape(2, 2)
        assert np.abs(ours - expm(m)).max() < 1e-15

    def test_strongly_dissipative_stays_finite(self):
        # naive cosh(400) would overflow; the slaved idler keeps only the
        # virtual component ~ |m01*m10| / m11^2
        m = np.array([[0.0, -0.1j], [0.1j, -800.0]])
        ours = np.array(expm2(*map(complex, m.ravel()))).reshape(2, 2)
        assert np.all(np.isfinite(ours.view(float)))
        reference = expm(m)
        assert np.abs(ours - reference).max() < 1e-12
        assert abs(ours[1, 1]) == pytest.approx(0.01 / 800.0**2, rel=1e-3)
        assert abs(ours[0, 0]) == pytest.approx(1.0, abs=1e-4)


class TestPropagate:
    def test_zero_generator_is_identity(self):
        cm = CouplingMatrix(m=np.zeros((2, 2), complex), delta=0.0)
        out, transfer = propagate(cm, FieldPair(0.3 + 0.1j, -2j))
        assert out == FieldPair(0.3 + 0.1j, -2j)
        assert np.array_equal(transfer.t, np.eye(2))

    def test_bogoliubov_generator_closed_form(self):
        theta = 0.77
        cm = CouplingMatrix(m=np.array([[0, 1j * theta], [-1j * theta, 0]]), delta=0.0)
        t = transfer_matrix(cm).t
        expected = np.array(
            [
                [math.cosh(theta), 1j * math.sinh(theta)],
                [-1j * math.sinh(theta), math.cosh(theta)],
            ]
        )
        assert np.abs(t - expected).max() < 1e-12

    def test_calibration_matrix_matches_analytic_output(self):
        eit = fig2_calibration_eit()
        cm = lossless_matrix(eit)
        out, _ = propagate(cm, FieldPair(1.0, 0.0))
        expected = analytic_resonant_output(eit, FieldPair(1.0, 0.0))
        assert abs(out.a_s - expected.a_s) < 1e-6
        assert abs(out.a_i_dag - expected.a_i_dag) < 1e-6
        assert abs(out.a_s) ** 2 == pytest.approx(2.0, rel=1e-9)

    def test_methods_agree(self, sec5_eit):
        cm = build_coupling_matrix(sec5_eit, 1.5 + 0.4j, delta=2.3)
        out_exp, t_exp = propagate(cm, FieldPair(1.0, 0.5j))
        out_rk, t_rk = propagate(cm, FieldPair(1.0, 0.5j), method="adaptive-rk")
        scale = np.abs(t_exp.t).max()
        assert np.abs(t_exp.t - t_rk.t).max() / scale < 1e-8
        assert abs(out_exp.a_s - out_rk.a_s) / scale < 1e-8

    def test_unknown_method_rejected(self, sec5_eit):
        cm = build_coupling_matrix(sec5_eit)
        with pytest.raises(ValueError, match="unknown propagation method"):
            propagate(cm, FieldPair(1.0, 0.0), method="euler")

    def test_integration_failure_carries_last_zeta(self, sec5_eit, monkeypatch):
        import lambda_mixer.propagation as prop

        class FailedSolution:
            success = False
            message = "step size underflow"
            t = np.array([0.0, 0.37])

        monkeypatch.setattr(prop, "solve_ivp", lambda *a, **k: FailedSolution())
        cm = build_coupling_matrix(sec5_eit)
        with pytest.raises(IntegrationError) as err:
            propagate(cm, FieldPair(1.0, 0.0), method="adaptive-rk")
        assert err.value.last_zeta == pytest.approx(0.37)

    def test_oracle_equivalence_randomized(self):
        rng = np.random.default_rng(RNG_SEED)
        for _ in range(200):
            depth = rng.uniform(0.0, 5.0)
            ratio = rng.uniform(0.001, 0.1)
            eit = EitMedium(300.0, 0.0, 300.0 / ratio, 50.0, depth)
            fields = FieldPair(
                complex(rng.standard_normal(), rng.standard_normal()),
                complex(rng.standard_normal(), rng.standard_normal()),
            )
            out, _ = propagate(lossless_matrix(eit), fields)
            expected = analytic_resonant_output(eit, fields)
            norm = max(abs(expected.a_s), abs(expected.a_i_dag))
            assert abs(out.a_s - expected.a_s) / norm < 1e-6
            assert abs(out.a_i_dag - expected.a_i_dag) / norm < 1e-6

    def test_symplectic_invariant(self):
        rng = np.random.default_rng(RNG_SEED + 1)
        for _ in range(200):
            eit = EitMedium(300.0, 0.0, 300.0 / rng.uniform(0.001, 0.1), 50.0, rng.uniform(0.0, 5.0))
            t = transfer_matrix(lossless_matrix(eit)).t
            assert abs(abs(t[0, 0]) ** 2 - abs(t[0, 1]) ** 2 - 1.0) < 1e-9
            assert abs(abs(t[1, 1]) ** 2 - abs(t[1, 0]) ** 2 - 1.0) < 1e-9

    def test_dissipative_with_absorber(self):
        rng = np.random.default_rng(RNG_SEED + 2)
        eit = EitMedium(300.0, 0.01, 1e12, 50.0, 5.0)  # FWM coupling switched off
        for _ in range(100):
            loss = complex(rng.uniform(0.0, 30.0), rng.uniform(-5.0, 5.0))
            delta = rng.uniform(-10.0, 10.0)
            out, _ = propagate(build_coupling_matrix(eit, loss, delta), FieldPair(0.0, 1.0))
            assert abs(out.a_i_dag) <= 1.0 + 1e-12

    def test_reciprocal_scan_symmetry(self):
        # centered absorber, gamma_gs = 0: probe transmission even in detuning
        eit = EitMedium(300.0, 0.0, 3036.0, 50.0, 6.0)
        from lambda_mixer.susceptibility import AbsorberResponse

        resp = AbsorberResponse(depth_abs=3.0, hwhm=2.0, light_shift=0.0, center=0.0)
        for delta in (0.4, 1.3, 7.9, 41.0):
            t_plus = transfer_matrix(
                build_coupling_matrix(eit, 3.0 * resp.lineshape(delta), delta)
            ).t
            t_minus = transfer_matrix(
                build_coupling_matrix(eit, 3.0 * resp.lineshape(-delta), -delta)
            ).t
            assert abs(t_plus[0, 0]) ** 2 == pytest.approx(abs(t_minus[0, 0]) ** 2, rel=1e-12)


class TestAnalyticResonantOutput:
    def test_zero_depth_is_identity(self):
        eit = EitMedium(300.0, 0.0, 3036.0, 50.0, 0.0)
        fields = FieldPair(0.2 - 1j, 0.5)
        assert analytic_resonant_output(eit, fields) == fields

    def test_intensity_doubling_point(self):
        eit = fig2_calibration_eit()
        out = analytic_resonant_output(eit, FieldPair(1.0, 0.0))
        assert abs(out.a_s) ** 2 == pytest.approx(2.0, rel=1e-12)

    def test_sec5_gain(self, sec5_eit):
        theta = 15.0 * 300.0 / 3036.0
        assert theta == pytest.approx(1.48, abs=0.005)
        out = analytic_resonant_output(sec5_eit, FieldPair(1.0, 0.0))
        assert abs(out.a_s) ** 2 == pytest.approx(math.cosh(theta) ** 2, rel=1e-12)
        assert abs(out.a_s) ** 2 == pytest.approx(5.3, rel=0.02)


class TestApproxOutputWithAbsorber:
    def test_unity_transmission_limit(self):
        eit = EitMedium(300.0, 0.0, 15000.0, 50.0, 1e-6)
        out = approx_output_with_absorber(eit, 1e6, FieldPair(1.0, 0.0))
        assert abs(out.a_s) == pytest.approx(1.0, abs=1e-9)

    def test_signal_amplitude_example(self):
        # gamma/Delta = 0.02, depth 10, absorber depth 100
        eit = EitMedium(300.0, 0.0, 15000.0, 50.0, 10.0)
        out = approx_output_with_absorber(eit, 100.0, FieldPair(1.0, 0.0))
        assert abs(out.a_s) == pytest.approx(math.exp(10.0 * 0.02**2 * 0.1), rel=1e-12)
        assert abs(out.a_s) == pytest.approx(1.0004, abs=1e-4)

    def test_seeded_idler_conversion_example(self):
        eit = EitMedium(300.0, 0.0, 15000.0, 50.0, 10.0)
        out = approx_output_with_absorber(eit, 100.0, FieldPair(0.0, 1.0))
        assert abs(out.a_s) == pytest.approx(0.5 * 0.1 * 0.02 * 1.0004, rel=1e-4)

    def test_zero_absorber_depth_rejected(self, sec5_eit):
        with pytest.raises(DomainError):
            approx_output_with_absorber(sec5_eit, 0.0, FieldPair(1.0, 0.0))

    def test_out_of_regime_warns(self, sec5_eit):
        with pytest.warns(UserWarning, match="validity regime"):
            approx_output_with_absorber(sec5_eit, 1.0, FieldPair(1.0, 0.0))

    def test_containment_against_full_propagation(self):
        # inside the validity regime the reduced formula tracks the full
        # solve within 5 percent on the output signal magnitude; the absorber
        # depth sits just inside the regime boundary (the hardest case)
        import warnings

        for ratio in np.linspace(0.005, 0.05, 10):
            for depth in np.linspace(1.0, 10.0, 10):
                eit = EitMedium(300.0, 0.0, 300.0 / ratio, 50.0, depth)
                d_abs = 10.000001 * depth * ratio
                with warnings.catch_warnings():
                    warnings.simplefilter("error")
                    approx = approx_output_with_absorber(eit, d_abs, FieldPair(1.0, 1.0))
                full, _ = propagate(build_coupling_matrix(eit, d_abs, 0.0), FieldPair(1.0, 1.0))
                assert abs(approx.a_s) == pytest.approx(abs(full.a_s), rel=0.05)


class TestNoiseQuantities:
    def test_n_fwm_zero_depth(self):
        assert n_fwm(EitMedium(300.0, 0.0, 3036.0, 50.0, 0.0)) == 0.0

    def test_n_fwm_sec5(self, sec5_eit):
        theta = 15.0 * 300.0 / 3036.0
        assert n_fwm(sec5_eit) == pytest.approx(math.sinh(theta) ** 2, rel=1e-12)
        assert n_fwm(sec5_eit) == pytest.approx(4.3, rel=0.02)

    def test_n_fwm_small_argument(self):
        eit = EitMedium(300.0, 0.0, 300.0 / 1e-3, 50.0, 1.0)
        assert n_fwm(eit) == pytest.approx(1e-6, rel=1e-5)

    def test_suppression_ratio_sec5(self, sec5_eit):
        ratio = 300.0 / 3036.0
        frac = 15.0 / 16.5
        expected = (frac * ratio) ** 2 * math.exp(-2.0 * 15.0 * ratio * (1.0 - ratio * frac))
        value = noise_suppression_ratio(sec5_eit, 16.5)
        assert value == pytest.approx(expected, rel=1e-12)
        assert value == pytest.approx(5e-4, rel=0.20)

    def test_suppression_vanishes_for_infinite_absorber(self, sec5_eit):
        assert noise_suppression_ratio(sec5_eit, 1e12) < 1e-20

    def test_suppression_quadratic_in_coupling(self):
        values = []
        for ratio in (1e-6, 5e-7):
            eit = EitMedium(300.0, 0.0, 300.0 / ratio, 50.0, 15.0)
            values.append(noise_suppression_ratio(eit, 16.5))
        assert values[0] / values[1] == pytest.approx(4.0, rel=1e-4)

    def test_zero_absorber_depth_rejected(self, sec5_eit):
        with pytest.raises(DomainError):
            noise_suppression_ratio(sec5_eit, 0.0)


class TestEitReference:
    def test_matches_diagonal_exponential(self, sec5_eit):
        for delta in (0.0, 1.0, -3.7):
            m00, _, _, _ = coupling_entries(sec5_eit, 0j, delta)
            assert eit_reference_transmission(sec5_eit, delta) == pytest.approx(
                abs(cmath.exp(m00)) ** 2, rel=1e-12
            )

    def test_lossless_spin_gives_unit_transmission(self):
        eit = EitMedium(300.0, 0.0, 3036.0, 50.0, 15.0)
        assert eit_reference_transmission(eit, 0.0) == pytest.approx(1.0, rel=1e-12)
