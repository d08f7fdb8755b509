import numpy as np
import pytest

from fredkinsim import (
    DegenerateCatError,
    ModeDims,
    SystemParams,
    approx_solution,
    build_H_app,
    build_H_ext,
    cat_overlap,
    cat_to_state,
    detection_probs,
    exact_solution,
    fidelity_F,
    fidelity_Fpm,
    make_cat,
    materialize_state,
)
from fredkinsim.analytic import eta_b, eta_c, rotation_angle, zeta_b, zeta_c
from oracles import evolve_closed


class TestApproxSolution:
    def test_fig3_amplitudes(self, fig2_params):
        s = approx_solution(fig2_params, 1.85)
        assert abs(s.alpha) == pytest.approx(0.9612752029752999, abs=1e-12)
        assert abs(s.beta) == pytest.approx(0.7986207631988143, abs=1e-12)

    def test_initial_time(self, fig2_params):
        s = approx_solution(fig2_params, 0.0)
        assert s.alpha == 0 and s.beta == 0 and s.theta == 0

    def test_half_period(self, fig2_params):
        s = approx_solution(fig2_params, np.pi)
        assert abs(s.alpha) < 1e-14
        assert s.beta == pytest.approx(2 * eta_c(fig2_params), abs=1e-14)

    def test_periodic_zeros_and_bound(self, fig2_params):
        for k in (1, 2, 3):
            s = approx_solution(fig2_params, 2 * np.pi * k / fig2_params.delta_b)
            assert abs(s.alpha) < 1e-12
        for t in np.linspace(0, 7, 40):
            s = approx_solution(fig2_params, t)
            assert abs(s.alpha) <= 2 * abs(eta_b(fig2_params)) + 1e-12
            assert abs(s.beta) <= 2 * abs(eta_c(fig2_params)) + 1e-12

    def test_constant_shift_value(self, fig2_params):
        # Lambda collapses to -(delta_b eta_b^2 + delta_c eta_c^2)
        s = approx_solution(fig2_params, 0.7)
        eb, ec = eta_b(fig2_params), eta_c(fig2_params)
        assert s.Lambda == pytest.approx(
            -(fig2_params.delta_b * eb**2 + fig2_params.delta_c * ec**2))


class TestExactSolution:
    def test_rotation_angle(self, fig2_params):
        assert rotation_angle(fig2_params) == pytest.approx(-0.009998666986575267, abs=1e-15)

    def test_g_zero_limit(self):
        p = SystemParams(omega_a=0.1, g=0.0, Omega_b=100, Omega_c=100, delta_b=2.0)
        s = exact_solution(p, 1.3)
        assert s.alpha == 0 and s.beta == 0
        assert rotation_angle(p) == 0 and zeta_b(p) == 0 and zeta_c(p) == 0

    def test_displacements_match_linear_solve(self, fig2_params):
        # zeta must cancel the rotated-frame linear terms: -f/w recomputed
        # from independently assembled coefficients
        import math

        lam = rotation_angle(fig2_params)
        xi_b, xi_c = -50.0, -100.0
        g, db, dc = fig2_params.g, fig2_params.delta_b, fig2_params.delta_c
        f_b = g * (xi_c * math.cos(lam) - xi_b * math.sin(lam))
        w_b = db * math.cos(lam) ** 2 + dc * math.sin(lam) ** 2 - g * math.sin(2 * lam)
        assert zeta_b(fig2_params) == pytest.approx(-f_b / w_b)
        assert zeta_b(fig2_params) == pytest.approx(0.5024495120058351, abs=1e-12)
        assert zeta_c(fig2_params) == pytest.approx(0.49002550413659973, abs=1e-12)

    def test_constant_shift_equals_displacement_energy(self, fig2_params):
        # errata form must equal -f_b^2/w_b - f_c^2/w_c (completing the square)
        import math

        s = exact_solution(fig2_params, 0.3)
        lam = s.lam
        g = fig2_params.g
        f_b = g * (-100.0 * math.cos(lam) + 50.0 * math.sin(lam))
        f_c = g * (-100.0 * math.sin(lam) - 50.0 * math.cos(lam))
        w_b = -s.Lambda_b
        w_c = s.Lambda_c
        assert s.Lambda == pytest.approx(-f_b**2 / w_b - f_c**2 / w_c, rel=1e-12)

    def test_oracle_overlap_fig2(self, fig2_params, dims_20, plus_vacuum):
        H = build_H_ext(fig2_params, dims_20)
        ts = np.linspace(0.2, 2 * np.pi, 9)
        for t, ev in zip(ts, evolve_closed(H, plus_vacuum, ts)):
            ana = materialize_state(exact_solution(fig2_params, t), dims_20)
            assert abs(np.vdot(ana.amplitudes, ev)) ** 2 > 1 - 1e-7

    def test_variant_validation(self, fig2_params):
        with pytest.raises(ValueError):
            exact_solution(fig2_params, 1.0, variant="nope")


class TestOracleApprox:
    def test_overlap_under_H_app(self, fig2_params, dims_20, plus_vacuum):
        H = build_H_app(fig2_params, dims_20)
        ts = np.linspace(0.3, 2 * np.pi, 7)
        for t, ev in zip(ts, evolve_closed(H, plus_vacuum, ts)):
            ana = materialize_state(approx_solution(fig2_params, t), dims_20)
            assert abs(np.vdot(ana.amplitudes, ev)) ** 2 > 1 - 1e-9


class TestCats:
    def test_plus_cat_at_t0(self, fig2_params):
        cat = make_cat(approx_solution(fig2_params, 0.0), +1)
        assert cat.norm_const == pytest.approx(0.5)
        state = cat_to_state(cat, 8, 8)
        vac = np.zeros((8, 8))
        vac[0, 0] = 1.0
        assert np.allclose(state.amplitudes, vac)

    def test_minus_cat_degenerate_at_t0(self, fig2_params):
        with pytest.raises(DegenerateCatError):
            make_cat(approx_solution(fig2_params, 0.0), -1)

    def test_orthogonal_branch_limit(self):
        # widely separated branches: M_pm -> 1/sqrt(2)
        p = SystemParams(omega_a=0.1, g=0.04, Omega_b=200, Omega_c=200, delta_b=2.0)
        cat = make_cat(approx_solution(p, 1.6), +1)
        assert cat.norm_const == pytest.approx(1 / np.sqrt(2), abs=1e-3)

    def test_norm_const_consistency(self, fig2_params):
        import math

        for t in (0.4, 1.85, 3.0):
            for sign in (+1, -1):
                cat = make_cat(approx_solution(fig2_params, t), sign)
                e = math.exp(-(abs(cat.amp_b) ** 2 + abs(cat.amp_c) ** 2) / 2)
                recomputed = (2 * (1 + cat.sign * e * math.cos(cat.phase))) ** -0.5
                assert cat.norm_const == pytest.approx(recomputed, abs=1e-12)

    def test_materialized_norm(self, fig2_params):
        cat = make_cat(approx_solution(fig2_params, 1.85), +1)
        state = cat_to_state(cat, 20, 20)
        assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-10

    def test_truncation_guard(self):
        from fredkinsim import TruncationError

        p = SystemParams(omega_a=0.1, g=0.04, Omega_b=200, Omega_c=200, delta_b=2.0)
        cat = make_cat(approx_solution(p, 1.6), +1)  # |amp| ~ 8 at dim 8
        with pytest.raises(TruncationError):
            cat_to_state(cat, 8, 8)
        cat_to_state(cat, 8, 8, max_norm_defect=2.0)  # loosened gate materializes

    def test_invalid_sign(self, fig2_params):
        with pytest.raises(ValueError):
            make_cat(approx_solution(fig2_params, 1.0), 2)


class TestDetectionProbs:
    def test_initial(self, fig2_params):
        assert detection_probs(approx_solution(fig2_params, 0.0)) == (1.0, 0.0)

    def test_sum_to_one(self, fig2_params):
        for t in np.linspace(0, 6.2, 30):
            pp, pm = detection_probs(exact_solution(fig2_params, t))
            assert pp + pm == pytest.approx(1.0, abs=1e-14)
            assert 0.0 <= pp <= 1.0

    def test_large_amplitude_limit(self, fig4_params):
        pp, pm = detection_probs(exact_solution(fig4_params, 3.0))
        assert pp == pytest.approx(0.5, abs=0.1)
        assert pm == pytest.approx(0.5, abs=0.1)


class TestFidelities:
    def test_F_at_t0(self, fig2_params):
        assert fidelity_F(fig2_params, 0.0) == pytest.approx(1.0)

    def test_F_g_zero(self):
        p = SystemParams(omega_a=0.1, g=0.0, Omega_b=100, Omega_c=100, delta_b=2.0)
        for t in (0.3, 1.7, 5.2):
            assert fidelity_F(p, t) == pytest.approx(1.0, abs=1e-12)

    def test_F_closed_form_vs_vectors(self, fig2_params, dims_20):
        rng = np.random.default_rng(11)
        for t in rng.uniform(0.05, 6.2, 6):
            v1 = materialize_state(approx_solution(fig2_params, t), dims_20).amplitudes
            v2 = materialize_state(exact_solution(fig2_params, t), dims_20).amplitudes
            assert fidelity_F(fig2_params, t) == pytest.approx(
                abs(np.vdot(v2, v1)) ** 2, abs=1e-8)

    def test_F_range(self, fig2_params):
        for t in np.linspace(0.0, 6.3, 50):
            assert 0.0 <= fidelity_F(fig2_params, t) <= 1.0

    def test_Fpm_at_t0_plus(self, fig2_params):
        assert fidelity_Fpm(fig2_params, 0.0, +1) == pytest.approx(1.0)

    def test_self_fidelity(self, fig2_params):
        for t in (0.9, 2.2):
            for sign in (+1, -1):
                cat = make_cat(approx_solution(fig2_params, t), sign)
                assert abs(cat_overlap(cat, cat)) ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_Fpm_closed_form_vs_vectors(self, fig2_params):
        rng = np.random.default_rng(12)
        for t in rng.uniform(0.1, 6.2, 4):
            for sign in (+1, -1):
                c1 = make_cat(approx_solution(fig2_params, t), sign)
                c2 = make_cat(exact_solution(fig2_params, t), sign)
                v1 = cat_to_state(c1, 20, 20).amplitudes.reshape(-1)
                v2 = cat_to_state(c2, 20, 20).amplitudes.reshape(-1)
                assert fidelity_Fpm(fig2_params, t, sign) == pytest.approx(
                    abs(np.vdot(v2, v1)) ** 2, abs=1e-8)

    def test_Fpm_range(self, fig2_params):
        for t in np.linspace(0.05, 6.3, 30):
            for sign in (+1, -1):
                assert 0.0 <= fidelity_Fpm(fig2_params, t, sign) <= 1.0 + 1e-12
