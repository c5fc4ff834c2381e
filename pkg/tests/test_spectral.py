import numpy as np
import pytest

from peterweyl import (
    CentralElement,
    FourierCoefficients,
    OperatorAction,
    SU2Group,
    SampledFunction,
    TorusGroup,
    apply_central_element_fd,
    apply_power,
    character_of_contragredient,
    evaluate_at,
    forward_transform,
    holomorphy_check,
    inverse_transform,
    local_spectrum,
    lp_norm,
    parseval_norm,
    radius_sequence,
    random_band_limited,
    resolvent_probe,
    sandwich_bounds,
    support,
)


@pytest.fixture(scope="module")
def t1():
    return TorusGroup(1)


@pytest.fixture(scope="module")
def su2():
    return SU2Group()


@pytest.fixture(scope="module")
def d_dtheta(t1):
    return OperatorAction(t1, CentralElement.generator(1, 0))


@pytest.fixture(scope="module")
def casimir(su2):
    return OperatorAction(su2, CentralElement.generator(1, 0))


def single_mode(t1, k):
    return FourierCoefficients(t1, {(-k,): [[1.0]]})


class TestOperatorAction:
    def test_multiplier_matches_contragredient_character(self, su2, t1):
        rng = np.random.default_rng(0)
        for model in (t1, su2):
            coeffs = {
                tuple(
                    int(rng.integers(0, 3)) for _ in range(model.generator_count)
                ): complex(rng.standard_normal(), rng.standard_normal())
                for _ in range(3)
            }
            el = CentralElement(model.generator_count, coeffs)
            action = OperatorAction(model, el)
            for lam in model.enumerate_weights(3):
                want = character_of_contragredient(el, lam, model)
                assert abs(action.multiplier(lam) - want) <= 1e-14 * max(abs(want), 1)


class TestApplyPower:
    def test_zero_power_is_identity(self, d_dtheta, t1):
        rng = np.random.default_rng(1)
        phi = random_band_limited(t1, 3, rng)
        out = apply_power(d_dtheta, 0, phi)
        for lam, mat in phi.entries.items():
            np.testing.assert_array_equal(out.entries[lam], mat)

    def test_third_power_against_derivative_oracle(self, d_dtheta, t1):
        # multiplier route vs three finite differences of exp(ik theta)
        k = 2
        phi = single_mode(t1, k)
        cubed = apply_power(d_dtheta, 3, phi)
        grid = t1.haar_quadrature(2 * k)
        el = CentralElement.generator(1, 0) ** 3
        fd_vals = apply_central_element_fd(
            t1, el, lambda pts: evaluate_at(phi, pts), grid.nodes, step=1e-3
        )
        got = forward_transform(SampledFunction(grid, fd_vals, k), [(-k,)])
        assert abs(got.entries[(-k,)][0, 0] - cubed.entries[(-k,)][0, 0]) <= 1e-5

    def test_constant_element(self, t1):
        rng = np.random.default_rng(2)
        phi = random_band_limited(t1, 2, rng)
        c = 1.5 - 2j
        action = OperatorAction(t1, CentralElement.constant(1, c))
        out = apply_power(action, 4, phi)
        for lam, mat in phi.entries.items():
            np.testing.assert_allclose(out.entries[lam], c**4 * mat)

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (0, 5)])
    def test_power_composition(self, casimir, su2, m, n):
        rng = np.random.default_rng(m * 10 + n)
        phi = random_band_limited(su2, 3, rng)
        both = apply_power(casimir, m + n, phi)
        composed = apply_power(casimir, m, apply_power(casimir, n, phi))
        for lam in phi.entries:
            scale = max(np.max(np.abs(both.entries[lam])), 1.0)
            assert np.max(
                np.abs(both.entries[lam] - composed.entries[lam])
            ) <= 1e-12 * scale

    def test_negative_power_rejected(self, d_dtheta, t1):
        with pytest.raises(ValueError):
            apply_power(d_dtheta, -1, single_mode(t1, 1))


class TestLpNorm:
    def test_constant_one_for_all_p(self, su2):
        grid = su2.haar_quadrature(2)
        f = SampledFunction(grid, np.ones(len(grid), dtype=complex), 0)
        for p in (1, 2, 3.5, "inf"):
            assert lp_norm(f, p) == pytest.approx(1.0)

    def test_unimodular_character(self, t1):
        grid = t1.haar_quadrature(4)
        f = inverse_transform(single_mode(t1, 3), grid)
        for p in (1, 2, "inf"):
            assert lp_norm(f, p) == pytest.approx(1.0, abs=1e-13)

    def test_p2_matches_parseval(self, su2):
        rng = np.random.default_rng(3)
        phi = random_band_limited(su2, 3, rng)
        grid = su2.haar_quadrature(6)
        f = inverse_transform(phi, grid)
        assert lp_norm(f, 2) == pytest.approx(parseval_norm(phi), rel=1e-10)

    def test_small_p_rejected(self, t1):
        grid = t1.haar_quadrature(1)
        f = SampledFunction(grid, np.ones(len(grid), dtype=complex), 0)
        with pytest.raises(ValueError):
            lp_norm(f, 0.5)


class TestLocalSpectrum:
    def test_single_torus_mode(self, d_dtheta, t1):
        assert local_spectrum(d_dtheta, single_mode(t1, 2)) == [2j]

    def test_merges_equal_values(self, t1):
        # chi at +-1 under the squared derivative both give -1
        action = OperatorAction(t1, CentralElement.generator(1, 0) ** 2)
        phi = FourierCoefficients(
            t1, {(0,): [[1.0]], (1,): [[1.0]], (-1,): [[1.0]]}
        )
        assert local_spectrum(action, phi) == [(-1 + 0j), 0j]

    def test_su2_three_modes(self, casimir, su2):
        phi = FourierCoefficients(
            su2, {0: [[1.0]], 1: np.eye(2), 2: np.eye(3)}
        )
        got = local_spectrum(casimir, phi)
        np.testing.assert_allclose(sorted(z.real for z in got), [0.0, 0.75, 2.0])

    def test_scalar_rescaling_invariance(self, casimir, su2):
        rng = np.random.default_rng(4)
        phi = random_band_limited(su2, 2, rng)
        spec = local_spectrum(casimir, phi)
        spec_scaled = local_spectrum(casimir, (3.7 - 0.2j) * phi)
        assert spec == spec_scaled


class TestRadiusSequence:
    def test_single_mode_all_p(self, d_dtheta, t1):
        grid = t1.haar_quadrature(6)
        phi = single_mode(t1, 3)
        for p in (1, 2, "inf"):
            rep = radius_sequence(d_dtheta, phi, p, 30, grid)
            assert rep.radius == pytest.approx(3.0, abs=1e-12)
            assert rep.spectrum_points == [3j]
            assert all(abs(r - 3.0) <= 1e-12 for r in rep.r)

    def test_two_modes_closed_form(self, d_dtheta, t1):
        grid = t1.haar_quadrature(4)
        phi = FourierCoefficients(t1, {(-1,): [[1.0]], (-2,): [[1.0]]})
        rep = radius_sequence(d_dtheta, phi, 2, 30, grid)
        for i, r in enumerate(rep.r):
            n = i + 1
            assert abs(r - (1 + 4.0**n) ** (1 / (2 * n))) <= 1e-10
        assert rep.radius == pytest.approx(2.0)

    def test_equal_moduli_modes_constant_sequence(self, d_dtheta, t1):
        # normalized so ||f||_2 = 1; the common |chi| factor scales out
        grid = t1.haar_quadrature(4)
        phi = FourierCoefficients(
            t1, {(-1,): [[1 / np.sqrt(2)]], (1,): [[1 / np.sqrt(2)]]}
        )
        rep = radius_sequence(d_dtheta, phi, 2, 12, grid)
        assert all(abs(r - 1.0) <= 1e-12 for r in rep.r)
        assert rep.radius == pytest.approx(1.0)

    def test_zero_table(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        rep = radius_sequence(d_dtheta, FourierCoefficients(t1, {}), 2, 5, grid)
        assert rep.spectrum_points == []
        assert rep.radius == 0.0
        assert rep.r == [0.0] * 5

    def test_large_powers_stay_finite(self, t1):
        # |chi| = 40 at n = 600 overflows naively; the scaled path must not
        action = OperatorAction(t1, CentralElement.generator(1, 0))
        grid = t1.haar_quadrature(80)
        phi = FourierCoefficients(t1, {(-40,): [[1.0]], (-1,): [[1.0]]})
        rep = radius_sequence(action, phi, 2, 600, grid)
        assert np.isfinite(rep.r).all()
        assert rep.r[-1] == pytest.approx(40.0, abs=1e-9)

    def test_sandwich_brackets_sequence(self, casimir, su2):
        rng = np.random.default_rng(5)
        phi = random_band_limited(su2, 2, rng)
        grid = su2.haar_quadrature(4)
        for p in (1, 2, "inf"):
            rep = radius_sequence(casimir, phi, p, 15, grid)
            for lo, r, up in zip(rep.sandwich_lower, rep.r, rep.sandwich_upper):
                assert lo <= r * (1 + 1e-12) + 1e-12
                assert r <= up * (1 + 1e-12) + 1e-12
            # both ends converge to the radius
            assert rep.sandwich_lower[-1] >= rep.radius * 0.5
            assert rep.sandwich_upper[-1] <= rep.radius * 2.0


class TestSandwichBounds:
    def test_single_mode_equalities(self, d_dtheta, t1):
        # one mode: M = 1, dim = 1, every inequality collapses to equality
        grid = t1.haar_quadrature(4)
        phi = single_mode(t1, 2)
        for p in (1, 2, "inf"):
            for n in (1, 5, 10):
                rep = sandwich_bounds(d_dtheta, phi, p, n, grid)
                assert abs(rep.worst_lower_slack) <= 1e-12
                assert abs(rep.upper_slack) <= 1e-12
                assert rep.big_m == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("p", [1, 2, "inf"])
    def test_random_su2_lower_bounds_hold(self, casimir, su2, p):
        rng = np.random.default_rng(6)
        grid = su2.haar_quadrature(6)
        for _ in range(5):
            phi = random_band_limited(su2, 3, rng)
            for n in (1, 4, 10):
                rep = sandwich_bounds(casimir, phi, p, n, grid)
                assert rep.worst_lower_slack >= -1e-10
                assert rep.upper_slack >= -1e-10

    def test_zero_table_rejected(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        with pytest.raises(ValueError):
            sandwich_bounds(d_dtheta, FourierCoefficients(t1, {}), 2, 1, grid)


class TestResolventProbe:
    def test_scalar_division_oracle(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        phi = single_mode(t1, 1)
        probe = resolvent_probe(d_dtheta, phi, 5.0, grid)
        assert probe.coefficients.entries[(-1,)][0, 0] == pytest.approx(1 / (1j - 5))
        assert probe.residual_sup <= 1e-10
        assert probe.distance_to_spectrum == pytest.approx(abs(1j - 5))

    def test_residual_scales_with_spectrum_gap(self, d_dtheta, t1):
        # resolvent entries grow like 1/eps as the gap eps halves
        grid = t1.haar_quadrature(4)
        phi = FourierCoefficients(t1, {(-1,): [[1.0]], (-2,): [[0.5]]})
        sizes = []
        for eps in (0.4, 0.2):
            probe = resolvent_probe(d_dtheta, phi, complex(0, 1) + eps, grid)
            sizes.append(abs(probe.coefficients.entries[(-1,)][0, 0]))
        ratio = sizes[1] / sizes[0]
        assert abs(ratio - 2.0) <= 0.2

    def test_zero_table(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        probe = resolvent_probe(d_dtheta, FourierCoefficients(t1, {}), 1.0, grid)
        assert probe.residual_sup == 0.0
        assert probe.coefficients.entries == {}

    def test_on_spectrum_rejected(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        with pytest.raises(ValueError, match="spectrum"):
            resolvent_probe(d_dtheta, single_mode(t1, 1), 1j, grid)

    @pytest.mark.parametrize("seed", range(3))
    def test_residual_bound_at_safe_distance(self, casimir, su2, seed):
        rng = np.random.default_rng(30 + seed)
        phi = random_band_limited(su2, 2, rng)
        grid = su2.haar_quadrature(4)
        max_chi = max(abs(z) for z in local_spectrum(casimir, phi))
        for z in (max_chi + 0.5, -1.0, 1j * (max_chi + 1)):
            probe = resolvent_probe(casimir, phi, z, grid)
            assert probe.distance_to_spectrum >= 0.5
            assert probe.residual_sup <= 1e-9 * (1 + abs(z) + max_chi)


class TestHolomorphyCheck:
    def test_single_mode_matches_scalar_oracle(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        phi = single_mode(t1, 1)
        got = holomorphy_check(d_dtheta, phi, 5.0, 1.0, 64, grid)
        zs = [5.0 + np.exp(2j * np.pi * k / 64) for k in range(64)]
        oracle = abs(np.mean([1 / (1j - z) for z in zs]) - 1 / (1j - 5.0))
        assert got <= 1e-10
        assert abs(got - oracle) <= 1e-12

    def test_discrepancy_shrinks_with_radius(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        phi = single_mode(t1, 1)
        big = holomorphy_check(d_dtheta, phi, 4.0, 2.0, 8, grid)
        small = holomorphy_check(d_dtheta, phi, 4.0, 0.5, 8, grid)
        assert small < big

    def test_disk_touching_spectrum_rejected(self, d_dtheta, t1):
        grid = t1.haar_quadrature(2)
        with pytest.raises(ValueError, match="disk"):
            holomorphy_check(d_dtheta, single_mode(t1, 1), 1j + 0.5, 1.0, 16, grid)


class TestIntertwining:
    @pytest.mark.parametrize("seed", range(3))
    def test_random_quadratic_operator_torus(self, t1, seed):
        rng = np.random.default_rng(50 + seed)
        d = CentralElement.generator(1, 0)
        el = (
            complex(rng.standard_normal(), rng.standard_normal()) * d**2
            + complex(rng.standard_normal(), rng.standard_normal()) * d
            + complex(rng.standard_normal(), rng.standard_normal())
        )
        phi = random_band_limited(t1, 3, rng, scale=0.5)
        grid = t1.haar_quadrature(6)
        action = OperatorAction(t1, el)
        want = apply_power(action, 1, phi)
        fd_vals = apply_central_element_fd(
            t1, el, lambda pts: evaluate_at(phi, pts), grid.nodes, step=1e-4
        )
        got = forward_transform(
            SampledFunction(grid, fd_vals, 3), t1.enumerate_weights(3)
        )
        for lam in want.entries:
            assert np.max(np.abs(got.entries[lam] - want.entries[lam])) <= 1e-5

    def test_random_quadratic_operator_su2(self, su2):
        rng = np.random.default_rng(60)
        omega = CentralElement.generator(1, 0)
        el = 0.7 * omega**2 - 1.3j * omega + 0.2
        phi = random_band_limited(su2, 2, rng, scale=0.5)
        grid = su2.haar_quadrature(4)
        action = OperatorAction(su2, el)
        want = apply_power(action, 1, phi)
        fd_vals = apply_central_element_fd(
            su2,
            el,
            lambda pts: evaluate_at(phi, pts),
            grid.nodes,
            step=3e-2,
            richardson=1,
        )
        got = forward_transform(
            SampledFunction(grid, fd_vals, 2), su2.enumerate_weights(2)
        )
        for lam in want.entries:
            assert np.max(np.abs(got.entries[lam] - want.entries[lam])) <= 1e-5
