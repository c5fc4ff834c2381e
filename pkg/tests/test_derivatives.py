import numpy as np
import pytest

from peterweyl import (
    CentralElement,
    SU2Group,
    TorusGroup,
    apply_central_element_fd,
    left_invariant_derivative,
    left_invariant_second_derivative,
)


@pytest.fixture(scope="module")
def su2():
    return SU2Group()


class TestScalarOracle:
    def test_torus_character_derivative(self):
        t1 = TorusGroup(1)
        k = 3
        func = lambda p: np.exp(1j * k * p[0])
        rng = np.random.default_rng(0)
        for _ in range(5):
            pt = t1.random_point(rng)
            got = left_invariant_derivative(t1, func, 0, pt, step=1e-4)
            assert abs(got - 1j * k * func(pt)) <= 1e-6

    def test_constant_function(self, su2):
        func = lambda p: 2.0 + 0j
        pt = su2.identity()
        assert abs(left_invariant_derivative(su2, func, 1, pt)) <= 1e-10
        assert abs(left_invariant_second_derivative(su2, func, 1, pt)) <= 1e-10

    def test_torus_second_derivative(self):
        t1 = TorusGroup(1)
        k = 2
        func = lambda p: np.exp(1j * k * p[0])
        pt = np.array([0.7])
        got = left_invariant_second_derivative(t1, func, 0, pt, step=1e-4)
        assert abs(got - (1j * k) ** 2 * func(pt)) <= 1e-6


class TestCasimirNormalization:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_eigenvalue_on_matrix_coefficients(self, su2, n):
        # the sum of negated squared second differences over the three
        # one-parameter subgroups must return l(l+1) times the coefficient
        omega = CentralElement.generator(1, 0)
        rng = np.random.default_rng(n)
        ell = n / 2.0
        i = int(rng.integers(0, n + 1))
        j = int(rng.integers(0, n + 1))
        func = lambda pts: su2.irrep_matrices(n, pts)[:, i, j]
        pts = np.array([su2.random_point(rng) for _ in range(6)])
        got = apply_central_element_fd(su2, omega, func, pts, step=1e-4)
        assert np.max(np.abs(got - ell * (ell + 1) * func(pts))) <= 1e-5

    def test_spin_half_entry(self, su2):
        omega = CentralElement.generator(1, 0)
        func = lambda pts: su2.irrep_matrices(1, pts)[:, 0, 0]
        pts = np.array([su2.random_point(np.random.default_rng(5))])
        got = apply_central_element_fd(su2, omega, func, pts)
        assert abs(got[0] - 0.75 * func(pts)[0]) <= 1e-5


class TestStencilApplication:
    def test_constant_element_is_identity(self, su2):
        el = CentralElement.constant(1, 3.0 - 1j)
        func = lambda pts: su2.irrep_matrices(2, pts)[:, 1, 1]
        pts = np.array([su2.random_point(np.random.default_rng(9))])
        got = apply_central_element_fd(su2, el, func, pts)
        assert abs(got[0] - (3.0 - 1j) * func(pts)[0]) <= 1e-12

    def test_torus_mixed_partials(self):
        t2 = TorusGroup(2)
        el = CentralElement.generator(2, 0) * CentralElement.generator(2, 1)
        k = np.array([2.0, -3.0])
        func = lambda pts: np.exp(1j * pts @ k)
        pts = np.array([[0.3, 1.1], [2.0, 0.5]])
        got = apply_central_element_fd(t2, el, func, pts, step=1e-4)
        ref = (1j * k[0]) * (1j * k[1]) * func(pts)
        assert np.max(np.abs(got - ref)) <= 1e-5

    def test_richardson_extrapolation_tightens(self, su2):
        omega = CentralElement.generator(1, 0)
        el = omega**2
        func = lambda pts: su2.irrep_matrices(2, pts)[:, 0, 2]
        pts = np.array([su2.random_point(np.random.default_rng(13))])
        ref = 2.0**2 * func(pts)  # Casimir acts by 2 on spin 1
        plain = apply_central_element_fd(su2, el, func, pts, step=3e-2)
        extrap = apply_central_element_fd(su2, el, func, pts, step=3e-2, richardson=1)
        assert np.max(np.abs(extrap - ref)) < np.max(np.abs(plain - ref))
        assert np.max(np.abs(extrap - ref)) <= 1e-5

    def test_arity_mismatch(self, su2):
        el = CentralElement.generator(2, 0)
        with pytest.raises(ValueError, match="arity"):
            apply_central_element_fd(
                su2, el, lambda pts: np.zeros(len(pts)), np.array([su2.identity()])
            )
