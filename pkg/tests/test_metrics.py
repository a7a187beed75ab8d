import numpy as np
import pytest

import poleplace as pp
from poleplace.linalg import fro_norm


class TestConditionNumbers:
    def test_identity(self):
        assert pp.kappa_fro(np.eye(4)) == pytest.approx(4.0)
        assert pp.kappa_2(np.eye(4)) == pytest.approx(1.0)

    def test_diagonal_closed_form(self):
        X = np.diag([1.0, 10.0])
        assert pp.kappa_2(X) == pytest.approx(10.0)
        assert pp.kappa_fro(X) == pytest.approx(np.sqrt(101.0) * np.sqrt(1.01))

    def test_spectral_below_frobenius(self):
        rng = np.random.default_rng(30)
        for _ in range(100):
            n = int(rng.integers(1, 9))
            X = rng.standard_normal((n, n))
            try:
                assert pp.kappa_2(X) <= pp.kappa_fro(X) * (1 + 1e-12)
            except pp.SingularMatrixError:
                continue

    def test_singular_raises(self):
        X = np.array([[1.0, 1.0], [1.0, 1.0]])
        with pytest.raises(pp.SingularMatrixError):
            pp.kappa_fro(X)

    def test_am_gm_chain(self):
        # ||V||^2 + ||V^-1||^2 >= 2 kappa_fro(V) >= 2n
        rng = np.random.default_rng(31)
        for _ in range(50):
            n = int(rng.integers(2, 7))
            V = rng.standard_normal((n, n))
            s = np.linalg.svd(V, compute_uv=False)
            if s[-1] < 1e-8:
                continue
            surrogate = np.sum(s**2) + np.sum(s**-2)
            kf = pp.kappa_fro(V)
            assert surrogate >= 2.0 * kf * (1 - 1e-12)
            assert kf >= n * (1 - 1e-12)


class TestDepartureFromNormality:
    def test_symmetric_is_normal(self):
        rng = np.random.default_rng(32)
        A = rng.standard_normal((5, 5))
        A = A + A.T
        assert pp.departure_from_normality(A) < 1e-10 * fro_norm(A)

    def test_single_jordan_block(self):
        assert pp.departure_from_normality(np.array([[0.0, 1.0], [0.0, 0.0]])) \
            == pytest.approx(1.0)

    def test_trace_identity(self):
        rng = np.random.default_rng(33)
        for _ in range(50):
            A = rng.standard_normal((6, 6))
            delta = pp.departure_from_normality(A)
            lam = np.linalg.eigvals(A)
            identity = np.sqrt(max(fro_norm(A) ** 2 - np.sum(np.abs(lam) ** 2), 0.0))
            assert delta == pytest.approx(identity, rel=1e-9, abs=1e-9)


class TestSensitivityBound:
    def test_zero_perturbation(self):
        spec = pp.EigStructure((-1.0, -2.0), ((1,), (1,)))
        X = np.array([[1.0, 1.0], [0.0, 1.0]])
        assert pp.sensitivity_bound_check(X, np.zeros((2, 2)), spec)

    def test_diagonalizable_reduces_to_bauer_fike(self):
        rng = np.random.default_rng(34)
        spec = pp.EigStructure((-1.0, -2.0, -3.0), ((1,), (1,), (1,)))
        for _ in range(50):
            X = rng.standard_normal((3, 3))
            if np.linalg.cond(X) > 1e3:
                continue
            H = 1e-4 * rng.standard_normal((3, 3))
            assert pp.sensitivity_bound_check(X, H, spec)

    def test_defective_square_root_growth(self):
        # closed-loop double integrator: A = J_2(0), X = I
        spec = pp.EigStructure((0.0,), ((2,),))
        X = np.eye(2)
        for eps in (1e-4, 1e-6, 1e-8, 1e-10):
            H = np.zeros((2, 2))
            H[1, 0] = eps
            assert pp.sensitivity_bound_check(X, H, spec)
            observed = np.abs(np.linalg.eigvals(np.array([[0.0, 1.0], [0.0, 0.0]]) + H)).max()
            assert observed == pytest.approx(np.sqrt(eps), rel=1e-6)

    def test_defective_random_trials(self):
        rng = np.random.default_rng(35)
        spec = pp.EigStructure((0.0, -2.0), ((3,), (1,)))
        X = np.eye(4) + 0.1 * rng.standard_normal((4, 4))
        for _ in range(50):
            H = 1e-3 * rng.standard_normal((4, 4))
            H *= 1e-3 / max(np.linalg.norm(H, 2), 1e-300)
            assert pp.sensitivity_bound_check(X, H, spec)
