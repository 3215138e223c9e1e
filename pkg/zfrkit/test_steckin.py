import math
import unittest

import numpy as np

from .numerics import DomainError, SingularityError
from .steckin import (FIXED, KAPPA, PHI, REAL_FLOOR, SQRT5, TRIPLE_FLOOR,
                      MCCase, SigmaPair, check_pair_difference,
                      check_reflected_difference, classify, coupled_abscissa,
                      f_pair, gamma_bound_array, gamma_steckin_array,
                      gamma_steckin_bound, gamma_steckin_difference, mc_table,
                      pair_difference, pair_difference_array,
                      reflected_difference_array, reflected_difference_real,
                      reflected_difference_triple, validate_pair)


class PairTest(unittest.TestCase):
    def test_constants(self):
        self.assertAlmostEqual(KAPPA, 0.5527864045, places=10)
        self.assertAlmostEqual(PHI, 1.6180339887, places=10)
        self.assertEqual(FIXED.kappa, KAPPA)
        self.assertAlmostEqual(TRIPLE_FLOOR, -1.1236067977, places=10)

    def test_coupled_abscissa(self):
        self.assertAlmostEqual(coupled_abscissa(1.0), PHI, places=14)
        self.assertAlmostEqual(coupled_abscissa(PHI), 2.193527, places=6)
        np.testing.assert_allclose(coupled_abscissa(np.array([1.0, PHI])),
                                   [PHI, coupled_abscissa(PHI)])

    def test_from_sigma(self):
        pair = SigmaPair.from_sigma(1.2)
        validate_pair(pair)
        self.assertGreater(pair.sigma1, pair.sigma)
        with self.assertRaises(DomainError):
            SigmaPair.from_sigma(0)
        with self.assertRaises(DomainError):
            SigmaPair.from_sigma(float('nan'))

    def test_validate(self):
        with self.assertRaises(DomainError):
            validate_pair(SigmaPair.from_sigma(1.0))
        with self.assertRaises(DomainError):
            validate_pair(SigmaPair.from_sigma(1.7))
        with self.assertRaises(DomainError):
            validate_pair(SigmaPair(1.2, 2.0))
        validate_pair(SigmaPair.from_sigma(1.1), upper=1.15)
        with self.assertRaises(DomainError):
            validate_pair(SigmaPair.from_sigma(1.2), upper=1.15)

    def test_f_pair(self):
        # s real, z = 1/2: both terms are 1/(sigma - 1/2).
        self.assertAlmostEqual(f_pair(1.5, 0.5), 2.0)
        with self.assertRaises(SingularityError):
            f_pair(0.5 + 2j, 0.5 + 2j)


class PairDifferenceTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(31)

    def test_nonnegative_sweep(self):
        n = 20000
        sigma = 1 + (PHI - 1) * self.rng.uniform(1e-9, 1, n)
        t = self.rng.uniform(-50, 50, n)
        z = self.rng.uniform(1e-6, 1 - 1e-6, n) + 1j * self.rng.uniform(
            -50, 50, n)
        values = pair_difference_array(sigma, t, z)
        self.assertGreaterEqual(values.min(), -1e-12)

    def test_array_matches_scalar(self):
        pair = SigmaPair.from_sigma(1.3)
        z = 0.7 + 3j
        self.assertAlmostEqual(
            float(pair_difference_array(pair.sigma, 2.5, z)),
            pair_difference(pair, 2.5, z), places=13)

    def test_check(self):
        verdict = check_pair_difference(SigmaPair.from_sigma(1.05), 10.0,
                                        0.9 + 10j)
        self.assertTrue(verdict.passed)
        self.assertGreaterEqual(verdict.margin, 0)

    def test_check_domain(self):
        with self.assertRaises(DomainError):
            check_pair_difference(SigmaPair.from_sigma(1.05), 0, 1.0 + 1j)
        with self.assertRaises(DomainError):
            check_pair_difference(SigmaPair.from_sigma(1.8), 0, 0.5)


class ReflectedDifferenceTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(37)

    def _zeros(self, n, height):
        beta = self.rng.uniform(0.5, 1 - 1e-9, n)
        return beta + 1j * self.rng.uniform(-height, height, n)

    def test_same_height_nonnegative(self):
        n = 20000
        sigma = 1 + (PHI - 1) * self.rng.uniform(1e-9, 1, n)
        z = self._zeros(n, 100)
        values = reflected_difference_array(sigma, z, z.imag)
        self.assertGreaterEqual(values.min(), -1e-12)

    def test_check(self):
        pair = SigmaPair.from_sigma(1.4)
        self.assertTrue(
            check_reflected_difference(pair, 5.0, 0.75 + 5j).passed)
        with self.assertRaises(DomainError):
            check_reflected_difference(pair, 5.0, 0.75 + 4j)
        with self.assertRaises(DomainError):
            check_reflected_difference(pair, 5.0, 0.25 + 5j)

    def test_real_floor(self):
        n = 20000
        sigma = 1 + (PHI - 1) * self.rng.uniform(1e-9, 1, n)
        beta = self.rng.uniform(0.5, 1, n)
        gamma = self.rng.uniform(-1 + 1e-9, 1 - 1e-9, n)
        values = reflected_difference_array(sigma, beta + 1j * gamma, 0.0)
        self.assertGreaterEqual(values.min(), REAL_FLOOR)

    def test_real_scalar(self):
        pair = SigmaPair.from_sigma(1.01)
        value = reflected_difference_real(pair, 0.99 + 0.01j)
        self.assertGreaterEqual(value, REAL_FLOOR)
        with self.assertRaises(DomainError):
            reflected_difference_real(pair, 0.9 + 1j)

    def test_triple_floor(self):
        n = 20000
        sigma = 1 + (PHI - 1) * self.rng.uniform(1e-9, 1, n)
        z = self._zeros(n, 30)
        values = reflected_difference_array(sigma, z, 3 * z.imag)
        self.assertGreaterEqual(values.min(), TRIPLE_FLOOR)

    def test_triple_scalar(self):
        pair = SigmaPair.from_sigma(1.5)
        self.assertGreaterEqual(reflected_difference_triple(pair, 0.6 + 0.2j),
                                TRIPLE_FLOOR)
        with self.assertRaises(DomainError):
            reflected_difference_triple(pair, 0.4 + 0.2j)


class GammaBoundTest(unittest.TestCase):
    def test_bound_dominates_oracle(self):
        rng = np.random.default_rng(41)
        n = 4000
        sigma = 1 + (PHI - 1) * rng.uniform(1e-9, 1, n)
        t = rng.uniform(-30, 30, n)
        for a in (0.0, 0.5, 1.5, 3.0):
            for m in range(5):
                bound = gamma_bound_array(a, m, t)
                exact = gamma_steckin_array(a, m, t, sigma)
                self.assertGreaterEqual((bound - exact).min(), -1e-9,
                                        (a, m))

    def test_scalar_matches_array(self):
        pair = SigmaPair.from_sigma(1.2)
        for t in (0.3, 4.0):
            self.assertAlmostEqual(gamma_steckin_bound(0.5, 2, t, pair),
                                   float(gamma_bound_array(0.5, 2, t)))
            self.assertAlmostEqual(
                gamma_steckin_difference(0.5, 2, t, pair),
                gamma_steckin_array(0.5, 2, t, pair.sigma).item(),
                places=12)

    def test_m_zero_closed_form(self):
        pair = SigmaPair.from_sigma(1.1)
        self.assertAlmostEqual(gamma_steckin_bound(0, 0, 5.0, pair),
                               KAPPA * math.log(PHI) + 1 / (SQRT5 * PHI))

    def test_domain(self):
        pair = SigmaPair.from_sigma(1.1)
        with self.assertRaises(DomainError):
            gamma_steckin_bound(-1, 1, 1.0, pair)
        with self.assertRaises(DomainError):
            gamma_steckin_bound(0, -1, 1.0, pair)


class MCTableTest(unittest.TestCase):
    def test_classify(self):
        self.assertIs(classify(0, 0, 5), MCCase.M0_A0)
        self.assertIs(classify(1, 0, 5), MCCase.M0_A)
        self.assertIs(classify(0, 2, 1), MCCase.M_A0_FAR)
        self.assertIs(classify(1, 2, -3), MCCase.M_A_FAR)
        self.assertIs(classify(0, 2, 0.5), MCCase.M_A0_NEAR)
        self.assertIs(classify(1, 2, 0.5), MCCase.M_A_NEAR)

    def test_split_reproduces_bound(self):
        for k in (2, 4, 12, 30):
            shifts = (0.0, (k - 1) / 2, k - 1, 3 * (k - 1) / 2, 2 * (k - 1))
            for a in shifts:
                for m in range(5):
                    for t in (0.0, 0.4, 1.0, 2.5, 100.0):
                        value = mc_table(a, m, t, k)
                        self.assertAlmostEqual(
                            value.M + value.C,
                            float(gamma_bound_array(a, m, t)), places=11,
                            msg=(a, m, t, k))

    def test_main_term(self):
        value = mc_table(1.5, 2, 10.0, 4)
        self.assertIs(value.case_id, MCCase.M_A_FAR)
        self.assertAlmostEqual(value.M, KAPPA * (math.log(10) + math.log(4)))

    def test_invalid(self):
        with self.assertRaises(DomainError):
            mc_table(0, 1, 1.0, 3)
        with self.assertRaises(DomainError):
            mc_table(0, 1, 1.0, 0)
        with self.assertRaises(DomainError):
            mc_table(0.7, 1, 1.0, 4)


if __name__ == '__main__':
    unittest.main()
