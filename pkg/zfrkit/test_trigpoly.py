import math
import unittest

import numpy as np

from .numerics import DomainError
from .trigpoly import (CLASSICAL_A, CLASSICAL_B, PUBLISHED_PARAMS, AbcTriple,
                       PolyParams, SatakeParams, cos_coeffs, lambda_power,
                       objective, objective_from_abc, optimize_ab, p4_value,
                       positivity_identity, trig_sum)


class LambdaPowerTest(unittest.TestCase):
    def test_trace(self):
        sp = SatakeParams.unramified(5, 0.7)
        self.assertAlmostEqual(lambda_power(sp, 1, 1), 2 * math.cos(0.7))
        self.assertAlmostEqual(lambda_power(sp, 3, 1), 2 * math.cos(2.1))
        self.assertEqual(lambda_power(sp, 2, 0), 1.0)

    def test_power_of_trace(self):
        for theta in np.linspace(0, math.pi, 17):
            sp = SatakeParams.unramified(11, theta)
            for l in range(1, 5):
                for m in range(5):
                    self.assertAlmostEqual(lambda_power(sp, l, m),
                                           lambda_power(sp, l, 1) ** m,
                                           places=10)

    def test_ramified(self):
        self.assertAlmostEqual(lambda_power(SatakeParams.ramified(2), 1, 4),
                               0.25)
        self.assertAlmostEqual(
            lambda_power(SatakeParams.ramified(3, -1), 1, 3), -3 ** -1.5)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            lambda_power(SatakeParams(2, 0.5, 3, False), 1, 1)
        with self.assertRaises(DomainError):
            lambda_power(SatakeParams.unramified(3, 0.1), 0, 1)
        with self.assertRaises(DomainError):
            lambda_power(SatakeParams.unramified(3, 0.1), 1, 5)
        with self.assertRaises(DomainError):
            lambda_power(SatakeParams.unramified(1, 0.1), 1, 1)


class CoefficientsTest(unittest.TestCase):
    def test_published(self):
        expected = (24.77002742, 40.39336536, 23.13206631, 7.625796, 1.0)
        for value, want in zip(cos_coeffs(PUBLISHED_PARAMS), expected):
            self.assertAlmostEqual(value, want, places=6)

    def test_zero_params(self):
        np.testing.assert_allclose(cos_coeffs(PolyParams(8.0, 0.0, 0.0)),
                                   (3, 0, 4, 0, 1), atol=1e-12)

    def test_expansion(self):
        rng = np.random.default_rng(3)
        theta = rng.uniform(0, 2 * math.pi, 1000)
        for params in (PUBLISHED_PARAMS, PolyParams(2.5, 0.3, 2.2),
                       PolyParams(8.0, CLASSICAL_A, CLASSICAL_B)):
            np.testing.assert_allclose(trig_sum(cos_coeffs(params), theta),
                                       p4_value(params, theta, 1.0),
                                       atol=1e-10)

    def test_gamma_must_be_positive(self):
        with self.assertRaises(DomainError):
            cos_coeffs(PolyParams(0.0, 1.0, 1.0))

    def test_p4_root(self):
        theta = math.acos(-PUBLISHED_PARAMS.a / 2)
        self.assertAlmostEqual(p4_value(PUBLISHED_PARAMS, theta, 2.0), 0.0,
                               places=12)

    def test_p4_warns_outside_range(self):
        with self.assertLogs('zfrkit.trigpoly', level='WARNING'):
            p4_value(PUBLISHED_PARAMS, 0.0, 2.5)

    def test_positivity_identity(self):
        rng = np.random.default_rng(5)
        residual = positivity_identity(PUBLISHED_PARAMS,
                                       rng.uniform(0, 2 * math.pi, 5000),
                                       rng.uniform(-2, 2, 5000))
        self.assertLess(np.abs(residual).max(), 1e-9)
        self.assertAlmostEqual(
            float(positivity_identity(PUBLISHED_PARAMS, 1.0, 0.0)), 0.0,
            places=12)


class ObjectiveTest(unittest.TestCase):
    def test_abc(self):
        abc = AbcTriple.from_coeffs(cos_coeffs(PUBLISHED_PARAMS))
        self.assertAlmostEqual(abc.B, 27.7700274158, places=8)
        self.assertAlmostEqual(abc.A, 40.39336536 + 3 * 7.625796, places=5)

    def test_published(self):
        self.assertAlmostEqual(objective(PUBLISHED_PARAMS), 1 / 16.7053,
                               places=6)

    def test_a_b_1(self):
        self.assertAlmostEqual(objective(PolyParams(8.0, 1.0, 1.0)), 0.056370,
                               places=5)

    def test_classical_is_worse(self):
        self.assertLessEqual(
            objective(PolyParams(8.0, CLASSICAL_A, CLASSICAL_B)),
            objective(PUBLISHED_PARAMS))

    def test_gamma_invariant(self):
        for gamma in (0.5, 1.0, 100.0):
            self.assertAlmostEqual(
                objective(PUBLISHED_PARAMS._replace(gamma_coeff=gamma)),
                objective(PUBLISHED_PARAMS), places=12)

    def test_no_gain(self):
        self.assertEqual(float(objective_from_abc(AbcTriple(1.0, 2.0, 3.0))),
                         0.0)
        with self.assertRaises(DomainError):
            objective_from_abc(AbcTriple(-1.0, 2.0, 3.0))


class OptimizeTest(unittest.TestCase):
    def test_full_box(self):
        best = optimize_ab(((0.0, 3.0), (0.0, 3.0)))
        self.assertAlmostEqual(best.a, 1.5315, delta=2e-3)
        self.assertAlmostEqual(best.b, 0.374949, delta=2e-3)
        self.assertGreaterEqual(best.objective,
                                objective(PUBLISHED_PARAMS) - 1e-9)
        self.assertFalse(best.on_boundary)

    def test_mirrored_box(self):
        best = optimize_ab(((0.0, 1.0), (0.0, 3.0)))
        self.assertAlmostEqual(best.a, 0.374949, delta=2e-3)
        self.assertAlmostEqual(best.b, 1.5315, delta=2e-3)
        self.assertFalse(best.on_boundary)

    def test_boundary(self):
        self.assertTrue(optimize_ab(((0.0, 3.0), (0.0, 0.05))).on_boundary)

    def test_invalid_box(self):
        with self.assertRaises(DomainError):
            optimize_ab(((1.0, 0.5), (0.0, 1.0)))
        with self.assertRaises(DomainError):
            optimize_ab(((0.0, 4.0), (0.0, 1.0)))


if __name__ == '__main__':
    unittest.main()
