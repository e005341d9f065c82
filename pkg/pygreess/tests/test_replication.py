"""

Desk-scale runs of the Set 1, noise and exactness experiments. The full runs are enabled with
PYGREESS_SLOW_TESTS=1.

"""

import random
import unittest

from pygreess import util
from pygreess.boolmat import contained
from pygreess.algorithms import grecon, grecond, greess
from pygreess.essential import essential_report
from pygreess.evaluation import coverage_curve, run_experiment, run_noise_sweep
from pygreess.synth import NOISE_PRESET, SET_1, expected_density, gen_dataset_item
from pygreess.tests import fixtures


class TestSet1Sample(unittest.TestCase):
    """ Essential ratios of the first Set 1 datasets, as generated by the Philox streams. """

    def test_essential_ratios(self):
        expected = [0.062, 0.030, 0.053, 0.042, 0.041]
        for index, ratio in enumerate(expected):
            data = gen_dataset_item(SET_1, index)[0]
            self.assertAlmostEqual(essential_report(data).ratio, ratio, delta=0.001)


@unittest.skipUnless(util.slow_tests_enabled(), "slow test; set PYGREESS_SLOW_TESTS=1")
class TestSet1(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.report = run_experiment(SET_1.replace(count=50), ["greess", "grecond"], workers=4)

    def test_essential_ratio(self):
        # Independent cells leave far fewer essential 1s than 0.549.
        self.assertAlmostEqual(self.report.mean_essential_ratio, 0.0483, delta=0.002)

    def test_density(self):
        # Independent cells give 1 - (1 - 0.01)^20, not 0.2.
        self.assertAlmostEqual(self.report.mean_density, expected_density(SET_1), delta=0.01)

    def test_coverage(self):
        greess_20 = self.report.coverage_at("greess", 20)
        self.assertGreaterEqual(greess_20, 0.99)
        self.assertAlmostEqual(greess_20, 0.9971, delta=0.02)
        for k in (15, 20):
            self.assertGreater(self.report.coverage_at("greess", k), self.report.coverage_at("grecond", k))
        for name in ("greess", "grecond"):
            self.assertAlmostEqual(self.report.coverage_at(name, 25), 1.0, delta=0.02)


@unittest.skipUnless(util.slow_tests_enabled(), "slow test; set PYGREESS_SLOW_TESTS=1")
class TestNoise(unittest.TestCase):

    def test_curves_shift_down(self):
        spec = NOISE_PRESET.replace(n_rows=250, n_cols=125, count=30)
        sweep = run_noise_sweep(spec, "greess", "general", [0.0, 0.05, 0.10], seed=1, workers=4)
        for k in range(5, 21):
            values = [sweep[p].coverage_at("greess", k) for p in (0.0, 0.05, 0.10)]
            self.assertEqual(values, sorted(values, reverse=True))


@unittest.skipUnless(util.slow_tests_enabled(), "slow test; set PYGREESS_SLOW_TESTS=1")
class TestExactness(unittest.TestCase):

    def test_planted(self):
        rng = random.Random(100)
        for _ in range(200):
            m = fixtures.random_product(rng, 30, 20, 8, 0.2)
            for algorithm in (greess, grecond, grecon):
                res = algorithm(m)
                self.assertEqual(res.product(), m)
                curve = coverage_curve(m, res.factors)
                self.assertEqual(curve.values, sorted(curve.values))
                for length in range(res.k + 1):
                    self.assertTrue(contained(res.factors.product(length), m))
