import math
import unittest

import numpy as np

from hypothesis import given, settings, strategies as st

from mdcsim.channel import PacketCountPmf
from mdcsim.coding import (ErasureCodeSpec, MultilevelDesign, achieved_rate,
                           average_rate, multilevel_average_rate,
                           outage_probability, rate_outage_curve)
from mdcsim.exceptions import ParameterError

PMF = PacketCountPmf([0.1, 0.2, 0.3, 0.4])


def random_problem(seed, n):
    rng = np.random.default_rng(seed)
    pmf = PacketCountPmf(rng.dirichlet(np.ones(n + 1)))
    f = rng.dirichlet(np.full(n, 0.3))
    return pmf, MultilevelDesign.from_vector(f / f.sum())


class TestErasureCode(unittest.TestCase):
    def test_nominal_rate(self):
        self.assertAlmostEqual(0.035, ErasureCodeSpec(600, 21).nominal_rate)

    def test_str(self):
        self.assertEqual('(600,21)', str(ErasureCodeSpec(600, 21)))

    def test_bad(self):
        self.assertRaises(ParameterError, ErasureCodeSpec, 3, 4)
        self.assertRaises(ParameterError, ErasureCodeSpec, 3, 0)
        self.assertRaises(ParameterError, ErasureCodeSpec, 0, 0)
        self.assertRaises(ParameterError, ErasureCodeSpec, 3.0, 1)

    def test_outage(self):
        self.assertAlmostEqual(0.3, outage_probability(ErasureCodeSpec(3, 2),
                                                       PMF))
        self.assertEqual(0.0, outage_probability(ErasureCodeSpec(3, 0 + 1),
                                                 PacketCountPmf([0, 0, 0, 1])))

    def test_average_rate(self):
        self.assertAlmostEqual(2.0 / 3.0 * 0.7,
                               average_rate(ErasureCodeSpec(3, 2), PMF))

    @given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 40))
    @settings(max_examples=100, deadline=None)
    def test_outage_grows_with_k(self, seed, n):
        pmf, _ = random_problem(seed, n)
        codes = [ErasureCodeSpec(n, k) for k in range(1, n + 1)]
        outages = [outage_probability(code, pmf) for code in codes]
        self.assertTrue(all(b >= a for a, b in zip(outages, outages[1:])))
        for code in codes:
            self.assertLessEqual(average_rate(code, pmf),
                                 code.nominal_rate + 1e-15)

    def test_size_mismatch(self):
        self.assertRaises(ParameterError, outage_probability,
                          ErasureCodeSpec(4, 2), PMF)


class TestMultilevelDesign(unittest.TestCase):
    def test_fractions(self):
        d = MultilevelDesign(3, {1: 0.25, 3: 0.75})
        self.assertEqual({1: 0.25, 3: 0.75}, d.fractions)
        self.assertEqual([1, 3], d.support)
        self.assertEqual(2, d.code_count)
        np.testing.assert_allclose([0.25, 0.0, 0.75], d.vector)
        self.assertAlmostEqual(0.625, d.norm2)

    def test_single(self):
        d = MultilevelDesign.single(ErasureCodeSpec(3, 2))
        self.assertEqual({2: 1.0}, d.fractions)

    def test_not_normalized(self):
        self.assertRaises(ParameterError, MultilevelDesign, 3, {1: 0.5})
        self.assertRaises(ParameterError, MultilevelDesign, 3,
                          {1: 1.5, 2: -0.5})
        self.assertRaises(ParameterError, MultilevelDesign, 3, {4: 1.0})

    def test_anchor(self):
        d = MultilevelDesign(3, {1: 0.25, 3: 0.75}, anchor=(1, 0.2))
        self.assertEqual(1, d.anchor.k_anchor)
        self.assertRaises(ParameterError, MultilevelDesign, 3,
                          {1: 0.25, 3: 0.75}, (1, 0.3))

    def test_from_vector(self):
        d = MultilevelDesign.from_vector([0.5, 0.5])
        self.assertEqual(2, d.n)
        self.assertRaises(ParameterError, MultilevelDesign.from_vector, [])

    def test_objective(self):
        d = MultilevelDesign(2, {1: 0.5, 2: 0.5})
        self.assertAlmostEqual(0.5 * 1 + 0.5 * 3 - 2 * 0.5,
                               d.objective([1.0, 3.0], 2.0))

    def test_read_only(self):
        d = MultilevelDesign(2, {1: 1.0})
        self.assertRaises(ValueError, d.vector.__setitem__, 0, 0.0)


class TestRates(unittest.TestCase):
    def setUp(self):
        self.design = MultilevelDesign(3, {1: 0.5, 3: 0.5})

    def test_achieved_rate(self):
        self.assertEqual(0.0, achieved_rate(self.design, 0))
        self.assertAlmostEqual(0.5 / 3, achieved_rate(self.design, 1))
        self.assertAlmostEqual(0.5 / 3, achieved_rate(self.design, 2))
        self.assertAlmostEqual(0.5 / 3 + 0.5, achieved_rate(self.design, 3))
        self.assertRaises(ParameterError, achieved_rate, self.design, 4)

    def test_average_rate(self):
        expected = 0.5 / 3 * 0.9 + 0.5 * 0.4
        self.assertAlmostEqual(expected,
                               multilevel_average_rate(self.design, PMF))

    def test_single_code_matches_erasure_code(self):
        code = ErasureCodeSpec(3, 2)
        self.assertAlmostEqual(average_rate(code, PMF),
                               multilevel_average_rate(
                                   MultilevelDesign.single(code), PMF))

    def test_curve(self):
        curve = rate_outage_curve(self.design, PMF)
        self.assertEqual([1, 3], [p.k for p in curve])
        self.assertAlmostEqual(0.5 / 3, curve[0].rate)
        self.assertAlmostEqual(0.1, curve[0].outage)
        self.assertAlmostEqual(0.5 / 3 + 0.5, curve[1].rate)
        self.assertAlmostEqual(0.6, curve[1].outage)

    def test_curve_monotone(self):
        pmf, design = random_problem(7, 30)
        curve = rate_outage_curve(design, pmf)
        rates = [p.rate for p in curve]
        outages = [p.outage for p in curve]
        self.assertEqual(sorted(rates), rates)
        self.assertEqual(sorted(outages), outages)

    @given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 40))
    @settings(max_examples=100, deadline=None)
    def test_average_rate_is_expected_achieved_rate(self, seed, n):
        pmf, design = random_problem(seed, n)
        expected = math.fsum(pmf[x] * achieved_rate(design, x)
                             for x in range(n + 1))
        self.assertLess(abs(multilevel_average_rate(design, pmf) - expected),
                        1e-12)
