import unittest

import numpy as np

from hypothesis import given, settings, strategies as st

from mdcsim.channel import ChannelParams, PacketCountPmf
from mdcsim.coding import Anchor, outage_probability, rate_outage_curve
from mdcsim.design import (EC_RO, MC, MC_RC, DesignProblem, design_scheme,
                           ec_ro_select, kkt_residual, mc_rc_code_set,
                           objective_coefficients, project_to_simplex,
                           solve_fractions, solve_fractions_restricted)
from mdcsim.exceptions import InfeasibleDesignError, ParameterError

ALPHA = 7.5e-4
GAMMA = 0.005


def reference_pmf(T=200, L=400, H=3):
    return ChannelParams.uniform(H, T, L, ALPHA).aggregate_pmf()


def random_problem(seed, anchored):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 60))
    pmf = PacketCountPmf(rng.dirichlet(np.ones(n + 1)))
    mu = float(10 ** rng.uniform(-3, 1))
    anchor = None
    if anchored:
        anchor = Anchor(int(rng.integers(1, n + 1)), float(rng.uniform(0, 1)))
    return DesignProblem.from_pmf(pmf, mu, anchor), rng


def feasible_points(problem, rng, count):
    points = rng.dirichlet(np.ones(problem.n), size=count)
    if problem.anchor is not None:
        k, m = problem.anchor
        points *= 1.0 - m
        points[:, k - 1] += m
    return points


class TestSimplexProjection(unittest.TestCase):
    def test_inside(self):
        np.testing.assert_allclose([0.2, 0.3, 0.5],
                                   project_to_simplex([0.2, 0.3, 0.5]))

    def test_shift(self):
        np.testing.assert_allclose([0.0, 1.0], project_to_simplex([0, 2]))
        np.testing.assert_allclose([0.5, 0.5], project_to_simplex([3, 3]))

    def test_mass(self):
        ret = project_to_simplex([1.0, 0.0, 0.5], mass=0.5)
        self.assertAlmostEqual(0.5, ret.sum())
        np.testing.assert_allclose([0.5, 0.0, 0.0], ret, atol=1e-15)
        np.testing.assert_array_equal([0, 0], project_to_simplex([1, 2], 0))

    def test_bad(self):
        self.assertRaises(ParameterError, project_to_simplex, [])
        self.assertRaises(ParameterError, project_to_simplex, [1.0], -1)
        self.assertRaises(ParameterError, project_to_simplex, [np.inf])


class TestDesignProblem(unittest.TestCase):
    def test_coefficients(self):
        pmf = PacketCountPmf([0.1, 0.2, 0.3, 0.4])
        problem = DesignProblem.from_pmf(pmf, 0.1)
        np.testing.assert_allclose([0.9 / 3, 2 * 0.7 / 3, 0.4],
                                   objective_coefficients(problem))

    def test_validation(self):
        self.assertRaises(ParameterError, DesignProblem, 2, [1.0], 0.1)
        self.assertRaises(ParameterError, DesignProblem, 2, [0.5, 0.9], 0.1)
        self.assertRaises(ParameterError, DesignProblem, 2, [1.0, 0.5], -1)
        self.assertRaises(ParameterError, DesignProblem, 2, [1.0, 0.5], 0.1,
                          (3, 0.1))


class TestSolveFractions(unittest.TestCase):
    def test_mu_zero_picks_best_code(self):
        problem, _ = random_problem(3, anchored=False)
        problem = DesignProblem(problem.n, problem.tails, 0.0)
        design = solve_fractions(problem)
        best = int(np.argmax(objective_coefficients(problem))) + 1
        self.assertEqual({best: 1.0}, design.fractions)

    def test_mu_zero_ties_prefer_small_k(self):
        problem = DesignProblem(2, [1.0, 0.5], 0.0)
        self.assertEqual([1], solve_fractions(problem).support)

    def test_large_mu_is_uniform(self):
        problem = DesignProblem.from_pmf(reference_pmf(T=20, L=40), 1e9)
        design = solve_fractions(problem)
        np.testing.assert_allclose(np.full(problem.n, 1.0 / problem.n),
                                   design.vector, atol=1e-6)

    def test_anchor_is_respected(self):
        pmf = reference_pmf(T=20, L=40)
        problem = DesignProblem.from_pmf(pmf, 0.1, Anchor(3, 0.4))
        design = solve_fractions(problem)
        self.assertGreaterEqual(design.vector[2], 0.4 - 1e-12)
        self.assertAlmostEqual(1.0, design.vector.sum())

    def test_infeasible_anchor(self):
        problem = DesignProblem.from_pmf(reference_pmf(T=20, L=40), 0.1,
                                         Anchor(3, 1.5))
        self.assertRaises(InfeasibleDesignError, solve_fractions, problem)

    def test_restricted(self):
        problem = DesignProblem.from_pmf(reference_pmf(T=20, L=40), 0.01)
        design = solve_fractions_restricted(problem, [20, 40, 60])
        self.assertTrue(set(design.support) <= {20, 40, 60})
        self.assertLess(kkt_residual(design, problem, [20, 40, 60]), 1e-9)

    def test_restricted_anchor_not_allowed(self):
        problem = DesignProblem.from_pmf(reference_pmf(T=20, L=40), 0.01,
                                         Anchor(3, 0.1))
        self.assertRaises(ParameterError, solve_fractions_restricted,
                          problem, [20, 40, 60])

    def test_restricted_empty(self):
        problem = DesignProblem(2, [1.0, 0.5], 0.1)
        self.assertRaises(ParameterError, solve_fractions_restricted,
                          problem, [])
        self.assertRaises(ParameterError, solve_fractions_restricted,
                          problem, [3])

    @given(seed=st.integers(0, 2 ** 32 - 1), anchored=st.booleans())
    @settings(max_examples=100, deadline=None)
    def test_restricted_full_set_is_unrestricted(self, seed, anchored):
        problem, _ = random_problem(seed, anchored)
        full = solve_fractions_restricted(problem, range(1, problem.n + 1))
        np.testing.assert_array_equal(solve_fractions(problem).vector,
                                      full.vector)

    @given(seed=st.integers(0, 2 ** 32 - 1), anchored=st.booleans())
    @settings(max_examples=100, deadline=None)
    def test_kkt(self, seed, anchored):
        problem, _ = random_problem(seed, anchored)
        design = solve_fractions(problem)
        self.assertLess(kkt_residual(design, problem), 1e-9)

    @given(seed=st.integers(0, 2 ** 32 - 1), anchored=st.booleans())
    @settings(max_examples=100, deadline=None)
    def test_beats_random_feasible_points(self, seed, anchored):
        problem, rng = random_problem(seed, anchored)
        design = solve_fractions(problem)
        c = objective_coefficients(problem)
        best = design.objective(c, problem.mu)
        points = feasible_points(problem, rng, 1000)
        values = points @ c - problem.mu * np.einsum('ij,ij->i',
                                                     points, points)
        self.assertGreaterEqual(best, values.max() - 1e-12)

    @given(seed=st.integers(0, 2 ** 32 - 1), anchored=st.booleans())
    @settings(max_examples=50, deadline=None)
    def test_norm_shrinks_with_mu(self, seed, anchored):
        problem, _ = random_problem(seed, anchored)
        norms = [solve_fractions(DesignProblem(problem.n, problem.tails, mu,
                                               problem.anchor)).norm2
                 for mu in np.logspace(-3, 3, 25)]
        for a, b in zip(norms, norms[1:]):
            self.assertLessEqual(b, a + 1e-12)

    def test_norm_shrinks_with_mu_reference(self):
        pmf = reference_pmf()
        norms = [solve_fractions(DesignProblem.from_pmf(
            pmf, mu, Anchor(21, 0.1))).norm2 for mu in np.logspace(-4, 2, 13)]
        for a, b in zip(norms, norms[1:]):
            self.assertLessEqual(b, a + 1e-12)
        self.assertGreater(norms[0], norms[-1])

    def test_kkt_needs_positive_mu(self):
        problem = DesignProblem(2, [1.0, 0.5], 0.0)
        design = solve_fractions(problem)
        self.assertRaises(ParameterError, kkt_residual, design, problem)


class TestMcRcCodeSet(unittest.TestCase):
    def test_reference_point(self):
        codes = mc_rc_code_set(3, 200, 21)
        self.assertEqual(frozenset([21, 200, 400, 600]), codes)
        self.assertEqual(4, len(codes))

    def test_anchor_on_multiple(self):
        self.assertEqual(frozenset([200, 400, 600]),
                         mc_rc_code_set(3, 200, 400))

    def test_no_anchor(self):
        self.assertEqual(frozenset([5]), mc_rc_code_set(1, 5))

    def test_bad(self):
        self.assertRaises(ParameterError, mc_rc_code_set, 0, 5)
        self.assertRaises(ParameterError, mc_rc_code_set, 3, 200, 601)
        self.assertRaises(ParameterError, mc_rc_code_set, 3, 200, 21.5)
        self.assertRaises(ParameterError, mc_rc_code_set, 3, 200, True)


class TestEcRoSelect(unittest.TestCase):
    def test_reference_point(self):
        pmf = reference_pmf()
        code = ec_ro_select(600, pmf, GAMMA)
        self.assertEqual((600, 21), (code.n, code.k))
        self.assertAlmostEqual(0.035, code.nominal_rate)
        self.assertLessEqual(outage_probability(code, pmf), GAMMA)

    def test_gamma_one(self):
        pmf = reference_pmf()
        self.assertEqual(600, ec_ro_select(600, pmf, 1.0).k)

    def test_fallback(self):
        pmf = PacketCountPmf([0.5, 0.5])
        self.assertEqual(1, ec_ro_select(1, pmf, 0.1).k)

    def test_boundary_is_inclusive(self):
        pmf = PacketCountPmf([0.25, 0.25, 0.5])
        self.assertEqual(2, ec_ro_select(2, pmf, 0.5).k)
        self.assertEqual(1, ec_ro_select(2, pmf, 0.25).k)

    def test_bad(self):
        pmf = PacketCountPmf([0.5, 0.5])
        self.assertRaises(ParameterError, ec_ro_select, 2, pmf, 0.1)
        self.assertRaises(ParameterError, ec_ro_select, 1, pmf, 1.5)

    def test_k_grows_with_gamma(self):
        pmf = reference_pmf()
        ks = [ec_ro_select(600, pmf, g).k
              for g in np.concatenate(([0.0], np.logspace(-4, 0, 41)))]
        self.assertEqual(sorted(ks), ks)
        self.assertEqual(600, ks[-1])

    @given(seed=st.integers(0, 2 ** 32 - 1),
           gammas=st.lists(st.floats(0.0, 1.0), min_size=2, max_size=10))
    @settings(max_examples=100, deadline=None)
    def test_k_grows_with_gamma_random(self, seed, gammas):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 30))
        pmf = PacketCountPmf(rng.dirichlet(np.ones(n + 1)))
        ks = [ec_ro_select(n, pmf, g).k for g in sorted(gammas)]
        self.assertEqual(sorted(ks), ks)

    def test_crossover(self):
        qualified = {}
        for T in range(40, 401, 40):
            pmf = reference_pmf(T=T)
            qualified[T] = pmf.below(1) <= GAMMA
        self.assertEqual([False, False, False], [qualified[T]
                                                 for T in (40, 80, 120)])
        self.assertTrue(qualified[160])

    def test_crossover_values(self):
        self.assertAlmostEqual(0.0072, reference_pmf(T=120).below(1), places=4)
        self.assertAlmostEqual(0.0050, reference_pmf(T=160).below(1), places=4)


class TestDesignScheme(unittest.TestCase):
    def setUp(self):
        self.pmf = reference_pmf()

    def design(self, scheme, **kwargs):
        params = dict(gamma=GAMMA, mu=0.1, anchor_ratio=0.1)
        params.update(kwargs)
        return design_scheme(scheme, self.pmf, 3, 200, **params)

    def test_ec_ro(self):
        sd = self.design(EC_RO)
        self.assertEqual({21: 1.0}, sd.design.fractions)
        self.assertEqual(21, sd.k_min)

    def test_mc_rc(self):
        sd = self.design(MC_RC)
        self.assertTrue(set(sd.design.support) <= {21, 200, 400, 600})
        self.assertGreaterEqual(sd.design.fractions[21], 0.1 - 1e-12)
        self.assertEqual(21, sd.k_min)

    def test_mc_spreads_more_than_mc_rc(self):
        mc = self.design(MC)
        mc_rc = self.design(MC_RC)
        self.assertGreater(mc.design.code_count, mc_rc.design.code_count)

    def test_first_point_serves_anchor(self):
        baseline = self.design(EC_RO).baseline
        for scheme in (MC, MC_RC):
            sd = self.design(scheme)
            first = rate_outage_curve(sd.design, self.pmf)[0]
            self.assertLessEqual(first.outage, GAMMA)
            self.assertGreaterEqual(first.rate,
                                    0.1 * baseline.nominal_rate - 1e-12)

    def test_infeasible(self):
        self.assertRaises(InfeasibleDesignError, self.design, MC,
                          anchor_ratio=1.5)

    def test_unknown(self):
        self.assertRaises(ParameterError, self.design, 'XX')
