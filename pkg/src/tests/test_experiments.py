
import unittest
import math
import numpy as np
from ssp_core.experiments import (
    total_variation, make_lambda_grid, default_lambda_grid, SweepReport,
    observed_cts, positivity_sweep, k_mismatch_study, linear_reference,
    decay_problem, linear_problem, convergence_study, SWEEP_COLUMNS,
    TV_THRESHOLD
)
from library.methods import (
    ForwardEuler, TaylorSeries, M3_3_4_1, M2_4_5_1, M3_8_6_1
)
from library.spatial import build_problem


class TestTotalVariation(unittest.TestCase):

    def test_total_variation(self):
        u = np.array([0.0, 1.0, 0.0, 1.0])
        self.assertEqual(4.0, total_variation(u))
        self.assertEqual(3.0, total_variation(u, periodic=False))

        # Two-component states use the first row.
        u = np.array([[1.0, 3.0, 2.0], [100.0, -100.0, 0.0]])
        self.assertEqual(3.0, total_variation(u, periodic=False))


class TestLambdaGrids(unittest.TestCase):

    def test_make_lambda_grid(self):
        r = make_lambda_grid(0.98, 1.02, 0.001)
        self.assertEqual(41, r.shape[0])
        self.assertEqual(0.98, r[0])
        self.assertEqual(1.0, r[20])
        self.assertEqual(1.02, r[-1])

        r = make_lambda_grid(1.0, 2.0, 0.3)
        np.testing.assert_array_equal([1.0, 1.3, 1.6, 1.9], r)

        with self.assertRaises(ValueError):
            make_lambda_grid(1.0, 2.0, 0.0)
        with self.assertRaises(ValueError):
            make_lambda_grid(2.0, 1.0, 0.1)
        with self.assertRaises(ValueError):
            make_lambda_grid(0.0, 1.0, 0.1)

    def test_default_lambda_grid(self):
        r = default_lambda_grid(2.0)
        self.assertTrue(np.all(np.diff(r) > 0))
        self.assertTrue(np.all(r > 0))
        self.assertIn(2.0, r)
        self.assertGreaterEqual(r[-1], 3.0)

        near = r[(r >= 1.9) & (r <= 2.1)]
        np.testing.assert_allclose(0.001, np.diff(near), atol=1e-9)

        with self.assertRaises(ValueError):
            default_lambda_grid(0.0)


class TestSweepReport(unittest.TestCase):

    def _report(self, violated):
        n = len(violated)
        return SweepReport(
            'FE', 'test', [1.0, 2.0, 3.0][:n], np.zeros(n), np.zeros(n),
            violated, violated, TV_THRESHOLD, 0.5, cts_pred=4.0
        )

    def test_lambda_obs(self):
        r = self._report([False, False, True])
        self.assertEqual(2.0, r.lambda_obs)
        self.assertEqual(4.0, r.cts_obs)
        self.assertTrue(r.bracketed)

        # A violation at the first grid point.
        r = self._report([True, False, True])
        self.assertEqual(0.0, r.lambda_obs)
        self.assertEqual(0.0, r.cts_obs)
        self.assertFalse(r.bracketed)

        # No violation at all.
        r = self._report([False, False, False])
        self.assertEqual(3.0, r.lambda_obs)
        self.assertFalse(r.bracketed)

    def test_output(self):
        r = self._report([False, True, True])
        frame = r.to_frame()
        self.assertEqual(SWEEP_COLUMNS, list(frame.columns))
        self.assertEqual(3, len(frame))

        summary = r.summary()
        self.assertEqual(1.0, summary['lambda_obs'])
        self.assertEqual(2.0, summary['cts_obs'])
        self.assertEqual(4.0, summary['cts_pred'])
        self.assertEqual('test', summary['problem'])


class TestObservedCTS(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.advection = build_problem('advection-upwind')

    def test_forward_euler(self):
        r = observed_cts(
            ForwardEuler(), self.advection,
            lambda_grid=make_lambda_grid(0.98, 1.02, 0.001)
        )
        self.assertEqual(1.0, r.lambda_obs)
        self.assertAlmostEqual(1.0, r.cts_obs, delta=1e-12)
        self.assertTrue(r.bracketed)
        self.assertEqual('FE', r.method_name)
        self.assertEqual('advection-upwind', r.problem_name)

    def test_taylor_series(self):
        r = observed_cts(
            TaylorSeries(), self.advection,
            lambda_grid=make_lambda_grid(0.9, 1.2, 0.01)
        )
        self.assertGreaterEqual(r.lambda_obs, 1.0)
        self.assertTrue(r.bracketed)

    def test_fifth_order(self):
        # Strong stability is guaranteed up to C_TS = 2.18648.
        r = observed_cts(
            M2_4_5_1(), self.advection,
            lambda_grid=make_lambda_grid(2.1, 2.4, 0.005), cts_pred=2.18648
        )
        self.assertGreaterEqual(r.lambda_obs, 2.185)
        self.assertLess(r.lambda_obs, 2.3)
        self.assertTrue(r.bracketed)
        self.assertEqual(2.18648, r.cts_pred)

        # The per-stage rise is never smaller than the per-step rise.
        self.assertTrue(np.all(r.per_stage_rise >= r.per_step_rise))
        self.assertLessEqual(r.lambda_obs_stage, r.lambda_obs)

    def test_determinism(self):
        grid = make_lambda_grid(1.0, 1.1, 0.02)
        r1 = observed_cts(M3_3_4_1(), self.advection, 10, grid)
        r2 = observed_cts(M3_3_4_1(), self.advection, 10, grid, workers=3)
        np.testing.assert_array_equal(r1.per_step_rise, r2.per_step_rise)
        np.testing.assert_array_equal(r1.violated, r2.violated)
        self.assertEqual(r1.lambda_obs, r2.lambda_obs)

    def test_default_grid(self):
        r = observed_cts(ForwardEuler(), self.advection, 5, cts_pred=1.0)
        self.assertIn(1.0, r.lambdas)
        self.assertEqual(1.0, r.lambda_obs)

        with self.assertRaises(ValueError):
            observed_cts(ForwardEuler(), self.advection)
        with self.assertRaises(ValueError):
            observed_cts(ForwardEuler(), self.advection, 0, [1.0, 2.0])
        with self.assertRaises(ValueError):
            observed_cts(ForwardEuler(), self.advection, 5, [1.0])
        with self.assertRaises(ValueError):
            observed_cts(ForwardEuler(), self.advection, 5, [2.0, 1.0])

    def test_large_lambda(self):
        # The first step at lambda = 50 already raises the variation.
        r = observed_cts(
            ForwardEuler(), self.advection, lambda_grid=[0.5, 50.0]
        )
        self.assertTrue(r.violated[1])
        self.assertEqual(0.5, r.lambda_obs)

    def test_k_mismatch_study(self):
        grid = make_lambda_grid(0.9, 1.1, 0.05)
        r = k_mismatch_study(
            [ForwardEuler(), M3_3_4_1()], self.advection, 5, grid
        )
        self.assertEqual(
            ['method', 'K_design', 'K_problem', 'lambda_obs', 'cts_obs'],
            list(r.columns)
        )
        self.assertEqual(['FE', 'M3(3,4,1)'], list(r['method']))
        self.assertTrue(math.isinf(r['K_design'][0]))
        self.assertEqual(1.0, r['K_problem'][1])


class TestBurgers(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.problem = build_problem('burgers-upwind')

    def test_forward_euler(self):
        # The shock overshoots as soon as lambda exceeds one.
        r = observed_cts(
            ForwardEuler(), self.problem,
            lambda_grid=make_lambda_grid(0.98, 1.02, 0.005)
        )
        self.assertAlmostEqual(1.0, r.lambda_obs, delta=0.005)
        self.assertTrue(r.bracketed)

    def test_taylor_series(self):
        # The foot of the rarefaction loses monotonicity for lambda > 1.
        r = observed_cts(
            TaylorSeries(), self.problem,
            lambda_grid=make_lambda_grid(0.98, 1.02, 0.005)
        )
        self.assertAlmostEqual(1.0, r.lambda_obs, delta=0.005)
        self.assertTrue(r.bracketed)


class TestWENO(unittest.TestCase):

    def test_ftilde_choice(self):
        # The second derivative built from the same operator as F allows
        # larger steps than the opposite-wind one.
        grid = make_lambda_grid(1.4, 1.7, 0.05)
        same = observed_cts(
            M2_4_5_1(), build_problem('advection-weno', ftilde='same'),
            lambda_grid=grid
        )
        opposite = observed_cts(
            M2_4_5_1(), build_problem('advection-weno', ftilde='opposite'),
            lambda_grid=grid
        )
        self.assertTrue(same.bracketed)
        self.assertTrue(opposite.bracketed)
        self.assertGreater(same.lambda_obs, opposite.lambda_obs)


class TestPositivity(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.problem = build_problem('shallow-water')

    def test_forward_euler(self):
        # The Lax-Friedrichs scheme is positive for lambda <= 1.
        r = positivity_sweep(
            ForwardEuler(), self.problem,
            lambda_grid=make_lambda_grid(0.95, 1.1, 0.005)
        )
        self.assertGreaterEqual(r.lambda_obs, 1.0)
        self.assertAlmostEqual(1.01058, r.lambda_obs, delta=0.02)
        self.assertEqual(0.0, r.threshold)

    def test_taylor_series(self):
        r = positivity_sweep(
            TaylorSeries(), self.problem,
            lambda_grid=make_lambda_grid(0.95, 1.1, 0.005)
        )
        self.assertAlmostEqual(1.02598, r.lambda_obs, delta=0.02)

    def test_fifth_order(self):
        r = positivity_sweep(
            M2_4_5_1(), self.problem,
            lambda_grid=make_lambda_grid(2.9, 3.2, 0.01)
        )
        self.assertAlmostEqual(3.01005, r.lambda_obs, delta=0.02)

    def test_wrong_problem(self):
        with self.assertRaises(ValueError):
            positivity_sweep(
                ForwardEuler(), build_problem('advection-upwind'),
                lambda_grid=[0.5, 1.0]
            )


class TestConvergence(unittest.TestCase):

    def test_linear_reference(self):
        u0 = np.array([1.0, 2.0])
        np.testing.assert_array_equal(
            u0, linear_reference(np.zeros((2, 2)), u0, 1.0)
        )
        r = linear_reference(np.diag([-1.0, 2.0]), u0, 0.5)
        np.testing.assert_allclose([math.exp(-0.5), 2 * math.exp(1.0)], r)

    def test_forward_euler(self):
        r = convergence_study(
            ForwardEuler(), decay_problem(), [0.25, 0.125, 0.0625, 0.03125]
        )
        self.assertAlmostEqual(1.0, r.order, delta=0.1)
        self.assertEqual(4, r.errors.shape[0])
        self.assertTrue(np.all(np.diff(r.errors) < 0))

    def test_fifth_order(self):
        r = convergence_study(
            M2_4_5_1(), decay_problem(), [0.2, 0.1, 0.05, 0.025]
        )
        self.assertGreater(r.order, 4.7)
        self.assertLess(r.order, 5.6)

    def test_sixth_order(self):
        rng = np.random.default_rng(1234)
        L = 0.5 * rng.standard_normal((5, 5))
        u0 = rng.standard_normal(5)
        r = convergence_study(
            M3_8_6_1(), linear_problem(L, u0), [0.25, 0.125, 0.0625]
        )
        self.assertGreater(r.order, 5.5)
        self.assertLess(r.order, 6.8)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            convergence_study(ForwardEuler(), decay_problem(), [0.3, 0.1])
        with self.assertRaises(ValueError):
            convergence_study(ForwardEuler(), decay_problem(), [0.1])
