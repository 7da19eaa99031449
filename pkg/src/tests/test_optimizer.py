
import unittest
import math
import numpy as np
from ssp_core.tableau import Tableau
from ssp_core.order_conditions import order_of, tau2_residual
from ssp_core.optimizer import (
    OptimizationSpec, NoFeasibleMethodError, optimize, verify_candidate
)
from library.methods import (
    M3_3_4_1, M2_4_5_1, TwoStageFourthOrder, OptimizedMethod
)


class TestOptimizationSpec(unittest.TestCase):

    def test_init(self):
        spec = OptimizationSpec(4, 5, 'M2', 1.0)
        self.assertEqual('M2(4,5,1)', spec.method_name)
        self.assertEqual(32, spec.seeds)
        self.assertEqual(1, spec.workers)

        spec = OptimizationSpec(4, 4, 'M2', math.inf)
        self.assertEqual('M2(4,4,inf)', spec.method_name)

        tests = [
            (0, 2, 'M1', 1.0), (17, 2, 'M1', 1.0), (2, 0, 'M1', 1.0),
            (2, 7, 'M1', 1.0), (2, 2, 'M4', 1.0), (2, 2, 'external', 1.0),
            (2, 2, 'M1', 0.0), (2, 2, 'M1', -1.0)
        ]
        for args in tests:
            with self.assertRaises(ValueError):
                OptimizationSpec(*args)

        with self.assertRaises(ValueError):
            OptimizationSpec(2, 2, 'M1', 1.0, seeds=0)
        with self.assertRaises(ValueError):
            OptimizationSpec(2, 2, 'M1', 1.0, budget=0)
        with self.assertRaises(ValueError):
            OptimizationSpec(2, 2, 'M1', 1.0, tol_order=0.0)


class TestOptimize(unittest.TestCase):

    def test_taylor_series(self):
        # The only one-stage second order method is the Taylor series step.
        spec = OptimizationSpec(1, 2, 'M1', 1.0, seeds=4, budget=200)
        r = optimize(spec)
        self.assertAlmostEqual(1.0, r.cts, delta=1e-6)
        self.assertIsInstance(r.record, OptimizedMethod)
        self.assertEqual(r.cts, r.record.claimed_cts)
        self.assertEqual(r.cts, r.certificate.r_max)

        t = r.record.tableau
        self.assertEqual('M1(1,2,1)', t.name)
        self.assertEqual(2, order_of(t, 1e-10))
        np.testing.assert_allclose([1.0], t.b, atol=1e-10)
        np.testing.assert_allclose([0.5], t.bhat, atol=1e-10)

    def test_two_stage_third_order(self):
        spec = OptimizationSpec(2, 3, 'M2', 1.0, seeds=8, budget=500)
        r = optimize(spec)
        t = r.record.tableau

        # The optimal value is 1.5.
        self.assertGreater(r.cts, 1.4)
        self.assertLessEqual(r.cts, 1.5 + 1e-6)
        self.assertGreaterEqual(order_of(t, 1e-10), 3)
        self.assertLess(np.max(np.abs(tau2_residual(t))), 1e-10)
        report = verify_candidate(t, spec)
        self.assertEqual([], report.failed_conditions)
        self.assertAlmostEqual(r.cts, report.cts, delta=1e-9)

    def test_three_stage_fourth_order(self):
        # Recovers the M3(3,4,1) optimum C_TS = 1; takes about half a minute.
        spec = OptimizationSpec(3, 4, 'M3', 1.0)
        r = optimize(spec)
        self.assertGreaterEqual(r.cts, 0.999)
        self.assertLessEqual(r.cts, 1.001)
        self.assertGreaterEqual(order_of(r.record.tableau, 1e-10), 4)

    def test_infeasible(self):
        # One stage cannot reach third order.
        spec = OptimizationSpec(1, 3, 'M1', 1.0, seeds=2, budget=50)
        with self.assertRaises(NoFeasibleMethodError) as cm:
            optimize(spec)
        self.assertGreater(cm.exception.best_violation, 1e-3)

    def test_determinism(self):
        spec = OptimizationSpec(2, 3, 'M2', 1.0, seeds=4, budget=300, seed=7)
        r1 = optimize(spec)
        r2 = optimize(spec)
        self.assertEqual(r1.cts, r2.cts)
        np.testing.assert_array_equal(
            r1.record.tableau.A, r2.record.tableau.A
        )


class TestVerifyCandidate(unittest.TestCase):

    def test_accepted(self):
        spec = OptimizationSpec(4, 5, 'M2', 1.0, tol_order=1e-8)
        r = verify_candidate(M2_4_5_1().tableau, spec)
        self.assertTrue(r.accepted, r.messages())
        self.assertEqual(5, r.order)
        self.assertAlmostEqual(2.18648, r.cts, delta=1e-4)
        self.assertEqual([], r.messages())

        spec = OptimizationSpec(3, 4, 'M3', 1.0, tol_order=1e-8)
        r = verify_candidate(M3_3_4_1().tableau, spec)
        self.assertTrue(r.accepted, r.messages())

    def test_not_ssp(self):
        spec = OptimizationSpec(2, 4, 'M2', 1.0, tol_order=1e-8)
        r = verify_candidate(TwoStageFourthOrder().tableau, spec)
        self.assertFalse(r.accepted)
        self.assertEqual(0.0, r.cts)
        self.assertIn('The method is not SSP-TS (C_TS = 0).', r.messages())

    def test_perturbed(self):
        t = M2_4_5_1().tableau
        A = t.A.copy()
        A[3, 2] += 1e-4
        bad = Tableau(
            A, t.Ahat, t.b, t.bhat, variant='M2', design_K=1.0, name='bad'
        )
        spec = OptimizationSpec(4, 5, 'M2', 1.0, tol_order=1e-8)
        r = verify_candidate(bad, spec)
        self.assertFalse(r.accepted)
        self.assertGreater(len(r.failed_conditions), 0)
        self.assertTrue(
            any('Stage order two' in msg for msg in r.structure)
        )
        self.assertLess(r.order, 5)

    def test_m3_structure(self):
        t = M3_3_4_1().tableau
        Ahat = t.Ahat.copy()
        Ahat[2, 1] = 1e-3
        bad = Tableau(t.A, Ahat, t.b, t.bhat, variant='M3', name='bad')
        spec = OptimizationSpec(3, 4, 'M3', 1.0, tol_order=1e-8)
        r = verify_candidate(bad, spec)
        self.assertFalse(r.accepted)
        self.assertIn(
            'Second derivative evaluations beyond the first stage.',
            r.structure
        )
