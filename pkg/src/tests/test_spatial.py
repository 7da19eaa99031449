
import unittest
import math
import numpy as np
from library.spatial import (
    Grid1D, square_wave, smooth_sine, dam_break, ScalarFlux,
    LINEAR_ADVECTION, BURGERS, lax_friedrichs_split, FluxDifference,
    ConservativeOperator, taylor_ftilde, advection_upwind, burgers_upwind,
    weno5, weno5_split, weno5_pair, ShallowWater, shallow_water,
    build_problem, PROBLEM_DEFAULTS
)
from library.spatial.weno import stencils, weno5_weights, LINEAR_WEIGHTS
from ssp_core.experiments import total_variation


IDENTITY = ScalarFlux('identity', lambda u: u, lambda u: np.ones_like(u))


def mirror(u):
    # (R u)_j = u_{-j} on a periodic grid.
    return np.roll(u[::-1], 1)


class TestGrid(unittest.TestCase):

    def test_grid(self):
        grid = Grid1D(601)
        self.assertAlmostEqual(2 / 600, grid.dx, delta=1e-16)
        self.assertEqual(600, grid.n)
        self.assertEqual(-1.0, grid.x[0])

        grid = Grid1D(201, 0.0, 1.0, periodic=False)
        self.assertEqual(201, grid.n)
        self.assertAlmostEqual(0.005, grid.dx, delta=1e-16)
        self.assertEqual(1.0, grid.x[-1])

        for m in (5, 10.5):
            with self.assertRaises(ValueError):
                Grid1D(m)
        with self.assertRaises(ValueError):
            Grid1D(11, 1.0, 1.0)

    def test_initial_conditions(self):
        grid = Grid1D(601)
        u = square_wave(grid)
        self.assertEqual(2.0, total_variation(u))

        u = smooth_sine(grid)
        np.testing.assert_allclose(np.sin(np.pi * grid.x), u)

        grid = Grid1D(201, 0.0, 1.0, periodic=False)
        u = dam_break(grid)
        self.assertEqual((2, 201), u.shape)
        self.assertEqual(10.0, u[0, 0])
        self.assertEqual(0.0, u[0, -1])
        np.testing.assert_array_equal(np.zeros(201), u[1])


class TestFluxes(unittest.TestCase):

    def test_lax_friedrichs_split(self):
        f_plus, f_minus = lax_friedrichs_split(BURGERS, np.array([0.0, 1.0]))
        np.testing.assert_array_equal([0.0, 0.75], f_plus)
        np.testing.assert_array_equal([0.0, -0.25], f_minus)

        u = np.array([-1.0, 0.5, 2.0])
        f_plus, f_minus = lax_friedrichs_split(LINEAR_ADVECTION, u)
        np.testing.assert_array_equal(np.zeros(3), f_plus)
        np.testing.assert_array_equal(-u, f_minus)

        # The split always adds up to the flux.
        f_plus, f_minus = lax_friedrichs_split(BURGERS, u)
        np.testing.assert_allclose(BURGERS.f(u), f_plus + f_minus)


class TestUpwind(unittest.TestCase):

    def setUp(self):
        self.grid = Grid1D(51)
        self.rng = np.random.default_rng(11)

    def test_advection_formulas(self):
        dx = self.grid.dx
        u = self.rng.standard_normal(self.grid.n)
        rhs = advection_upwind(self.grid)

        exp = (np.roll(u, -1) - u) / dx
        np.testing.assert_allclose(exp, rhs.f(u), rtol=1e-12, atol=1e-9)

        exp = (np.roll(u, -2) - 2 * np.roll(u, -1) + u) / dx**2
        np.testing.assert_allclose(exp, rhs.ftilde(u), rtol=1e-12, atol=1e-6)

    def test_burgers_formulas(self):
        dx = self.grid.dx
        u = self.rng.uniform(0, 1, self.grid.n)
        rhs = burgers_upwind(self.grid)

        f = 0.5 * u**2
        F = -(f - np.roll(f, 1)) / dx
        np.testing.assert_allclose(F, rhs.f(u), rtol=1e-12, atol=1e-9)

        w = u * F
        exp = -(w - np.roll(w, 1)) / dx
        np.testing.assert_allclose(exp, rhs.ftilde(u), rtol=1e-12, atol=1e-6)

    def test_taylor_ftilde(self):
        dx = self.grid.dx
        u = self.rng.standard_normal(self.grid.n)
        f_op = ConservativeOperator(
            LINEAR_ADVECTION, FluxDifference('upwind', 'minus', self.grid)
        )

        # With the opposite wind, Ftilde is the centered second difference.
        ftilde = taylor_ftilde('opposite', self.grid, LINEAR_ADVECTION, f_op)
        exp = (np.roll(u, -1) - 2 * u + np.roll(u, 1)) / dx**2
        np.testing.assert_allclose(exp, ftilde(u), rtol=1e-12, atol=1e-6)

        with self.assertRaises(ValueError):
            taylor_ftilde('both', self.grid, LINEAR_ADVECTION, f_op)

    def test_advection_tv(self):
        grid = Grid1D(601)
        dx = grid.dx
        rhs = advection_upwind(grid)
        u = square_wave(grid)

        # Forward Euler and the Taylor series step are TVD for lambda <= 1.
        for lam in (0.5, 1.0):
            dt = lam * dx
            fe = u + dt * rhs.f(u)
            ts = fe + 0.5 * dt**2 * rhs.ftilde(u)
            self.assertLessEqual(total_variation(fe), 2.0 + 1e-12)
            self.assertLessEqual(total_variation(ts), 2.0 + 1e-12)

        dt = 1.01 * dx
        fe = u + dt * rhs.f(u)
        self.assertAlmostEqual(2.04, total_variation(fe), delta=1e-12)

    def test_random_states(self):
        grid = Grid1D(101)
        dx = grid.dx
        rhs = advection_upwind(grid)
        for i in range(100):
            u = np.cumsum(self.rng.standard_normal(grid.n))
            tv = total_variation(u)
            fe = u + dx * rhs.f(u)
            ts = fe + 0.5 * dx**2 * rhs.ftilde(u)
            self.assertLessEqual(total_variation(fe), tv * (1 + 1e-12))
            self.assertLessEqual(total_variation(ts), tv * (1 + 1e-12))

    def test_burgers_tv(self):
        grid = Grid1D(601)
        dx = grid.dx
        rhs = burgers_upwind(grid)
        u = square_wave(grid)

        # With max |u| = 1, lambda = 1 is the forward Euler limit.
        ts = u + dx * rhs.f(u) + 0.5 * dx**2 * rhs.ftilde(u)
        self.assertLessEqual(total_variation(ts), 2.0 + 1e-12)


class TestWENO(unittest.TestCase):

    def test_constant(self):
        grid = Grid1D(41)
        for direction in ('plus', 'minus'):
            op = weno5(direction, grid, IDENTITY)
            np.testing.assert_array_equal(
                np.zeros(grid.n), op(np.full(grid.n, 3.0))
            )

    def test_smooth_weights(self):
        # Away from critical points the weights are close to the linear ones.
        grid = Grid1D(513)
        g = np.sin(np.pi * grid.x)
        omega = weno5_weights(stencils(g, 'plus'))
        inner = np.abs(grid.x) < 1 / 3
        np.testing.assert_allclose(omega.sum(axis=0), 1.0, rtol=1e-14)
        for k, d in enumerate(LINEAR_WEIGHTS):
            self.assertLess(np.max(np.abs(omega[k, inner] - d)), 1e-2)

    def test_convergence(self):
        errors = []
        dxs = []
        for m in (129, 257, 513):
            grid = Grid1D(m)
            op = weno5('plus', grid, IDENTITY)
            u = np.sin(np.pi * grid.x)
            exact = -np.pi * np.cos(np.pi * grid.x)
            inner = np.abs(grid.x) < 1 / 3
            errors.append(np.max(np.abs(op(u) - exact)[inner]))
            dxs.append(grid.dx)

        slope = np.polyfit(np.log(dxs), np.log(errors), 1)[0]
        self.assertGreater(slope, 4.5)

    def test_mirror_identity(self):
        # WENO^- of the mirrored, negated data is the mirrored WENO^+.
        grid = Grid1D(64)
        rng = np.random.default_rng(5)
        d_plus = FluxDifference('weno5', 'plus', grid)
        d_minus = FluxDifference('weno5', 'minus', grid)
        for g in (rng.standard_normal(grid.n), square_wave(grid)):
            np.testing.assert_allclose(
                mirror(d_plus(g)), d_minus(-mirror(g)), atol=1e-13
            )

    def test_invalid(self):
        grid = Grid1D(41)
        with self.assertRaises(ValueError):
            FluxDifference('weno3', 'plus', grid)
        with self.assertRaises(ValueError):
            FluxDifference('weno5', 'up', grid)
        with self.assertRaises(ValueError):
            FluxDifference('weno5', 'plus', Grid1D(41, periodic=False))
        with self.assertRaises(ValueError):
            weno5_pair('plus', grid, BURGERS, ftilde='both')

    def test_weno5_split(self):
        grid = Grid1D(81)
        rng = np.random.default_rng(8)
        u = rng.standard_normal(grid.n)

        # f = -u splits into f+ = 0 and f- = f.
        op = weno5_split(grid, LINEAR_ADVECTION)
        np.testing.assert_allclose(
            weno5('minus', grid, LINEAR_ADVECTION)(u), op(u), atol=1e-14
        )

        # A conservative operator on a periodic grid.
        op = weno5_split(grid, BURGERS)
        self.assertAlmostEqual(0.0, op(u).sum(), delta=1e-9)

    def test_ftilde_choices(self):
        grid = Grid1D(201)
        u = square_wave(grid)
        same = weno5_pair('plus', grid, BURGERS, 'same')
        opposite = weno5_pair('plus', grid, BURGERS, 'opposite')
        np.testing.assert_array_equal(same.f(u), opposite.f(u))
        self.assertFalse(np.allclose(same.ftilde(u), opposite.ftilde(u)))


class TestShallowWater(unittest.TestCase):

    def setUp(self):
        self.grid = Grid1D(101, 0.0, 1.0, periodic=False)

    def test_lake_at_rest(self):
        sw = ShallowWater(self.grid)
        u = np.zeros((2, self.grid.n))
        u[0] = 2.0
        np.testing.assert_array_equal(np.zeros_like(u), sw.f(u))
        np.testing.assert_array_equal(np.zeros_like(u), sw.ftilde(u))

    def test_dam_break(self):
        sw = ShallowWater(self.grid)
        u = dam_break(self.grid)
        self.assertAlmostEqual(math.sqrt(10), sw.wave_speed(u), delta=1e-14)

        sw = ShallowWater(self.grid, g=9.81)
        self.assertAlmostEqual(
            math.sqrt(98.1), sw.wave_speed(u), delta=1e-13
        )

        # No mass crosses the boundaries.
        self.assertAlmostEqual(0.0, sw.f(u)[0].sum(), delta=1e-9)

        # The dry bed stays dry away from the front.
        np.testing.assert_array_equal(np.zeros(40), sw.f(u)[0, -40:])

        rhs = shallow_water(self.grid, g=9.81)
        np.testing.assert_array_equal(sw.f(u), rhs.f(u))
        np.testing.assert_array_equal(sw.ftilde(u), rhs.ftilde(u))

    def test_invalid(self):
        with self.assertRaises(ValueError):
            ShallowWater(Grid1D(101, 0.0, 1.0))
        with self.assertRaises(ValueError):
            ShallowWater(self.grid, g=0.0)


class TestProblems(unittest.TestCase):

    def test_build_problem(self):
        for name, defaults in PROBLEM_DEFAULTS.items():
            r = build_problem(name)
            self.assertEqual(name, r.name)
            self.assertEqual(defaults['m'], r.grid.m)
            self.assertEqual(defaults['n_steps'], r.n_steps)
            self.assertEqual(1.0, r.k)
            self.assertAlmostEqual(1.0, r.lambda_fe, delta=1e-12)

        r = build_problem('advection-upwind', m=101)
        self.assertEqual(100, r.grid.n)
        self.assertEqual('tv', r.norm)
        self.assertAlmostEqual(0.5 * r.grid.dx, r.step_size(0.5), delta=1e-16)

        r = build_problem('advection-weno', initial='smooth_sine')
        np.testing.assert_array_equal(smooth_sine(r.grid), r.initial)
        self.assertEqual(1e-40, r.rhs.f.difference.eps)

        r = build_problem('burgers-weno', m=101, eps=1e-6)
        self.assertEqual(1e-6, r.rhs.f.difference.eps)
        u = r.initial
        np.testing.assert_array_equal(
            weno5_pair('plus', r.grid, BURGERS, eps=1e-6).ftilde(u),
            r.rhs.ftilde(u)
        )

        r = build_problem('shallow-water')
        self.assertEqual('positivity', r.norm)
        self.assertFalse(r.grid.periodic)
        dt = r.step_size(0.5)
        self.assertAlmostEqual(
            0.5 * r.grid.dx / math.sqrt(10), dt(r.initial), delta=1e-16
        )

        with self.assertRaises(KeyError):
            build_problem('euler')
        with self.assertRaises(ValueError):
            build_problem('advection-upwind', initial='gaussian')
        with self.assertRaises(ValueError):
            build_problem('burgers-weno', ftilde='both')
        with self.assertRaises(ValueError):
            build_problem('advection-weno', eps=0.0)
