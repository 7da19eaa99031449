"""
Measurement harness: total variation and positivity monitors, sweeps of the
step size ratio lambda that locate the largest observed strong stability
preserving step, and temporal convergence studies.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import logging
import math
import numpy as np
import pandas as pd
from scipy.linalg import expm

from .tableau import Tableau
from .integrator import integrate, NonFiniteStateError, RhsPair


logger = logging.getLogger(__name__)

# The largest allowed rise in total variation per step.
TV_THRESHOLD = 1e-10

# CSV columns of a sweep.
SWEEP_COLUMNS = ['lambda', 'per_step_rise', 'per_stage_rise', 'violated']

# The outcome of a single monitored integration.
_Measurement = namedtuple(
    '_Measurement', ['per_step_rise', 'per_stage_rise', 'violated',
    'violated_stage']
)

# A problem with a known solution at time T.
SmoothProblem = namedtuple('SmoothProblem', ['rhs', 'u0', 'T', 'exact'])


def _asTableau(method):
    if isinstance(method, Tableau):
        return method

    return method.tableau


def total_variation(u, periodic=True):
    """
    Returns sum_j |u_{j+1} - u_j|, including the wrap-around jump when
    periodic is True.  For a two-component state only the first row (the
    height) is used.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim == 2:
        u = u[0]

    tv = np.sum(np.abs(np.diff(u)))
    if periodic:
        tv += abs(u[0] - u[-1])

    return float(tv)


def make_lambda_grid(start, stop, step):
    """
    Returns the grid start, start + step, ..., stop (stop included when it
    lies on the grid).  Values are rounded to 12 decimals so repeated runs
    give identical grids.
    """
    if not step > 0:
        raise ValueError(f'Invalid lambda grid step: "{step}".')
    if not (start > 0 and stop > start):
        raise ValueError(f'Invalid lambda grid range: "{start}:{stop}".')

    n = int(math.floor((stop - start) / step + 1e-9))

    return np.round(start + step * np.arange(n + 1), 12)


def default_lambda_grid(predicted, fine=0.001, coarse=0.05, half_width=0.1):
    """
    A grid with spacing fine within half_width of the predicted threshold and
    spacing coarse elsewhere, from coarse up to 1.5 times the prediction.
    """
    if not predicted > 0:
        raise ValueError(f'Invalid predicted threshold: "{predicted}".')

    lo = max(predicted - half_width, fine)
    hi = predicted + half_width
    parts = []
    if lo > coarse:
        parts.append(np.arange(coarse, lo, coarse))
    parts.append(make_lambda_grid(lo, hi, fine))
    top = max(1.5 * predicted, hi + coarse)
    parts.append(np.arange(hi + coarse, top + coarse / 2, coarse))

    return np.unique(np.round(np.concatenate(parts), 12))


def _checkGrid(lambdas):
    lambdas = np.asarray(lambdas, dtype=float)
    if lambdas.ndim != 1 or lambdas.shape[0] < 2:
        raise ValueError('A lambda grid needs at least two points.')
    if np.any(lambdas <= 0) or np.any(np.diff(lambdas) <= 0):
        raise ValueError(
            'Invalid lambda grid: values must be positive and strictly '
            'increasing.'
        )

    return lambdas


class SweepReport:
    """
    The results of a lambda sweep.

    lambdas: The lambda grid.
    per_step_rise: For each lambda, the largest rise of the monitored
        functional over a full step.
    per_stage_rise: For each lambda, the largest rise over any stage.
    violated: For each lambda, whether the monitored property failed.
    threshold: The rise threshold.
    lambda_obs: The last lambda before the first violation, or 0.0 if the
        first grid point already fails.
    lambda_obs_stage: As lambda_obs, using the per-stage rise.
    cts_obs: lambda_obs in units of the forward Euler step.
    cts_pred: The predicted coefficient, if known.
    """
    def __init__(
        self, method_name, problem_name, lambdas, per_step_rise,
        per_stage_rise, violated, violated_stage, threshold, lambda_fe,
        cts_pred=None
    ):
        self.method_name = method_name
        self.problem_name = problem_name
        self.lambdas = np.asarray(lambdas, dtype=float)
        self.per_step_rise = np.asarray(per_step_rise, dtype=float)
        self.per_stage_rise = np.asarray(per_stage_rise, dtype=float)
        self.violated = np.asarray(violated, dtype=bool)
        self.violated_stage = np.asarray(violated_stage, dtype=bool)
        self.threshold = threshold
        self.lambda_fe = lambda_fe
        self.cts_pred = cts_pred

        self.lambda_obs = self._lastBefore(self.violated)
        self.lambda_obs_stage = self._lastBefore(self.violated_stage)
        self.cts_obs = self.lambda_obs / lambda_fe
        self.cts_obs_stage = self.lambda_obs_stage / lambda_fe

    def _lastBefore(self, violated):
        idx = np.flatnonzero(violated)
        if idx.size == 0:
            return float(self.lambdas[-1])
        if idx[0] == 0:
            return 0.0

        return float(self.lambdas[idx[0] - 1])

    @property
    def bracketed(self):
        """
        True if the grid contains both a passing and a failing lambda.
        """
        return bool(self.violated.any() and not self.violated[0])

    def to_frame(self):
        return pd.DataFrame({
            'lambda': self.lambdas,
            'per_step_rise': self.per_step_rise,
            'per_stage_rise': self.per_stage_rise,
            'violated': self.violated
        }, columns=SWEEP_COLUMNS)

    def summary(self):
        """
        Returns a dictionary of the scalar results.
        """
        return {
            'method': self.method_name,
            'problem': self.problem_name,
            'threshold': self.threshold,
            'lambda_obs': self.lambda_obs,
            'lambda_obs_stage': self.lambda_obs_stage,
            'cts_obs': self.cts_obs,
            'cts_obs_stage': self.cts_obs_stage,
            'cts_pred': self.cts_pred,
            'bracketed': self.bracketed
        }


class _TVMonitor:
    """
    Integration observer that tracks the rise in total variation relative to
    the start of each step.  It stops the integration at the first step
    whose rise exceeds the threshold.
    """
    def __init__(self, u0, periodic, threshold):
        self.periodic = periodic
        self.threshold = threshold
        self.tv_start = total_variation(u0, periodic)
        self.per_step = 0.0
        self.per_stage = 0.0

    def __call__(self, event):
        rise = total_variation(event.state, self.periodic) - self.tv_start
        self.per_stage = max(self.per_stage, rise)
        if not event.final:
            return False

        self.per_step = max(self.per_step, rise)
        self.tv_start += rise

        return self.per_step > self.threshold

    def measurement(self):
        return _Measurement(
            self.per_step, self.per_stage, self.per_step > self.threshold,
            self.per_stage > self.threshold
        )


class _PositivityMonitor:
    """
    Integration observer that records the most negative height.  A negative
    height at any stage is a violation and stops the integration.
    """
    def __init__(self):
        self.per_step = 0.0
        self.per_stage = 0.0

    def __call__(self, event):
        depth = max(0.0, -float(np.min(event.state[0])))
        self.per_stage = max(self.per_stage, depth)
        if event.final:
            self.per_step = max(self.per_step, depth)

        return depth > 0.0

    def measurement(self):
        violated = self.per_stage > 0.0
        return _Measurement(self.per_step, self.per_stage, violated, violated)


def _runOne(t, problem, lam, n_steps, new_monitor):
    monitor = new_monitor()
    try:
        integrate(
            t, problem.rhs, problem.initial, problem.step_size(lam), n_steps,
            observer=monitor
        )
    except NonFiniteStateError as err:
        logger.warning('%s at lambda = %g: %s', t.name, lam, err)
        return _Measurement(math.inf, math.inf, True, True)

    return monitor.measurement()


def _sweep(
    method, problem, n_steps, lambda_grid, new_monitor, threshold, workers,
    cts_pred
):
    t = _asTableau(method)
    lambdas = _checkGrid(lambda_grid)
    if n_steps is None:
        n_steps = problem.n_steps
    if n_steps < 1:
        raise ValueError(f'Invalid number of steps: "{n_steps}".')

    def run(lam):
        return _runOne(t, problem, lam, n_steps, new_monitor)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as runner:
            # map() keeps the results in grid order.
            results = list(runner.map(run, lambdas))
    else:
        results = [run(lam) for lam in lambdas]

    report = SweepReport(
        t.name, problem.name, lambdas,
        [r.per_step_rise for r in results],
        [r.per_stage_rise for r in results],
        [r.violated for r in results],
        [r.violated_stage for r in results],
        threshold, problem.lambda_fe, cts_pred
    )

    logger.info(
        'Sweep of %s on %s: lambda_obs = %.6f, C_obs = %.6f.', t.name,
        problem.name, report.lambda_obs, report.cts_obs
    )
    if not report.bracketed:
        logger.warning(
            'The lambda grid of the %s sweep on %s does not bracket the '
            'threshold.', t.name, problem.name
        )

    return report


def observed_cts(
    method, problem, n_steps=None, lambda_grid=None, threshold=TV_THRESHOLD,
    workers=1, cts_pred=None
):
    """
    Measures the observed SSP coefficient of a method on a problem: for each
    lambda the problem is integrated with dt = lambda * dx and the largest
    rise in total variation is recorded.

    method: A MethodRecord or Tableau.
    problem (ProblemSpec): The semi-discretization.
    n_steps: The number of steps, or None for the problem's default.
    lambda_grid: Strictly increasing lambda values.  If None, a grid around
        cts_pred is used.
    threshold: The allowed rise per step.
    workers: The number of worker threads.
    cts_pred: The predicted coefficient, reported alongside the result.
    """
    if lambda_grid is None:
        if cts_pred is None or not cts_pred > 0:
            raise ValueError('A lambda grid or a positive prediction is needed.')
        lambda_grid = default_lambda_grid(cts_pred * problem.lambda_fe)

    periodic = problem.grid.periodic

    def new_monitor():
        return _TVMonitor(problem.initial, periodic, threshold)

    return _sweep(
        method, problem, n_steps, lambda_grid, new_monitor, threshold,
        workers, cts_pred
    )


def positivity_sweep(
    method, problem, n_steps=None, lambda_grid=None, workers=1,
    cts_pred=None
):
    """
    Measures the largest lambda = alpha dt / dx for which the height of a
    shallow water problem stays nonnegative at every stage of every step.
    """
    if problem.norm != 'positivity':
        raise ValueError(
            f'Invalid problem for a positivity sweep: "{problem.name}".'
        )
    if lambda_grid is None:
        if cts_pred is None or not cts_pred > 0:
            raise ValueError('A lambda grid or a positive prediction is needed.')
        lambda_grid = default_lambda_grid(cts_pred * problem.lambda_fe)

    return _sweep(
        method, problem, n_steps, lambda_grid, _PositivityMonitor, 0.0,
        workers, cts_pred
    )


def k_mismatch_study(
    methods, problem, n_steps=None, lambda_grid=None,
    threshold=TV_THRESHOLD, workers=1
):
    """
    Sweeps several methods on one problem and tabulates each method's
    observed coefficient against the K it was designed for.  Returns a
    pandas DataFrame.
    """
    rows = []
    for method in methods:
        t = _asTableau(method)
        report = observed_cts(
            t, problem, n_steps, lambda_grid, threshold, workers
        )
        rows.append({
            'method': t.name, 'K_design': t.design_K, 'K_problem': problem.k,
            'lambda_obs': report.lambda_obs, 'cts_obs': report.cts_obs
        })

    return pd.DataFrame(
        rows, columns=['method', 'K_design', 'K_problem', 'lambda_obs',
        'cts_obs']
    )


# Convergence studies.

ConvergenceReport = namedtuple(
    'ConvergenceReport', ['dts', 'errors', 'order']
)


def linear_reference(L, u0, T):
    """
    Returns expm(T L) u0.
    """
    return expm(T * np.asarray(L, dtype=float)) @ np.asarray(u0, dtype=float)


def decay_problem(T=1.0):
    """
    u' = -u, u(0) = 1, with the exact second derivative Ftilde(u) = u.
    """
    rhs = RhsPair(lambda u: -u, lambda u: u.copy())

    return SmoothProblem(rhs, np.array([1.0]), T, np.array([math.exp(-T)]))


def linear_problem(L, u0, T=1.0):
    """
    u' = L u with Ftilde(u) = L^2 u; the reference solution is computed with
    the matrix exponential.
    """
    L = np.asarray(L, dtype=float)
    L2 = L @ L
    rhs = RhsPair(lambda u: L @ u, lambda u: L2 @ u)

    return SmoothProblem(rhs, np.asarray(u0, dtype=float), T,
        linear_reference(L, u0, T))


def convergence_study(method, problem, dt_sequence):
    """
    Integrates a SmoothProblem to its final time with each step size and fits
    the slope of log(error) against log(dt).  Errors are max norms.
    """
    t = _asTableau(method)
    dts = np.asarray(dt_sequence, dtype=float)
    if dts.ndim != 1 or dts.shape[0] < 2:
        raise ValueError('A convergence study needs at least two step sizes.')

    errors = []
    for dt in dts:
        n_steps = int(round(problem.T / dt))
        if n_steps < 1 or abs(n_steps * dt - problem.T) > 1e-9 * problem.T:
            raise ValueError(
                f'Invalid step size: "{dt}" does not divide T = {problem.T}.'
            )

        traj = integrate(t, problem.rhs, problem.u0, dt, n_steps)
        errors.append(float(np.max(np.abs(traj.final - problem.exact))))

    errors = np.array(errors)
    order = float(np.polyfit(np.log(dts), np.log(errors), 1)[0])
    logger.info('%s: observed order %.3f.', t.name, order)

    return ConvergenceReport(dts, errors, order)
