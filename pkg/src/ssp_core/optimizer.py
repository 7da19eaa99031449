"""
Search for two-derivative methods with large SSP-TS coefficients.

The outer loop bisects on the radius r.  For each trial r an inner problem
looks for nonnegative coefficients that satisfy the order conditions and the
SSP-TS sign conditions at r: the violations are minimized with a
least-squares solver from several random starts.  Every candidate that the
inner solve reports as feasible is re-certified with compute_cts, and only
certified coefficients are ever returned.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import logging
import math
import numpy as np
from scipy.optimize import least_squares

from .tableau import Tableau, MAX_STAGES, validate
from .order_conditions import (
    MAX_ORDER, residual_vector, max_residual, order_of, tau2_residual,
    all_residuals
)
from .ssp_analysis import (
    canonical_decomposition, compute_cts, ts_feasible, R_CAP
)


logger = logging.getLogger(__name__)

OPT_VARIANTS = ('M1', 'M2', 'M3')

# The largest number of outer bisection iterations.
MAX_OUTER = 40

# The first trial radius.
R_START = 0.01

# Bisection stops once the bracket is this narrow (relative).
R_RTOL = 1e-7

# Weight of the sign-condition slacks relative to the order residuals.
SLACK_WEIGHT = 1.0

OptimizationResult = namedtuple(
    'OptimizationResult', ['record', 'cts', 'certificate', 'trial_r']
)

# The outcome of one inner solve.
_Solve = namedtuple('_Solve', ['x', 'tableau', 'violation', 'feasible'])


class NoFeasibleMethodError(RuntimeError):
    """
    Raised when no start of the inner solve reaches a feasible method.
    """
    def __init__(self, best_violation):
        self.best_violation = best_violation
        super().__init__(
            'No feasible method found; the smallest violation reached was '
            f'{best_violation:.3e}.'
        )


def _formatK(k):
    return 'inf' if math.isinf(k) else f'{k:g}'


class OptimizationSpec:
    """
    The parameters of an optimization run.
    """
    def __init__(
        self, s, p, variant, k, seeds=32, budget=2000, tol_order=1e-10,
        tol_feas=1e-12, seed=0, workers=1
    ):
        """
        s: The number of stages.
        p: The order, at most 6.
        variant: "M1", "M2" or "M3".
        k: The Taylor series ratio K, a positive number or math.inf.
        seeds: The number of random starts per trial radius.
        budget: The largest number of residual evaluations per start.
        tol_order: The largest accepted order condition residual.
        tol_feas: The nonnegativity tolerance of the certification.
        seed: The base seed; start i uses default_rng([seed, i]).
        workers: The number of threads used for the random starts.
        """
        if int(s) != s or s < 1 or s > MAX_STAGES:
            raise ValueError(f'Invalid stage count: "{s}".')
        if int(p) != p or p < 1 or p > MAX_ORDER:
            raise ValueError(f'Invalid order: "{p}".')
        if variant not in OPT_VARIANTS:
            raise ValueError(f'Invalid method variant: "{variant}".')

        k = float(k)
        if not k > 0:
            raise ValueError(f'Invalid Taylor series ratio K: "{k}".')

        for label, val in (
            ('seed count', seeds), ('budget', budget), ('worker count', workers)
        ):
            if int(val) != val or val < 1:
                raise ValueError(f'Invalid {label}: "{val}".')
        if not (tol_order > 0 and tol_feas > 0):
            raise ValueError(
                f'Invalid tolerances: "{tol_order}", "{tol_feas}".'
            )

        self.s = int(s)
        self.p = int(p)
        self.variant = variant
        self.k = k
        self.seeds = int(seeds)
        self.budget = int(budget)
        self.tol_order = tol_order
        self.tol_feas = tol_feas
        self.seed = int(seed)
        self.workers = int(workers)

    @property
    def method_name(self):
        return f'{self.variant}({self.s},{self.p},{_formatK(self.k)})'

    def __repr__(self):
        return f'OptimizationSpec({self.method_name})'


class _Layout:
    """
    Maps the free variables of a search to tableau coefficients.  Every free
    coefficient is the square of a variable.  For M2 and M3 methods the
    first column of Ahat is eliminated with the stage order two condition

        ahat_i1 = c_i^2 / 2 - (A c)_i - sum_{j > 1} ahat_ij.
    """
    def __init__(self, s, variant):
        self.s = s
        self.variant = variant

        rows, cols = np.tril_indices(s, -1)
        self.a_idx = (rows, cols)
        if variant == 'M1':
            self.ahat_idx = (rows, cols)
        elif variant == 'M2':
            keep = cols > 0
            self.ahat_idx = (rows[keep], cols[keep])
        else:
            self.ahat_idx = (rows[:0], cols[:0])

        self.n_a = rows.shape[0]
        self.n_ahat = self.ahat_idx[0].shape[0]
        self.n_bhat = 1 if variant == 'M3' else s
        self.n_vars = self.n_a + self.n_ahat + s + self.n_bhat

    def unpack(self, x):
        """
        Returns (A, Ahat, b, bhat, eliminated), where eliminated holds the
        first column of Ahat below the diagonal for M2 and M3 methods (an
        empty array for M1).
        """
        s = self.s
        coef = x**2
        pos = 0

        A = np.zeros((s, s))
        A[self.a_idx] = coef[pos:pos + self.n_a]
        pos += self.n_a

        Ahat = np.zeros((s, s))
        Ahat[self.ahat_idx] = coef[pos:pos + self.n_ahat]
        pos += self.n_ahat

        b = coef[pos:pos + s]
        pos += s

        bhat = np.zeros(s)
        bhat[:self.n_bhat] = coef[pos:pos + self.n_bhat]

        if self.variant == 'M1':
            return A, Ahat, b, bhat, np.zeros(0)

        c = A.sum(axis=1)
        col = c**2 / 2 - A @ c - Ahat[:, 1:].sum(axis=1)
        Ahat[1:, 0] = col[1:]

        return A, Ahat, b, bhat, col[1:]


class _Search:
    """
    The inner feasibility problems of one optimization run.
    """
    def __init__(self, spec):
        self.spec = spec
        self.layout = _Layout(spec.s, spec.variant)

    def tableau(self, x):
        A, Ahat, b, bhat, elim = self.layout.unpack(x)
        t = Tableau(
            A, Ahat, b, bhat, variant=self.spec.variant,
            design_K=self.spec.k, name=self.spec.method_name,
            p_design=self.spec.p
        )

        return t, elim

    def _rhat(self, r):
        return 0.0 if math.isinf(self.spec.k) else r / self.spec.k

    def residuals(self, x, r):
        t, elim = self.tableau(x)
        order = residual_vector(t, self.spec.p)
        R, P, Q = canonical_decomposition(t, r, self._rhat(r))
        slack = np.concatenate([
            np.minimum(R.sum(axis=1), 0.0), np.minimum(P, 0.0).ravel(),
            np.minimum(Q, 0.0).ravel(), np.minimum(elim, 0.0)
        ])

        return np.concatenate([order, SLACK_WEIGHT * slack])

    def solve(self, x0, r):
        """
        Runs one inner solve from x0 at radius r.
        """
        sol = least_squares(
            self.residuals, x0, args=(r,), method='trf',
            max_nfev=self.spec.budget, xtol=1e-14, ftol=1e-14, gtol=1e-14
        )
        x = sol.x
        t, elim = self.tableau(x)
        violation = float(np.max(np.abs(self.residuals(x, r))))
        feasible = (
            max_residual(t, self.spec.p) <= self.spec.tol_order
            and bool(np.all(elim >= -self.spec.tol_feas))
            and ts_feasible(t, r, self.spec.k, self.spec.tol_feas)[0]
        )

        return _Solve(x, t, violation, feasible)

    def start(self, i):
        rng = np.random.default_rng([self.spec.seed, i])
        coef = rng.uniform(0.0, 1.0 / self.spec.s, self.layout.n_vars)

        return np.sqrt(coef)


def _trial(search, r, warm_start):
    """
    Looks for a feasible method at radius r.  The warm start (the last
    feasible point, if any) is tried before the random starts.  Returns
    (first feasible _Solve or None, smallest violation).
    """
    spec = search.spec
    best_violation = math.inf

    if warm_start is not None:
        result = search.solve(warm_start, r)
        best_violation = result.violation
        if result.feasible:
            return result, best_violation

    def run(i):
        result = search.solve(search.start(i), r)
        logger.debug(
            'r = %.8f, seed %d: violation %.3e, feasible %s.', r, i,
            result.violation, result.feasible
        )
        return result

    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as runner:
            results = list(runner.map(run, range(spec.seeds)))
    else:
        results = []
        for i in range(spec.seeds):
            results.append(run(i))
            if results[-1].feasible:
                break

    for i, result in enumerate(results):
        best_violation = min(best_violation, result.violation)
        if result.feasible:
            logger.info('r = %.8f is feasible (seed %d).', r, i)
            return result, best_violation

    logger.info(
        'r = %.8f is infeasible; smallest violation %.3e.', r, best_violation
    )
    if best_violation > spec.tol_order:
        logger.warning(
            'No start reached the order tolerance at r = %.8f.', r
        )

    return None, best_violation


def optimize(spec):
    """
    Searches for a method of spec.s stages and order spec.p with the largest
    SSP-TS coefficient at K = spec.k.  Returns an OptimizationResult with the
    best method found as an OptimizedMethod and its certified coefficient.

    Raises NoFeasibleMethodError if no start reaches a feasible method.
    """
    from library.methods.optimized import OptimizedMethod

    search = _Search(spec)
    lo = 0.0
    hi = None
    best = None
    best_violation = math.inf
    trial_r = R_START

    for it in range(MAX_OUTER):
        if best is None:
            trial_r = R_START
        elif hi is None:
            trial_r = min(2.0 * lo, R_CAP)
        else:
            if hi - lo <= R_RTOL * max(1.0, lo):
                break
            trial_r = 0.5 * (lo + hi)

        result, violation = _trial(
            search, trial_r, None if best is None else best.x
        )
        best_violation = min(best_violation, violation)

        if result is None:
            if best is None:
                raise NoFeasibleMethodError(best_violation)
            hi = trial_r
            continue

        cert = compute_cts(result.tableau, spec.k, spec.tol_feas)
        if cert.r_max >= lo:
            best = result
            lo = max(trial_r, cert.r_max)
        if hi is not None and lo >= hi:
            hi = None
        if lo >= R_CAP:
            break

    certificate = compute_cts(best.tableau, spec.k, spec.tol_feas)
    logger.info(
        '%s: certified C_TS = %.8f (bisection reached %.8f).',
        spec.method_name, certificate.r_max, lo
    )

    record = OptimizedMethod(best.tableau, certificate.r_max)

    return OptimizationResult(record, certificate.r_max, certificate, lo)


class VerificationReport:
    """
    The outcome of verify_candidate.

    order: The order found by order_of.
    failed_conditions: Descriptions of the order conditions (up to spec.p)
        whose residual exceeds spec.tol_order.
    structure: Structural problems (explicitness, negative entries, variant
        sparsity, stage order).
    certificate (SSPCertificate): The SSP-TS certificate at spec.k.
    """
    def __init__(self, name, order, failed_conditions, structure, certificate):
        self.name = name
        self.order = order
        self.failed_conditions = failed_conditions
        self.structure = structure
        self.certificate = certificate

    @property
    def cts(self):
        return self.certificate.r_max

    @property
    def accepted(self):
        return (
            not self.failed_conditions and not self.structure
            and self.cts > 0
        )

    def messages(self):
        msgs = list(self.failed_conditions) + list(self.structure)
        if self.cts <= 0:
            msgs.append('The method is not SSP-TS (C_TS = 0).')

        return msgs


def verify_candidate(t, spec):
    """
    Independently checks a candidate tableau against an OptimizationSpec:
    the order conditions up to spec.p, the structure required by the
    variant and the SSP-TS coefficient at spec.k.
    """
    failed = [
        f'Order {res.order} condition {res.index}: residual '
        f'{res.residual:.3e}.'
        for res in all_residuals(t, spec.p)
        if abs(res.residual) > spec.tol_order
    ]

    report = validate(t)
    structure = report.explicitness + report.negative_entries
    if spec.variant == 'M3':
        if np.any(t.Ahat[:, 1:] != 0.0) or np.any(t.bhat[1:] != 0.0):
            structure.append(
                'Second derivative evaluations beyond the first stage.'
            )
    if spec.variant in ('M2', 'M3'):
        tau2 = float(np.max(np.abs(tau2_residual(t))))
        if tau2 > spec.tol_order:
            structure.append(f'Stage order two residual {tau2:.3e}.')

    certificate = compute_cts(t, spec.k, spec.tol_feas)

    return VerificationReport(
        t.name, order_of(t, spec.tol_order), failed, structure, certificate
    )
