"""
Strong stability analysis of explicit two-derivative multistage methods.

The Taylor series analysis decomposes one step into a convex combination of
forward Euler steps with radius r and Taylor series steps with radius
rhat = r / K:

    R = (I + rS + 2 rhat (rhat - r) Shat)^-1
    P = r R (S - 2 rhat Shat)
    Q = 2 rhat^2 R Shat

and the method is SSP-TS with coefficient r whenever R e, P and Q are
componentwise nonnegative.  The second derivative analysis does the same with
forward Euler and pure second derivative steps.
"""

from collections import namedtuple
import logging
import math
import numpy as np
from scipy.linalg import solve_triangular

from .tableau import block_form, ShuOsherForm


logger = logging.getLogger(__name__)

# Componentwise nonnegativity tolerance.
FEAS_TOL = 1e-12

# Bracket bounds for the radius searches.
R_CAP = 2.0**16
R_TINY = 1e-8
BISECT_RTOL = 1e-12

# The rhat grid used by compute_csd.
RHAT_GRID = np.logspace(-3, 3, 61)

Witness = namedtuple('Witness', ['R', 'P', 'Q'])

SDCoefficient = namedtuple('SDCoefficient', ['r_max', 'rhat_max', 'csd'])


class SSPCertificate:
    """
    The result of an SSP-TS analysis.
    """
    def __init__(self, k, r_max, witness, tolerance, feasible_at_zero_plus):
        """
        k: The Taylor series ratio K (a positive float or math.inf).
        r_max: The certified coefficient C_TS(K); 0 if the method is not SSP-TS.
        witness (Witness): R, P and Q at r_max.
        tolerance: The nonnegativity tolerance used.
        feasible_at_zero_plus: False if the method fails even at r = 1e-8.
        """
        self.k = k
        self.r_max = r_max
        self.witness = witness
        self.tolerance = tolerance
        self.feasible_at_zero_plus = feasible_at_zero_plus

    @property
    def min_Re(self):
        R = self.witness.R
        return float(R.sum(axis=1).min())

    @property
    def min_P(self):
        return float(self.witness.P.min())

    @property
    def min_Q(self):
        return float(self.witness.Q.min())

    def __repr__(self):
        return f'SSPCertificate(k={self.k}, r_max={self.r_max!r})'


def _checkK(k):
    k = float(k)
    if not k > 0:
        raise ValueError(f'Invalid Taylor series ratio K: "{k}".')

    return k


def _unitLowerInverse(M):
    n = M.shape[0]
    return solve_triangular(
        M, np.eye(n), lower=True, unit_diagonal=True, check_finite=False
    )


def canonical_decomposition(t, r, rhat):
    """
    Returns the matrices (R, P, Q) of the canonical decomposition at radii
    (r, rhat).  No sign checks are made; R + P + Q = I always holds.
    """
    if r < 0 or rhat < 0:
        raise ValueError(f'Invalid radii: "({r}, {rhat})".')

    S, Shat = block_form(t)
    n = S.shape[0]
    M = np.eye(n) + r * S + 2.0 * rhat * (rhat - r) * Shat
    R = _unitLowerInverse(M)
    P = r * (R @ (S - 2.0 * rhat * Shat))
    Q = 2.0 * rhat**2 * (R @ Shat)

    return Witness(R, P, Q)


def _scaledTol(tol, r):
    # Violations near r = 0 may be as small as r^2.
    return tol * max(r, r * r)


def _nonnegative(witness, tol, r):
    R, P, Q = witness
    ptol = _scaledTol(tol, r)
    return (
        np.all(R.sum(axis=1) >= -tol) and np.all(P >= -ptol)
        and np.all(Q >= -ptol)
    )


def ts_feasible(t, r, k, tol=FEAS_TOL):
    """
    Checks the SSP-TS conditions at radius r for the Taylor series ratio k,
    with rhat = r / k.  Returns (feasible, witness).

    For k = inf the limit form is used: rhat = 0, so Q vanishes and only
    (I + rS)^-1 e >= 0 and r (I + rS)^-1 S >= 0 are checked, together with
    Shat >= 0 for the Taylor series steps of vanishing radius.
    """
    k = _checkK(k)
    if r < 0:
        raise ValueError(f'Invalid radius: "{r}".')

    rhat = 0.0 if math.isinf(k) else r / k
    witness = canonical_decomposition(t, r, rhat)

    if math.isinf(k) and np.any(block_form(t)[1] < -tol):
        return False, witness

    return bool(_nonnegative(witness, tol, r)), witness


def _bisect(feasible, lo, hi):
    # feasible(lo) is True and feasible(hi) is False.
    while hi - lo >= BISECT_RTOL * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid

    return lo


def _maxRadius(feasible):
    """
    Finds the largest r with feasible(r), assuming feasibility is monotone in
    r.  Returns 0 if feasible(R_TINY) fails and R_CAP if the cap is feasible.
    """
    if not feasible(R_TINY):
        return 0.0

    if not feasible(1.0):
        return _bisect(feasible, R_TINY, 1.0)

    lo = 1.0
    hi = 2.0
    while feasible(hi):
        lo = hi
        if hi >= R_CAP:
            return R_CAP
        hi = 2.0 * hi

    return _bisect(feasible, lo, hi)


def compute_cts(t, k, tol=FEAS_TOL):
    """
    Computes the SSP-TS coefficient C_TS(k) of a tableau by bisection.

    t (Tableau): The method.
    k: The Taylor series ratio K, a positive float or math.inf.
    """
    k = _checkK(k)

    def feasible(r):
        return ts_feasible(t, r, k, tol)[0]

    r_max = _maxRadius(feasible)
    logger.debug('%s: C_TS(K=%s) = %r.', t.name, k, r_max)

    witness = ts_feasible(t, r_max, k, tol)[1]

    return SSPCertificate(
        k=k, r_max=r_max, witness=witness, tolerance=tol,
        feasible_at_zero_plus=r_max > 0
    )


def canonical_shu_osher(t, r, rhat):
    """
    Builds a Shu-Osher form from the canonical decomposition at (r, rhat).
    Each forward Euler contribution P_ij becomes alpha_ij = P_ij,
    beta_ij = P_ij / r.  Each Taylor series contribution Q_ij is split evenly
    between a forward Euler step with radius rhat / 2 and a pure second
    derivative step:

        alpha_ij += Q_ij / 2, beta_ij += Q_ij / rhat,
        alphahat_ij = Q_ij / 2, betahat_ij = Q_ij / (2 rhat^2).

    The weight (R e)_i of u^n is added to the first column of alpha.
    """
    R, P, Q = canonical_decomposition(t, r, rhat)
    s = t.s

    alpha = P[:, :s].copy()
    beta = np.zeros((s + 1, s))
    if r > 0:
        beta += P[:, :s] / r

    alphahat = np.zeros((s + 1, s))
    betahat = np.zeros((s + 1, s))
    if rhat > 0:
        Qs = Q[:, :s]
        alpha += Qs / 2.0
        beta += Qs / rhat
        alphahat = Qs / 2.0
        betahat = Qs / (2.0 * rhat**2)

    alpha[:, 0] += R.sum(axis=1)

    # The first stage is u^n itself.
    for arr in (alpha, beta, alphahat, betahat):
        arr[0] = 0.0

    return ShuOsherForm(alpha, beta, alphahat, betahat)


def sd_feasible(t, r, rhat, tol=FEAS_TOL):
    """
    Checks the SSP-SD conditions

        (I + rS + rhat Shat)^-1 e >= 0,
        (I + rS + rhat Shat)^-1 rS >= 0,
        (I + rS + rhat Shat)^-1 rhat Shat >= 0.
    """
    S, Shat = block_form(t)
    n = S.shape[0]
    R = _unitLowerInverse(np.eye(n) + r * S + rhat * Shat)

    return bool(
        np.all(R.sum(axis=1) >= -tol)
        and np.all(r * (R @ S) >= -_scaledTol(tol, r))
        and np.all(rhat * (R @ Shat) >= -_scaledTol(tol, rhat))
    )


def compute_csd(t, ktilde, tol=FEAS_TOL):
    """
    Computes the SSP-SD coefficient min(r_max, ktilde * rhat_max).  For each
    rhat on a logarithmic grid the largest feasible r is found by bisection;
    the pair that maximizes min(r, ktilde * rhat) is returned as an
    SDCoefficient.
    """
    ktilde = float(ktilde)
    if not ktilde > 0:
        raise ValueError(f'Invalid second derivative ratio: "{ktilde}".')

    S, Shat = block_form(t)
    if not np.any(Shat):
        r_max = _maxRadius(lambda r: sd_feasible(t, r, 0.0, tol))
        return SDCoefficient(r_max, math.inf, r_max)

    best = SDCoefficient(0.0, 0.0, 0.0)
    for rhat in RHAT_GRID:
        r = _maxRadius(lambda r: sd_feasible(t, r, rhat, tol))
        csd = min(r, ktilde * rhat)
        if csd > best.csd:
            best = SDCoefficient(r, float(rhat), csd)

    logger.debug('%s: C_SD(Ktilde=%s) = %r.', t.name, ktilde, best.csd)

    return best


def k_from_ktilde(ktilde):
    """
    Returns the Taylor series ratio K = Ktilde (sqrt(Ktilde^2 + 2) - Ktilde)
    implied by a second derivative ratio Ktilde.
    """
    if not ktilde > 0:
        raise ValueError(f'Invalid second derivative ratio: "{ktilde}".')

    # Rationalized to avoid cancellation for large Ktilde.
    return 2.0 * ktilde / (math.sqrt(ktilde**2 + 2.0) + ktilde)


def effective_coefficient(cts, t):
    """
    Normalizes an SSP coefficient by the function evaluations per step: s + 1
    for M3 methods and 2s otherwise, so forward Euler has 1/2.
    """
    if cts < 0:
        raise ValueError(f'Invalid SSP coefficient: "{cts}".')

    if t.variant == 'M3':
        return cts / (t.s + 1)
    else:
        return cts / (2 * t.s)
