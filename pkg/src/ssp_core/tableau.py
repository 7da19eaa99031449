import logging
import math
from collections import namedtuple
import numpy as np


logger = logging.getLogger(__name__)

# Method variant labels.  M2 and M3 methods satisfy the stage order two
# condition; M3 methods only evaluate the second derivative at the first stage.
VARIANTS = ('M1', 'M2', 'M3', 'external')

# Largest supported stage count.
MAX_STAGES = 16

# Entries in [-NEG_TOL, 0) are roundoff in printed coefficients and are clamped
# to zero.
NEG_TOL = 1e-14

# Tolerance for the row sums of a Shu-Osher form.
ROW_SUM_TOL = 1e-12

# The (s+1)x(s+1) block matrices [[A, 0], [b^T, 0]] and [[Ahat, 0],
# [bhat^T, 0]].
BlockForm = namedtuple('BlockForm', ['S', 'Shat'])

# Shu-Osher coefficients.  Each array is (s+1)xs; row i holds the coefficients
# of stage i+1 (row 0 is the first stage, which is always zero and row s is the
# update).
ShuOsherForm = namedtuple(
    'ShuOsherForm', ['alpha', 'beta', 'alphahat', 'betahat']
)


class TableauFormatError(ValueError):
    pass


class ConsistencyError(ValueError):
    pass


class Tableau:
    """
    Coefficients of an explicit two-derivative multistage method:

        y_i = u + dt * sum_j a_ij F(y_j) + dt^2 * sum_j ahat_ij Ftilde(y_j)
        u_new = u + dt * sum_j b_j F(y_j) + dt^2 * sum_j bhat_j Ftilde(y_j)

    Instances are immutable; the coefficient arrays are read-only.
    """
    def __init__(
        self, A, Ahat, b, bhat, variant='external', design_K=math.inf,
        name='', p_design=None
    ):
        """
        A: s x s first-derivative stage weights.
        Ahat: s x s second-derivative stage weights.
        b: Length-s first-derivative update weights.
        bhat: Length-s second-derivative update weights.
        variant: One of VARIANTS.
        design_K: The Taylor series ratio the method was designed for
            (metadata only); a positive float or math.inf.
        name: A display name, e.g. "M2(4,5,1)".
        p_design: The order the method was designed for, or None.
        """
        b = self._asArray(b, 1, 'b')
        s = b.shape[0]
        if s < 1 or s > MAX_STAGES:
            raise ValueError(f'Invalid stage count: "{s}".')

        A = self._asArray(A, 2, 'A')
        Ahat = self._asArray(Ahat, 2, 'Ahat')
        bhat = self._asArray(bhat, 1, 'bhat')
        for label, arr, shape in (
            ('A', A, (s, s)), ('Ahat', Ahat, (s, s)), ('bhat', bhat, (s,))
        ):
            if arr.shape != shape:
                raise TableauFormatError(
                    f'Dimension mismatch: {label} has shape {arr.shape}, '
                    f'expected {shape}.'
                )

        if variant not in VARIANTS:
            raise ValueError(f'Invalid method variant: "{variant}".')

        design_K = float(design_K)
        if not design_K > 0:
            raise ValueError(f'Invalid design K: "{design_K}".')

        self.A = self._freeze(A)
        self.Ahat = self._freeze(Ahat)
        self.b = self._freeze(b)
        self.bhat = self._freeze(bhat)
        self.variant = variant
        self.design_K = design_K
        self.name = name
        self.p_design = p_design

    def _asArray(self, values, ndim, label):
        try:
            arr = np.array(values, dtype=float)
        except (TypeError, ValueError):
            raise TableauFormatError(f'Non-numeric entries in {label}.')

        if arr.ndim != ndim:
            raise TableauFormatError(
                f'{label} must have {ndim} dimension(s), got {arr.ndim}.'
            )
        if not np.all(np.isfinite(arr)):
            raise TableauFormatError(f'Non-finite entries in {label}.')

        return arr

    def _freeze(self, arr):
        # Clamp printed-coefficient roundoff.
        arr[(arr < 0) & (arr >= -NEG_TOL)] = 0.0
        arr.setflags(write=False)

        return arr

    @property
    def s(self):
        return self.b.shape[0]

    def __repr__(self):
        label = self.name if self.name != '' else 'unnamed'
        return f'Tableau({label}, s={self.s}, variant={self.variant})'


def block_form(t):
    """
    Assembles the block matrices S and Shat of a tableau.
    """
    for label, arr in (('A', t.A), ('Ahat', t.Ahat)):
        if np.any(np.triu(arr) != 0.0):
            raise ValueError(
                f'{label} is not strictly lower triangular; only explicit '
                'methods are supported.'
            )

    s = t.s
    S = np.zeros((s + 1, s + 1))
    S[:s, :s] = t.A
    S[s, :s] = t.b

    Shat = np.zeros((s + 1, s + 1))
    Shat[:s, :s] = t.Ahat
    Shat[s, :s] = t.bhat

    return BlockForm(S, Shat)


def abscissae(t):
    """
    Returns (c, chat), the row sums of A and Ahat.
    """
    return t.A.sum(axis=1), t.Ahat.sum(axis=1)


def function_evaluations(t):
    """
    Returns (n_f, n_ftilde), the number of F and Ftilde evaluations needed per
    step.  Ftilde is only evaluated at stages whose value is actually used.
    """
    used = np.any(t.Ahat != 0.0, axis=0) | (t.bhat != 0.0)

    return t.s, int(np.count_nonzero(used))


def shu_osher_to_butcher(f, variant='external', design_K=math.inf, name=''):
    """
    Converts a Shu-Osher form to Butcher coefficients with the recursions

        a_ij = beta_ij + sum_{k=j+1}^{i-1} (alpha_ik + alphahat_ik) a_kj

    (and likewise for ahat with betahat); the last row gives b and bhat.

    f (ShuOsherForm): The coefficients to convert.
    """
    alpha, beta, alphahat, betahat = (
        np.asarray(arr, dtype=float) for arr in f
    )
    s = alpha.shape[1]
    for label, arr in (
        ('beta', beta), ('alphahat', alphahat), ('betahat', betahat)
    ):
        if arr.shape != (s + 1, s):
            raise TableauFormatError(
                f'Dimension mismatch: {label} has shape {arr.shape}, '
                f'expected {(s + 1, s)}.'
            )

    weights = alpha + alphahat
    row_sums = weights[1:].sum(axis=1)
    bad_rows = np.nonzero(np.abs(row_sums - 1.0) > ROW_SUM_TOL)[0]
    if bad_rows.size > 0:
        i = bad_rows[0] + 2
        raise ConsistencyError(
            f'Shu-Osher row {i} sums to {float(row_sums[bad_rows[0]])!r}, not 1.'
        )

    a = np.zeros((s + 1, s))
    ahat = np.zeros((s + 1, s))
    for i in range(1, s + 1):
        # Rows k >= i of a are still zero, and a_kj = 0 for j >= k.
        a[i] = beta[i] + weights[i, :i] @ a[:i]
        ahat[i] = betahat[i] + weights[i, :i] @ ahat[:i]

    return Tableau(
        a[:s], ahat[:s], a[s], ahat[s], variant=variant, design_K=design_K,
        name=name
    )


class ValidationReport:
    """
    Structural diagnostics for a tableau.  Each list holds human-readable
    messages; an empty report is "clean".
    """
    def __init__(self):
        self.explicitness = []
        self.negative_entries = []
        self.structure = []

    @property
    def clean(self):
        return not (self.explicitness or self.negative_entries or self.structure)

    def messages(self):
        return self.explicitness + self.negative_entries + self.structure


def validate(t):
    """
    Reports explicitness violations, negative entries and, for declared M3
    methods, violations of the M3 sparsity pattern.
    """
    report = ValidationReport()

    for label, arr in (('A', t.A), ('Ahat', t.Ahat)):
        rows, cols = np.nonzero(np.triu(arr))
        for i, j in zip(rows, cols):
            report.explicitness.append(
                f'{label}[{i + 1},{j + 1}] = {float(arr[i, j])!r} on or above the '
                'diagonal.'
            )

    for label, arr in (
        ('A', t.A), ('Ahat', t.Ahat), ('b', t.b), ('bhat', t.bhat)
    ):
        for idx in zip(*np.nonzero(arr < 0.0)):
            pos = ','.join(str(k + 1) for k in idx)
            report.negative_entries.append(
                f'{label}[{pos}] = {float(arr[idx])!r} is negative.'
            )

    if t.variant == 'M3':
        rows, cols = np.nonzero(t.Ahat[:, 1:])
        for i, j in zip(rows, cols):
            report.structure.append(
                f'M3 method has nonzero Ahat[{i + 1},{j + 2}].'
            )
        for j in np.nonzero(t.bhat[1:])[0]:
            report.structure.append(f'M3 method has nonzero bhat[{j + 2}].')

    for msg in report.messages():
        logger.debug('%s: %s', t.name, msg)

    return report


def is_dj_reducible(t):
    """
    Searches for a partition (T1, T2) of the stages with b_j = bhat_j = 0 for
    j in T1 and a_ij = ahat_ij = 0 for i in T2, j in T1, i.e. the stages in
    T1 never influence the output.  Returns the partition as two tuples of
    1-based stage indices, with T1 as large as possible, or None if the
    method is irreducible.
    """
    coupled = (t.A != 0.0) | (t.Ahat != 0.0)

    # Stages reachable backwards from the output weights form T2.
    used = (t.b != 0.0) | (t.bhat != 0.0)
    changed = True
    while changed:
        needed = used | np.any(coupled[used], axis=0)
        changed = bool(np.any(needed & ~used))
        used = needed

    if np.all(used):
        return None

    t1 = tuple(int(j) + 1 for j in np.nonzero(~used)[0])
    t2 = tuple(int(j) + 1 for j in np.nonzero(used)[0])

    return t1, t2
