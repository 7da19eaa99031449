"""
Order conditions for explicit two-derivative multistage methods, orders 1-6,
together with the stage order residuals used by the order barrier results.

Conditions are written out term by term.  Within each order the listing order
is fixed, so that condition indices are reproducible:

    p=1:  1                    p=4:  4, 8, 12, 24
    p=2:  2                    p=5:  5, 10, 15, 30, 20, 20, 40, 60, 120
    p=3:  3, 6                 p=6:  6, 12, 18, 24, 30, 36, 72, 120, 48, 60,
                                     90, 144, 180, 240, 360, 24, 72, 36, 120,
                                     720

(the numbers are the denominators of the targets).  In the notation of the
formulas, '*' is the componentwise product, c = A e and ch = Ahat e.
"""

from collections import namedtuple
from fractions import Fraction
import numpy as np

from .tableau import abscissae


MAX_ORDER = 6

# Target denominators for each order, in listing order.  All numerators are 1.
TARGET_DENOMINATORS = {
    1: (1,),
    2: (2,),
    3: (3, 6),
    4: (4, 8, 12, 24),
    5: (5, 10, 15, 30, 20, 20, 40, 60, 120),
    6: (
        6, 12, 18, 24, 30, 36, 72, 120, 48, 60, 90, 144, 180, 240, 360, 24,
        72, 36, 120, 720
    )
}

# Converted to floating point once.
TARGETS = {
    p: tuple(float(Fraction(1, d)) for d in dens)
    for p, dens in TARGET_DENOMINATORS.items()
}

ConditionResidual = namedtuple(
    'ConditionResidual', ['order', 'index', 'lhs', 'rhs', 'residual']
)


class _Terms:
    """
    The vectors shared by the order conditions of a single tableau.
    """
    def __init__(self, t):
        A = t.A
        H = t.Ahat
        c, ch = abscissae(t)

        self.A, self.H, self.b, self.bh = A, H, t.b, t.bhat
        self.c, self.ch = c, ch

        self.Ac = A @ c
        self.Ac2 = A @ c**2
        self.Ac3 = A @ c**3
        self.Ac4 = A @ c**4
        self.Ach = A @ ch
        self.Hc = H @ c
        self.Hc2 = H @ c**2
        self.Hc3 = H @ c**3
        self.Hch = H @ ch
        self.AAc = A @ self.Ac
        self.AHc = A @ self.Hc
        self.HAc = H @ self.Ac


def _order1(T):
    return [T.b.sum()]


def _order2(T):
    return [T.b @ T.c + T.bh.sum()]


def _order3(T):
    b, bh, c, ch = T.b, T.bh, T.c, T.ch
    return [
        b @ c**2 + 2 * bh @ c,
        b @ T.Ac + b @ ch + bh @ c,
    ]


def _order4(T):
    b, bh, c, ch = T.b, T.bh, T.c, T.ch
    Ac = T.Ac
    return [
        b @ c**3 + 3 * bh @ c**2,
        b @ (c * Ac) + b @ (c * ch) + bh @ c**2 + bh @ Ac + bh @ ch,
        b @ T.Ac2 + 2 * b @ T.Hc + bh @ c**2,
        b @ T.AAc + b @ T.Ach + b @ T.Hc + bh @ Ac + bh @ ch,
    ]


def _order5(T):
    A, H, b, bh, c, ch = T.A, T.H, T.b, T.bh, T.c, T.ch
    Ac, Ac2, Ach, Hc, Hc2, Hch = T.Ac, T.Ac2, T.Ach, T.Hc, T.Hc2, T.Hch
    AAc, AHc, HAc = T.AAc, T.AHc, T.HAc
    return [
        b @ c**4 + 4 * bh @ c**3,

        b @ (c**2 * Ac) + b @ (c**2 * ch) + bh @ c**3 + 2 * bh @ (c * Ac)
        + 2 * bh @ (c * ch),

        b @ (c * Ac2) + 2 * b @ (c * Hc) + bh @ c**3 + bh @ Ac2
        + 2 * bh @ Hc,

        b @ (c * AAc) + b @ (c * Ach) + b @ (c * Hc) + bh @ (c * Ac)
        + bh @ (c * ch) + bh @ AAc + bh @ Ach + bh @ Hc,

        b @ (Ac * Ac) + 2 * b @ (ch * Ac) + b @ ch**2 + 2 * bh @ (c * Ac)
        + 2 * bh @ (c * ch),

        b @ T.Ac3 + 3 * b @ Hc2 + bh @ c**3,

        b @ (A @ (c * Ac)) + b @ (A @ (c * ch)) + b @ Hc2 + b @ HAc
        + b @ Hch + bh @ (c * Ac) + bh @ (c * ch),

        b @ (A @ Ac2) + 2 * b @ AHc + b @ Hc2 + bh @ Ac2 + 2 * bh @ Hc,

        b @ (A @ AAc) + b @ (A @ Ach) + b @ AHc + b @ HAc + b @ Hch
        + bh @ AAc + bh @ Ach + bh @ Hc,
    ]


def _order6(T):
    A, H, b, bh, c, ch = T.A, T.H, T.b, T.bh, T.c, T.ch
    Ac, Ac2, Ac3, Ach = T.Ac, T.Ac2, T.Ac3, T.Ach
    Hc, Hc2, Hc3, Hch = T.Hc, T.Hc2, T.Hc3, T.Hch
    AAc, AHc, HAc = T.AAc, T.AHc, T.HAc
    AAch = A @ Ach
    c_Ac = c * Ac
    c_ch = c * ch
    return [
        # 1/6
        b @ c**5 + 5 * bh @ c**4,

        # 1/12
        b @ (c**3 * Ac) + 3 * bh @ (c**2 * Ac) + bh @ c**4
        + b @ (c**3 * ch) + 3 * bh @ (c**2 * ch),

        # 1/18
        b @ (c**2 * Ac2) + 2 * bh @ (c * Ac2) + 2 * b @ (c**2 * Hc)
        + bh @ c**4 + 4 * bh @ (c * Hc),

        # 1/24
        b @ (c * Ac3) + 3 * b @ (c * Hc2) + bh @ Ac3 + 3 * bh @ Hc2
        + bh @ c**4,

        # 1/30
        b @ (A @ c**4) + 4 * b @ Hc3 + bh @ c**4,

        # 1/36
        b @ (c**2 * AAc) + 2 * bh @ (c * AAc) + b @ (c**2 * Ach)
        + b @ (c**2 * Hc) + bh @ (c**2 * Ac) + 2 * bh @ (c * Ach)
        + 2 * bh @ (c * Hc) + bh @ (c**2 * ch),

        # 1/72
        b @ (c * (A @ Ac2)) + bh @ (A @ Ac2) + bh @ (c * Ac2)
        + b @ (c * Hc2) + 2 * b @ (c * AHc) + bh @ Hc2 + 2 * bh @ AHc
        + 2 * bh @ (c * Hc),

        # 1/120
        b @ (A @ Ac3) + bh @ Ac3 + b @ Hc3 + 3 * b @ (A @ Hc2)
        + 3 * bh @ Hc2,

        # 1/48
        b @ (c * (A @ c_Ac)) + bh @ (A @ c_Ac) + b @ (c * HAc)
        + b @ (c * (A @ c_ch)) + bh @ (c**2 * Ac) + b @ (c * Hc2)
        + bh @ HAc + bh @ (A @ c_ch) + b @ (c * Hch) + bh @ Hc2
        + bh @ (c**2 * ch) + bh @ Hch,

        # 1/60
        b @ (A @ (c**2 * Ac)) + b @ (A @ (c**2 * ch)) + bh @ (c**2 * Ac)
        + 2 * b @ (H @ c_Ac) + b @ Hc3 + 2 * b @ (H @ c_ch)
        + bh @ (c**2 * ch),

        # 1/90
        b @ (A @ (c * Ac2)) + bh @ (c * Ac2) + b @ (H @ Ac2) + b @ Hc3
        + 2 * b @ (A @ (c * Hc)) + 2 * b @ (H @ Hc) + 2 * bh @ (c * Hc),

        # 1/144
        b @ (c * (A @ AAc)) + bh @ (A @ AAc) + bh @ (c * AAc)
        + b @ (c * HAc) + b @ (c * AHc) + b @ (c * AAch) + bh @ HAc
        + bh @ AHc + bh @ AAch + b @ (c * Hch) + bh @ (c * Ach)
        + bh @ (c * Hc) + bh @ Hch,

        # 1/180
        b @ (A @ (c * AAc)) + b @ (A @ (c * Ach)) + b @ (A @ (c * Hc))
        + b @ (H @ c_Ac) + b @ (H @ AAc) + bh @ (c * AAc)
        + b @ (H @ c_ch) + b @ (H @ Ach) + bh @ (c * Ach) + b @ (H @ Hc)
        + bh @ (c * Hc),

        # 1/240
        b @ (A @ (A @ c_Ac)) + b @ (A @ (A @ c_ch)) + b @ (A @ Hc2)
        + b @ (A @ HAc) + b @ (H @ c_Ac) + bh @ (A @ c_Ac)
        + b @ (A @ Hch) + b @ (H @ c_ch) + bh @ (A @ c_ch) + bh @ Hc2
        + bh @ HAc + bh @ Hch,

        # 1/360
        b @ (A @ (A @ Ac2)) + bh @ (A @ Ac2) + b @ (H @ Ac2)
        + b @ (A @ Hc2) + 2 * b @ (A @ AHc) + bh @ Hc2 + 2 * bh @ AHc
        + 2 * b @ (H @ Hc),

        # 1/24
        b @ (c * Ac * Ac) + bh @ (Ac * Ac) + 2 * b @ (c * ch * Ac)
        + 2 * bh @ (c**2 * Ac) + 2 * bh @ (ch * Ac) + 2 * bh @ (c**2 * ch)
        + b @ (c * ch**2) + bh @ ch**2,

        # 1/72
        b @ (Ac * AAc) + b @ (ch * AAc) + bh @ (c * AAc) + bh @ (Ac * Ac)
        + b @ (Ac * Hc) + b @ (Ac * Ach) + 2 * bh @ (ch * Ac)
        + b @ (ch * Hc) + b @ (ch * Ach) + bh @ (c * Hc) + bh @ (c * Ach)
        + bh @ ch**2,

        # 1/36
        b @ (Ac * Ac2) + b @ (ch * Ac2) + bh @ (c * Ac2) + bh @ (Ac * c**2)
        + 2 * b @ (Ac * Hc) + bh @ (ch * c**2) + 2 * b @ (ch * Hc)
        + 2 * bh @ (c * Hc),

        # 1/120
        b @ (A @ (Ac * Ac)) + 2 * b @ (A @ (ch * Ac)) + 2 * b @ (H @ c_Ac)
        + bh @ (Ac * Ac) + 2 * bh @ (ch * Ac) + 2 * b @ (H @ c_ch)
        + b @ (A @ ch**2) + bh @ ch**2,

        # 1/720
        b @ (A @ (A @ AAc)) + b @ (A @ AAch) + b @ (A @ AHc) + b @ (A @ HAc)
        + b @ (H @ AAc) + bh @ (A @ AAc) + b @ (A @ Hch) + b @ (H @ Ach)
        + bh @ AAch + b @ (H @ Hc) + bh @ AHc + bh @ HAc + bh @ Hch,
    ]


_LHS = {1: _order1, 2: _order2, 3: _order3, 4: _order4, 5: _order5, 6: _order6}


def _checkOrder(p):
    if not isinstance(p, (int, np.integer)) or p < 1 or p > MAX_ORDER:
        raise ValueError(f'Invalid order: "{p}"; must be 1 to {MAX_ORDER}.')


def residuals(t, p, terms=None):
    """
    Evaluates every order condition of order exactly p.

    t (Tableau): The method.
    p (int): The order, 1 to 6.
    terms: Optional precomputed condition vectors for t.
    """
    _checkOrder(p)
    if terms is None:
        terms = _Terms(t)

    return [
        ConditionResidual(p, idx + 1, float(lhs), rhs, float(lhs) - rhs)
        for idx, (lhs, rhs) in enumerate(zip(_LHS[p](terms), TARGETS[p]))
    ]


def all_residuals(t, p):
    """
    Returns the residuals of every condition of order 1 through p.
    """
    _checkOrder(p)
    terms = _Terms(t)
    result = []
    for order in range(1, p + 1):
        result.extend(residuals(t, order, terms))

    return result


def residual_vector(t, p):
    """
    Returns the residuals of orders 1 through p as a flat numpy array.
    """
    _checkOrder(p)
    terms = _Terms(t)
    values = []
    for order in range(1, p + 1):
        values.extend(
            lhs - rhs for lhs, rhs in zip(_LHS[order](terms), TARGETS[order])
        )

    return np.array(values)


def max_residual(t, p):
    return float(np.max(np.abs(residual_vector(t, p))))


def order_of(t, tol=1e-10):
    """
    Returns the largest P <= 6 for which every condition of order <= P holds
    to within tol, or 0 if the consistency condition fails.
    """
    if not tol > 0:
        raise ValueError(f'Invalid tolerance: "{tol}".')

    terms = _Terms(t)
    order = 0
    for p in range(1, MAX_ORDER + 1):
        res = residuals(t, p, terms)
        if any(abs(r.residual) >= tol for r in res):
            break
        order = p

    return order


def tau2_residual(t):
    """
    Stage order two residual A c + chat - c^2/2.
    """
    c, ch = abscissae(t)

    return t.A @ c + ch - c**2 / 2


def tau3_residual(t):
    """
    Stage order three residual A c^2 + Ahat c - c^3/3.
    """
    c, ch = abscissae(t)

    return t.A @ c**2 + t.Ahat @ c - c**3 / 3


def stage_order(t, tol=1e-12):
    if np.max(np.abs(tau2_residual(t))) >= tol:
        return 1
    if np.max(np.abs(tau3_residual(t))) >= tol:
        return 2

    return 3


def order_barrier_identity(t):
    """
    Returns the pair (r1/4 - r2 + r5, b^T tau2^2), where r1, r2 and r5 are the
    residuals of the first, second and fifth order-5 conditions.  The two
    values agree for every tableau, so a method with b > 0 can only be fifth
    order if its stage order is two.
    """
    res = residuals(t, 5)
    combo = res[0].residual / 4 - res[1].residual + res[4].residual

    return combo, float(t.b @ tau2_residual(t)**2)
