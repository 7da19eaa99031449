from collections import namedtuple
import numpy as np


# A scalar flux function f(u) and its derivative.
ScalarFlux = namedtuple('ScalarFlux', ['name', 'f', 'df'])

# U_t = U_x written as U_t + f(U)_x = 0.
LINEAR_ADVECTION = ScalarFlux(
    'linear_advection', lambda u: -u, lambda u: -np.ones_like(u)
)

BURGERS = ScalarFlux('burgers', lambda u: 0.5 * u**2, lambda u: u)


def lax_friedrichs_split(flux, states):
    """
    Splits a flux into f+ = (f(u) + m u) / 2 and f- = (f(u) - m u) / 2, with
    m = max |f'(u)| over the given states.  Returns (f_plus, f_minus)
    evaluated at the states.
    """
    u = np.asarray(states, dtype=float)
    m = np.max(np.abs(flux.df(u)))
    fu = flux.f(u)

    return 0.5 * (fu + m * u), 0.5 * (fu - m * u)
