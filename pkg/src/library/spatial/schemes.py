from ssp_core.integrator import RhsPair
from .differences import FluxDifference, ConservativeOperator, taylor_ftilde
from .weno import EPSILON
from .fluxes import LINEAR_ADVECTION, BURGERS, lax_friedrichs_split


def advection_upwind(grid):
    """
    First order upwind operators for U_t = U_x:

        F(u)_j = (u_{j+1} - u_j) / dx
        Ftilde(u)_j = (u_{j+2} - 2 u_{j+1} + u_j) / dx^2
    """
    f_op = ConservativeOperator(
        LINEAR_ADVECTION, FluxDifference('upwind', 'minus', grid)
    )

    return RhsPair(f_op, taylor_ftilde('same', grid, LINEAR_ADVECTION, f_op))


def burgers_upwind(grid):
    """
    First order upwind operators for Burgers' equation with f'(u) >= 0:

        F(u)_j = -(f_j - f_{j-1}) / dx
        Ftilde(u)_j = -(f'(u_j) F(u)_j - f'(u_{j-1}) F(u)_{j-1}) / dx
    """
    f_op = ConservativeOperator(
        BURGERS, FluxDifference('upwind', 'plus', grid)
    )

    return RhsPair(f_op, taylor_ftilde('same', grid, BURGERS, f_op))


def weno5(direction, grid, flux, eps=EPSILON):
    """
    Returns the WENO5 operator F(u) = WENO^direction f(u), for fluxes whose
    derivative has a single sign.  eps is the regularization of the
    nonlinear weights.
    """
    return ConservativeOperator(
        flux, FluxDifference('weno5', direction, grid, eps)
    )


def weno5_split(grid, flux, eps=EPSILON):
    """
    Returns the WENO5 operator F(u) = WENO^+ f^+(u) + WENO^- f^-(u) for a flux
    of either sign, split by Lax-Friedrichs splitting with m taken from the
    current state.
    """
    d_plus = FluxDifference('weno5', 'plus', grid, eps)
    d_minus = FluxDifference('weno5', 'minus', grid, eps)

    def f(u):
        f_plus, f_minus = lax_friedrichs_split(flux, u)
        return d_plus(f_plus) + d_minus(f_minus)

    return f


def weno5_pair(direction, grid, flux, ftilde='same', eps=EPSILON):
    """
    Returns the RhsPair of a WENO5 semi-discretization with the Taylor series
    second derivative built from the same or the opposite operator.
    """
    f_op = weno5(direction, grid, flux, eps)

    return RhsPair(f_op, taylor_ftilde(ftilde, grid, flux, f_op))
