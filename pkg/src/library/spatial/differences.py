import numpy as np
from .weno import stencils, weno5_reconstruct, EPSILON


SCHEMES = ('upwind', 'weno5')

DIRECTIONS = ('plus', 'minus')

FTILDE_CHOICES = ('same', 'opposite')


class FluxDifference:
    """
    A conservative difference -(g_{j+1/2} - g_{j-1/2}) / dx of periodic flux
    values g.  The "plus" direction reconstructs interface values from the
    left and suits fluxes with f'(u) >= 0; "minus" reconstructs from the
    right.
    """
    def __init__(self, scheme, direction, grid, eps=EPSILON):
        if scheme not in SCHEMES:
            raise ValueError(f'Invalid difference scheme: "{scheme}".')
        if direction not in DIRECTIONS:
            raise ValueError(f'Invalid difference direction: "{direction}".')
        if not grid.periodic:
            raise ValueError('Flux differences require a periodic grid.')

        self.scheme = scheme
        self.direction = direction
        self.grid = grid
        self.eps = eps

    def opposite(self):
        """
        Returns the difference with the other wind direction.
        """
        direction = 'minus' if self.direction == 'plus' else 'plus'

        return FluxDifference(self.scheme, direction, self.grid, self.eps)

    def interfaceFlux(self, g):
        """
        Returns the interface values g_{j+1/2}.
        """
        if self.scheme == 'upwind':
            return g if self.direction == 'plus' else np.roll(g, -1)
        else:
            return weno5_reconstruct(stencils(g, self.direction), self.eps)

    def __call__(self, g):
        gh = self.interfaceFlux(g)

        return -(gh - np.roll(gh, 1)) / self.grid.dx

    def __repr__(self):
        return f'FluxDifference({self.scheme}, {self.direction})'


class ConservativeOperator:
    """
    The first derivative operator F(u) = D(f(u)) of a scalar conservation law
    u_t + f(u)_x = 0.
    """
    def __init__(self, flux, difference):
        """
        flux (ScalarFlux): The flux function.
        difference (FluxDifference): The flux difference D.
        """
        self.flux = flux
        self.difference = difference

    def __call__(self, u):
        return self.difference(self.flux.f(u))


def taylor_ftilde(choice, grid, flux, f_op):
    """
    Builds the second derivative approximation Ftilde(u) = Dt(f'(u) u_t),
    with u_t = f_op(u).  Dt is the flux difference of f_op ("same") or its
    opposite-wind counterpart ("opposite"), on the given grid.

    f_op (ConservativeOperator): The first derivative operator.
    """
    if choice not in FTILDE_CHOICES:
        raise ValueError(f'Invalid second derivative choice: "{choice}".')

    base = f_op.difference
    dtilde = FluxDifference(base.scheme, base.direction, grid, base.eps)
    if choice == 'opposite':
        dtilde = dtilde.opposite()

    def ftilde(u):
        return dtilde(flux.df(u) * f_op(u))

    return ftilde
