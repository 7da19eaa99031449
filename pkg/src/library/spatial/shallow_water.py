import numpy as np
from ssp_core.integrator import RhsPair


class ShallowWater:
    """
    First order Lax-Friedrichs semi-discretization of the shallow water
    equations in conserved variables U = (h, hv), stored as 2 x n arrays.
    Boundaries use zeroth order extrapolation (copied ghost cells).
    """
    def __init__(self, grid, g=1.0):
        """
        grid (Grid1D): A non-periodic grid.
        g: The gravitational constant.
        """
        if grid.periodic:
            raise ValueError('The shallow water problem needs a non-periodic grid.')
        if not g > 0:
            raise ValueError(f'Invalid gravitational constant: "{g}".')

        self.grid = grid
        self.g = g

    def _velocity(self, u):
        h, q = u
        v = np.zeros_like(h)
        np.divide(q, h, out=v, where=h > 0)

        return v

    def wave_speed(self, u):
        """
        Returns alpha = max_j |v_j +/- sqrt(g h_j)|.  The result is NaN if any
        height is negative.
        """
        h = u[0]
        v = self._velocity(u)
        with np.errstate(invalid='ignore'):
            c = np.sqrt(self.g * h)

        return float(np.max(np.abs(v) + c))

    def flux(self, u):
        h, q = u
        v = self._velocity(u)

        return np.stack([q, q * v + 0.5 * self.g * h**2])

    def jacobianApply(self, u, w):
        """
        Multiplies w by the flux Jacobian [[0, 1], [g h - v^2, 2 v]] at u,
        pointwise.
        """
        h = u[0]
        v = self._velocity(u)

        return np.stack([w[1], (self.g * h - v**2) * w[0] + 2 * v * w[1]])

    def _withGhosts(self, a):
        return np.concatenate([a[:, :1], a, a[:, -1:]], axis=1)

    def f(self, u):
        """
        F(U)_j = -(f_{j+1/2} - f_{j-1/2}) / dx with the Lax-Friedrichs
        interface flux

            f_{j-1/2} = (f(U_j) + f(U_{j-1})) / 2 - alpha / 2 (U_j - U_{j-1}).
        """
        alpha = self.wave_speed(u)
        ue = self._withGhosts(u)
        fe = self.flux(ue)
        fhat = 0.5 * (fe[:, 1:] + fe[:, :-1]) - 0.5 * alpha * (
            ue[:, 1:] - ue[:, :-1]
        )

        return -(fhat[:, 1:] - fhat[:, :-1]) / self.grid.dx

    def ftilde(self, u):
        """
        U_tt,j = -(f'(U_{j+1}) U_{j+1,t} - f'(U_{j-1}) U_{j-1,t}) / (2 dx).
        """
        w = self._withGhosts(self.jacobianApply(u, self.f(u)))

        return -(w[:, 2:] - w[:, :-2]) / (2 * self.grid.dx)

    def rhs(self):
        return RhsPair(self.f, self.ftilde)


def shallow_water(grid, g=1.0):
    """
    Returns the RhsPair of the shallow water semi-discretization.
    """
    return ShallowWater(grid, g).rhs()
