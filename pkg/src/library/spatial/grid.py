import numpy as np


class Grid1D:
    """
    A uniform grid of m points spanning the closed interval [x_left,
    x_right], so dx = (x_right - x_left) / (m - 1).  On a periodic grid the
    last point is identified with the first, and states hold m - 1 values.
    """
    def __init__(self, m, x_left=-1.0, x_right=1.0, periodic=True):
        """
        m: The number of grid points.
        x_left, x_right: The domain endpoints.
        periodic: Whether the boundary is periodic.
        """
        if int(m) != m or m < 6:
            raise ValueError(f'Invalid grid point count: "{m}".')
        if not x_right > x_left:
            raise ValueError(
                f'Invalid domain: "[{x_left}, {x_right}]".'
            )

        self.m = int(m)
        self.x_left = float(x_left)
        self.x_right = float(x_right)
        self.periodic = periodic
        self.dx = (self.x_right - self.x_left) / (self.m - 1)

        x = np.linspace(self.x_left, self.x_right, self.m)
        self.x = x[:-1] if periodic else x

    @property
    def n(self):
        """
        The number of values in a state.
        """
        return self.x.shape[0]

    def __repr__(self):
        return (
            f'Grid1D(m={self.m}, [{self.x_left}, {self.x_right}], '
            f'periodic={self.periodic})'
        )


# Initial conditions.

def square_wave(grid):
    """
    1 on [-1/2, 1/2], 0 elsewhere.
    """
    return np.where(np.abs(grid.x) <= 0.5, 1.0, 0.0)


def smooth_sine(grid):
    return np.sin(np.pi * grid.x)


def dam_break(grid, h_left=10.0, x_dam=0.5):
    """
    A dam break onto a dry bed: (h, v) = (h_left, 0) for x <= x_dam and
    (0, 0) otherwise.  Returns the conserved variables as a 2 x n array with
    rows h and hv.
    """
    u = np.zeros((2, grid.n))
    u[0] = np.where(grid.x <= x_dam, h_left, 0.0)

    return u


INITIAL_CONDITIONS = {
    'square_wave': square_wave,
    'smooth_sine': smooth_sine,
    'dam_break': dam_break
}
