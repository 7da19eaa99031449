"""
Fifth order WENO reconstruction of interface fluxes.  The kernel works on
five-point stencils (v1, ..., v5) = (g_{j-2}, ..., g_{j+2}) and returns the
left-biased reconstruction of g at x_{j+1/2}.  The right-biased
reconstruction for fluxes with f'(u) <= 0 is the same kernel applied to the
mirrored stencil (g_{j+3}, g_{j+2}, g_{j+1}, g_j, g_{j-1}).
"""

import numpy as np


# The optimal weights of the three candidate stencils.
LINEAR_WEIGHTS = (0.1, 0.6, 0.3)

EPSILON = 1e-6

# np.roll shifts giving the stencil points of each direction.
STENCIL_SHIFTS = {
    'plus': (2, 1, 0, -1, -2),
    'minus': (-3, -2, -1, 0, 1)
}


def stencils(g, direction):
    """
    Returns the 5 x n array of periodic stencil values for each interface
    x_{j+1/2}.
    """
    return np.stack([np.roll(g, shift) for shift in STENCIL_SHIFTS[direction]])


def smoothness_indicators(v):
    v1, v2, v3, v4, v5 = v
    return np.stack([
        13 / 12 * (v1 - 2 * v2 + v3)**2 + 1 / 4 * (v1 - 4 * v2 + 3 * v3)**2,
        13 / 12 * (v2 - 2 * v3 + v4)**2 + 1 / 4 * (v2 - v4)**2,
        13 / 12 * (v3 - 2 * v4 + v5)**2 + 1 / 4 * (3 * v3 - 4 * v4 + v5)**2
    ])


def weno5_weights(v, eps=EPSILON):
    """
    Returns the 3 x n array of nonlinear weights omega_0..omega_2.
    """
    IS = smoothness_indicators(v)
    alpha = np.array(LINEAR_WEIGHTS)[:, None] / (eps + IS)**2

    return alpha / alpha.sum(axis=0)


def weno5_reconstruct(v, eps=EPSILON):
    """
    Returns the reconstructed interface values for the stencils v.
    """
    v1, v2, v3, v4, v5 = v
    q = np.stack([
        (2 * v1 - 7 * v2 + 11 * v3) / 6,
        (-v2 + 5 * v3 + 2 * v4) / 6,
        (2 * v3 + 5 * v4 - v5) / 6
    ])
    omega = weno5_weights(v, eps)

    return (omega * q).sum(axis=0)
