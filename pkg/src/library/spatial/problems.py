import numpy as np
from .grid import Grid1D, INITIAL_CONDITIONS
from .fluxes import LINEAR_ADVECTION, BURGERS
from .schemes import advection_upwind, burgers_upwind, weno5_pair
from .weno import EPSILON
from .shallow_water import ShallowWater


# Monitored functionals.
NORMS = ('tv', 'positivity')

# Default settings of each named problem.
PROBLEM_DEFAULTS = {
    'advection-upwind': {
        'm': 601, 'domain': (-1.0, 1.0), 'n_steps': 50,
        'initial': 'square_wave'
    },
    'burgers-upwind': {
        'm': 601, 'domain': (-1.0, 1.0), 'n_steps': 50,
        'initial': 'square_wave'
    },
    'advection-weno': {
        'm': 201, 'domain': (-1.0, 1.0), 'n_steps': 50,
        'initial': 'square_wave', 'eps': 1e-40
    },
    'burgers-weno': {
        'm': 201, 'domain': (-1.0, 1.0), 'n_steps': 50,
        'initial': 'square_wave', 'eps': 1e-40
    },
    'shallow-water': {
        'm': 201, 'domain': (0.0, 1.0), 'n_steps': 60,
        'initial': 'dam_break'
    }
}


class ProblemSpec:
    """
    A 1D semi-discretization together with its base step sizes.
    """
    def __init__(
        self, name, grid, rhs, dt_fe, k, initial, norm='tv', n_steps=50,
        wave_speed=None
    ):
        """
        name: The problem name.
        grid (Grid1D): The spatial grid.
        rhs (RhsPair): The operators F and Ftilde.
        dt_fe: The forward Euler step size of the monitored property.
        k: The Taylor series ratio K.
        initial: The initial state.
        norm: The monitored functional, one of NORMS.
        n_steps: The default number of steps.
        wave_speed: For systems, a callable returning the maximal wave speed
            of a state.  Step sizes are then given as lambda = alpha dt / dx.
        """
        if not dt_fe > 0:
            raise ValueError(f'Invalid forward Euler step size: "{dt_fe}".')
        if not k > 0:
            raise ValueError(f'Invalid Taylor series ratio K: "{k}".')
        if norm not in NORMS:
            raise ValueError(f'Invalid monitored functional: "{norm}".')

        self.name = name
        self.grid = grid
        self.rhs = rhs
        self.dt_fe = dt_fe
        self.k = k
        self.initial = initial
        self.norm = norm
        self.n_steps = n_steps
        self.wave_speed = wave_speed

    @property
    def lambda_fe(self):
        """
        The forward Euler step size expressed as lambda.
        """
        lam = self.dt_fe / self.grid.dx
        if self.wave_speed is not None:
            lam *= self.wave_speed(self.initial)

        return lam

    def step_size(self, lam):
        """
        Returns the step size for lambda: a number, or for systems a callable
        that computes dt = lambda dx / alpha(u) from the current state.
        """
        dx = self.grid.dx
        if self.wave_speed is None:
            return lam * dx

        wave_speed = self.wave_speed

        def dt(u):
            return lam * dx / wave_speed(u)

        return dt


def build_problem(
    name, m=None, ftilde='same', initial=None, g=1.0, eps=None
):
    """
    Builds a named problem.

    name: One of the keys of PROBLEM_DEFAULTS.
    m: The number of grid points, or None for the default.
    ftilde: "same" or "opposite"; the second derivative operator choice of
        the WENO problems.
    initial: The name of an initial condition, or None for the default.
    g: The gravitational constant of the shallow water problem.
    eps: The regularization of the WENO weights, or None for the default.
    """
    if name not in PROBLEM_DEFAULTS:
        raise KeyError(f'Invalid problem name: "{name}"')

    defaults = PROBLEM_DEFAULTS[name]
    if m is None:
        m = defaults['m']
    if initial is None:
        initial = defaults['initial']
    if initial not in INITIAL_CONDITIONS:
        raise ValueError(f'Invalid initial condition: "{initial}".')
    if eps is None:
        eps = defaults.get('eps', EPSILON)
    if not eps > 0:
        raise ValueError(f'Invalid WENO regularization: "{eps}".')

    x_left, x_right = defaults['domain']
    periodic = name != 'shallow-water'
    grid = Grid1D(m, x_left, x_right, periodic=periodic)
    u0 = INITIAL_CONDITIONS[initial](grid)
    n_steps = defaults['n_steps']

    if name == 'advection-upwind':
        return ProblemSpec(
            name, grid, advection_upwind(grid), grid.dx, 1.0, u0,
            n_steps=n_steps
        )
    elif name == 'burgers-upwind':
        dt_fe = grid.dx / max(np.max(np.abs(u0)), 1e-300)
        return ProblemSpec(
            name, grid, burgers_upwind(grid), dt_fe, 1.0, u0, n_steps=n_steps
        )
    elif name == 'advection-weno':
        rhs = weno5_pair('minus', grid, LINEAR_ADVECTION, ftilde, eps)
        return ProblemSpec(name, grid, rhs, grid.dx, 1.0, u0, n_steps=n_steps)
    elif name == 'burgers-weno':
        rhs = weno5_pair('plus', grid, BURGERS, ftilde, eps)
        return ProblemSpec(name, grid, rhs, grid.dx, 1.0, u0, n_steps=n_steps)
    else:
        sw = ShallowWater(grid, g)
        dt_fe = grid.dx / sw.wave_speed(u0)
        return ProblemSpec(
            name, grid, sw.rhs(), dt_fe, 1.0, u0, norm='positivity',
            n_steps=n_steps, wave_speed=sw.wave_speed
        )
