from .grid import Grid1D, square_wave, smooth_sine, dam_break
from .fluxes import ScalarFlux, LINEAR_ADVECTION, BURGERS, lax_friedrichs_split
from .differences import FluxDifference, ConservativeOperator, taylor_ftilde
from .schemes import (
    advection_upwind, burgers_upwind, weno5, weno5_split, weno5_pair
)
from .shallow_water import ShallowWater, shallow_water
from .problems import ProblemSpec, build_problem, PROBLEM_DEFAULTS
