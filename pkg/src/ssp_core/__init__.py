from .tableau import Tableau, TableauFormatError, ConsistencyError
from .integrator import RhsPair, NonFiniteStateError
from .optimizer import OptimizationSpec, NoFeasibleMethodError
from .run_config import RunConfig
from .run_handler import RunHandler
from .run_output import RunOutput
