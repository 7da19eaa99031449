import math
from ssp_core.tableau import Tableau
from .method_record import MethodRecord


class ForwardEuler(MethodRecord):
    def __init__(self):
        super().__init__()

        self.name = 'FE'
        self.description = 'Forward Euler.'
        self.claimed_order = 1
        self.claimed_cts = 1.0
        self.source = 'builtin_basic'

    def buildTableau(self):
        return Tableau(
            [[0.0]], [[0.0]], [1.0], [0.0], variant='external',
            design_K=math.inf, name=self.name, p_design=1
        )


class TaylorSeries(MethodRecord):
    def __init__(self):
        super().__init__()

        self.name = 'TS'
        self.description = (
            'The one-stage second order Taylor series method, '
            'u + dt F(u) + dt^2/2 Ftilde(u).'
        )
        self.claimed_order = 2
        self.claimed_cts = 1.0
        self.source = 'builtin_basic'

    def buildTableau(self):
        return Tableau(
            [[0.0]], [[0.0]], [1.0], [0.5], variant='M2', design_K=1.0,
            name=self.name, p_design=2
        )
