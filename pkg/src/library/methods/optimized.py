from .method_record import MethodRecord


class OptimizedMethod(MethodRecord):
    """
    A method produced by the optimizer.  claimed_cts is the certified
    coefficient, not the optimizer's own estimate.
    """
    def __init__(self, tableau, certified_cts):
        super().__init__()

        self.name = tableau.name
        self.description = (
            f'Optimized {tableau.variant} method with {tableau.s} stages.'
        )
        self.claimed_order = tableau.p_design
        self.claimed_cts = certified_cts
        self.source = 'optimizer'
        self.publish = False
        self._tableau = tableau

    def buildTableau(self):
        return self._tableau
