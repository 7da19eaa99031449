import logging
import math
import numpy as np
from ssp_core.tableau import Tableau, validate
from .method_record import MethodRecord


logger = logging.getLogger(__name__)


def family_m3_3_4(k):
    """
    Returns the three-stage fourth order M3 method that is optimal for the
    Taylor series ratio k, 0 < k <= 1.  Its SSP-TS coefficient is
    2k / (k + 1).  For k >= 1 the k = 1 scheme is returned.
    """
    k = float(k)
    if not k > 0:
        raise ValueError(f'Invalid Taylor series ratio K: "{k}".')

    K = min(k, 1.0)

    A = np.zeros((3, 3))
    Ahat = np.zeros((3, 3))
    b = np.zeros(3)
    bhat = np.zeros(3)

    A[1, 0] = (K + 1) / 2
    Ahat[1, 0] = (K + 1)**2 / 8
    A[2, 0] = (K + 1) * (-K**3 - 2 * K**2 + 14 * K + 3) / (2 * (K + 2)**3)
    A[2, 1] = (K + 1) * (K - 3)**2 / (2 * (K + 2)**3)
    Ahat[2, 0] = K * (-K**2 + 2 * K + 3)**2 / (8 * (K + 2)**3)

    denom = 3 * (K - 3)**2 * (K + 1)**3
    b[0] = (
        3 * K**5 - 9 * K**4 - 22 * K**3 + 30 * K**2 + 21 * K + 11
    ) / denom
    b[1] = 2 * K / (3 * (K + 1)**3)
    b[2] = 2 * (K + 2)**3 / denom
    bhat[0] = -(-3 * K**3 + 3 * K**2 + K + 1) / (6 * (K - 3) * (K + 1)**2)

    t = Tableau(
        A, Ahat, b, bhat, variant='M3', design_K=k,
        name=f'M3(3,4,K={k:g})', p_design=4
    )

    report = validate(t)
    if not report.clean:
        for msg in report.messages():
            logger.warning('%s: %s', t.name, msg)

    return t


class M3Family(MethodRecord):
    """
    A member of the closed-form family of three-stage fourth order M3
    methods.
    """
    def __init__(self, k):
        super().__init__()

        self.k = float(k)
        if not self.k > 0:
            raise ValueError(f'Invalid Taylor series ratio K: "{k}".')

        self.name = f'M3(3,4,K={self.k:g})'
        self.description = (
            'Three-stage fourth order M3 method optimized for K = '
            f'{self.k:g}.'
        )
        self.claimed_order = 4
        K = min(self.k, 1.0)
        self.claimed_cts = 2 * K / (K + 1)
        self.source = 'closed_form_family'

        # Family members are only listed on request.
        self.publish = False

    def buildTableau(self):
        return family_m3_3_4(self.k)


class M3_3_4_1(MethodRecord):
    def __init__(self):
        super().__init__()

        self.name = 'M3(3,4,1)'
        self.description = (
            'Optimal three-stage fourth order M3 method for K >= 1.'
        )
        self.claimed_order = 4
        self.claimed_cts = 1.0
        self.source = 'published_scheme'

    def buildTableau(self):
        A = [
            [0, 0, 0],
            [1, 0, 0],
            [14 / 27, 4 / 27, 0]
        ]
        Ahat = [
            [0, 0, 0],
            [1 / 2, 0, 0],
            [2 / 27, 0, 0]
        ]
        b = [17 / 48, 4 / 48, 27 / 48]
        bhat = [1 / 24, 0, 0]

        return Tableau(
            A, Ahat, b, bhat, variant='M3', design_K=1.0, name=self.name,
            p_design=4
        )


class M2_4_4_inf(MethodRecord):
    def __init__(self):
        super().__init__()

        self.name = 'M2(4,4,inf)'
        self.description = (
            'Four-stage fourth order M2 method optimized for an '
            'unconditionally stable Taylor series step (K = inf).'
        )
        self.claimed_order = 4
        self.claimed_cts = 4.0
        self.source = 'published_scheme'

    def buildTableau(self):
        A = [
            [0, 0, 0, 0],
            [1 / 4, 0, 0, 0],
            [1 / 4, 1 / 4, 0, 0],
            [1 / 4, 1 / 4, 1 / 4, 0]
        ]
        Ahat = [
            [0, 0, 0, 0],
            [1 / 32, 0, 0, 0],
            [1 / 32, 1 / 32, 0, 0],
            [0, 1 / 32, 2 / 32, 0]
        ]
        b = [1 / 4, 1 / 4, 1 / 4, 1 / 4]
        bhat = [5 / 288, 12 / 288, 3 / 288, 16 / 288]

        return Tableau(
            A, Ahat, b, bhat, variant='M2', design_K=math.inf,
            name=self.name, p_design=4
        )


class TwoStageFourthOrder(MethodRecord):
    def __init__(self):
        super().__init__()

        self.name = '2s4p'
        self.description = (
            'The unique two-stage fourth order two-derivative method.  It is '
            'SSP-SD but not SSP-TS.'
        )
        self.claimed_order = 4
        self.claimed_cts = 0.0
        self.source = 'published_equation'

    def buildTableau(self):
        A = [
            [0, 0],
            [1 / 2, 0]
        ]
        Ahat = [
            [0, 0],
            [1 / 8, 0]
        ]
        b = [1, 0]
        bhat = [1 / 6, 1 / 3]

        return Tableau(
            A, Ahat, b, bhat, variant='M2', design_K=1.0, name=self.name,
            p_design=4
        )
