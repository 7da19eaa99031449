import numpy as np
from ssp_core.tableau import Tableau
from .method_record import MethodRecord


class M3_8_6_1(MethodRecord):
    def __init__(self):
        super().__init__()

        self.name = 'M3(8,6,1)'
        self.description = (
            'Eight-stage sixth order M3 method optimized for K = 1.'
        )
        self.claimed_order = 6
        self.claimed_cts = 1.7369
        self.source = 'published_listing'

    def buildTableau(self):
        A = np.zeros((8, 8))
        A[1, :1] = [3.498630949258150e-01]
        A[2, :2] = [2.253295269463227e-01, 1.807161013759724e-01]
        A[3, :3] = [
            2.071695605568409e-01, 4.100178308548576e-02,
            1.306253212278126e-01
        ]
        A[4, :4] = [
            1.667117585911237e-01, 2.009667996165993e-02,
            6.402490521280881e-02, 2.821909187189924e-01
        ]
        A[5, :5] = [
            1.493141923275556e-01, 1.319303489675465e-02,
            4.203095914776495e-02, 1.852522020371737e-01,
            3.779563241192044e-01
        ]
        A[6, :6] = [
            2.148681581922796e-01, 1.533420472452636e-01,
            1.813808417863181e-02, 7.994387176143736e-02,
            1.630752796649391e-01, 2.484093806816690e-01
        ]
        A[7, :7] = [
            2.036762412289922e-01, 1.456707401767411e-01,
            2.379744031395224e-02, 1.048777345557326e-01,
            2.139668745571685e-01, 6.560681670556633e-02,
            1.520556075200664e-01
        ]

        # Second derivative terms only use the first stage.
        Ahat = np.zeros((8, 8))
        Ahat[1:, 0] = [
            6.120209259553491e-02, 1.921063160949869e-02,
            4.358605297856505e-03, 2.136333816692593e-03,
            1.402456855983780e-03, 1.631142330728269e-02,
            1.548804492637956e-02
        ]

        b = [
            1.927179349665056e-01, 7.457643792836192e-02,
            1.097549250079706e-01, 1.166274027628658e-01,
            1.862061970475841e-01, 1.088089628270683e-01,
            4.414821350738243e-02, 1.671599259522612e-01
        ]
        bhat = np.zeros(8)
        bhat[0] = 1.156518516980132e-02

        return Tableau(
            A, Ahat, b, bhat, variant='M3', design_K=1.0, name=self.name,
            p_design=6
        )
