from ssp_core.tableau import Tableau
from .method_record import MethodRecord


class M2_4_5_1(MethodRecord):
    def __init__(self):
        super().__init__()

        self.name = 'M2(4,5,1)'
        self.description = (
            'Four-stage fifth order M2 method optimized for K = 1.'
        )
        self.claimed_order = 5
        self.claimed_cts = 2.18648
        self.source = 'published_listing'

    def buildTableau(self):
        A = [
            [0, 0, 0, 0],
            [4.280141748183123e-01, 0, 0, 0],
            [3.174364422211321e-01, 1.032647478325804e-01, 0, 0],
            [
                3.280547501426051e-01, 9.334228125655676e-02,
                4.134096583922347e-01, 0
            ]
        ]
        Ahat = [
            [0, 0, 0, 0],
            [9.159806692270039e-02, 0, 0, 0],
            [2.068159838961376e-02, 2.361437143530821e-02, 0, 0],
            [
                1.869435227642530e-02, 2.134532206271365e-02,
                9.453767556809974e-02, 0
            ]
        ]
        b = [
            3.456442194983256e-01, 1.551487425849178e-01,
            3.458932447335502e-01, 1.533137931832064e-01
        ]
        bhat = [
            3.226836941745746e-02, 1.785928934720153e-02,
            7.490191551289183e-02, 3.505948481328697e-02
        ]

        return Tableau(
            A, Ahat, b, bhat, variant='M2', design_K=1.0, name=self.name,
            p_design=5
        )
