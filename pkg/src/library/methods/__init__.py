# Add the built-in methods to the package namespace.
from .method_record import MethodRecord
from .basic import ForwardEuler, TaylorSeries
from .fourth_order import (
    M3_3_4_1, M2_4_4_inf, TwoStageFourthOrder, M3Family, family_m3_3_4
)
from .fifth_order import M2_4_5_1
from .sixth_order import M3_8_6_1
from .tableau_file import load, save, FileMethod
from .optimized import OptimizedMethod


# Method classes that make up the built-in registry, in display order.
REGISTRY_CLASSES = (
    ForwardEuler, TaylorSeries, M3_3_4_1, M2_4_4_inf, TwoStageFourthOrder,
    M2_4_5_1, M3_8_6_1
)


def registry():
    """
    Returns a new list with one record for each built-in method.
    """
    return [method_class() for method_class in REGISTRY_CLASSES]
