"""Colored Eulerian polynomials, colored ordered set partitions and the
colored permutohedron, computed in exact arithmetic."""

from .arith import Poly, TruncatedSeries, egf_colored_fubini, f_to_h, multinomial, poly_reverse, \
    poly_shift, stirling2, sturm_count_real_roots
from .errors import BudgetExceeded
from .eulerian import classical_eulerian, colored_eulerian, gamma_coefficient
from .permutohedron import build_complex, count_components, euler_characteristic
from .structures import ColoredOrderedSetPartition, ColoredPermutation, Composition, enumerate_Q, \
    enumerate_colored_permutations

__all__ = [
    "BudgetExceeded", "ColoredOrderedSetPartition", "ColoredPermutation", "Composition", "Poly",
    "TruncatedSeries", "build_complex", "classical_eulerian", "colored_eulerian", "count_components",
    "egf_colored_fubini", "enumerate_Q", "enumerate_colored_permutations", "euler_characteristic",
    "f_to_h", "gamma_coefficient", "multinomial", "poly_reverse", "poly_shift", "stirling2",
    "sturm_count_real_roots",
]
