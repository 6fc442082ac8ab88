"""Polynomial Witt vectors of vector spaces over small finite fields."""
from .base_ring import (FiniteField, UniversalWittPolynomials, WittScalar,
                        compute_witt_polynomials, from_zpn, teichmuller_scalar, to_zpn)
from .cocycle import UniversalCocycle, addition_defect, solve_cocycles
from .errors import (CapExceeded, DivisibilityError, NotInvariant, ParameterMismatch, RangeError,
                     SchemaError, WittError)
from .orbits import Necklace, count_aperiodic, enumerate_aperiodic_necklaces
from .tate import EquivariantVector, TateClass, TateSpace
from .witt_functor import (BasedSpace, LinearMap, WittElement, apply_map, restriction,
                           teichmuller, witt_space, witt_zero)
from .witt_structure import (frobenius_map, multiply, pairing, tau, unit_element,
                             verschiebung)

__version__ = "0.1.0"

__all__ = [
    "FiniteField", "UniversalWittPolynomials", "WittScalar", "compute_witt_polynomials",
    "from_zpn", "teichmuller_scalar", "to_zpn",
    "UniversalCocycle", "addition_defect", "solve_cocycles",
    "CapExceeded", "DivisibilityError", "NotInvariant", "ParameterMismatch", "RangeError",
    "SchemaError", "WittError",
    "Necklace", "count_aperiodic", "enumerate_aperiodic_necklaces",
    "EquivariantVector", "TateClass", "TateSpace",
    "BasedSpace", "LinearMap", "WittElement", "apply_map", "restriction", "teichmuller",
    "witt_space", "witt_zero",
    "frobenius_map", "multiply", "pairing", "tau", "unit_element", "verschiebung",
]
