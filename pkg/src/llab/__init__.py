"""Exact computations for limit linear series on a two-component nodal curve."""

from .errors import (DegenerateSeriesError, DimensionError, EmptyStratumError,
                     ExactnessRequiredError, GenerationError, GenericityError, InputError,
                     InterpolationError, InvalidSpecError, LlabError, NoPredecessorError,
                     ResourceError, ScopeError, WrongCaseError)
from .exactmath import BivarPoly, Mat, Subspace, binom_poly, interpolate_grid, rat, rref
from .schemes import (MinorScheme, UnionSpec, hilbert_minor, hilbert_scheme, hilbert_union,
                      make_union_spec)

__version__ = "0.1.0"
FORMAT = "llab/1"

__all__ = [
    "BivarPoly", "Mat", "Subspace", "binom_poly", "interpolate_grid", "rat", "rref",
    "MinorScheme", "UnionSpec", "hilbert_minor", "hilbert_scheme", "hilbert_union",
    "make_union_spec",
    "LlabError", "InputError", "DimensionError", "InvalidSpecError", "WrongCaseError",
    "NoPredecessorError", "ScopeError", "InterpolationError", "ResourceError",
    "GenerationError", "ExactnessRequiredError", "DegenerateSeriesError",
    "EmptyStratumError", "GenericityError",
]
