"""Homology of Garside (locally left-Gaussian) monoids and categories.

Builds the free resolution attached to an ordering of the atoms, optimizes
the ordering to shrink the resolution, specializes it through trivial, sign
or Laurent coefficients, and reads off homology via Smith normal forms.
"""

from .gaussian import (
    AtomOrdering,
    ConsistencyError,
    DivisionError,
    GaussianError,
    GaussianStructure,
    PreconditionError,
    ValidationReport,
    Word,
)
from .structures import (
    CoxeterMatrix,
    ParseError,
    artin_named,
    artin_structure,
    builtin_structure,
    circulating_structure,
    coxeter_matrix,
    dual_typeA_structure,
    parse_structure,
    serialize_structure,
)
from .resolution import (
    Cell,
    CellComplex,
    OrderResolution,
    build_complex,
    optimize_ordering,
    two_cell_bounds,
)
from .coefficients import CoefficientSystem, cyclotomic, make_system, specialize
from .linalg import HomologyGroup, ScalarMatrix, SNFResult, smith_normal_form
from .homology import HomologyResult, compute_homology, format_group

__all__ = [
    "AtomOrdering",
    "Cell",
    "CellComplex",
    "CoefficientSystem",
    "ConsistencyError",
    "CoxeterMatrix",
    "DivisionError",
    "GaussianError",
    "GaussianStructure",
    "HomologyGroup",
    "HomologyResult",
    "OrderResolution",
    "ParseError",
    "PreconditionError",
    "SNFResult",
    "ScalarMatrix",
    "ValidationReport",
    "Word",
    "artin_named",
    "artin_structure",
    "build_complex",
    "builtin_structure",
    "circulating_structure",
    "compute_homology",
    "coxeter_matrix",
    "cyclotomic",
    "dual_typeA_structure",
    "format_group",
    "make_system",
    "optimize_ordering",
    "parse_structure",
    "serialize_structure",
    "smith_normal_form",
    "specialize",
    "two_cell_bounds",
]

__version__ = "0.1.0"
