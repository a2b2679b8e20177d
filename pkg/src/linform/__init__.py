"""Sidorenko and common linear equations over finite fields.

Decide the two properties from the coefficients, count solutions exactly,
evaluate solution densities through Fourier coefficients, and build
functions that witness a failure.
"""

from ._backend import BACKEND
from .counting import (
    PointSet,
    TwoColoring,
    common_holds_exact,
    count_solutions_in_set,
    lambda_bruteforce,
    monochromatic_count,
    sidorenko_holds_exact,
    solution_density,
)
from .equation import (
    LinearEquation,
    RhsMode,
    Verdict,
    canceling_pair_partition,
    classify,
    classify_any,
    classify_inhomogeneous,
    is_translation_invariant,
    make_equation,
    normalize,
    parse_equation_spec,
)
from .errors import LinformError, ParseError
from .field import (
    Field,
    FieldElement,
    GroupVector,
    arith,
    character,
    field_create,
    field_of_order,
    trace,
)
from .forge import (
    Certificate,
    forge,
    forge_freevar_odd,
    forge_inhom,
    forge_nonsidorenko_odd,
    forge_uncommon_even,
    verify_certificate,
)
from .fourier import (
    GroupFunction,
    Spectrum,
    commonness_functional,
    inverse,
    lambda_spectral,
    transform,
)
from .hilbert import cube_system, find_cube_embedding, verify_embedding
from .refuter import exhaustive_common_search, exhaustive_sidorenko_search, random_search

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Certificate",
    "Field",
    "FieldElement",
    "GroupFunction",
    "GroupVector",
    "LinearEquation",
    "LinformError",
    "ParseError",
    "PointSet",
    "RhsMode",
    "Spectrum",
    "TwoColoring",
    "Verdict",
    "arith",
    "canceling_pair_partition",
    "character",
    "classify",
    "classify_any",
    "classify_inhomogeneous",
    "common_holds_exact",
    "commonness_functional",
    "count_solutions_in_set",
    "cube_system",
    "exhaustive_common_search",
    "exhaustive_sidorenko_search",
    "field_create",
    "field_of_order",
    "find_cube_embedding",
    "forge",
    "forge_freevar_odd",
    "forge_inhom",
    "forge_nonsidorenko_odd",
    "forge_uncommon_even",
    "inverse",
    "is_translation_invariant",
    "lambda_bruteforce",
    "lambda_spectral",
    "make_equation",
    "monochromatic_count",
    "normalize",
    "parse_equation_spec",
    "random_search",
    "sidorenko_holds_exact",
    "solution_density",
    "trace",
    "transform",
    "verify_certificate",
    "verify_embedding",
]
