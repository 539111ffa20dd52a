"""Purely exponential parametrizations over number fields, with exact heights."""

from .config import DEFAULT_CAPS, Caps
from .errors import *  # noqa: F403
from .exppoly import (
    ExponentVector,
    IntegerLatticeCoset,
    PepSystem,
    Term,
    degeneracy_locus,
    evaluate,
    hom_height_bounds,
    make_system,
    reduce_to_independent,
    relation_lattice,
    restrict_to_coset,
    term_monomials,
    union,
)
from .heights import (
    Comparison,
    HeightValue,
    affine_height,
    compare_height,
    element_height_mahler,
    projective_height,
)
from .lattice import hnf
from .matrixk import (
    MatrixK,
    bg_to_pep,
    eigen_decompose,
    is_semisimple,
    jordan_multiplicative,
    unipotent_power_heights,
)
from .numfield import FieldElement, NumberField, content_ideal_norm, make_field, minimal_polynomial, rationals

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
