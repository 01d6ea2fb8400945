"""Exact and floating projective linear algebra in dimension 4."""

from .forms import SymmetricForm, invariant_form_space, invariant_symmetric_form, signature
from .matrix import Mat4
from .points import ProjPoint, ProjSubspace, cross_ratio, general_position
from .poly import char_poly, cubic_discriminant, real_roots, real_roots_cubic
from .scalar import (
    FLOAT,
    RATIONAL,
    close,
    get_tolerance,
    is_exact,
    is_zero,
    set_tolerance,
    to_scalar,
    tolerance,
)

__all__ = [
    "FLOAT",
    "RATIONAL",
    "Mat4",
    "ProjPoint",
    "ProjSubspace",
    "SymmetricForm",
    "char_poly",
    "close",
    "cross_ratio",
    "cubic_discriminant",
    "general_position",
    "get_tolerance",
    "invariant_form_space",
    "invariant_symmetric_form",
    "is_exact",
    "is_zero",
    "real_roots",
    "real_roots_cubic",
    "set_tolerance",
    "signature",
    "to_scalar",
    "tolerance",
]
