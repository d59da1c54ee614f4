"""spinvol: exact SU(2) recoupling, volume-operator spectra, Racah-algebra
verification and the associated discrete polynomial families."""

from .angmom import (
    SixJArgs,
    overlap_coefficient,
    overlap_matrix,
    regge_map_sixj,
    symmetry_orbit,
    triangle_ok,
    wigner_3j,
    wigner_6j,
)
from .errors import DomainError, NumericError, SpinvolError, StructuralError
from .halfint import HalfInt, as_halfint
from .quadrilateral import (
    CanonicalizationRecord,
    Quadrilateral,
    canonicalize,
    iter_canonical_quads,
    regge_conjugate,
)
from .radicals import ExactRadical, RadicalSum, squarefree_decompose

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "HalfInt",
    "as_halfint",
    "ExactRadical",
    "RadicalSum",
    "squarefree_decompose",
    "triangle_ok",
    "wigner_3j",
    "wigner_6j",
    "SixJArgs",
    "overlap_coefficient",
    "overlap_matrix",
    "regge_map_sixj",
    "symmetry_orbit",
    "Quadrilateral",
    "CanonicalizationRecord",
    "canonicalize",
    "iter_canonical_quads",
    "regge_conjugate",
    "DomainError",
    "NumericError",
    "StructuralError",
    "SpinvolError",
]
