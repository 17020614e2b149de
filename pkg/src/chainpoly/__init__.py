"""Exact chain polynomials, total nonnegativity and h-vectors for graded posets."""

__version__ = "0.1.0"

from .poly import Polynomial, isolate_roots, interlaces, is_interlacing_sequence, is_real_rooted_in, sturm_count
from .tnmat import LowerTriMatrix, ResolutionCertificate, WhitneyFailure, is_tn, whitney_reduce
from .chain import chain_polynomials, interlacing_certificate, subdivision, zeta_polynomial
from .poset import FinitePoset, extract_matrix, h_vector, poset_from_matrix
from .families import FamilySpec, family_matrix

__all__ = [
    "Polynomial",
    "isolate_roots",
    "interlaces",
    "is_interlacing_sequence",
    "is_real_rooted_in",
    "sturm_count",
    "LowerTriMatrix",
    "ResolutionCertificate",
    "WhitneyFailure",
    "is_tn",
    "whitney_reduce",
    "chain_polynomials",
    "interlacing_certificate",
    "subdivision",
    "zeta_polynomial",
    "FinitePoset",
    "extract_matrix",
    "h_vector",
    "poset_from_matrix",
    "FamilySpec",
    "family_matrix",
]
