"""Exact finite-dimensional Hopf-Galois checks over Q and F_p."""

from .linalg import QQ, FieldError, FieldSpec, LinMap, Subspace
from .hopf import HopfData, StructureError, haar_integral, verify_hopf

__all__ = [
    "QQ",
    "FieldError",
    "FieldSpec",
    "HopfData",
    "LinMap",
    "StructureError",
    "Subspace",
    "haar_integral",
    "verify_hopf",
]
