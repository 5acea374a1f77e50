"""Exact constructions of symplectic equiangular tight frames, their binders
(regular simplices among the frame vectors) and the block designs they form."""

from __future__ import annotations

from .binder import (
    BinderResult,
    binder_dual_symplectic,
    binder_family,
    binder_generic,
    binder_symplectic,
    max_nonorthogonal_set,
    pair_extension_count,
)
from .design import IncidenceStructure, cross_oval_matrix, decompose_incidence, find_resolution, verify_bibd
from .etf import ExactGram, FrameFamily, gram_build, is_simplex
from .gf import AffineSubspace, GfVector, Subspace, canonical_subspace
from .quadratic import QuadraticForm, quadric
from .symplectic import SymplecticSpace, enumerate_affine_lagrangians, enumerate_lagrangians, lagrangian_spread

__all__ = [
    "AffineSubspace",
    "BinderResult",
    "ExactGram",
    "FrameFamily",
    "GfVector",
    "IncidenceStructure",
    "QuadraticForm",
    "Subspace",
    "SymplecticSpace",
    "binder_dual_symplectic",
    "binder_family",
    "binder_generic",
    "binder_symplectic",
    "canonical_subspace",
    "cross_oval_matrix",
    "decompose_incidence",
    "enumerate_affine_lagrangians",
    "enumerate_lagrangians",
    "find_resolution",
    "gram_build",
    "is_simplex",
    "lagrangian_spread",
    "max_nonorthogonal_set",
    "pair_extension_count",
    "quadric",
    "verify_bibd",
]
