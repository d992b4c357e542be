"""Closure operators on spectral spaces and Zariski-Riemann spaces of
one-dimensional fields, with projective models, Kronecker function rings
and Prufer witnesses."""

__version__ = "0.1.0"

from .fields import FieldSpec, ParseError, RatFunc
from .kronecker import (
    affine_test,
    content_criterion,
    in_kronecker,
    inv_via_kronecker,
    monic_no_root_subset,
    prufer_witness,
    pt_via_max,
    ring_desc,
    separator,
)
from .models import ProjectiveModel, ProjectiveSystem, center, dominates, fiber, limit_ops, product_model
from .onedim import GENERIC, OneDimSpace, SubsetDesc, cl1, gen1, inv1, patch1, pt1
from .poly import Poly
from .spectral import FiniteSpectralSpace, SpectralMapFin, cl, gen, image_ops, inv, patch, pt
from .valuations import Place, gauss_value, value, zr_space

__all__ = [
    "FieldSpec",
    "ParseError",
    "RatFunc",
    "Poly",
    "Place",
    "value",
    "gauss_value",
    "zr_space",
    "FiniteSpectralSpace",
    "SpectralMapFin",
    "cl",
    "gen",
    "inv",
    "patch",
    "pt",
    "image_ops",
    "GENERIC",
    "OneDimSpace",
    "SubsetDesc",
    "cl1",
    "gen1",
    "inv1",
    "patch1",
    "pt1",
    "ProjectiveModel",
    "ProjectiveSystem",
    "center",
    "fiber",
    "dominates",
    "product_model",
    "limit_ops",
    "in_kronecker",
    "content_criterion",
    "separator",
    "inv_via_kronecker",
    "pt_via_max",
    "ring_desc",
    "affine_test",
    "prufer_witness",
    "monic_no_root_subset",
]
