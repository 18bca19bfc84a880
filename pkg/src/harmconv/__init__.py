"""Harmonic mappings of the disk: series arithmetic, convolutions, and
numerical checks of univalence and directional convexity."""

from .canonical import (
    FLambdaDeltaParams,
    SlantParams,
    StripParams,
    convex_combination,
    f_lambda_delta_member,
    halfplane_member,
    right_halfplane_f0,
    slanted_halfplane_canonical,
    strip_member,
)
from .geometry import DiskGrid, direction_convexity, local_univalence, rz_search
from .harmonic import ClassTag, DilatationSpec, HarmonicMap, convolve, dilatation, rotate
from .schur_cohn import Polynomial, count_zeros_in_disk, roots_oracle
from .series import TruncatedSeries

__all__ = [
    "ClassTag",
    "DilatationSpec",
    "DiskGrid",
    "FLambdaDeltaParams",
    "HarmonicMap",
    "Polynomial",
    "SlantParams",
    "StripParams",
    "TruncatedSeries",
    "convex_combination",
    "convolve",
    "count_zeros_in_disk",
    "dilatation",
    "direction_convexity",
    "f_lambda_delta_member",
    "halfplane_member",
    "local_univalence",
    "right_halfplane_f0",
    "roots_oracle",
    "rotate",
    "rz_search",
    "slanted_halfplane_canonical",
    "strip_member",
]
