"""Embedded binary and ternary matroids and the class closed under direct sums and complements."""

from .errors import FormatError, ResourceLimitError, SimplicityError, UnsupportedFieldError
from .matroid import EmbeddedMatroid, embed
from .projective import (
    FlatHandle,
    PointSpace,
    closure,
    enumerate_flats,
    enumerate_points,
    gaussian_binomial,
    point_space,
    rank_of,
)

__all__ = [
    "EmbeddedMatroid",
    "FlatHandle",
    "FormatError",
    "PointSpace",
    "ResourceLimitError",
    "SimplicityError",
    "UnsupportedFieldError",
    "closure",
    "embed",
    "enumerate_flats",
    "enumerate_points",
    "gaussian_binomial",
    "point_space",
    "rank_of",
]
