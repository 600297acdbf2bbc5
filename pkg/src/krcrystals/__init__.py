"""Kirillov-Reshetikhin crystals for the nonexceptional affine families."""

from krcrystals.cartan import AffineSpec, Shape, kr_decomposition, kr_dimension
from krcrystals.kr_builders import build_kr

__all__ = [
    "AffineSpec",
    "Shape",
    "kr_decomposition",
    "kr_dimension",
    "build_kr",
]
