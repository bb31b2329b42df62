"""Higher level affine crystals: perfect crystals, slices, Young walls and paths."""

from .cartan_data import AffineType, AffineWeight, ClassicalWeight, Family

__all__ = ["AffineType", "AffineWeight", "ClassicalWeight", "Family"]
__version__ = "0.1.0"
