"""Variational proton-antiproton motion in the hydrogen-antihydrogen system."""

__version__ = "0.1.0"

from .constants import CONSTANTS, PhysicalConstants
from .potential import Flavor, PotentialModel, load_builtin

__all__ = [
    "CONSTANTS",
    "PhysicalConstants",
    "Flavor",
    "PotentialModel",
    "load_builtin",
    "__version__",
]
