"""Tools for a self-similar aperiodic subshift of the plane.

The same 19-letter subshift is built three ways: from a 2-dimensional
substitution, from a set of 19 Wang tiles via marker desubstitution, and
from the coding of a torus rotation by a 19-atom polygonal partition via
induction on windows.  The package computes all three and cross-checks them
at pattern level.
"""

from .catalog import (
    partition_segments,
    rotation_action,
    square_substitution,
    wang_tiles,
)
from .morphisms import Morphism2d, compose, language
from .phifield import PHI, PhiNumber, parse_phi
from .wang import WangTileSet
from .words import Word2d

__version__ = "0.1.0"

__all__ = [
    "PHI",
    "PhiNumber",
    "parse_phi",
    "Word2d",
    "Morphism2d",
    "compose",
    "language",
    "WangTileSet",
    "square_substitution",
    "wang_tiles",
    "partition_segments",
    "rotation_action",
    "__version__",
]
