"""Reidemeister-move rewriting of link diagrams on the sphere."""

from .mapcore import (Crossing, Diagram, DiagramError, DanglingLoop, Face,
                      LoopRecord, NonInvolution, NonSpherical, SplitRecord,
                      build_diagram, components, faces, strand_count)
from .canon import CanonicalCode, canonicalize, isomorphic

__version__ = "0.1.0"

__all__ = [
    "Crossing", "Diagram", "DiagramError", "DanglingLoop", "Face", "LoopRecord",
    "NonInvolution", "NonSpherical", "SplitRecord", "build_diagram", "components",
    "faces", "strand_count", "CanonicalCode", "canonicalize", "isomorphic",
]
