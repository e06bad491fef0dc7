"""Exact combinatorics of marked Dynkin data, restricted affine root systems
and the cone arrangements they cut out."""
from .dynkin import DynkinData, DynkinDiagram, build_diagram, make_context, parse_diagram

__all__ = ["DynkinData", "DynkinDiagram", "build_diagram", "make_context", "parse_diagram"]
__version__ = "0.1.0"
