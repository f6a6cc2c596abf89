"""Goeritz matrices of link diagrams, the mutation move calculus, and invariants."""

from .diagram import Diagram, DiagramError, OrientedDiagram, Shading, parse_pd
from .gaussian import GaussianInt

__all__ = ["Diagram", "DiagramError", "OrientedDiagram", "Shading", "parse_pd", "GaussianInt"]
