"""Exact computations with Segal-Sugawara vectors and Casimir elements for gl_N, o_N and sp_2n."""
from .classical import GL, O, SP, LieAlgebraSpec, bracket, invariant_form, make_algebra
from .loop import UEAElement, loop_algebra, verify_centrality

__version__ = "0.1.0"

__all__ = [
    "GL", "O", "SP", "LieAlgebraSpec", "make_algebra", "bracket", "invariant_form",
    "UEAElement", "loop_algebra", "verify_centrality",
]
