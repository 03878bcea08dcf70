"""Exact subspace calculus for modules over split finite-dimensional algebras
and truncated graded algebras."""

from .algebra import KK, T2, DUAL, Algebra, Ideal, QuiverPresentation, compile_quiver
from .linalg import GF, QQ, Field, Subspace
from .modules import Module

__all__ = ["Algebra", "DUAL", "Field", "GF", "Ideal", "KK", "Module", "QQ", "QuiverPresentation", "Subspace", "T2", "compile_quiver"]
