from .field import GF, QQ, Field, FieldMismatch, field_from_tag, field_tag
from .matrix import Matrix, RrefResult, Subspace, kron, rref_solve, subspace_lattice

__all__ = [
    "GF",
    "QQ",
    "Field",
    "FieldMismatch",
    "field_from_tag",
    "field_tag",
    "Matrix",
    "RrefResult",
    "Subspace",
    "kron",
    "rref_solve",
    "subspace_lattice",
]
