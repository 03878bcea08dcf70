"""Tagged matrices, canonical subspaces, and the elimination entry points."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .field import Field, FieldMismatch


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", self.field.array(self.entries))
        if self.entries.ndim != 2:
            raise ValueError("Matrix entries must be 2-dimensional")

    @classmethod
    def of(cls, field: Field, rows) -> "Matrix":
        return cls(field, np.asarray(rows, dtype=object) if field.p == 0 else np.asarray(rows))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.shape == self.shape
            and bool(np.all(other.entries == self.entries))
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self.field.check(other.field)
        return Matrix(self.field, self.field.matmul(self.entries, other.entries))

    def tolist(self):
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` inside ``field^ambient``; basis kept in RREF."""

    field: Field
    ambient: int
    basis: np.ndarray
    pivots: tuple = dc_field(default=())

    @classmethod
    def span(cls, field: Field, ambient: int, vectors) -> "Subspace":
        vecs = field.array(vectors) if not isinstance(vectors, np.ndarray) else vectors
        if vecs.size == 0:
            return cls.zero(field, ambient)
        vecs = vecs.reshape(-1, ambient)
        r, piv = field.rref(vecs)
        return cls(field, ambient, r, tuple(piv))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, field.zeros(0, ambient), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, field.eye(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and other.field == self.field
            and other.ambient == self.ambient
            and other.basis.shape == self.basis.shape
            and bool(np.all(other.basis == self.basis))
        )

    def __hash__(self):
        return hash((self.field, self.ambient, tuple(map(tuple, self.basis.tolist()))))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field!r})"

    def _compat(self, other: "Subspace"):
        self.field.check(other.field)
        if other.ambient != self.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace.span(self.field, self.ambient, np.concatenate([self.basis, other.basis]))

    def __and__(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        stacked = np.concatenate([self.basis, other.basis])
        ker = self.field.left_kernel(stacked)
        if ker.shape[0] == 0:
            return Subspace.zero(self.field, self.ambient)
        vecs = self.field.matmul(ker[:, : self.dim], self.basis)
        return Subspace.span(self.field, self.ambient, vecs)

    def contains_vector(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v) != 0)

    def __le__(self, other: "Subspace") -> bool:
        self._compat(other)
        if self.dim > other.dim:
            return False
        return all(other.contains_vector(row) for row in self.basis)

    def contains(self, other: "Subspace") -> bool:
        return other <= self

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Reduce ``v`` (vector or rows) modulo this subspace; zero iff inside."""
        f = self.field
        if self.dim == 0:
            return v.copy()
        coeffs = v[..., list(self.pivots)]
        return f.sub(v, f.matmul(np.atleast_2d(coeffs), self.basis).reshape(v.shape))

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of vectors lying in the subspace w.r.t. ``basis``."""
        return v[..., list(self.pivots)]

    def complement_indices(self) -> list:
        piv = set(self.pivots)
        return [i for i in range(self.ambient) if i not in piv]


@dataclass(frozen=True)
class RrefResult:
    R: Matrix
    rank: int
    pivots: tuple
    particular: Optional[np.ndarray]
    kernel: Subspace


def rref_solve(A: Matrix, b=None) -> RrefResult:
    """RREF of ``A``, kernel of ``A``, and a particular solution of ``A x = b``.

    An inconsistent system yields ``particular=None``.
    """
    f = A.field
    if isinstance(b, Matrix):
        f.check(b.field)
        b = b.entries.reshape(-1)
    R, pivots = f.rref(A.entries) if A.rows else (f.zeros(0, A.cols), [])
    kernel = Subspace.span(f, A.cols, f.nullspace(A.entries)) if A.cols else Subspace.zero(f, 0)
    particular = None
    if b is not None:
        b = f.array(b).reshape(-1)
        if b.shape[0] != A.rows:
            raise ValueError("right-hand side has wrong length")
        aug = np.concatenate([A.entries, b.reshape(-1, 1)], axis=1)
        Ra, pa = f.rref(aug)
        if A.cols not in pa:
            particular = f.zeros(A.cols)
            for i, c in enumerate(pa):
                particular[c] = Ra[i, A.cols]
    full = np.concatenate([R, f.zeros(A.rows - R.shape[0], A.cols)]) if A.rows else R
    return RrefResult(Matrix(f, full), len(pivots), tuple(pivots), particular, kernel)


def kron(A: Matrix, B: Matrix) -> Matrix:
    A.field.check(B.field)
    return Matrix(A.field, A.field.kron(A.entries, B.entries))


def subspace_lattice(op: str, U: Subspace, V: Subspace):
    if op == "sum":
        return U + V
    if op == "intersect":
        return U & V
    if op == "equals":
        U._compat(V)
        return U == V
    if op == "contains":
        return U.contains(V)
    raise ValueError(f"unknown lattice operation {op!r}")


__all__ = ["Matrix", "Subspace", "RrefResult", "rref_solve", "kron", "subspace_lattice", "FieldMismatch"]
