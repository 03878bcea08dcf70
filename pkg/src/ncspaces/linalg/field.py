"""Exact base fields: the rationals and prime fields.

Matrices are plain numpy arrays.  Over GF(p) they are ``int64`` with entries
reduced into ``[0, p)``; over Q they are ``object`` arrays of
:class:`fractions.Fraction`.  A :class:`Field` carries the arithmetic for one
of these two representations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np
import sympy

from . import _kernels


class FieldMismatch(ValueError):
    pass


class Field:
    """A prime field GF(p) (``p > 0``) or the rationals (``p == 0``)."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not sympy.isprime(p):
                raise ValueError(f"{p} is not prime")
            if p >= _kernels.MAX_PRIME:
                raise ValueError(f"prime {p} too large for int64 kernels (max {_kernels.MAX_PRIME})")
        self.p = int(p)

    # identity -------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"

    @property
    def is_finite(self) -> bool:
        return self.p > 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def dtype(self):
        return np.int64 if self.p else object

    def check(self, other: "Field") -> None:
        if other != self:
            raise FieldMismatch(f"field mismatch: {self!r} vs {other!r}")

    # scalars --------------------------------------------------------------
    def scalar(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            if isinstance(x, str):
                return self.scalar(Fraction(x))
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def elements(self):
        if not self.p:
            raise ValueError("QQ is infinite")
        return range(self.p)

    # arrays ---------------------------------------------------------------
    def array(self, data, shape=None) -> np.ndarray:
        if self.p:
            if isinstance(data, np.ndarray) and data.dtype != object:
                a = np.asarray(data, dtype=np.int64) % self.p
            else:
                flat = np.asarray(data, dtype=object)
                a = np.array([self.scalar(x) for x in flat.ravel()], dtype=np.int64).reshape(flat.shape)
        else:
            flat = np.asarray(data, dtype=object)
            a = np.empty(flat.shape, dtype=object)
            a.ravel()[:] = [Fraction(x) for x in flat.ravel()]
        if shape is not None:
            a = a.reshape(shape)
        return a

    def zeros(self, *shape) -> np.ndarray:
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a.fill(Fraction(0))
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = 1 if self.p else Fraction(1)
        return a

    def unit_vector(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = 1 if self.p else Fraction(1)
        return v

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p:
            return a % self.p
        return a

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def scale(self, c, a):
        return (self.scalar(c) * a) % self.p if self.p else Fraction(c) * a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p:
            if a.ndim == 2 and b.ndim == 2:
                return _kernels.matmul_modp(a, b, self.p)
            return (a @ b) % self.p
        if a.shape[-1] == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return self.zeros(*shape)
        if a.ndim == 2 and b.ndim == 2:
            return _matmul_rational(a, b)
        return np.dot(a, b)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.kron(a, b)
        if self.p:
            return out % self.p
        return out.astype(object)

    def is_zero(self, a) -> bool:
        if isinstance(a, np.ndarray):
            return not np.any(a != 0)
        return a == 0

    def random(self, rng: np.random.Generator, shape, bound: int = 3) -> np.ndarray:
        if self.p:
            return rng.integers(0, self.p, size=shape, dtype=np.int64)
        vals = rng.integers(-bound, bound + 1, size=shape)
        return self.array(vals)

    # elimination ----------------------------------------------------------
    def rref(self, a: np.ndarray):
        """Return ``(R, pivots)`` for the reduced row echelon form of ``a``.

        ``R`` keeps only the nonzero rows, so ``len(pivots) == R.shape[0]``.
        """
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        if self.p:
            work = np.array(a, dtype=np.int64, copy=True)
            rank, pivots = _kernels.rref_modp(work, self.p)
            return work[:rank], [int(c) for c in pivots]
        return _rref_rational(a)

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Rows spanning ``{x : a @ x = 0}``, in reduced echelon form."""
        cols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(cols)
        r, pivots = self.rref(a)
        pset = set(pivots)
        free = [c for c in range(cols) if c not in pset]
        basis = self.zeros(len(free), cols)
        for k, f in enumerate(free):
            basis[k, f] = 1 if self.p else Fraction(1)
            for i, pc in enumerate(pivots):
                basis[k, pc] = self.neg(r[i, f])
        if len(free) == 0:
            return basis
        return self.rref(basis)[0]

    def left_kernel(self, a: np.ndarray) -> np.ndarray:
        """Rows spanning ``{y : y @ a = 0}``."""
        return self.nullspace(a.T)

    def solve_left(self, basis: np.ndarray, vectors: np.ndarray):
        """Coordinates ``c`` with ``c @ basis == vectors`` (one row per vector) or ``None``."""
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1)
        k = basis.shape[0]
        if k == 0:
            if self.is_zero(vectors):
                return self.zeros(vectors.shape[0], 0)
            return None
        aug = np.concatenate([basis.T, vectors.T], axis=1)
        r, pivots = self.rref(aug)
        if any(pc >= k for pc in pivots):
            return None
        if len(pivots) < k:
            raise ValueError("solve_left requires linearly independent basis rows")
        return r[:k, k:].T.copy()

    def coords_in_rref(self, basis: np.ndarray, pivots, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of vectors known to lie in the row space of an RREF basis."""
        if vectors.ndim == 1:
            return vectors[list(pivots)]
        return vectors[:, list(pivots)]

    def det_nonzero(self, a: np.ndarray) -> bool:
        n = a.shape[0]
        if a.shape != (n, n):
            return False
        return self.rank(a) == n

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        aug = np.concatenate([a, self.eye(n)], axis=1)
        r, pivots = self.rref(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ValueError("matrix is singular")
        return r[:n, n:].copy()


def _integer_form(a: np.ndarray):
    """``(den, ints)`` with ``a == ints / den`` and ``ints`` Python integers."""
    flat = a.ravel()
    den = 1
    for x in flat:
        d = x.denominator
        if d != 1 and den % d:
            den = lcm(den, d)
    ints = np.empty(a.shape, dtype=object)
    out = ints.ravel()
    for k, x in enumerate(flat):
        out[k] = x.numerator * (den // x.denominator)
    return den, ints


_INT64_SAFE = 1 << 62


def _matmul_rational(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product over Q through integer matrices."""
    da, ia = _integer_form(a)
    db, ib = _integer_form(b)
    ma = max((abs(x) for x in ia.ravel()), default=0)
    mb = max((abs(x) for x in ib.ravel()), default=0)
    if ma * mb * a.shape[1] < _INT64_SAFE:
        prod = (ia.astype(np.int64) @ ib.astype(np.int64)).astype(object)
    else:
        prod = np.dot(ia, ib)
    den = da * db
    res = np.empty(prod.shape, dtype=object)
    rf, pf = res.ravel(), prod.ravel()
    for k in range(pf.size):
        rf[k] = Fraction(int(pf[k]), den)
    return res


SPARSE_DENSITY = 0.3


def _rref_rational(a: np.ndarray):
    rows, cols = a.shape
    if rows and cols and np.count_nonzero(a) <= SPARSE_DENSITY * rows * cols:
        return _rref_rational_sparse(a)
    return _rref_rational_bareiss(a)


def _rref_rational_sparse(a: np.ndarray):
    """Row-by-row elimination on dict rows; wins on the very sparse systems
    produced by presentations and intertwining equations."""
    rows, cols = a.shape
    piv: dict = {}
    for i in range(rows):
        row = {int(j): Fraction(a[i, j]) for j in np.flatnonzero(a[i] != 0)}
        while row:
            c = min(row)
            prow = piv.get(c)
            if prow is None:
                inv = 1 / row[c]
                piv[c] = {j: v * inv for j, v in row.items()}
                break
            fct = row[c]
            for j, v in prow.items():
                nv = row.get(j, 0) - fct * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    order = sorted(piv)
    for c in reversed(order):
        row = piv[c]
        for j in sorted(k for k in row if k != c and k in piv):
            fct = row.get(j)
            if not fct:
                continue
            for k, v in piv[j].items():
                nv = row.get(k, 0) - fct * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    res = np.empty((len(order), cols), dtype=object)
    res[:] = Fraction(0)
    for r, c in enumerate(order):
        for j, v in piv[c].items():
            res[r, j] = v
    return res, order


def _rref_rational_bareiss(a: np.ndarray):
    """Fraction-free (Bareiss) forward elimination, then exact back substitution."""
    rows, cols = a.shape
    m = []
    for i in range(rows):
        row = [Fraction(x) for x in a[i]]
        den = lcm(*(x.denominator for x in row)) if row else 1
        m.append([int(x * den) for x in row])
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, rows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, cols):
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    out = [[Fraction(x) for x in m[i]] for i in range(r)]
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        piv = out[i][c]
        if piv != 1:
            out[i] = [x / piv for x in out[i]]
        for k in range(i):
            f = out[k][c]
            if f != 0:
                out[k] = [x - f * y for x, y in zip(out[k], out[i])]
    res = np.empty((r, cols), dtype=object)
    for i in range(r):
        res[i, :] = out[i]
    return res, pivots


QQ = Field(0)


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


def field_from_tag(tag) -> Field:
    """Parse ``"Q"`` / ``{"Fp": p}`` (the wire format) or an int characteristic."""
    if tag in ("Q", "QQ", 0, None):
        return QQ
    if isinstance(tag, dict):
        return GF(int(tag["Fp"]))
    if isinstance(tag, str) and tag.upper().startswith(("F", "GF")):
        return GF(int(tag.upper().lstrip("GF")))
    return GF(int(tag))


def field_tag(field: Field):
    return {"Fp": field.p} if field.p else "Q"
