"""Finite-dimensional associative algebras given by structure constants.

An :class:`Algebra` with basis ``b_0 .. b_{n-1}`` stores ``table[i, j, k]``,
the coefficient of ``b_k`` in ``b_i * b_j``.  Elements are coordinate row
vectors.  Everything here is exact and immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
import sympy

from .linalg import Field, GF, Subspace


class AlgebraError(ValueError):
    pass


class NotSplitError(AlgebraError):
    pass


class CharacteristicError(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    labels: tuple
    table: np.ndarray
    unit: np.ndarray
    name: str = ""
    points: tuple = ()  # optional (point name, basis label) pairs naming the simples

    def __post_init__(self):
        n = len(self.labels)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        object.__setattr__(self, "table", self.field.array(self.table).reshape(n, n, n))
        object.__setattr__(self, "unit", self.field.array(self.unit).reshape(n))

    def __repr__(self):
        nm = f"{self.name!r}, " if self.name else ""
        return f"Algebra({nm}dim={self.dim}, {self.field!r})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i: int) -> np.ndarray:
        return self.field.unit_vector(self.dim, i)

    def element(self, coeffs) -> np.ndarray:
        if isinstance(coeffs, dict):
            v = self.field.zeros(self.dim)
            for lab, c in coeffs.items():
                v[self.labels.index(lab)] = self.field.scalar(c)
            return v
        return self.field.array(coeffs).reshape(self.dim)

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    # multiplication -------------------------------------------------------
    @cached_property
    def _flat(self) -> np.ndarray:
        n = self.dim
        return self.table.reshape(n, n * n)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        f = self.field
        n = self.dim
        if n == 0:
            return f.zeros(0)
        left = f.matmul(x.reshape(1, n), self._flat).reshape(n, n)
        return f.matmul(y.reshape(1, n), left).reshape(n)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x*y`` acting on row vectors."""
        n = self.dim
        return self.field.matmul(x.reshape(1, n), self._flat).reshape(n, n)

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> y*x`` acting on row vectors."""
        n = self.dim
        t = self.table.transpose(0, 2, 1).reshape(n * n, n)
        return self.field.matmul(t, x.reshape(n, 1)).reshape(n, n)

    def power(self, x: np.ndarray, k: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    @cached_property
    def regular_action(self) -> tuple:
        """Right regular representation: ``rho(b_j)[i, k] = c[i, j, k]``."""
        return tuple(self.table[:, j, :].copy() for j in range(self.dim))

    # axioms ---------------------------------------------------------------
    def associativity_violation(self) -> Optional[tuple]:
        f = self.field
        n = self.dim
        c = self.table
        # (b_i b_j) b_l  and  b_i (b_j b_l)
        lhs = f.matmul(c.reshape(n * n, n), c.reshape(n, n * n)).reshape(n, n, n, n)
        right = f.matmul(c.reshape(n * n, n), c.transpose(1, 0, 2).reshape(n, n * n))
        # right[(j,l), (i,m)] = sum_k c[j,l,k] c[i,k,m]
        rhs = right.reshape(n, n, n, n).transpose(2, 0, 1, 3)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, l, _ = (int(x) for x in bad[0])
            return (i, j, l)
        return None

    def unit_violation(self) -> Optional[int]:
        for i in range(self.dim):
            b = self.basis_vector(i)
            if np.any(self.mul(self.unit, b) != b) or np.any(self.mul(b, self.unit) != b):
                return i
        return None

    def validate(self) -> None:
        bad = self.associativity_violation()
        if bad is not None:
            i, j, l = bad
            raise AlgebraError(
                f"structure constants are not associative at basis triple ({i}, {j}, {l}) = "
                f"({self.labels[i]}, {self.labels[j]}, {self.labels[l]})"
            )
        u = self.unit_violation()
        if u is not None:
            raise AlgebraError(f"unit is not a two-sided identity for basis element {self.labels[u]}")

    # derived data ---------------------------------------------------------
    @cached_property
    def generator_indices(self) -> tuple:
        """A small set of basis indices generating the algebra (with the unit)."""
        f = self.field
        n = self.dim
        chosen: list = []
        span = Subspace.span(f, n, self.unit.reshape(1, -1)) if n else Subspace.zero(f, 0)
        for i in range(n):
            if span.dim == n:
                break
            if span.contains_vector(self.basis_vector(i)):
                continue
            chosen.append(i)
            span = subalgebra_closure(self, span, [self.basis_vector(k) for k in chosen])
        return tuple(chosen)

    @cached_property
    def structure(self) -> "StructureData":
        return structure_analysis(self)

    def opposite(self) -> "Algebra":
        return Algebra(self.field, self.labels, self.table.transpose(1, 0, 2).copy(), self.unit, self.name + "^op", self.points)

    def permuted(self, order: Sequence[int], name: str = "") -> "Algebra":
        """The same algebra with basis re-listed as ``labels[order[0]], ...``."""
        order = list(order)
        t = self.table[np.ix_(order, order, order)]
        return Algebra(self.field, [self.labels[i] for i in order], t, self.unit[order], name or self.name, self.points)

    def same_as(self, other: "Algebra") -> bool:
        return (
            self.field == other.field
            and self.dim == other.dim
            and bool(np.all(self.table == other.table))
            and bool(np.all(self.unit == other.unit))
        )


def subalgebra_closure(A: Algebra, span: Subspace, gens) -> Subspace:
    f = A.field
    while True:
        new = [span.basis]
        for g in gens:
            new.append(f.matmul(span.basis, A.right_matrix(g)))
        grown = Subspace.span(f, A.dim, np.concatenate(new))
        if grown.dim == span.dim:
            return span
        span = grown


# ---------------------------------------------------------------------------
# quivers


@dataclass(frozen=True)
class QuiverPresentation:
    """Vertices, arrows ``(source, target, label)``, relations, path-length bound.

    A relation is a list of ``(path, coeff)`` where ``path`` is a sequence of
    arrow labels read left to right (``a*b`` means "a then b").
    """

    vertices: tuple
    arrows: tuple
    relations: tuple = ()
    bound: int = 1
    field: Field = dc_field(default_factory=lambda: GF(2))


def _paths(Q: QuiverPresentation):
    src = {lab: s for s, t, lab in Q.arrows}
    tgt = {lab: t for s, t, lab in Q.arrows}
    paths = [((v,), v, v) for v in Q.vertices]  # trivial paths carry their vertex
    layer = [((a,), src[a], tgt[a]) for _, _, a in Q.arrows]
    length = 1
    while layer and length <= Q.bound:
        paths.extend(layer)
        nxt = []
        for p, s, t in layer:
            for _, _, a in Q.arrows:
                if src[a] == t:
                    nxt.append((p + (a,), s, tgt[a]))
        layer = nxt
        length += 1
    return paths, src, tgt


def compile_quiver(Q: QuiverPresentation, name: str = "") -> Algebra:
    """Algebra of path classes of ``kQ / (relations + paths longer than bound)``."""
    f = Q.field
    labels = [lab for _, _, lab in Q.arrows]
    if len(set(labels)) != len(labels):
        raise AlgebraError("arrow labels must be unique")
    vset = set(Q.vertices)
    for s, t, lab in Q.arrows:
        if s not in vset or t not in vset:
            raise AlgebraError(f"arrow {lab} uses an unknown vertex")
    paths, src, tgt = _paths(Q)
    nv = len(Q.vertices)
    index = {}
    for i, (p, s, t) in enumerate(paths):
        index[p if i >= nv else ("@", p[0])] = i
    npaths = len(paths)

    def key(i):
        return ("@", paths[i][0][0]) if i < nv else paths[i][0]

    def concat(i, j):
        """Index of path_i * path_j, or None if zero."""
        pi, si, ti = paths[i]
        pj, sj, tj = paths[j]
        if ti != sj:
            return None
        if i < nv:
            return j
        if j < nv:
            return i
        return index.get(pi + pj)

    def path_vector(word):
        for a in word:
            if a not in src:
                raise AlgebraError(f"relation references unknown arrow {a!r}")
        for a, b in zip(word, word[1:]):
            if tgt[a] != src[b]:
                return None, None
        if len(word) == 0:
            raise AlgebraError("relations must be combinations of nontrivial paths")
        return index.get(tuple(word)), (src[word[0]], tgt[word[-1]])

    rel_vectors = []
    for rel in Q.relations:
        vec = f.zeros(npaths)
        ends = None
        for word, coeff in rel:
            if len(word) > Q.bound:
                raise AlgebraError("path-length bound must be at least the longest relation path")
            i, st = path_vector(tuple(word))
            if st is None:
                continue
            if ends is None:
                ends = st
            elif ends != st:
                raise AlgebraError(f"relation {rel!r} is not a combination of parallel paths")
            vec[i] = f.add(vec[i], f.scalar(coeff))
        rel_vectors.append(vec)

    # two-sided ideal u*r*v inside the truncated path algebra
    def mult_path_vec(vec, j, side):
        out = f.zeros(npaths)
        for i in np.flatnonzero(vec != 0):
            k = concat(int(i), j) if side == "r" else concat(j, int(i))
            if k is not None:
                out[k] = f.add(out[k], vec[i])
        return out

    rel_span = Subspace.span(f, npaths, np.array(rel_vectors, dtype=f.dtype).reshape(-1, npaths)) if rel_vectors else Subspace.zero(f, npaths)
    while True:
        more = [rel_span.basis]
        for row in rel_span.basis:
            for j in range(npaths):
                more.append(mult_path_vec(row, j, "r").reshape(1, -1))
                more.append(mult_path_vec(row, j, "l").reshape(1, -1))
        grown = Subspace.span(f, npaths, np.concatenate(more))
        if grown.dim == rel_span.dim:
            break
        rel_span = grown

    # eliminate longest paths first so short path classes survive
    order = sorted(range(npaths), key=lambda i: (-len(paths[i][0]) if i >= nv else 1, i))
    inv_order = np.argsort(order)
    permuted = rel_span.basis[:, order] if rel_span.dim else f.zeros(0, npaths)
    red, piv = f.rref(permuted) if rel_span.dim else (permuted, [])
    eliminated = {order[c] for c in piv}
    survivors = [i for i in range(npaths) if i not in eliminated]
    pos = {i: k for k, i in enumerate(survivors)}
    m = len(survivors)

    def normal_form(i):
        v = f.zeros(m)
        if i in pos:
            v[pos[i]] = f.scalar(1)
            return v
        row = red[piv.index(inv_order[i])]
        for k, s in enumerate(survivors):
            v[k] = f.neg(row[inv_order[s]])
        return v

    nf = {i: normal_form(i) for i in range(npaths)}
    table = f.zeros(m, m, m)
    for a, i in enumerate(survivors):
        for b, j in enumerate(survivors):
            k = concat(i, j)
            if k is not None:
                table[a, b, :] = nf[k]
    unit = f.zeros(m)
    for v in range(nv):
        unit = f.add(unit, nf[v])

    def label(i):
        p = paths[i][0]
        return f"e{p[0]}" if i < nv else "*".join(p)

    A = Algebra(f, [label(i) for i in survivors], table, unit, name)
    return A


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True, eq=False)
class Ideal:
    ambient: Algebra
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ambient is self.ambient and other.space == self.space

    def __hash__(self):
        return hash(self.space)

    def __le__(self, other: "Ideal") -> bool:
        return self.space <= other.space

    def __repr__(self):
        return f"Ideal(dim={self.dim} in {self.ambient!r})"

    def describe(self) -> list:
        """Basis rows rendered as linear combinations of basis labels."""
        return [_render(self.ambient, row) for row in self.space.basis]

    def is_two_sided(self) -> bool:
        A = self.ambient
        f = A.field
        for i in range(A.dim):
            b = A.basis_vector(i)
            if self.space.dim == 0:
                return True
            if not (Subspace.span(f, A.dim, f.matmul(self.space.basis, A.right_matrix(b))) <= self.space):
                return False
            if not (Subspace.span(f, A.dim, f.matmul(self.space.basis, A.left_matrix(b))) <= self.space):
                return False
        return True


def _render(A: Algebra, v) -> str:
    terms = []
    for i in np.flatnonzero(np.asarray(v != 0)):
        c = v[i]
        terms.append(A.labels[i] if c == 1 else f"{c}*{A.labels[i]}")
    return " + ".join(terms) if terms else "0"


def ideal_generated(A: Algebra, gens) -> Ideal:
    f = A.field
    gens = [A.element(g) for g in gens]
    if not gens:
        return Ideal(A, Subspace.zero(f, A.dim))
    span = Subspace.span(f, A.dim, np.array(gens, dtype=f.dtype).reshape(len(gens), A.dim))
    mults = [A.basis_vector(i) for i in A.generator_indices]
    while True:
        if span.dim in (0, A.dim):
            break
        more = [span.basis]
        for g in mults:
            more.append(f.matmul(span.basis, A.right_matrix(g)))
            more.append(f.matmul(span.basis, A.left_matrix(g)))
        grown = Subspace.span(f, A.dim, np.concatenate(more))
        if grown.dim == span.dim:
            break
        span = grown
    return Ideal(A, span)


def zero_ideal(A: Algebra) -> Ideal:
    return Ideal(A, Subspace.zero(A.field, A.dim))


def unit_ideal(A: Algebra) -> Ideal:
    return Ideal(A, Subspace.full(A.field, A.dim))


def ideal_combine(op: str, I: Ideal, J: Ideal) -> Ideal:
    if I.ambient is not J.ambient and not I.ambient.same_as(J.ambient):
        raise AlgebraError("ideals live in different algebras")
    A = I.ambient
    if op == "sum":
        return Ideal(A, I.space + J.space)
    if op == "intersect":
        return Ideal(A, I.space & J.space)
    if op == "product":
        prods = [A.mul(x, y) for x in I.space.basis for y in J.space.basis]
        return ideal_generated(A, prods)
    raise ValueError(f"unknown ideal operation {op!r}")


def ideal_power(I: Ideal, k: int) -> Ideal:
    out = unit_ideal(I.ambient)
    for _ in range(k):
        out = ideal_combine("product", out, I)
    return out


# ---------------------------------------------------------------------------
# quotients, corners, opposites


@dataclass(frozen=True, eq=False)
class Quotient:
    algebra: Algebra
    projection: np.ndarray  # dim A x dim A/I, row convention
    section: np.ndarray  # dim A/I x dim A
    ideal: Ideal


@dataclass(frozen=True, eq=False)
class Corner:
    """``B = eAe`` with its embedding and the bimodule slices ``Ae`` and ``eA``."""

    algebra: Algebra
    idempotent: np.ndarray
    embedding: np.ndarray  # dim B x dim A: B-basis as A-elements
    pivots: tuple
    Ae: Subspace
    eA: Subspace

    def to_corner(self, x: np.ndarray) -> np.ndarray:
        return x[..., list(self.pivots)]


def quotient_algebra(A: Algebra, I: Ideal) -> Quotient:
    f = A.field
    keep = I.space.complement_indices()
    m = len(keep)
    proj = f.zeros(A.dim, m)
    for i in range(A.dim):
        r = I.space.reduce(A.basis_vector(i))
        proj[i, :] = r[keep]
    section = f.zeros(m, A.dim)
    for a, i in enumerate(keep):
        section[a, i] = f.scalar(1)
    n = A.dim
    sub = A.table[np.ix_(keep, keep, list(range(n)))].reshape(m * m, n)
    table = f.matmul(sub, proj).reshape(m, m, m) if m else f.zeros(0, 0, 0)
    unit = f.matmul(A.unit.reshape(1, n), proj).reshape(m)
    Q = Algebra(f, [A.labels[i] for i in keep], table, unit, f"{A.name}/I" if A.name else "")
    return Quotient(Q, proj, section, I)


def is_idempotent(A: Algebra, e: np.ndarray) -> bool:
    return bool(np.all(A.mul(e, e) == e))


def corner_algebra(A: Algebra, e: np.ndarray) -> Corner:
    f = A.field
    e = A.element(e)
    if not is_idempotent(A, e):
        raise AlgebraError("corner requires an idempotent")
    n = A.dim
    L = A.left_matrix(e)
    R = A.right_matrix(e)
    eAe = Subspace.span(f, n, f.matmul(f.matmul(f.eye(n), L), R)) if n else Subspace.zero(f, 0)
    Ae = Subspace.span(f, n, R) if n else Subspace.zero(f, 0)
    eA = Subspace.span(f, n, L) if n else Subspace.zero(f, 0)
    basis = eAe.basis
    m = basis.shape[0]
    table = f.zeros(m, m, m)
    for a in range(m):
        for b in range(m):
            table[a, b, :] = eAe.coordinates(A.mul(basis[a], basis[b]))
    unit = eAe.coordinates(e) if m else f.zeros(0)
    labels = [_render(A, row) for row in basis]
    B = Algebra(f, labels, table, unit, f"{A.name}_corner" if A.name else "")
    return Corner(B, e, basis, eAe.pivots, Ae, eA)


def derived_algebra(op: str, A: Algebra, datum=None):
    if op == "quotient":
        if not isinstance(datum, Ideal) or not datum.is_two_sided():
            raise AlgebraError("quotient datum must be a two-sided ideal")
        return quotient_algebra(A, datum)
    if op == "corner":
        return corner_algebra(A, datum)
    if op == "opposite":
        return A.opposite()
    raise ValueError(f"unknown derived algebra {op!r}")


# ---------------------------------------------------------------------------
# radical, Wedderburn blocks, primitive idempotents


def _trace_functional(A: Algebra) -> np.ndarray:
    """``t[i] = tr(L_{b_i})`` for the left regular representation."""
    f = A.field
    n = A.dim
    return f.array([sum(A.table[i, j, j] for j in range(n)) for i in range(n)])


def _power_trace_lift(L: np.ndarray, p: int, i: int) -> int:
    """``(tr(L~^(p^i)) mod p^(i+1)) / p^i`` for an integer lift ``L~`` of ``L``."""
    mod = p ** (i + 1)
    M = np.asarray(L, dtype=np.int64) % mod
    e = p**i
    R = np.eye(M.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            R = (R @ M) % mod
        M = (M @ M) % mod
        e >>= 1
    t = int(np.trace(R)) % mod
    if t % (p**i):
        raise AssertionError("power trace not divisible; lift functional misused")
    return (t // p**i) % p


def radical(A: Algebra) -> Ideal:
    """Jacobson radical.

    Characteristic 0 (and p > dim A): kernel of the trace form of the left
    regular representation.  Small characteristic: the descending chain of
    ideals cut out by the power-trace functionals ``g_i``, which stops at the
    radical after ``floor(log_p dim A)`` refinements.
    """
    f = A.field
    n = A.dim
    if n == 0:
        return zero_ideal(A)
    t = _trace_functional(A)
    # gram[i, j] = tr(L_{b_i b_j})
    gram = f.matmul(A.table.reshape(n * n, n), t.reshape(n, 1)).reshape(n, n)
    I = Subspace.span(f, n, f.left_kernel(gram))
    p = f.p
    if p == 0 or p > n:
        return Ideal(A, I)
    level = 0
    while p ** (level + 1) <= n:
        level += 1
        if I.dim == 0:
            break
        vals = f.zeros(I.dim, n)
        for k, a in enumerate(I.basis):
            for j in range(n):
                ab = A.mul(a, A.basis_vector(j))
                vals[k, j] = _power_trace_lift(A.left_matrix(ab), p, level)
        ker = f.left_kernel(vals)
        I = Subspace.span(f, n, f.matmul(ker, I.basis)) if ker.shape[0] else Subspace.zero(f, n)
    return Ideal(A, I)


def _poly_roots(coeffs, f: Field):
    """Distinct roots if the polynomial (low-to-high coefficients) splits
    into distinct linear factors over ``f``; ``None`` otherwise."""
    x = sympy.Symbol("x")
    high = [sympy.Rational(str(c)) if not f.p else int(c) for c in reversed(list(coeffs))]
    if f.p:
        poly = sympy.Poly(high, x, modulus=f.p)
    else:
        poly = sympy.Poly(high, x, domain=sympy.QQ)
    _, factors = poly.factor_list()
    roots = []
    for fac, mult in factors:
        if fac.degree() != 1 or mult != 1:
            return None
        a, b = fac.all_coeffs()
        if f.p:
            r = (-int(b) * pow(int(a), -1, f.p)) % f.p
        else:
            from fractions import Fraction

            r = Fraction(str(-sympy.Rational(b) / sympy.Rational(a)))
        roots.append(r)
    return roots


def _min_poly(A: Algebra, x: np.ndarray, e: np.ndarray):
    """Minimal polynomial (monic, low-to-high) of ``x`` in the corner with unit ``e``."""
    f = A.field
    powers = [e]
    while True:
        nxt = A.mul(powers[-1], x)
        basis = np.array(powers, dtype=f.dtype)
        coeffs = f.solve_left(basis, nxt) if _independent(f, basis) else None
        if coeffs is not None:
            c = coeffs.reshape(-1)
            return [f.neg(ci) for ci in c] + [f.scalar(1)]
        powers.append(nxt)
        if len(powers) > A.dim + 1:
            raise AssertionError("minimal polynomial search did not terminate")


def _independent(f: Field, rows: np.ndarray) -> bool:
    return f.rank(rows) == rows.shape[0]


def _eval_poly(A: Algebra, coeffs, x, e):
    f = A.field
    out = A.zero()
    pw = e
    for c in coeffs:
        out = f.add(out, f.scale(c, pw))
        pw = A.mul(pw, x)
    return out


def _poly_divide_linear(coeffs, root, f: Field):
    """Quotient of ``poly / (x - root)`` by synthetic division, low-to-high."""
    high = list(reversed(coeffs))
    out = [high[0]]
    for c in high[1:-1]:
        nxt = c + root * out[-1]
        out.append(nxt % f.p if f.p else nxt)
    return list(reversed(out))


def _poly_value(coeffs, x, f: Field):
    acc = f.scalar(0)
    for c in reversed(coeffs):
        acc = (acc * x + c) % f.p if f.p else acc * x + c
    return acc


def _split_central(Q: Algebra, center: np.ndarray):
    """Primitive idempotents of the (commutative, semisimple) center, or None if non-split."""
    f = Q.field
    idems = [Q.unit]
    for z in center:
        new = []
        for e in idems:
            ze = Q.mul(z, e)
            mp = _min_poly(Q, ze, e)
            roots = _poly_roots(mp, f)
            if roots is None:
                return None
            if len(roots) == 1:
                new.append(e)
                continue
            for j, lam in enumerate(roots):
                acc = e
                for l, mu in enumerate(roots):
                    if l == j:
                        continue
                    factor = f.sub(ze, f.scale(mu, e))
                    acc = Q.mul(acc, factor)
                    acc = f.scale(f.inv(f.sub(f.scalar(lam), f.scalar(mu))), acc)
                new.append(acc)
        idems = new
    return idems


def _corner_basis(Q: Algebra, e: np.ndarray) -> Subspace:
    f = Q.field
    n = Q.dim
    M = f.matmul(Q.left_matrix(e), Q.right_matrix(e))
    return Subspace.span(f, n, M)


def _split_block(Q: Algebra, e: np.ndarray, rng: np.random.Generator, tries: int = 64):
    """Complete orthogonal primitive idempotents summing to ``e`` inside the
    simple algebra ``eQe``; ``None`` if no splitting element was found."""
    f = Q.field
    corner = _corner_basis(Q, e)
    if corner.dim == 1:
        return [e]
    candidates = list(corner.basis)
    for _ in range(tries):
        coeffs = f.random(rng, corner.dim, bound=2)
        candidates.append(f.matmul(coeffs.reshape(1, -1), corner.basis).reshape(-1))
    for x in candidates:
        mp = _min_poly(Q, x, e)
        if len(mp) <= 2:
            continue
        roots = _lin_factor_roots(mp, f)
        for lam in roots:
            q = _poly_divide_linear(mp, lam, f)
            val = _poly_value(q, lam, f)
            if val == 0:
                continue
            idem = f.scale(f.inv(val), _eval_poly(Q, q, x, e))
            if np.all(Q.mul(idem, idem) == idem) and np.any(idem != 0) and np.any(idem != e):
                left = _split_block(Q, idem, rng, tries)
                right = _split_block(Q, f.sub(e, idem), rng, tries)
                if left is None or right is None:
                    return None
                return left + right
    return None


def _lin_factor_roots(coeffs, f: Field):
    x = sympy.Symbol("x")
    high = [sympy.Rational(str(c)) if not f.p else int(c) for c in reversed(list(coeffs))]
    poly = sympy.Poly(high, x, modulus=f.p) if f.p else sympy.Poly(high, x, domain=sympy.QQ)
    out = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            if f.p:
                out.append((-int(b) * pow(int(a), -1, f.p)) % f.p)
            else:
                from fractions import Fraction

                out.append(Fraction(str(-sympy.Rational(b) / sympy.Rational(a))))
    return out


def _center(Q: Algebra) -> np.ndarray:
    f = Q.field
    n = Q.dim
    blocks = []
    for i in range(n):
        b = Q.basis_vector(i)
        blocks.append(f.sub(Q.right_matrix(b), Q.left_matrix(b)))
    return f.left_kernel(np.concatenate(blocks, axis=1))


def lift_idempotents(A: Algebra, J: Ideal, targets, section: np.ndarray):
    """Lift orthogonal idempotents of ``A/J`` (given in quotient coordinates,
    summing to 1) to orthogonal idempotents of ``A`` summing to 1.

    Each lift is refined with ``f -> 3f^2 - 2f^3``, which squares the defect
    ``f^2 - f`` modulo powers of ``J`` in every characteristic.
    """
    f = A.field
    u = A.unit
    lifted = []
    for k, t in enumerate(targets):
        if k == len(targets) - 1:
            lifted.append(u)
            break
        x = f.matmul(t.reshape(1, -1), section).reshape(-1)
        y = A.mul(A.mul(u, x), u)
        for _ in range(4 * A.dim.bit_length() + 4):
            y2 = A.mul(y, y)
            if np.all(y2 == y):
                break
            y3 = A.mul(y2, y)
            y = f.sub(f.scale(3, y2), f.scale(2, y3))
        else:
            raise AssertionError("idempotent lifting failed to converge")
        lifted.append(y)
        u = f.sub(u, y)
    return lifted


@dataclass(frozen=True, eq=False)
class StructureData:
    algebra: Algebra
    radical: Ideal
    quotient: Quotient
    split: bool
    primitive_idempotents: tuple  # lifted to A
    block_of: tuple  # block index of each primitive idempotent
    block_sizes: tuple  # n_i with A/rad block = M_{n_i}(k)
    central_idempotents: tuple  # in A/rad coordinates
    prime_ideals: tuple
    reason: str = ""

    @property
    def simple_count(self) -> int:
        return len(self.prime_ideals)

    @property
    def semisimple_quotient(self) -> Algebra:
        return self.quotient.algebra

    @property
    def simple_idempotents(self) -> tuple:
        """One primitive idempotent per simple (first of each block)."""
        seen = {}
        for e, b in zip(self.primitive_idempotents, self.block_of):
            seen.setdefault(b, e)
        return tuple(seen[b] for b in sorted(seen))

    def require_split(self) -> "StructureData":
        if not self.split:
            raise NotSplitError(f"algebra {self.algebra!r} is not split: {self.reason}")
        return self


def structure_analysis(A: Algebra, seed: int = 0) -> StructureData:
    f = A.field
    J = radical(A)
    quo = quotient_algebra(A, J)
    Q = quo.algebra
    rng = np.random.default_rng(seed)
    center = _center(Q)
    central = _split_central(Q, center) if Q.dim else []
    split = True
    reason = ""
    prim: list = []
    block_of: list = []
    sizes: list = []
    if central is None:
        split = False
        reason = "center of A/rad is not a product of copies of the base field"
        central = []
    else:
        def first_nz(c):
            lifted = f.matmul(c.reshape(1, -1), quo.section).reshape(-1)
            nz = np.flatnonzero(lifted != 0)
            return int(nz[0]) if len(nz) else A.dim

        central = sorted(central, key=first_nz)
        for b, c in enumerate(central):
            block_dim = _corner_basis(Q, c).dim
            parts = _split_block(Q, c, rng)
            if parts is None:
                split = False
                reason = "a simple block of A/rad is not a full matrix algebra over the base field"
                parts = [c]
            n_i = len(parts)
            if n_i * n_i != block_dim:
                split = False
                reason = reason or "block dimension is not the square of its idempotent count"
            prim.extend(parts)
            block_of.extend([b] * n_i)
            sizes.append(n_i)
    lifted = tuple(lift_idempotents(A, J, prim, quo.section)) if prim else ()
    primes = []
    for c in central:
        kill = f.matmul(quo.projection, Q.right_matrix(c))
        primes.append(Ideal(A, Subspace.span(f, A.dim, f.left_kernel(kill))))
    return StructureData(A, J, quo, split, lifted, tuple(block_of), tuple(sizes), tuple(central), tuple(primes), reason)


# ---------------------------------------------------------------------------
# isomorphism by basis matching


def find_basis_matching(A: Algebra, B: Algebra) -> Optional[tuple]:
    """A permutation ``perm`` with ``A.table[i,j,k] == B.table[perm i, perm j, perm k]``."""
    if A.dim != B.dim or A.field != B.field:
        return None
    n = A.dim
    ta, tb = A.table, B.table

    def sig(t, i):
        sq = t[i, i]
        return (int(np.count_nonzero(t[i] != 0)), int(np.count_nonzero(t[:, i] != 0)), int(np.count_nonzero(sq != 0)))

    sa = [sig(ta, i) for i in range(n)]
    sb = [sig(tb, i) for i in range(n)]
    perm = [-1] * n
    used = [False] * n

    def consistent(k):
        idx = range(k + 1)
        for i in idx:
            for j in idx:
                # products among assigned elements must land in the assigned span
                row_a = ta[i, j]
                row_b = tb[perm[i], perm[j]]
                for m in range(n):
                    if m <= k:
                        if row_a[m] != row_b[perm[m]]:
                            return False
                if np.count_nonzero(row_a) != np.count_nonzero(row_b):
                    return False
        return True

    def search(k):
        if k == n:
            return True
        for c in range(n):
            if used[c] or sa[k] != sb[c]:
                continue
            perm[k] = c
            used[c] = True
            if consistent(k) and search(k + 1):
                return True
            used[c] = False
        perm[k] = -1
        return False

    if not search(0):
        return None
    permt = tuple(perm)
    if not np.all(ta == tb[np.ix_(permt, permt, permt)]):
        return None
    if not np.all(A.unit == B.unit[list(permt)]):
        return None
    return permt


# ---------------------------------------------------------------------------
# standard algebras


def upper_triangular(n: int, field: Field, name: str = "") -> Algebra:
    """Upper-triangular ``n x n`` matrices, basis ``e_ij`` (i <= j) row by row."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    idx = {p: k for k, p in enumerate(pairs)}
    m = len(pairs)
    t = field.zeros(m, m, m)
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if j == k:
                t[a, b, idx[(i, l)]] = 1
    unit = field.zeros(m)
    for i in range(n):
        unit[idx[(i, i)]] = 1
    labels = [f"e{i + 1}{j + 1}" for i, j in pairs]
    return Algebra(field, labels, t, unit, name or f"UT{n}")


def full_matrix_algebra(n: int, field: Field, name: str = "") -> Algebra:
    pairs = [(i, j) for i in range(n) for j in range(n)]
    idx = {p: k for k, p in enumerate(pairs)}
    m = len(pairs)
    t = field.zeros(m, m, m)
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if j == k:
                t[a, b, idx[(i, l)]] = 1
    unit = field.zeros(m)
    for i in range(n):
        unit[idx[(i, i)]] = 1
    return Algebra(field, [f"E{i + 1}{j + 1}" for i, j in pairs], t, unit, name or f"M{n}")


def product_of_fields(n: int, field: Field, name: str = "") -> Algebra:
    t = field.zeros(n, n, n)
    for i in range(n):
        t[i, i, i] = 1
    unit = field.array([1] * n)
    return Algebra(field, [f"f{i + 1}" for i in range(n)], t, unit, name)


def truncated_polynomial(k: int, field: Field, var: str = "x", name: str = "") -> Algebra:
    """``field[x]/(x^k)`` with basis ``1, x, ..., x^(k-1)``."""
    t = field.zeros(k, k, k)
    for i in range(k):
        for j in range(k):
            if i + j < k:
                t[i, j, i + j] = 1
    labels = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, k)]
    return Algebra(field, labels, t, field.unit_vector(k, 0), name)


def T2(field: Field = None) -> Algebra:
    """Upper-triangular 2x2 matrices, basis (e11, e12, e22)."""
    A = upper_triangular(2, field or GF(2), "T2")
    return with_points(A, [("q", "e11"), ("p", "e22")])


def KK(field: Field = None) -> Algebra:
    return with_points(product_of_fields(2, field or GF(2), "KK"), [("1", "f1"), ("2", "f2")])


def DUAL(field: Field = None) -> Algebra:
    return with_points(truncated_polynomial(2, field or GF(2), "eps", "DUAL"), [("o", "1")])


def with_points(A: Algebra, points) -> Algebra:
    """Copy of ``A`` whose simples are named: ``(name, label)`` names the
    simple ``S`` with ``S . b_label != 0``."""
    return Algebra(A.field, A.labels, A.table, A.unit, A.name, tuple(points))


def structure_constants_equal_up_to_permutation(A: Algebra, B: Algebra) -> bool:
    return find_basis_matching(A, B) is not None


def all_basis_triples(n: int):
    return itertools.product(range(n), repeat=3)
