"""Connected graded algebras and graded modules, truncated at a degree bound.

Everything is degreewise linear algebra: an algebra stores one basis per
degree ``0..N`` and multiplication tables ``A_i x A_j -> A_{i+j}``; a module
stores components on a window ``[lo, hi]`` (zero below ``lo``, unknown above
``hi``).  Any operation that would need a degree outside the window raises
:class:`InsufficientTruncation`; every answer holds "at the bound".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import Algebra, _render, find_basis_matching, upper_triangular
from .linalg import Field, Subspace
from .modules import is_simple


class GradedError(ValueError):
    pass


class InsufficientTruncation(GradedError):
    pass


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    field: Field
    bound: int
    labels: tuple  # labels[n] = basis labels of A_n
    mul: dict  # (i, j) -> array (d_i, d_j, d_{i+j}) for i + j <= bound
    generators: tuple  # ((name, degree, coords in A_degree), ...)
    name: str = ""

    @property
    def dims(self) -> tuple:
        return tuple(len(l) for l in self.labels)

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.bound:
            raise InsufficientTruncation(f"degree {n} beyond algebra bound {self.bound}")
        return len(self.labels[n])

    def __repr__(self):
        return f"GradedAlgebra({self.name!r}, dims={self.dims})"

    def multiply(self, i: int, a: np.ndarray, j: int, b: np.ndarray) -> np.ndarray:
        if i + j > self.bound:
            raise InsufficientTruncation(f"product lands in degree {i + j} > {self.bound}")
        f = self.field
        t = self.mul[(i, j)]
        di, dj, dk = t.shape
        if di == 0 or dj == 0:
            return f.zeros(dk)
        outer = f.matmul(a.reshape(-1, 1), b.reshape(1, -1)).reshape(1, di * dj)
        return f.matmul(outer, t.reshape(di * dj, dk)).reshape(dk)

    def right_mult(self, i: int, j: int, b: np.ndarray) -> np.ndarray:
        """Matrix of ``A_i -> A_{i+j}``, ``a -> a b``."""
        f = self.field
        t = self.mul[(i, j)]
        di, dj, dk = t.shape
        if dj == 0:
            return f.zeros(di, dk)
        return f.matmul(b.reshape(1, -1), t.transpose(1, 0, 2).reshape(dj, di * dk)).reshape(di, dk)

    def left_mult(self, i: int, j: int, a: np.ndarray) -> np.ndarray:
        """Matrix of ``A_j -> A_{i+j}``, ``b -> a b``."""
        f = self.field
        t = self.mul[(i, j)]
        di, dj, dk = t.shape
        if di == 0:
            return f.zeros(dj, dk)
        return f.matmul(a.reshape(1, -1), t.reshape(di, dj * dk)).reshape(dj, dk)

    def associativity_violation(self):
        f = self.field
        N = self.bound
        for i in range(N + 1):
            for j in range(N + 1 - i):
                for k in range(N + 1 - i - j):
                    for a in range(self.dim(i)):
                        ea = f.unit_vector(self.dim(i), a)
                        for b in range(self.dim(j)):
                            eb = f.unit_vector(self.dim(j), b)
                            ab = self.multiply(i, ea, j, eb)
                            for c in range(self.dim(k)):
                                ec = f.unit_vector(self.dim(k), c)
                                lhs = self.multiply(i + j, ab, k, ec)
                                rhs = self.multiply(i, ea, j + k, self.multiply(j, eb, k, ec))
                                if np.any(lhs != rhs):
                                    return (i, a), (j, b), (k, c)
        return None

    def is_generated_in_degree_one(self) -> bool:
        f = self.field
        ones = [g for g in self.generators if g[1] == 1]
        if not ones and self.bound >= 1 and self.dim(1):
            return False
        span = Subspace.full(f, 1)
        cur = [f.unit_vector(1, 0)]
        for n in range(1, self.bound + 1):
            nxt = [self.multiply(n - 1, v, 1, g[2]) for v in cur for g in ones]
            S = Subspace.span(f, self.dim(n), np.stack(nxt)) if nxt and self.dim(n) else Subspace.zero(f, self.dim(n))
            if S.dim != self.dim(n):
                return False
            cur = list(S.basis)
        return True

    def generator_vector(self, name: str):
        for g in self.generators:
            if g[0] == name:
                return g[1], g[2]
        raise GradedError(f"unknown generator {name!r}")

    def element(self, degree: int, coeffs) -> np.ndarray:
        f = self.field
        if isinstance(coeffs, dict):
            v = f.zeros(self.dim(degree))
            for lab, c in coeffs.items():
                v[self.labels[degree].index(lab)] = f.scalar(c)
            return v
        return f.array(coeffs).reshape(self.dim(degree))


def _parse_word(word, names) -> tuple:
    if isinstance(word, str):
        word = [w for w in word.replace(" ", "").split("*") if w and w != "1"]
    out = []
    for w in word:
        if w not in names:
            raise GradedError(f"unknown generator {w!r} in relation")
        out.append(names.index(w))
    return tuple(out)


def graded_presentation(gens: Sequence, rels: Sequence, bound: int, field: Field, name: str = "") -> GradedAlgebra:
    """Free algebra on ``gens`` (``(name, degree)`` pairs) modulo homogeneous
    ``rels`` (``{word: coeff}`` with words like ``"u*t"``), degreewise up to
    ``bound``.  Normal words are the words that are not leading (largest in
    degree-lex order) in the relation ideal."""
    f = field
    names = [g[0] for g in gens]
    degs = [int(g[1]) for g in gens]
    if any(d < 1 for d in degs):
        raise GradedError("generator degrees must be positive")
    words: list = []
    for n in range(bound + 1):
        ws = []
        for length in range(0, n + 1):
            for w in itertools.product(range(len(gens)), repeat=length):
                if sum(degs[i] for i in w) == n:
                    ws.append(w)
        ws.sort(key=lambda w: (len(w), w), reverse=True)
        words.append(ws)
    index = [{w: k for k, w in enumerate(ws)} for ws in words]
    rel_vecs: dict = {}
    for rel in rels:
        parsed = {_parse_word(w, names): c for w, c in rel.items()}
        ds = {sum(degs[i] for i in w) for w in parsed}
        if len(ds) != 1:
            raise GradedError(f"non-homogeneous relation {rel}")
        d = ds.pop()
        if d > bound:
            continue
        v = f.zeros(len(words[d]))
        for w, c in parsed.items():
            v[index[d][w]] = f.add(v[index[d][w]], f.scalar(c))
        rel_vecs.setdefault(d, []).append(v)
    ideals = []
    for n in range(bound + 1):
        rows = list(rel_vecs.get(n, []))
        for g, dg in enumerate(degs):
            m = n - dg
            if m < 0:
                continue
            for row in ideals[m].basis:
                right = f.zeros(len(words[n]))
                left = f.zeros(len(words[n]))
                for k in np.flatnonzero(np.asarray(row != 0)):
                    w = words[m][k]
                    right[index[n][w + (g,)]] = row[k]
                    left[index[n][(g,) + w]] = row[k]
                rows.extend([right, left])
        ideals.append(Subspace.span(f, len(words[n]), np.stack(rows)) if rows else Subspace.zero(f, len(words[n])))
    normal = [ideals[n].complement_indices() for n in range(bound + 1)]
    # normal form of every word: itself if normal, minus the rest of its RREF row if leading
    forms = []
    for n in range(bound + 1):
        nf = f.zeros(len(words[n]), len(normal[n]))
        for k, c in enumerate(normal[n]):
            nf[c, k] = f.scalar(1)
        for r, c in enumerate(ideals[n].pivots):
            nf[c, :] = f.neg(ideals[n].basis[r, normal[n]])
        forms.append(nf)

    def reduce(n, word):
        return forms[n][index[n][word]]

    labels = tuple(tuple("*".join(names[i] for i in words[n][k]) or "1" for k in normal[n]) for n in range(bound + 1))
    mul = {}
    for i in range(bound + 1):
        for j in range(bound + 1 - i):
            t = f.zeros(len(normal[i]), len(normal[j]), len(normal[i + j]))
            for a, ka in enumerate(normal[i]):
                for b, kb in enumerate(normal[j]):
                    t[a, b, :] = reduce(i + j, words[i][ka] + words[j][kb])
            mul[(i, j)] = t
    gvecs = []
    for g, dg in enumerate(degs):
        if dg <= bound:
            gvecs.append((names[g], dg, reduce(dg, (g,)).copy()))
    return GradedAlgebra(f, bound, labels, mul, tuple(gvecs), name)


def graded_line(bound: int, field: Field) -> GradedAlgebra:
    """``k[x]`` with ``x`` in degree one."""
    return graded_presentation([("x", 1)], [], bound, field, "GL")


def graded_plane(bound: int, field: Field) -> GradedAlgebra:
    """``k[u, t]`` commutative, both in degree one."""
    return graded_presentation([("u", 1), ("t", 1)], [{"u*t": 1, "t*u": -1}], bound, field, "UT")


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True, eq=False)
class GradedModule:
    algebra: GradedAlgebra
    lo: int
    hi: int
    dims: tuple  # dims[k - lo]
    act: dict  # (m, i) -> array (dim A_i, dim M_m, dim M_{m+i}), i >= 1
    name: str = ""

    def dim(self, n: int) -> int:
        if n < self.lo:
            return 0
        if n > self.hi:
            raise InsufficientTruncation(f"degree {n} above the window [{self.lo}, {self.hi}] of {self.name or 'module'}")
        return self.dims[n - self.lo]

    def action(self, m: int, i: int, a: np.ndarray) -> np.ndarray:
        """Matrix of ``M_m -> M_{m+i}``, ``v -> v a`` for ``a`` in ``A_i``."""
        f = self.algebra.field
        if i == 0:
            return f.scale(a[0], f.eye(self.dim(m)))
        src, tgt = self.dim(m), self.dim(m + i)
        if src == 0 or tgt == 0:
            return f.zeros(src, tgt)
        t = self.act[(m, i)]
        return f.matmul(a.reshape(1, -1), t.reshape(t.shape[0], src * tgt)).reshape(src, tgt)

    def __repr__(self):
        return f"GradedModule({self.name!r}, window=[{self.lo}, {self.hi}], dims={self.dims})"


def _zero_act(A, dims, lo, hi):
    f = A.field
    act = {}
    for m in range(lo, hi + 1):
        for i in range(1, min(A.bound, hi - m) + 1):
            act[(m, i)] = f.zeros(A.dim(i), dims[m - lo], dims[m + i - lo])
    return act


def graded_regular(A: GradedAlgebra, hi: Optional[int] = None) -> GradedModule:
    hi = A.bound if hi is None else hi
    if hi > A.bound:
        raise InsufficientTruncation("regular module window exceeds the algebra bound")
    dims = tuple(A.dim(n) for n in range(hi + 1))
    act = {}
    for m in range(hi + 1):
        for i in range(1, hi - m + 1):
            act[(m, i)] = A.mul[(m, i)].transpose(1, 0, 2).copy()
    return GradedModule(A, 0, hi, dims, act, A.name or "A")


def hilbert(M: GradedModule, degrees: Optional[Sequence[int]] = None) -> tuple:
    degrees = range(M.lo, M.hi + 1) if degrees is None else degrees
    return tuple(M.dim(n) for n in degrees)


def truncate(M: GradedModule, n: int) -> GradedModule:
    """``M_{>= n}``."""
    if n <= M.lo:
        return M
    if n > M.hi:
        raise InsufficientTruncation(f"truncation at {n} leaves nothing of the window [{M.lo}, {M.hi}]")
    dims = M.dims[n - M.lo :]
    act = {k: v for k, v in M.act.items() if k[0] >= n}
    return GradedModule(M.algebra, n, M.hi, dims, act, f"{M.name}>={n}")


def shift(M: GradedModule, d: int) -> GradedModule:
    """``M(d)`` with ``M(d)_n = M_{n+d}``."""
    act = {(m - d, i): v for (m, i), v in M.act.items()}
    return GradedModule(M.algebra, M.lo - d, M.hi - d, M.dims, act, f"{M.name}({d})")


def graded_submodule_quotient(M: GradedModule, sub: dict, name: str = ""):
    """Quotient by a degreewise-invariant family ``{n: Subspace of M_n}``;
    returns ``(quotient, projections)``."""
    f = M.algebra.field
    A = M.algebra
    proj, sec, dims = {}, {}, []
    for n in range(M.lo, M.hi + 1):
        U = sub.get(n, Subspace.zero(f, M.dim(n)))
        keep = U.complement_indices()
        P = f.zeros(M.dim(n), len(keep))
        for r in range(M.dim(n)):
            P[r, :] = U.reduce(f.unit_vector(M.dim(n), r))[keep]
        S = f.zeros(len(keep), M.dim(n))
        for k, c in enumerate(keep):
            S[k, c] = f.scalar(1)
        proj[n], sec[n] = P, S
        dims.append(len(keep))
    act = {}
    for (m, i), t in M.act.items():
        act[(m, i)] = np.stack([f.matmul(f.matmul(sec[m], t[a]), proj[m + i]) for a in range(t.shape[0])]) if t.shape[0] else f.zeros(0, dims[m - M.lo], dims[m + i - M.lo])
    return GradedModule(A, M.lo, M.hi, tuple(dims), act, name), proj


def graded_image_module(M: GradedModule, sub: dict, name: str = "") -> GradedModule:
    """The invariant family ``{n: Subspace}`` as a graded module."""
    f = M.algebra.field
    dims = tuple(sub[n].dim for n in range(M.lo, M.hi + 1))
    act = {}
    for (m, i), t in M.act.items():
        U, V = sub[m], sub[m + i]
        mats = []
        for a in range(t.shape[0]):
            if U.dim == 0 or V.dim == 0:
                mats.append(f.zeros(U.dim, V.dim))
            else:
                mats.append(V.coordinates(f.matmul(U.basis, t[a])))
        act[(m, i)] = np.stack(mats) if mats else f.zeros(0, U.dim, V.dim)
    return GradedModule(M.algebra, M.lo, M.hi, dims, act, name)


def graded_hom_basis(M: GradedModule, N: GradedModule, lo: int, hi: int) -> list:
    """Degree-zero maps ``M -> N`` on the degrees ``lo..hi`` commuting with
    every generator action inside that range; each a dict ``{n: matrix}``."""
    A = M.algebra
    f = A.field
    degs = list(range(lo, hi + 1))
    shapes = [(M.dim(n), N.dim(n)) for n in degs]
    offs = np.cumsum([0] + [a * b for a, b in shapes])
    total = int(offs[-1])
    if total == 0:
        return []
    rows = []
    for name, e, g in A.generators:
        for k, n in enumerate(degs):
            if n + e > hi:
                continue
            m_src, n_src = shapes[k]
            m_tgt, n_tgt = shapes[k + e]
            if m_src * n_tgt == 0:
                continue
            rM = M.action(n, e, g)  # M_n -> M_{n+e}
            rN = N.action(n, e, g)  # N_n -> N_{n+e}
            # rM phi_{n+e} - phi_n rN = 0, as a map M_n -> N_{n+e}
            block = f.zeros(m_src * n_tgt, total)
            if m_tgt and n_tgt:
                block[:, offs[k + e] : offs[k + e + 1]] = f.kron(rM, f.eye(n_tgt))
            if n_src:
                block[:, offs[k] : offs[k + 1]] = f.sub(block[:, offs[k] : offs[k + 1]], f.kron(f.eye(m_src), rN.T.copy()))
            rows.append(block)
    ker = f.nullspace(np.concatenate(rows)) if rows else f.eye(total)
    out = []
    for v in ker:
        out.append({n: v[offs[k] : offs[k + 1]].reshape(shapes[k]) for k, n in enumerate(degs)})
    return out


def _all_invertible(f: Field, phi: dict) -> bool:
    return all(m.shape[0] == m.shape[1] and (m.shape[0] == 0 or f.det_nonzero(m)) for m in phi.values())


def find_graded_iso(M: GradedModule, N: GradedModule, lo: int, hi: int, seed: int = 0) -> Optional[dict]:
    f = M.algebra.field
    if any(M.dim(n) != N.dim(n) for n in range(lo, hi + 1)):
        return None
    H = graded_hom_basis(M, N, lo, hi)
    if not H:
        return {n: f.zeros(M.dim(n), N.dim(n)) for n in range(lo, hi + 1)} if all(M.dim(n) == 0 for n in range(lo, hi + 1)) else None

    def combo(c):
        return {n: f.matmul(np.asarray(c).reshape(1, -1) if f.p else f.array(list(c)).reshape(1, -1),
                            np.stack([h[n].reshape(-1) for h in H])).reshape(M.dim(n), N.dim(n)) for n in range(lo, hi + 1)}

    for h in H:
        if _all_invertible(f, h):
            return h
    rng = np.random.default_rng(seed)
    for _ in range(32):
        c = f.random(rng, len(H))
        cand = combo(c)
        if _all_invertible(f, cand):
            return cand
    if f.p and f.p ** len(H) <= 1 << 12:
        for c in itertools.product(range(f.p), repeat=len(H)):
            cand = combo(np.asarray(c, dtype=np.int64))
            if _all_invertible(f, cand):
                return cand
    return None


@dataclass(frozen=True)
class TailsVerdict:
    isomorphic: bool
    from_degree: Optional[int]
    window: tuple

    def __bool__(self):
        return self.isomorphic


def tails_iso_bounded(M: GradedModule, N: GradedModule, n0: int) -> TailsVerdict:
    """``M_{>=n} ~ N_{>=n}`` for some ``n <= n0``, checked on the common window."""
    top = min(M.hi, N.hi)
    start = max(M.lo, N.lo)
    if n0 + 1 > top:
        raise InsufficientTruncation(f"tails test up to degree {n0} needs windows reaching {n0 + 1}; common top is {top}")
    for n in range(min(start, n0), n0 + 1):
        if find_graded_iso(M, N, n, top) is not None:
            return TailsVerdict(True, n, (n, top))
    return TailsVerdict(False, None, (min(start, n0), top))


def graded_module_ops(op: str, M: GradedModule, *args):
    if op == "hilbert":
        return hilbert(M, *args)
    if op == "truncate":
        return truncate(M, *args)
    if op == "shift":
        return shift(M, *args)
    if op == "tails_iso_bounded":
        return tails_iso_bounded(M, *args)
    raise ValueError(f"unknown graded module operation {op!r}")


# ---------------------------------------------------------------------------
# divisors


@dataclass(frozen=True, eq=False)
class DivisorData:
    degree: int
    z: np.ndarray
    central_up_to: int
    regular_up_to: int


@dataclass(frozen=True, eq=False)
class DivisorReport:
    divisor: DivisorData
    kernel_dims: tuple  # degrees lo..hi
    cokernel: GradedModule
    image: GradedModule
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def certify_divisor(A: GradedAlgebra, z: np.ndarray, d: int) -> DivisorData:
    f = A.field
    for name, e, g in A.generators:
        if e + d > A.bound:
            continue
        if np.any(A.multiply(d, z, e, g) != A.multiply(e, g, d, z)):
            raise GradedError(f"z does not commute with generator {name!r}")
    for n in range(A.bound - d + 1):
        if A.dim(n) == 0:
            continue
        if f.rank(A.right_mult(n, d, z)) != A.dim(n) or f.rank(A.left_mult(d, n, z)) != A.dim(n):
            raise GradedError(f"multiplication by z is not injective on degree {n}")
    return DivisorData(d, z, A.bound, A.bound - d)


def central_divisor(A: GradedAlgebra, z: np.ndarray, d: int, M: GradedModule, n0: Optional[int] = None) -> DivisorReport:
    """The degreewise sequence ``0 -> K -> M(-d) --z--> M -> M/Mz -> 0``."""
    f = A.field
    D = certify_divisor(A, z, d)
    kernel, image = [], {}
    for n in range(M.lo, M.hi + 1):
        src = n - d
        if src < M.lo:
            image[n] = Subspace.zero(f, M.dim(n))
            kernel.append(0)
            continue
        zmap = M.action(src, d, z)
        image[n] = Subspace.span(f, M.dim(n), zmap) if M.dim(src) and M.dim(n) else Subspace.zero(f, M.dim(n))
        kernel.append(M.dim(src) - image[n].dim)
    coker, _ = graded_submodule_quotient(M, image, f"{M.name}/z")
    img = graded_image_module(M, image, f"{M.name}z")
    checks = {}
    killed = True
    for n in range(coker.lo, coker.hi - d + 1):
        if coker.dim(n) and coker.dim(n + d) and np.any(coker.action(n, d, z) != 0):
            killed = False
    checks["cokernel is a module over A/(z)"] = killed
    checks["hilbert bookkeeping"] = all(
        coker.dim(n) == M.dim(n) - (M.dim(n - d) if n - d >= M.lo else 0) + kernel[n - M.lo]
        for n in range(M.lo, M.hi + 1)
    )
    if sum(kernel) == 0 and M.hi - M.lo >= d + 1:
        n_test = M.lo + d if n0 is None else n0
        checks["M(-H) ~ M(-d) in tails"] = bool(tails_iso_bounded(img, shift(M, -d), n_test))
    return DivisorReport(D, tuple(kernel), coker, img, checks)


# ---------------------------------------------------------------------------
# Rees algebras and point modules


def filtration_pieces(R: Algebra, gens: Sequence, bound: int) -> list:
    """``R_n`` = span of products of at most ``n`` generators, ``n = 0..bound``."""
    f = R.field
    gvecs = [R.element(g) if not isinstance(g, str) else R.basis_vector(R.labels.index(g)) for g in gens]
    pieces = [Subspace.span(f, R.dim, R.unit.reshape(1, -1))]
    for n in range(1, bound + 1):
        prev = pieces[-1]
        rows = [prev.basis] + [f.matmul(prev.basis, R.right_matrix(g)) for g in gvecs]
        pieces.append(Subspace.span(f, R.dim, np.concatenate(rows)))
    return pieces


def rees(R: Algebra, gens: Sequence, bound: int) -> GradedAlgebra:
    """``R_0 + R_1 t + R_2 t^2 + ...`` truncated at ``bound``."""
    f = R.field
    pieces = filtration_pieces(R, gens, bound)
    if pieces[-1].dim != R.dim:
        raise GradedError(f"filtration is not exhaustive by degree {bound} ({pieces[-1].dim} of {R.dim})")
    labels = []
    for n, P in enumerate(pieces):
        labels.append(tuple(f"({_render(R, row)})t^{n}" for row in P.basis))
    mul = {}
    for i in range(bound + 1):
        for j in range(bound + 1 - i):
            Pi, Pj, Pk = pieces[i], pieces[j], pieces[i + j]
            t = f.zeros(Pi.dim, Pj.dim, Pk.dim)
            for a in range(Pi.dim):
                for b in range(Pj.dim):
                    t[a, b, :] = Pk.coordinates(R.mul(Pi.basis[a], Pj.basis[b]))
            mul[(i, j)] = t
    gvecs = [("t", 1, pieces[1].coordinates(R.unit))]
    for k, g in enumerate(gens):
        vec = R.element(g) if not isinstance(g, str) else R.basis_vector(R.labels.index(g))
        gvecs.append((f"{g if isinstance(g, str) else 'g' + str(k)}t", 1, pieces[1].coordinates(vec)))
    A = GradedAlgebra(f, bound, tuple(labels), mul, tuple(gvecs), f"Rees({R.name})" if R.name else "Rees")
    certify_divisor(A, gvecs[0][2], 1)
    return A


def point_tails(R: Algebra, V, gens: Sequence, bound: int) -> GradedModule:
    """``tilde V`` with ``tilde V_n = V t^n`` and ``(v t^n)(r t^i) = (v r) t^{n+i}``."""
    if not is_simple(V):
        raise GradedError("point_tails needs a simple module")
    A = rees(R, gens, bound)
    f = R.field
    pieces = filtration_pieces(R, gens, bound)
    m = V.dim
    act = {}
    for n in range(bound + 1):
        for i in range(1, bound - n + 1):
            act[(n, i)] = np.stack([V.act(row) for row in pieces[i].basis]) if pieces[i].dim else f.zeros(0, m, m)
    M = GradedModule(A, 0, bound, tuple([m] * (bound + 1)), act, f"~{V.name}" if V.name else "~V")
    if len(set(hilbert(M))) != 1:
        raise AssertionError("point module Hilbert function is not constant")
    return M


def bounded_point_simplicity(M: GradedModule, seed: int = 0, per_degree: int = 8) -> bool:
    """Every sampled nonzero homogeneous element generates a submodule that
    fills the top degree of the window."""
    A = M.algebra
    f = A.field
    rng = np.random.default_rng(seed)
    for n in range(M.lo, M.hi):
        d = M.dim(n)
        if d == 0:
            continue
        vecs = [f.unit_vector(d, k) for k in range(d)] + [f.random(rng, d) for _ in range(per_degree)]
        for v in vecs:
            if not np.any(v != 0):
                continue
            top = M.hi - n
            images = [f.matmul(v.reshape(1, -1), M.action(n, top, row)).reshape(-1) for row in f.eye(A.dim(top))]
            span = Subspace.span(f, M.dim(M.hi), np.stack(images))
            if span.dim != M.dim(M.hi):
                return False
    return True


# ---------------------------------------------------------------------------
# the graded line block Z_D


def _line_projective(GL: GradedAlgebra, start: int, lo: int, hi: int, stop: Optional[int] = None) -> GradedModule:
    """``k[x](-start)`` on degrees ``lo..hi``, cut to zero from degree ``stop`` on."""
    f = GL.field
    stop = hi + 1 if stop is None else stop
    dims = tuple(1 if start <= n < stop else 0 for n in range(lo, hi + 1))
    act = _zero_act(GL, dims, lo, hi)
    for (m, i), t in act.items():
        if t.size:
            t[0, 0, 0] = f.scalar(1)
    return GradedModule(GL, lo, hi, dims, act, f"P{start}")


def graded_line_block(D: Sequence[int], field: Field) -> Algebra:
    """``End`` of the projective generator of graded ``k[x]``-modules supported in ``D``."""
    D = sorted(set(int(d) for d in D))
    if not D:
        raise GradedError("D must be non-empty")
    lo, hi = D[0], D[-1]
    GL = graded_line(max(hi - lo, 1), field)
    f = field
    # the projective cover of the simple in degree i is k[x](-i) cut at the
    # first degree after i outside D, its largest quotient supported in D
    stops = [next(n for n in range(i + 1, hi + 2) if n not in D or n > hi) for i in D]
    projs = [_line_projective(GL, i, lo, hi, stop) for i, stop in zip(D, stops)]
    gens = []  # (i, j, phi) maps P_i -> P_j
    for a, Pa in enumerate(projs):
        for b, Pb in enumerate(projs):
            for h in graded_hom_basis(Pa, Pb, lo, hi):
                gens.append((a, b, h))
    n = len(gens)
    table = f.zeros(n, n, n)
    offsets = [0]
    for P in projs:
        offsets.append(offsets[-1] + sum(P.dims))

    def big(entry):
        a, b, h = entry
        Mx = f.zeros(offsets[-1], offsets[-1])
        ra, rb = offsets[a], offsets[b]
        for k, deg in enumerate(range(lo, hi + 1)):
            da, db = projs[a].dims[k], projs[b].dims[k]
            oa = ra + sum(projs[a].dims[:k])
            ob = rb + sum(projs[b].dims[:k])
            Mx[oa : oa + da, ob : ob + db] = h[deg]
        return Mx

    mats = [big(g) for g in gens]
    span = Subspace.span(f, offsets[-1] ** 2, np.stack([m.reshape(-1) for m in mats]))
    if span.dim != n:
        raise AssertionError("Hom basis of the block is not independent")
    coords = [span.coordinates(m.reshape(-1)) for m in mats]
    change = np.stack(coords)  # rows: basis maps in span coordinates
    inv = f.inverse(change)
    for i in range(n):
        for j in range(n):
            prod = f.matmul(mats[j], mats[i]).reshape(-1)  # apply j first, then i
            table[i, j, :] = f.matmul(span.coordinates(prod).reshape(1, -1), inv).reshape(-1)
    ident = f.eye(offsets[-1]).reshape(-1)
    unit = f.matmul(span.coordinates(ident).reshape(1, -1), inv).reshape(-1)
    labels = [f"x^{D[a] - D[b]}:{D[a]}->{D[b]}" if D[a] != D[b] else f"1_{D[a]}" for a, b, _ in gens]
    return Algebra(f, labels, table, unit, f"Z{tuple(D)}")


def line_block_matches_upper_triangular(D: Sequence[int], field: Field):
    B = graded_line_block(D, field)
    n = len(set(D))
    return find_basis_matching(B, upper_triangular(n, field))


# ---------------------------------------------------------------------------
# graded isomorphism and degree-zero localization


def _words(A: GradedAlgebra, n: int, ones) -> np.ndarray:
    f = A.field
    rows = []
    for w in itertools.product(range(len(ones)), repeat=n):
        v = f.unit_vector(1, 0)
        deg = 0
        for k in w:
            v = A.multiply(deg, v, 1, ones[k])
            deg += 1
        rows.append(v)
    return np.stack(rows) if rows else f.zeros(0, A.dim(n))


def graded_isomorphic(A: GradedAlgebra, B: GradedAlgebra, limit: int = 1 << 12) -> Optional[np.ndarray]:
    """A degree-one matrix ``phi`` extending to a graded algebra isomorphism
    up to the common bound (both generated in degree one), or ``None``."""
    f = A.field
    N = min(A.bound, B.bound)
    if any(A.dim(n) != B.dim(n) for n in range(N + 1)):
        return None
    if not (A.is_generated_in_degree_one() and B.is_generated_in_degree_one()):
        raise GradedError("graded isomorphism search needs algebras generated in degree one")
    d = A.dim(1)
    eA = [f.unit_vector(d, k) for k in range(d)]
    rel_A = [Subspace.span(f, len(eA) ** n, f.left_kernel(_words(A, n, eA))) for n in range(2, N + 1)]

    def works(phi):
        if not f.det_nonzero(phi):
            return False
        imgs = [phi[k] for k in range(d)]
        for n in range(2, N + 1):
            if Subspace.span(f, d**n, f.left_kernel(_words(B, n, imgs))) != rel_A[n - 2]:
                return False
        return True

    cands = [f.eye(d)]
    if f.p and f.p ** (d * d) <= limit:
        cands += [np.asarray(c, dtype=np.int64).reshape(d, d) for c in itertools.product(range(f.p), repeat=d * d)]
    else:
        for perm in itertools.permutations(range(d)):
            P = f.zeros(d, d)
            for r, c in enumerate(perm):
                P[r, c] = f.scalar(1)
            cands.append(P)
    for phi in cands:
        if works(phi):
            return phi
    return None


@dataclass(frozen=True, eq=False)
class DegreeZeroLocalization:
    generators: tuple  # labels "g/z"
    filtration_dims: tuple  # dim of A_{kd} z^{-k}, k = 0..K
    relations: tuple  # each a dict {word: coeff} in the generators, words of length <= K
    algebra: Optional[Algebra]  # present when the filtration has stabilized
    polynomial_in: Optional[str]  # generator name when the result is k[s] at the bound


def degree_zero_localization(A: GradedAlgebra, z: np.ndarray, d: int) -> DegreeZeroLocalization:
    """``A[z^{-1}]_0`` presented by the ``g z^{-1}`` for degree-one generators ``g``."""
    f = A.field
    if d != 1:
        raise GradedError("degree-zero localization is implemented for z of degree one")
    if not A.is_generated_in_degree_one():
        raise GradedError("algebra is not generated in degree one")
    certify_divisor(A, z, d)
    ones = [g for g in A.generators if g[1] == 1]
    names = [f"{g[0]}/z" for g in ones]
    K = A.bound
    dims = tuple(A.dim(k) for k in range(K + 1))

    def zpow(k):
        v = f.unit_vector(1, 0)
        for j in range(k):
            v = A.multiply(j, v, 1, z)
        return v

    # a word of length m in the g/z lands in A_K as g_{i1}...g_{im} z^{K-m}
    words, images = [], []
    for m in range(K + 1):
        for w in itertools.product(range(len(ones)), repeat=m):
            v = f.unit_vector(1, 0)
            for j, k in enumerate(w):
                v = A.multiply(j, v, 1, ones[k][2])
            v = A.multiply(m, v, K - m, zpow(K - m))
            words.append(w)
            images.append(v)
    mat = np.stack(images)
    rels = []
    for row in f.left_kernel(mat):
        rels.append({"*".join(names[k] for k in words[i]) or "1": row[i] for i in np.flatnonzero(np.asarray(row != 0))})
    algebra = None
    if K >= 1 and dims[K] == dims[K - 1]:
        stable = next(k for k in range(K + 1) if all(dims[j] == dims[k] for j in range(k, K + 1)))
        if 2 * stable <= K:
            algebra = _stable_degree_zero(A, z, stable, K, zpow)
    poly = None
    for k, g in enumerate(ones):
        idx = [i for i, w in enumerate(words) if all(x == k for x in w)]
        sub = mat[idx]
        if f.rank(sub) == len(idx) == dims[K]:
            poly = names[k]
            break
    return DegreeZeroLocalization(tuple(names), dims, tuple(rels), algebra, poly)


def _stable_degree_zero(A, z, k, K, zpow) -> Algebra:
    """Structure constants of ``A_k z^{-k}`` once the filtration is stable."""
    f = A.field
    n = A.dim(k)
    # products land in A_{2k} z^{-2k}; pull back along multiplication by z^k
    up = A.right_mult(k, k, zpow(k))
    table = f.zeros(n, n, n)
    for a in range(n):
        for b in range(n):
            prod = A.multiply(k, f.unit_vector(n, a), k, f.unit_vector(n, b))
            table[a, b, :] = f.solve_left(up, prod.reshape(1, -1)).reshape(-1)
    unit = zpow(k)
    return Algebra(f, [f"{l}/z^{k}" for l in A.labels[k]], table, unit, "A[1/z]_0")
