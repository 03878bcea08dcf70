"""Finite-dimensional right modules over an :class:`~ncspaces.algebra.Algebra`.

A module of dimension ``m`` stores one ``m x m`` matrix per algebra basis
element, acting on row vectors: ``v . b_j = v @ action[j]``.  Module maps are
matrices in the same row convention, so ``f`` is ``dim M x dim N``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import Algebra, AlgebraError, Ideal, NotSplitError
from .linalg import Field, Subspace


class ModuleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    action: tuple
    name: str = ""

    def __post_init__(self):
        f = self.algebra.field
        acts = tuple(f.array(a) for a in self.action)
        if len(acts) != self.algebra.dim:
            raise ModuleError(f"need one action matrix per basis element ({self.algebra.dim}), got {len(acts)}")
        object.__setattr__(self, "action", acts)

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        if not self.action:
            return 0
        return self.action[0].shape[0]

    def __repr__(self):
        nm = f"{self.name!r}, " if self.name else ""
        return f"Module({nm}dim={self.dim} over {self.algebra!r})"

    def act(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``v -> v . a`` for an algebra element ``a``."""
        f = self.field
        d = self.dim
        if self.algebra.dim == 0:
            return f.zeros(d, d)
        stack = np.stack(self.action).reshape(self.algebra.dim, d * d)
        return f.matmul(a.reshape(1, -1), stack).reshape(d, d)

    def generator_actions(self):
        return [self.action[i] for i in self.algebra.generator_indices]

    def renamed(self, name: str) -> "Module":
        return Module(self.algebra, self.action, name)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray

    def intertwines(self) -> bool:
        f = self.source.field
        for a, b in zip(self.source.action, self.target.action):
            if np.any(f.matmul(a, self.matrix) != f.matmul(self.matrix, b)):
                return False
        return True

    def image(self) -> Subspace:
        return Subspace.span(self.source.field, self.target.dim, self.matrix)

    def kernel(self) -> Subspace:
        return Subspace.span(self.source.field, self.source.dim, self.source.field.left_kernel(self.matrix))


# ---------------------------------------------------------------------------
# construction


def zero_module(A: Algebra) -> Module:
    f = A.field
    return Module(A, tuple(f.zeros(0, 0) for _ in range(A.dim)), "0")


def regular_module(A: Algebra) -> Module:
    return Module(A, A.regular_action, f"{A.name or 'A'}_A")


def module_from_dict(A: Algebra, action: dict, name: str = "") -> Module:
    """Module from ``{basis label: matrix}``."""
    missing = [lab for lab in A.labels if lab not in action]
    if missing:
        raise ModuleError(f"action missing for basis elements {missing}")
    return Module(A, tuple(A.field.array(action[lab]) for lab in A.labels), name)


def check_module(A: Algebra, M: Module):
    """``(True, None)`` or ``(False, description of the first violated axiom)``."""
    f = A.field
    if M.algebra is not A and not M.algebra.same_as(A):
        return False, "module is over a different algebra"
    d = M.dim
    for i, a in enumerate(M.action):
        if a.shape != (d, d):
            return False, f"action({A.labels[i]}) has shape {a.shape}, expected {(d, d)}"
    if np.any(M.act(A.unit) != f.eye(d)):
        return False, "action(unit) is not the identity"
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = f.matmul(M.action[i], M.action[j])
            rhs = M.act(A.table[i, j])
            if np.any(lhs != rhs):
                return False, (
                    f"action({A.labels[i]}) * action({A.labels[j]}) != action({A.labels[i]}*{A.labels[j]})"
                )
    return True, None


def submodule_generated(M: Module, vectors) -> Subspace:
    f = M.field
    if isinstance(vectors, Subspace):
        span = vectors
    else:
        vecs = f.array(vectors) if not isinstance(vectors, np.ndarray) else vectors
        span = Subspace.span(f, M.dim, vecs.reshape(-1, M.dim)) if vecs.size else Subspace.zero(f, M.dim)
    gens = M.generator_actions()
    while span.dim not in (0, M.dim):
        grown = Subspace.span(f, M.dim, np.concatenate([span.basis] + [f.matmul(span.basis, g) for g in gens]))
        if grown.dim == span.dim:
            break
        span = grown
    return span


def is_submodule(M: Module, U: Subspace) -> bool:
    f = M.field
    if U.dim == 0:
        return True
    return all(Subspace.span(f, M.dim, f.matmul(U.basis, g)) <= U for g in M.generator_actions())


def module_from_subspace(M: Module, U: Subspace, name: str = "") -> Module:
    """The submodule ``U`` as a module in its RREF basis (requires invariance)."""
    f = M.field
    if not is_submodule(M, U):
        raise ModuleError("subspace is not a submodule")
    acts = []
    for a in M.action:
        img = f.matmul(U.basis, a) if U.dim else f.zeros(0, M.dim)
        acts.append(U.coordinates(img) if U.dim else f.zeros(0, 0))
    return Module(M.algebra, tuple(acts), name)


@dataclass(frozen=True, eq=False)
class QuotientData:
    module: Module
    projection: np.ndarray  # dim M x dim Q
    section: np.ndarray  # dim Q x dim M
    kernel: Subspace


def quotient_module(M: Module, U: Subspace, name: str = "") -> QuotientData:
    f = M.field
    if not is_submodule(M, U):
        raise ModuleError("quotient by a non-invariant subspace")
    keep = U.complement_indices()
    q = len(keep)
    proj = f.zeros(M.dim, q)
    for i in range(M.dim):
        proj[i, :] = U.reduce(f.unit_vector(M.dim, i))[keep]
    sec = f.zeros(q, M.dim)
    for k, i in enumerate(keep):
        sec[k, i] = f.scalar(1)
    acts = tuple(f.matmul(f.matmul(sec, a), proj) if q else f.zeros(0, 0) for a in M.action)
    return QuotientData(Module(M.algebra, acts, name), proj, sec, U)


@dataclass(frozen=True, eq=False)
class SumData:
    module: Module
    inclusions: tuple
    projections: tuple


def direct_sum(*modules: Module, name: str = "") -> SumData:
    if not modules:
        raise ModuleError("direct_sum needs at least one module")
    A = modules[0].algebra
    f = A.field
    dims = [M.dim for M in modules]
    total = sum(dims)
    acts = []
    for j in range(A.dim):
        big = f.zeros(total, total)
        off = 0
        for M, d in zip(modules, dims):
            big[off : off + d, off : off + d] = M.action[j]
            off += d
        acts.append(big)
    incs, projs = [], []
    off = 0
    for d in dims:
        inc = f.zeros(d, total)
        for i in range(d):
            inc[i, off + i] = f.scalar(1)
        incs.append(inc)
        projs.append(inc.T.copy())
        off += d
    return SumData(Module(A, tuple(acts), name), tuple(incs), tuple(projs))


def restrict_along_map(M: Module, B: Algebra, phi: np.ndarray, name: str = "") -> Module:
    """Restriction of scalars along an algebra map ``B -> A`` (``phi`` is ``dim B x dim A``)."""
    acts = tuple(M.act(phi[i]) for i in range(B.dim))
    N = Module(B, acts, name)
    ok, msg = check_module(B, N)
    if not ok:
        raise ModuleError(f"restriction along a non-homomorphism: {msg}")
    return N


def inflate(M: Module, A: Algebra, projection: np.ndarray, name: str = "") -> Module:
    """View a module over ``A/I`` as an ``A``-module (``projection`` is ``dim A x dim A/I``)."""
    acts = tuple(M.act(projection[i]) for i in range(A.dim))
    return Module(A, acts, name or M.name)


def opposite_algebra(A: Algebra) -> Algebra:
    cache = _cache(A)
    if "op" not in cache:
        op = A.opposite()
        cache["op"] = op
        _cache(op)["op"] = A
    return cache["op"]


def dual_module(M: Module, over: Optional[Algebra] = None) -> Module:
    """``Hom_k(M, k)`` as a right module over the opposite algebra (or ``over``)."""
    target = over if over is not None else opposite_algebra(M.algebra)
    return Module(target, tuple(a.T.copy() for a in M.action), f"{M.name}*" if M.name else "")


def _cache(A: Algebra) -> dict:
    d = A.__dict__.get("_ncs_cache")
    if d is None:
        d = {}
        object.__setattr__(A, "_ncs_cache", d)
    return d


# ---------------------------------------------------------------------------
# homomorphisms


def hom_basis(M: Module, N: Module) -> np.ndarray:
    """Basis of ``Hom_A(M, N)`` as an array of shape ``(r, dim M, dim N)``."""
    f = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return f.zeros(0, m, n)
    idx = M.algebra.generator_indices
    if not idx:
        ker = f.eye(m * n)
    else:
        eye_m, eye_n = f.eye(m), f.eye(n)
        blocks = [
            f.sub(f.kron(M.action[i], eye_n), f.kron(eye_m, N.action[i].T.copy())) for i in idx
        ]
        ker = f.nullspace(np.concatenate(blocks))
    return ker.reshape(-1, m, n)


def hom_dim(M: Module, N: Module) -> int:
    return hom_basis(M, N).shape[0]


def end_algebra(M: Module) -> Algebra:
    """``End_A(M)`` with product ``a . b = a o b`` (apply ``b`` first)."""
    f = M.field
    H = hom_basis(M, M)
    r = H.shape[0]
    flat = H.reshape(r, -1)
    span = Subspace.span(f, flat.shape[1], flat)
    # express in the RREF basis so coordinates are pivot entries
    basis = span.basis.reshape(r, M.dim, M.dim)
    table = f.zeros(r, r, r)
    for i in range(r):
        for j in range(r):
            prod = f.matmul(basis[j], basis[i]).reshape(-1)
            table[i, j, :] = span.coordinates(prod)
    ident = f.eye(M.dim).reshape(-1)
    unit = span.coordinates(ident)
    return Algebra(f, [f"h{i}" for i in range(r)], table, unit, f"End({M.name})" if M.name else "End")


def find_isomorphism(M: Module, N: Module, seed: int = 0, exhaustive_limit: int = 1 << 12) -> Optional[np.ndarray]:
    """An invertible module map ``M -> N`` or ``None``.

    Over GF(p) the Hom space is searched at random first and then
    exhaustively when it has at most ``exhaustive_limit`` elements.  Over Q
    random small-coefficient combinations are tried (8 attempts).
    """
    f = M.field
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return f.zeros(0, 0)
    H = hom_basis(M, N)
    r = H.shape[0]
    if r == 0:
        return None
    flat = H.reshape(r, -1)
    rng = np.random.default_rng(seed)
    for k in range(r):
        if f.det_nonzero(H[k]):
            return H[k]
    tries = 32 if f.p else 8
    for _ in range(tries):
        c = f.random(rng, r, bound=3)
        cand = f.matmul(c.reshape(1, -1), flat).reshape(M.dim, N.dim)
        if f.det_nonzero(cand):
            return cand
    if f.p and f.p**r <= exhaustive_limit:
        for coeffs in itertools.product(range(f.p), repeat=r):
            c = np.asarray(coeffs, dtype=np.int64)
            cand = f.matmul(c.reshape(1, -1), flat).reshape(M.dim, N.dim)
            if f.det_nonzero(cand):
                return cand
        return None
    for _ in range(256 if f.p else 0):
        c = f.random(rng, r)
        cand = f.matmul(c.reshape(1, -1), flat).reshape(M.dim, N.dim)
        if f.det_nonzero(cand):
            return cand
    return None


def is_isomorphic(M: Module, N: Module) -> bool:
    """Isomorphism test; exact whenever an explicit isomorphism is found or
    the finite Hom space was exhausted, otherwise falls back to comparing
    composition factors and Hom-dimension fingerprints."""
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    A = M.algebra
    if A.structure.split and composition_factors(M) != composition_factors(N):
        return False
    dMN, dNM, dMM, dNN = hom_dim(M, N), hom_dim(N, M), hom_dim(M, M), hom_dim(N, N)
    if not (dMN == dNM == dMM == dNN):
        return False
    if find_isomorphism(M, N) is not None:
        return True
    f = M.field
    if f.p and f.p**dMN <= (1 << 12):
        return False
    return _fingerprint(M) == _fingerprint(N)


def _fingerprint(M: Module):
    A = M.algebra
    fp = [M.dim, hom_dim(M, M)]
    for i in range(A.structure.simple_count):
        fp.append(hom_dim(indecomposable_projective(A, i), M))
        fp.append(hom_dim(M, simple_module(A, i)))
        fp.append(hom_dim(simple_module(A, i), M))
    return tuple(fp)


@dataclass(frozen=True, eq=False)
class HomResult:
    basis: np.ndarray
    end: Optional[Algebra]
    iso: Optional[np.ndarray]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def hom_and_end(M: Module, N: Module) -> HomResult:
    if M.algebra is not N.algebra and not M.algebra.same_as(N.algebra):
        raise ModuleError("modules over different algebras")
    H = hom_basis(M, N)
    end = end_algebra(M) if M is N else None
    iso = find_isomorphism(M, N)
    return HomResult(H, end, iso)


# ---------------------------------------------------------------------------
# simples, projectives, layers


def _split_structure(A: Algebra):
    S = A.structure
    if not S.split:
        raise NotSplitError(f"{A!r} is not split: {S.reason}")
    return S


def indecomposable_projective(A: Algebra, i: int) -> Module:
    """``e_i A`` for the chosen primitive idempotent of simple ``i``."""
    cache = _cache(A)
    key = ("proj", i)
    if key not in cache:
        S = _split_structure(A)
        e = S.simple_idempotents[i]
        U = Subspace.span(A.field, A.dim, A.left_matrix(e))
        cache[key] = module_from_subspace(regular_module(A), U, f"P{i}")
        cache[("proj_basis", i)] = U
    return cache[key]


def projective_basis(A: Algebra, i: int) -> Subspace:
    indecomposable_projective(A, i)
    return _cache(A)[("proj_basis", i)]


def simple_module(A: Algebra, i: int) -> Module:
    cache = _cache(A)
    key = ("simple", i)
    if key not in cache:
        P = indecomposable_projective(A, i)
        cache[key] = quotient_module(P, radical_submodule(P), f"S{i}").module
    return cache[key]


@dataclass(frozen=True)
class SimpleEntry:
    module: Module
    idempotent_index: int
    end_dim: int


def simples_and_factors(A: Algebra) -> tuple:
    """The SimpleTable: one entry per simple module, in block order."""
    S = _split_structure(A)
    out = []
    for i in range(S.simple_count):
        Si = simple_module(A, i)
        out.append(SimpleEntry(Si, list(S.block_of).index(i), hom_dim(Si, Si)))
    return tuple(out)


def radical_submodule(M: Module) -> Subspace:
    """``M . rad(A)``."""
    f = M.field
    J = M.algebra.structure.radical.space
    if J.dim == 0 or M.dim == 0:
        return Subspace.zero(f, M.dim)
    rows = [f.matmul(f.eye(M.dim), M.act(j)) for j in J.basis]
    return Subspace.span(f, M.dim, np.concatenate(rows))


def socle(M: Module) -> Subspace:
    """``{m : m . rad(A) = 0}``."""
    f = M.field
    J = M.algebra.structure.radical.space
    if M.dim == 0:
        return Subspace.zero(f, 0)
    if J.dim == 0:
        return Subspace.full(f, M.dim)
    big = np.concatenate([M.act(j) for j in J.basis], axis=1)
    return Subspace.span(f, M.dim, f.left_kernel(big))


def _idempotent_multiplicities(M: Module, U: Subspace) -> Counter:
    A = M.algebra
    S = _split_structure(A)
    f = M.field
    out = Counter()
    if U.dim == 0:
        return out
    for i, e in enumerate(S.simple_idempotents):
        k = f.rank(f.matmul(U.basis, M.act(e)))
        if k:
            out[i] += k
    return out


def composition_factors(M: Module) -> Counter:
    """Multiset of simple indices, peeling socle layers from the bottom."""
    _split_structure(M.algebra)
    total = Counter()
    cur = M
    while cur.dim:
        soc = socle(cur)
        total += _idempotent_multiplicities(cur, soc)
        cur = quotient_module(cur, soc).module
    return total


def factor_multiplicities(M: Module) -> Counter:
    """Same multiset read off from ``dim M e_i`` directly."""
    if M.dim == 0:
        return Counter()
    return _idempotent_multiplicities(M, Subspace.full(M.field, M.dim))


def simple_index(M: Module) -> int:
    cf = composition_factors(M)
    if sum(cf.values()) != 1:
        raise ModuleError("module is not simple")
    return next(iter(cf))


def is_simple(M: Module) -> bool:
    return M.dim > 0 and sum(composition_factors(M).values()) == 1


def top(M: Module) -> QuotientData:
    return quotient_module(M, radical_submodule(M))


# ---------------------------------------------------------------------------
# annihilators


def annihilator(M: Module) -> Ideal:
    A = M.algebra
    f = A.field
    if M.dim == 0:
        return Ideal(A, Subspace.full(f, A.dim))
    rows = np.stack([a.reshape(-1) for a in M.action])
    return Ideal(A, Subspace.span(f, A.dim, f.left_kernel(rows)))


def element_annihilator(M: Module, v: np.ndarray) -> Subspace:
    """The right ideal ``{a : v . a = 0}``."""
    A = M.algebra
    f = A.field
    rows = np.stack([f.matmul(v.reshape(1, -1), a).reshape(-1) for a in M.action])
    return Subspace.span(f, A.dim, f.left_kernel(rows))


# ---------------------------------------------------------------------------
# resolutions and Ext


@dataclass(frozen=True, eq=False)
class Cover:
    module: Module
    map: np.ndarray  # P -> M
    summands: tuple  # simple index per summand


def projective_cover(M: Module) -> Cover:
    A = M.algebra
    f = A.field
    S = _split_structure(A)
    MJ = radical_submodule(M)
    summands, blocks, images = [], [], []
    for i, e in enumerate(S.simple_idempotents):
        Ee = M.act(e)
        Me = Subspace.span(f, M.dim, Ee) if M.dim else Subspace.zero(f, 0)
        MJe = Subspace.span(f, M.dim, f.matmul(MJ.basis, Ee)) if MJ.dim else Subspace.zero(f, M.dim)
        cur = MJe
        for v in Me.basis:
            if cur.contains_vector(v):
                continue
            cur = cur + Subspace.span(f, M.dim, v.reshape(1, -1))
            P = indecomposable_projective(A, i)
            basis = projective_basis(A, i).basis
            img = np.stack([f.matmul(v.reshape(1, -1), M.act(x)).reshape(-1) for x in basis])
            summands.append(i)
            blocks.append(P)
            images.append(img)
    if not blocks:
        return Cover(zero_module(A), f.zeros(0, M.dim), ())
    total = direct_sum(*blocks).module
    pi = np.concatenate(images, axis=0)
    return Cover(total, pi, tuple(summands))


@dataclass(frozen=True, eq=False)
class Resolution:
    """``P_k`` with ``maps[0] : P_0 -> M`` and ``maps[k] : P_k -> P_{k-1}``."""

    target: Module
    terms: tuple
    maps: tuple
    summands: tuple

    @property
    def length(self) -> int:
        return len(self.terms)


def projective_resolution(M: Module, length: int) -> Resolution:
    if length < 1:
        raise ModuleError("resolution length must be positive")
    f = M.field
    terms, maps, summ = [], [], []
    cur, inc = M, None
    for _ in range(length):
        cov = projective_cover(cur)
        d = cov.map if inc is None else f.matmul(cov.map, inc)
        terms.append(cov.module)
        maps.append(d)
        summ.append(cov.summands)
        K = ModuleMap(cov.module, cur, cov.map).kernel()
        if K.dim == 0:
            break
        cur = module_from_subspace(cov.module, K)
        inc = K.basis
    res = Resolution(M, tuple(terms), tuple(maps), tuple(summ))
    _verify_exact(res)
    return res


def _verify_exact(res: Resolution) -> None:
    f = res.target.field
    m0 = res.maps[0]
    if Subspace.span(f, res.target.dim, m0) != Subspace.full(f, res.target.dim) and res.target.dim:
        raise AssertionError("resolution is not surjective onto the module")
    for k in range(1, len(res.maps)):
        img = Subspace.span(f, res.terms[k - 1].dim, res.maps[k]) if res.terms[k].dim else Subspace.zero(f, res.terms[k - 1].dim)
        ker = Subspace.span(f, res.terms[k - 1].dim, f.left_kernel(res.maps[k - 1]))
        if img != ker:
            raise AssertionError(f"resolution not exact at term {k - 1}")


def ext_dim(M: Module, N: Module, j: int) -> int:
    if j < 0:
        raise ModuleError("Ext degree must be non-negative")
    if M.dim == 0 or N.dim == 0:
        return 0
    f = M.field
    res = projective_resolution(M, j + 2)
    terms, maps = res.terms, res.maps

    def term(k):
        return terms[k] if k < len(terms) else None

    def hom(k):
        P = term(k)
        return hom_basis(P, N) if P is not None else f.zeros(0, 0, N.dim)

    def delta_rank(k):
        # Hom(P_k, N) -> Hom(P_{k+1}, N),  F -> d_{k+1} F
        H = hom(k)
        if H.shape[0] == 0 or k + 1 >= len(terms):
            return 0
        d = maps[k + 1]
        imgs = np.stack([f.matmul(d, F).reshape(-1) for F in H])
        return f.rank(imgs)

    Hj = hom(j)
    kernel_dim = Hj.shape[0] - delta_rank(j)
    image_dim = delta_rank(j - 1) if j >= 1 else 0
    return kernel_dim - image_dim


@dataclass(frozen=True, eq=False)
class Envelope:
    module: Module
    map: np.ndarray  # M -> E (injective)


def injective_envelope(M: Module) -> Envelope:
    A = M.algebra
    f = A.field
    if M.dim == 0:
        return Envelope(zero_module(A), f.zeros(0, 0))
    op = opposite_algebra(A)
    cov = projective_cover(dual_module(M, op))
    E = dual_module(cov.module, A)
    iota = cov.map.T.copy()
    return Envelope(E, iota)


@dataclass(frozen=True, eq=False)
class Copresentation:
    """``0 -> M -> I_0 -> I_1 -> ...`` with ``maps[0] : M -> I_0``."""

    source: Module
    terms: tuple
    maps: tuple


def injective_copresentation(M: Module, length: int) -> Copresentation:
    if length < 1:
        raise ModuleError("copresentation length must be positive")
    f = M.field
    terms, maps = [], []
    cur, proj = M, None
    for _ in range(length):
        env = injective_envelope(cur)
        d = env.map if proj is None else f.matmul(proj, env.map)
        terms.append(env.module)
        maps.append(d)
        img = Subspace.span(f, env.module.dim, env.map) if cur.dim else Subspace.zero(f, env.module.dim)
        if img.dim == env.module.dim:
            break
        q = quotient_module(env.module, img)
        cur, proj = q.module, q.projection
    cop = Copresentation(M, tuple(terms), tuple(maps))
    _verify_coexact(cop)
    return cop


def _verify_coexact(cop: Copresentation) -> None:
    f = cop.source.field
    if cop.source.dim and f.rank(cop.maps[0]) != cop.source.dim:
        raise AssertionError("copresentation does not start with a monomorphism")
    for k in range(1, len(cop.maps)):
        img = Subspace.span(f, cop.terms[k - 1].dim, cop.maps[k - 1]) if cop.maps[k - 1].size else Subspace.zero(f, cop.terms[k - 1].dim)
        ker = Subspace.span(f, cop.terms[k - 1].dim, f.left_kernel(cop.maps[k]))
        if img != ker:
            raise AssertionError(f"copresentation not exact at term {k - 1}")


def resolutions(M: Module, direction: str, length: int):
    if direction == "projective":
        return projective_resolution(M, length)
    if direction == "injective":
        return injective_copresentation(M, length)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# the point functors  Sum_S  and  - (x) o_p


def socle_S(S: Module, M: Module) -> Subspace:
    """Sum of the images of all maps ``S -> M``."""
    f = M.field
    H = hom_basis(S, M)
    if H.shape[0] == 0:
        return Subspace.zero(f, M.dim)
    return Subspace.span(f, M.dim, np.concatenate(list(H)))


def top_kernel_S(S: Module, M: Module) -> Subspace:
    """Intersection of the kernels of all maps ``M -> S``."""
    f = M.field
    H = hom_basis(M, S)
    if H.shape[0] == 0:
        return Subspace.full(f, M.dim) if M.dim else Subspace.zero(f, 0)
    return Subspace.span(f, M.dim, f.left_kernel(np.concatenate(list(H), axis=1)))


def top_S(S: Module, M: Module) -> QuotientData:
    return quotient_module(M, top_kernel_S(S, M))


def point_functors(S: Module, M: Module):
    if not is_simple(S):
        raise ModuleError("point functors need a simple module")
    return socle_S(S, M), top_S(S, M)


def derived_socle_dim(S: Module, N: Module, j: int) -> int:
    """``dim R^j(Sum_S)(N)`` from an injective copresentation (j = 0, 1)."""
    f = N.field
    if j == 0:
        return socle_S(S, N).dim
    if j != 1:
        raise ModuleError("only j <= 1 is implemented")
    if N.dim == 0:
        return 0
    env = injective_envelope(N)
    I0 = env.module
    img = Subspace.span(f, I0.dim, env.map)
    q = quotient_module(I0, img)
    C = q.module
    socC = socle_S(S, C)
    socI = socle_S(S, I0)
    mapped = Subspace.span(f, C.dim, f.matmul(socI.basis, q.projection)) if socI.dim else Subspace.zero(f, C.dim)
    return socC.dim - mapped.dim


def derived_top_dim(S: Module, M: Module, j: int) -> int:
    """``dim L_j(- (x) o_p)(M)`` from a projective resolution (j = 0, 1)."""
    f = M.field
    if j == 0:
        return top_S(S, M).module.dim
    if j != 1:
        raise ModuleError("only j <= 1 is implemented")
    if M.dim == 0:
        return 0
    res = projective_resolution(M, 3)
    if len(res.terms) < 2:
        return 0
    tops = [top_S(S, P) for P in res.terms]

    def induced(k):
        # top(d_k): top(P_k) -> top(P_{k-1})
        src, tgt = tops[k], tops[k - 1]
        return f.matmul(f.matmul(src.section, res.maps[k]), tgt.projection)

    t1 = tops[1].module.dim
    rank1 = f.rank(induced(1)) if t1 and tops[0].module.dim else 0
    rank2 = 0
    if len(res.terms) > 2 and tops[2].module.dim and t1:
        rank2 = f.rank(induced(2))
    return t1 - rank1 - rank2


# ---------------------------------------------------------------------------
# tiny simples, primality, bounded subquotient search


@dataclass(frozen=True)
class TinyCertificate:
    tiny: bool
    hom_dims: tuple
    end_dim: int


def is_tiny(S: Module) -> TinyCertificate:
    if not is_simple(S):
        raise ModuleError("is_tiny needs a simple module")
    A = S.algebra
    n = A.structure.simple_count
    dims = tuple(hom_dim(indecomposable_projective(A, i), S) for i in range(n))
    return TinyCertificate(True, dims, hom_dim(S, S))


def _nonzero_vectors_up_to_scalar(f: Field, n: int, limit: int = 1 << 16):
    if not f.p:
        raise ModuleError("enumeration requires a finite field; refusing over Q")
    if f.p**n > limit:
        raise ModuleError(f"enumeration of {f.p}^{n} vectors exceeds limit {limit}")
    for lead in range(n):
        for tail in itertools.product(range(f.p), repeat=n - lead - 1):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            v[lead + 1 :] = tail
            yield v


def is_prime_module(M: Module) -> bool:
    """All nonzero submodules share one support (checked on cyclic submodules)."""
    f = M.field
    if not f.p:
        raise ModuleError("is_prime enumerates vectors and is refused over Q")
    if M.dim == 0:
        return False
    supports = set()
    for v in _nonzero_vectors_up_to_scalar(f, M.dim):
        U = submodule_generated(M, v.reshape(1, -1))
        supports.add(annihilator(module_from_subspace(M, U)).space)
        if len(supports) > 1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class SubquotientWitness:
    found: bool
    copies: int
    bound: int
    maps: tuple
    exact_member: bool


def is_subquotient(M: Module, G: Module, bound: Optional[int] = None) -> SubquotientWitness:
    """Search ``M ~ U/V`` with ``V <= U <= G^n``, ``n <= bound``.

    ``M`` is a quotient of a submodule of ``G^n`` exactly when some ``n`` maps
    ``phi_l`` from the projective cover ``F -> M`` into ``G`` have joint
    kernel inside ``ker(F -> M)``.  The search is greedy over the (finite)
    Hom space; ``exact_member`` reports the unbounded answer.
    """
    f = M.field
    if not f.p:
        raise ModuleError("subquotient search enumerates Hom spaces and is refused over Q")
    bound = M.dim if bound is None else bound
    if M.dim == 0:
        return SubquotientWitness(True, 0, bound, (), True)
    cov = projective_cover(M)
    F = cov.module
    K = ModuleMap(F, M, cov.map).kernel()
    H = hom_basis(F, G)
    r = H.shape[0]
    if r == 0:
        return SubquotientWitness(False, 0, bound, (), False)
    joint = Subspace.span(f, F.dim, f.left_kernel(np.concatenate(list(H), axis=1)))
    exact = joint <= K
    if not exact:
        return SubquotientWitness(False, 0, bound, (), False)
    flat = H.reshape(r, -1)
    if f.p**r <= (1 << 10):
        cands = [
            f.matmul(np.asarray(c, dtype=np.int64).reshape(1, -1), flat).reshape(F.dim, G.dim)
            for c in itertools.product(range(f.p), repeat=r)
            if any(c)
        ]
    else:
        rng = np.random.default_rng(0)
        cands = list(H) + [f.matmul(f.random(rng, (1, r)), flat).reshape(F.dim, G.dim) for _ in range(256)]
    kers = [Subspace.span(f, F.dim, f.left_kernel(c)) for c in cands]
    cur = Subspace.full(f, F.dim)
    chosen = []
    for _ in range(bound):
        if cur <= K:
            break
        best, best_dim = None, None
        for k, ker in enumerate(kers):
            d = ((cur & ker) + K).dim
            if best_dim is None or d < best_dim:
                best, best_dim = k, d
        chosen.append(cands[best])
        cur = cur & kers[best]
    found = cur <= K
    return SubquotientWitness(found, len(chosen), bound, tuple(chosen), exact)


def subquotient_and_prime(M: Module, G: Module, bound: Optional[int] = None):
    w = is_subquotient(M, G, bound)
    return w.found, is_prime_module(M), w


# ---------------------------------------------------------------------------
# enumeration of small modules over GF(p)


def subspaces_of_dim(f: Field, n: int, k: int):
    """All ``k``-dimensional subspaces of ``f^n`` as RREF bases."""
    if k == 0:
        yield f.zeros(0, n)
        return
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in itertools.product(range(f.p), repeat=len(free)):
            B = np.zeros((k, n), dtype=np.int64)
            for r, c in enumerate(pivots):
                B[r, c] = 1
            for (r, c), v in zip(free, vals):
                B[r, c] = v
            yield B


def enumerate_modules(A: Algebra, max_dim: int, include_zero: bool = False, limit: int = 200000) -> list:
    """All modules of dimension ``<= max_dim`` up to isomorphism (GF(p) only).

    Every module is ``P / K`` for its projective cover ``P`` and some
    submodule ``K`` inside ``rad P``; both are enumerated.
    """
    f = A.field
    if not f.p:
        raise ModuleError("module enumeration requires a finite field")
    S = _split_structure(A)
    n = S.simple_count
    sdims = [simple_module(A, i).dim for i in range(n)]
    found: dict = {}
    out = [zero_module(A)] if include_zero else []
    budget = [limit]

    def add(M):
        key = (M.dim, tuple(sorted(composition_factors(M).items())), hom_dim(M, M))
        bucket = found.setdefault(key, [])
        for N in bucket:
            if is_isomorphic(M, N):
                return
        bucket.append(M)
        out.append(M)

    ranges = [range(0, max_dim // max(d, 1) + 1) for d in sdims]
    for counts in itertools.product(*ranges):
        if not any(counts) or sum(c * d for c, d in zip(counts, sdims)) > max_dim:
            continue
        blocks = [indecomposable_projective(A, i) for i, c in enumerate(counts) for _ in range(c)]
        P = direct_sum(*blocks).module
        radP = radical_submodule(P)
        for target in range(sum(c * d for c, d in zip(counts, sdims)), max_dim + 1):
            k = P.dim - target
            if k < 0 or k > radP.dim:
                continue
            for coords in subspaces_of_dim(f, radP.dim, k):
                budget[0] -= 1
                if budget[0] < 0:
                    raise ModuleError("module enumeration exceeded its limit")
                K = Subspace.span(f, P.dim, f.matmul(coords, radP.basis)) if k else Subspace.zero(f, P.dim)
                if K.dim != k or not is_submodule(P, K):
                    continue
                Mq = quotient_module(P, K).module
                # top of the quotient must be exactly the chosen top (K inside rad P guarantees it)
                add(Mq)
    return out


def all_simples(A: Algebra) -> list:
    return [simple_module(A, i) for i in range(A.structure.require_split().simple_count)]
