"""Open complements realized by a corner algebra ``B = eAe``.

Removing a Serre class ``W`` leaves the quotient category, equivalent to
``Mod B`` for ``e`` the sum of primitive idempotents of the simples outside
``W``.  With ``Ae`` a left ``A`` / right ``B`` bimodule and ``eA`` the other way
round:

* ``restrict``  ``j^* M = M e``
* ``extend``    ``j_* N = Hom_B(Ae, N)`` with ``(f . a)(x) = f(a x)``
* ``extend_shriek`` ``j_! N = N (x)_B eA``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import Algebra, AlgebraError, Corner, corner_algebra, ideal_generated, is_idempotent, quotient_algebra
from .linalg import Subspace
from .modules import (
    Module,
    ModuleError,
    composition_factors,
    direct_sum,
    enumerate_modules,
    ext_dim,
    find_isomorphism,
    hom_basis,
    hom_dim,
    indecomposable_projective,
    inflate,
    injective_copresentation,
    injective_envelope,
    is_isomorphic,
    module_from_subspace,
    quotient_module,
    regular_module,
    simple_module,
    socle_S,
    zero_module,
)
from .subspaces import (
    ClosedSubspace,
    SerreClass,
    WeaklyClosedGen,
    closed_combine,
    serre_and_sat,
    weakly_closed_gen,
    zero_locus,
)


@dataclass(frozen=True, eq=False)
class OpenSubspace:
    ambient: Algebra
    torsion_class: SerreClass
    e: np.ndarray
    corner: Corner

    @property
    def B(self) -> Algebra:
        return self.corner.algebra

    @property
    def is_empty(self) -> bool:
        return self.B.dim == 0

    @property
    def slice_Ae(self) -> Subspace:
        return self.corner.Ae

    @property
    def slice_eA(self) -> Subspace:
        return self.corner.eA

    def __repr__(self):
        return f"OpenSubspace(removing {sorted(self.torsion_class.simples)}, corner dim {self.B.dim})"


def _as_class(A: Algebra, W) -> SerreClass:
    if isinstance(W, SerreClass):
        return W
    if isinstance(W, ClosedSubspace):
        return serre_and_sat(W)
    raise TypeError(f"expected a closed subspace or Serre class, got {type(W).__name__}")


def open_complement(A: Algebra, W) -> OpenSubspace:
    S = A.structure.require_split()
    cls = _as_class(A, W)
    f = A.field
    e = A.zero()
    for i in range(S.simple_count):
        if i not in cls.simples:
            e = f.add(e, S.simple_idempotents[i])
    if not is_idempotent(A, e):
        raise AssertionError("chosen primitive idempotents are not orthogonal")
    for i in range(S.simple_count):
        kills = not np.any(simple_module(A, i).act(e) != 0)
        if kills != (i in cls.simples):
            raise AssertionError(f"idempotent does not separate simple {i}")
    return OpenSubspace(A, cls, e, corner_algebra(A, e))


# ---------------------------------------------------------------------------
# the three functors


def _image_basis(M: Module, e: np.ndarray) -> Subspace:
    f = M.field
    if M.dim == 0:
        return Subspace.zero(f, 0)
    return Subspace.span(f, M.dim, M.act(e))


def restrict(U: OpenSubspace, M: Module) -> Module:
    """``j^* M = M e`` as a right ``B``-module."""
    f = M.field
    Me = _image_basis(M, U.e)
    acts = []
    for b in U.corner.embedding:
        if Me.dim == 0:
            acts.append(f.zeros(0, 0))
        else:
            acts.append(Me.coordinates(f.matmul(Me.basis, M.act(b))))
    return Module(U.B, tuple(acts), f"j*{M.name}" if M.name else "")


@dataclass(frozen=True, eq=False)
class Extension:
    module: Module
    basis: np.ndarray  # (h, dim Ae, dim N): the B-linear maps Ae -> N


def _slice_actions(U: OpenSubspace):
    """Right ``B`` action and left ``A`` action on ``Ae`` in its basis."""
    A = U.ambient
    f = A.field
    Ae = U.slice_Ae
    right_B = [Ae.coordinates(f.matmul(Ae.basis, A.right_matrix(b))) for b in U.corner.embedding]
    left_A = [Ae.coordinates(f.matmul(Ae.basis, A.left_matrix(A.basis_vector(i)))) for i in range(A.dim)]
    return right_B, left_A


def extend_data(U: OpenSubspace, N: Module) -> Extension:
    A = U.ambient
    f = A.field
    if U.is_empty:
        raise ModuleError("extension from the empty open subspace")
    r, n = U.slice_Ae.dim, N.dim
    if n == 0:
        return Extension(zero_module(A), f.zeros(0, r, 0))
    right_B, left_A = _slice_actions(U)
    eye_r, eye_n = f.eye(r), f.eye(n)
    blocks = [f.sub(f.kron(Rb, eye_n), f.kron(eye_r, N.action[k].T.copy())) for k, Rb in enumerate(right_B)]
    H = f.nullspace(np.concatenate(blocks)).reshape(-1, r, n)
    h = H.shape[0]
    if h == 0:
        return Extension(zero_module(A), H)
    flat = H.reshape(h, -1)
    span = Subspace.span(f, r * n, flat)
    basis = span.basis.reshape(h, r, n)
    acts = []
    for La in left_A:
        acts.append(np.stack([span.coordinates(f.matmul(La, F).reshape(-1)) for F in basis]))
    return Extension(Module(A, tuple(acts), f"j_*{N.name}" if N.name else ""), basis)


def extend(U: OpenSubspace, N: Module) -> Module:
    return extend_data(U, N).module


def extend_shriek(U: OpenSubspace, N: Module) -> Module:
    """``N (x)_B eA`` as a right ``A``-module."""
    A = U.ambient
    f = A.field
    eA = U.slice_eA
    s, n = eA.dim, N.dim
    if n == 0 or s == 0:
        return zero_module(A)
    right_A = [eA.coordinates(f.matmul(eA.basis, A.right_matrix(A.basis_vector(i)))) for i in range(A.dim)]
    left_B = [eA.coordinates(f.matmul(eA.basis, A.left_matrix(b))) for b in U.corner.embedding]
    eye_n, eye_s = f.eye(n), f.eye(s)
    # relations (v.b) (x) y - v (x) (b y), one block of rows per basis element b
    rels = [f.sub(f.kron(N.action[k], eye_s), f.kron(eye_n, Lb)) for k, Lb in enumerate(left_B)]
    big = Module(A, tuple(f.kron(eye_n, Ra) for Ra in right_A))
    R = Subspace.span(f, n * s, np.concatenate(rels))
    return quotient_module(big, R, f"j!{N.name}" if N.name else "").module


def j_functors(U: OpenSubspace, direction: str, M: Module) -> Module:
    if direction == "restrict":
        return restrict(U, M)
    if direction == "extend":
        return extend(U, M)
    if direction == "extend_shriek":
        return extend_shriek(U, M)
    raise ValueError(f"unknown direction {direction!r}")


def unit_map(U: OpenSubspace, M: Module):
    """``eta : M -> j_* j^* M``, ``m -> (x -> m x)``; returns ``(j_*j^*M, matrix)``."""
    A = U.ambient
    f = A.field
    N = restrict(U, M)
    ext = extend_data(U, N)
    E = ext.module
    if E.dim == 0 or M.dim == 0:
        return E, f.zeros(M.dim, E.dim)
    Me = _image_basis(M, U.e)
    span = Subspace.span(f, ext.basis.shape[1] * ext.basis.shape[2], ext.basis.reshape(E.dim, -1))
    rows = []
    for i in range(M.dim):
        m = f.unit_vector(M.dim, i).reshape(1, -1)
        F = np.concatenate([Me.coordinates(f.matmul(m, M.act(x))) for x in U.slice_Ae.basis])
        rows.append(span.coordinates(F.reshape(-1)))
    return E, np.stack(rows)


def counit_iso(U: OpenSubspace, N: Module) -> Optional[np.ndarray]:
    """Explicit isomorphism ``j^* j_* N -> N``, ``f -> f(e)``; ``None`` if it fails."""
    A = U.ambient
    f = A.field
    ext = extend_data(U, N)
    E = ext.module
    R = restrict(U, E)
    if R.dim != N.dim:
        return None
    if N.dim == 0:
        return f.zeros(0, 0)
    Ee = _image_basis(E, U.e)
    ecoords = U.slice_Ae.coordinates(U.e).reshape(1, -1)
    ev = np.concatenate([f.matmul(ecoords, F) for F in ext.basis])  # E -> N
    mat = f.matmul(Ee.basis, ev)
    if not f.det_nonzero(mat):
        return None
    for a, b in zip(R.action, N.action):
        if np.any(f.matmul(a, mat) != f.matmul(mat, b)):
            return None
    return mat


# ---------------------------------------------------------------------------
# torsion


def torsion_submodule(U: OpenSubspace, M: Module) -> Subspace:
    """Largest submodule with every composition factor in the torsion class:
    ``{m : m A e = 0}``."""
    f = M.field
    A = U.ambient
    if M.dim == 0:
        return Subspace.zero(f, 0)
    Ee = M.act(U.e)
    big = np.concatenate([f.matmul(a, Ee) for a in M.action], axis=1)
    return Subspace.span(f, M.dim, f.left_kernel(big))


def torsion_by_socles(U: OpenSubspace, M: Module) -> Subspace:
    """Same submodule, grown by repeatedly adding the torsion part of the socle."""
    f = M.field
    A = U.ambient
    simples = [simple_module(A, i) for i in sorted(U.torsion_class.simples)]
    T = Subspace.zero(f, M.dim)
    while True:
        q = quotient_module(M, T)
        layer = Subspace.zero(f, q.module.dim)
        for S in simples:
            layer = layer + socle_S(S, q.module)
        if layer.dim == 0:
            return T
        lifted = f.matmul(layer.basis, q.section)
        T = T + Subspace.span(f, M.dim, lifted)


@dataclass(frozen=True, eq=False)
class TorsionReport:
    torsion: Subspace
    extension: Module  # j_* j^* M
    unit: np.ndarray  # M -> j_* j^* M
    r1: Module  # cokernel of the unit
    r1_derived_dim: int
    certificates: dict

    @property
    def ok(self) -> bool:
        return all(self.certificates.values())


def _r1_from_copresentation(U: OpenSubspace, M: Module) -> Module:
    """``H^1`` of ``tau`` applied to an injective copresentation of ``M``."""
    f = M.field
    A = U.ambient
    if M.dim == 0:
        return zero_module(A)
    cop = injective_copresentation(M, 3)
    terms, maps = cop.terms, cop.maps
    if len(terms) < 2:
        return zero_module(A)
    I0, I1 = terms[0], terms[1]
    d1 = maps[1]
    tI1 = torsion_submodule(U, I1)
    if len(terms) > 2:
        ker2 = Subspace.span(f, I1.dim, f.left_kernel(maps[2]))
        K = tI1 & ker2
    else:
        K = tI1
    if K.dim == 0:
        return zero_module(A)
    tI0 = torsion_submodule(U, I0)
    img = Subspace.span(f, I1.dim, f.matmul(tI0.basis, d1)) if tI0.dim else Subspace.zero(f, I1.dim)
    Kmod = module_from_subspace(I1, K)
    img_in_K = Subspace.span(f, K.dim, K.coordinates(img.basis)) if img.dim else Subspace.zero(f, K.dim)
    return quotient_module(Kmod, img_in_K).module


def tau_and_r1(U: OpenSubspace, M: Module) -> TorsionReport:
    f = M.field
    A = U.ambient
    tau = torsion_submodule(U, M)
    if U.is_empty:
        return TorsionReport(tau, zero_module(A), f.zeros(M.dim, 0), zero_module(A), 0, {"empty": True})
    E, eta = unit_map(U, M)
    ker = Subspace.span(f, M.dim, f.left_kernel(eta)) if M.dim else Subspace.zero(f, 0)
    img = Subspace.span(f, E.dim, eta) if E.dim and M.dim else Subspace.zero(f, E.dim)
    coker = quotient_module(E, img).module
    derived = _r1_from_copresentation(U, M)
    certs = {
        "unit is a module map": all(
            not np.any(f.matmul(a, eta) != f.matmul(eta, b)) for a, b in zip(M.action, E.action)
        ),
        "ker(unit) = tau M": ker == tau,
        "tau by socles agrees": torsion_by_socles(U, M) == tau,
        "dimension count": M.dim - tau.dim + coker.dim == E.dim,
        "tau of extension vanishes": torsion_submodule(U, E).dim == 0,
        "cokernel is torsion": torsion_submodule(U, coker).dim == coker.dim,
        "derived R1 agrees": derived.dim == coker.dim and is_isomorphic(derived, coker),
    }
    return TorsionReport(tau, E, eta, coker, derived.dim, certs)


def is_stable_class(U: OpenSubspace) -> bool:
    """The torsion class is stable: ``tau E`` is injective for every
    indecomposable injective ``E``.  Only then does the cokernel of
    ``M -> j_* j^* M`` compute the derived ``R^1 tau M`` for every ``M``."""
    A = U.ambient
    n = A.structure.require_split().simple_count
    simples = [simple_module(A, i) for i in range(n)]
    for S in simples:
        E = injective_envelope(S).module
        T = torsion_submodule(U, E)
        if T.dim == 0:
            continue
        tE = module_from_subspace(E, T)
        if any(ext_dim(S2, tE, 1) for S2 in simples):
            return False
    return True


def in_open(U: OpenSubspace, M: Module) -> bool:
    """``M`` lies in the open subspace: the unit ``M -> j_* j^* M`` is bijective."""
    if U.is_empty:
        return M.dim == 0
    E, eta = unit_map(U, M)
    return E.dim == M.dim and (M.dim == 0 or M.field.det_nonzero(eta))


# ---------------------------------------------------------------------------
# containment


def closed_generators(V: ClosedSubspace) -> list:
    """Modules that test a left-exact criterion on all of ``Mod V``: the
    simples, indecomposable projectives and indecomposable injectives of
    ``A/ideal(V)``, viewed as ``A``-modules."""
    A = V.ambient
    if V.is_empty:
        return []
    Q = quotient_algebra(A, V.ideal)
    B = Q.algebra
    out = []
    for i in range(B.structure.require_split().simple_count):
        S = simple_module(B, i)
        for M in (S, indecomposable_projective(B, i), injective_envelope(S).module):
            out.append(inflate(M, A, Q.projection))
    return out


@dataclass(frozen=True, eq=False)
class ContainmentVerdict:
    contained: bool
    by_ext: bool
    by_localization: bool
    witness: Optional[tuple]

    def __bool__(self):
        return self.contained


def contains_in_complement(V, W) -> ContainmentVerdict:
    """Is ``V`` inside ``X \\ W``?  Criterion (1): ``Hom(S, G) = Ext^1(S, G) = 0``
    for torsion simples ``S`` and generators ``G`` of ``V``; criterion (2):
    ``G -> j_* j^* G`` is an isomorphism for every generator."""
    if isinstance(V, ClosedSubspace):
        A = V.ambient
        gens = closed_generators(V)
    else:
        gens = list(V)
        if not gens:
            return ContainmentVerdict(True, True, True, None)
        A = gens[0].algebra
    cls = _as_class(A, W)
    simples = [simple_module(A, i) for i in sorted(cls.simples)]
    witness = None
    by_ext = True
    for G in gens:
        for S in simples:
            h, e1 = hom_dim(S, G), ext_dim(S, G, 1)
            if h or e1:
                by_ext = False
                witness = witness or ("ext", S, G, h, e1)
    U = open_complement(A, cls)
    by_loc = all(in_open(U, G) for G in gens)
    if by_ext != by_loc:
        raise AssertionError("containment criteria disagree")
    return ContainmentVerdict(by_ext, by_ext, by_loc, witness)


# ---------------------------------------------------------------------------
# combining opens


def open_combine(op: str, U: OpenSubspace, V: OpenSubspace, closed: Optional[tuple] = None) -> OpenSubspace:
    """``union`` removes the intersection of the two classes; ``intersect``
    removes their union.  With the defining closed subspaces passed in
    ``closed``, the intersect case also checks both Gabriel products."""
    if U.ambient is not V.ambient and not U.ambient.same_as(V.ambient):
        raise AlgebraError("open subspaces of different spaces")
    A = U.ambient
    if op == "union":
        return open_complement(A, U.torsion_class & V.torsion_class)
    if op == "intersect":
        cls = U.torsion_class | V.torsion_class
        if closed is not None:
            W, Z = closed
            wz = serre_and_sat(closed_combine("gabriel", W, Z))
            zw = serre_and_sat(closed_combine("gabriel", Z, W))
            if not (wz == zw == cls):
                raise AssertionError("Gabriel products do not saturate to the union of the classes")
        return open_complement(A, cls)
    raise ValueError(f"unknown open-subspace operation {op!r}")


# ---------------------------------------------------------------------------
# Z intersected with an open


@dataclass(frozen=True, eq=False)
class ZCapU:
    defined: bool
    witness: Optional[tuple]
    simples: frozenset  # simples of Z \ (Z cap W) as indices over A
    open_in_Z: Optional[OpenSubspace]
    agreement: Optional[bool]


def z_cap_u(Z: ClosedSubspace, W: ClosedSubspace, sample: Sequence[Module] = ()) -> ZCapU:
    """``Z cap (X \\ W)``, defined when ``Ext^1(S_W, S_Z) = 0`` for all simples
    on ``W`` and on ``Z``; then it is ``Z \\ (Z cap W)`` inside ``Mod A/ideal(Z)``."""
    A = Z.ambient
    zs, ws = Z.simples(), W.simples()
    for i in sorted(ws):
        for j in sorted(zs):
            d = ext_dim(simple_module(A, i), simple_module(A, j), 1)
            if d:
                return ZCapU(False, (i, j, d), frozenset(), None, None)
    keep = frozenset(zs - ws)
    if Z.is_empty:
        return ZCapU(True, None, keep, None, True)
    Q = quotient_algebra(A, Z.ideal)
    B = Q.algebra
    # classes over A/ideal(Z): simples of Z cap W
    ZW = closed_combine("intersect", Z, W)
    imgs = list(B.field.matmul(ZW.ideal.space.basis, Q.projection)) if ZW.ideal.dim else []
    IQ = ideal_generated(B, imgs)
    Uq = open_complement(B, zero_locus(IQ))
    agreement = True
    UA = open_complement(A, W)
    for M in sample:
        onZ = Z.contains_module(M)
        lhs = onZ and in_open(UA, M)
        if onZ:
            MQ = _descend(M, B, Q)
            rhs = in_open(Uq, MQ)
        else:
            rhs = False
        agreement = agreement and (lhs == rhs)
    return ZCapU(True, None, keep, Uq, agreement)


def _descend(M: Module, B: Algebra, Q) -> Module:
    """An ``A``-module killed by the ideal, as a module over the quotient."""
    acts = tuple(M.act(Q.section[k]) for k in range(B.dim))
    return Module(B, acts, M.name)


# ---------------------------------------------------------------------------
# weak closure


def weak_closure_bounded(U: OpenSubspace, dim_bound: int) -> WeaklyClosedGen:
    """Generators ``j_* N`` for the ``B``-modules ``N`` of dimension at most
    ``dim_bound`` together with ``j_* B``; an under-approximation."""
    A = U.ambient
    if not A.field.p:
        raise ModuleError("bounded weak closure enumerates modules and is refused over Q")
    if U.is_empty:
        return weakly_closed_gen([], bound=dim_bound, ambient=A)
    gens: list = []
    cands = [regular_module(U.B)] + enumerate_modules(U.B, dim_bound)
    for N in cands:
        G = extend(U, N)
        if G.dim == 0 or any(is_isomorphic(G, H) for H in gens):
            continue
        gens.append(G)
    return weakly_closed_gen(gens, bound=dim_bound, ambient=A)
