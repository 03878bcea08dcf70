"""Closed subspaces as two-sided ideals, points, Serre classes and saturation.

A closed subspace of the space of a finite-dimensional algebra ``A`` is the
category of ``A/I``-modules for a two-sided ideal ``I``; it is stored by that
ideal.  Points are the simple modules, named either by index or by the point
names carried on the algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import (
    Algebra,
    AlgebraError,
    Ideal,
    NotSplitError,
    ideal_combine,
    radical,
    unit_ideal,
    zero_ideal,
)
from .linalg import Subspace
from .modules import (
    Module,
    ModuleError,
    annihilator,
    composition_factors,
    direct_sum,
    element_annihilator,
    end_algebra,
    hom_basis,
    injective_envelope,
    is_subquotient,
    quotient_module,
    simple_module,
)


# ---------------------------------------------------------------------------
# naming points


def point_names(A: Algebra) -> dict:
    """``{name: simple index}``; unnamed simples are called ``p0, p1, ...``."""
    S = A.structure.require_split()
    names = {}
    for name, label in A.points:
        b = A.basis_vector(A.labels.index(label))
        hits = [i for i in range(S.simple_count) if np.any(simple_module(A, i).act(b) != 0)]
        if len(hits) != 1:
            raise AlgebraError(f"point name {name!r} does not single out one simple")
        names[name] = hits[0]
    taken = set(names.values())
    for i in range(S.simple_count):
        if i not in taken:
            names[f"p{i}"] = i
    return names


def point_index(A: Algebra, ref) -> int:
    if isinstance(ref, (int, np.integer)):
        if not 0 <= ref < A.structure.require_split().simple_count:
            raise AlgebraError(f"no simple with index {ref}")
        return int(ref)
    names = point_names(A)
    if ref not in names:
        raise AlgebraError(f"unknown point {ref!r}; known: {sorted(names)}")
    return names[ref]


def point_name(A: Algebra, i: int) -> str:
    for name, j in point_names(A).items():
        if j == i:
            return name
    return f"p{i}"


# ---------------------------------------------------------------------------
# closed subspaces


@dataclass(frozen=True, eq=False)
class ClosedSubspace:
    ambient: Algebra
    ideal: Ideal

    def __post_init__(self):
        if not self.ideal.is_two_sided():
            raise AlgebraError("a closed subspace needs a two-sided ideal")

    def __eq__(self, other):
        return isinstance(other, ClosedSubspace) and self.ideal.space == other.ideal.space

    def __hash__(self):
        return hash(self.ideal.space)

    def __le__(self, other: "ClosedSubspace") -> bool:
        # smaller subspace <-> bigger ideal
        return other.ideal.space <= self.ideal.space

    def __repr__(self):
        return f"ClosedSubspace(ideal={self.ideal.describe()})"

    @property
    def is_empty(self) -> bool:
        return self.ideal.dim == self.ambient.dim

    @property
    def is_whole(self) -> bool:
        return self.ideal.dim == 0

    def contains_module(self, M: Module) -> bool:
        return self.ideal.space <= annihilator(M).space

    def simples(self) -> frozenset:
        """Indices of the simples lying on this subspace."""
        A = self.ambient
        S = A.structure.require_split()
        return frozenset(i for i in range(S.simple_count) if self.ideal.space <= S.prime_ideals[i].space)


def zero_locus(I: Ideal) -> ClosedSubspace:
    return ClosedSubspace(I.ambient, I)


def ideal_of(W: ClosedSubspace) -> Ideal:
    return W.ideal


def support(M: Module) -> ClosedSubspace:
    return zero_locus(annihilator(M))


def whole_space(A: Algebra) -> ClosedSubspace:
    return zero_locus(zero_ideal(A))


def empty_subspace(A: Algebra) -> ClosedSubspace:
    return zero_locus(unit_ideal(A))


def point_subspace(A: Algebra, ref) -> ClosedSubspace:
    i = point_index(A, ref)
    return zero_locus(A.structure.prime_ideals[i])


def closed_subspace(direction: str, arg):
    if direction == "zero_locus":
        return zero_locus(arg)
    if direction == "ideal_of":
        return ideal_of(arg)
    if direction == "support":
        return support(arg)
    raise ValueError(f"unknown direction {direction!r}")


def _same_ambient(W: ClosedSubspace, Z: ClosedSubspace) -> Algebra:
    if W.ambient is not Z.ambient and not W.ambient.same_as(Z.ambient):
        raise AlgebraError("closed subspaces of different spaces")
    return W.ambient


def closed_combine(op: str, W: ClosedSubspace, Z: ClosedSubspace) -> ClosedSubspace:
    """``intersect`` adds ideals, ``union`` intersects them, and ``gabriel``
    multiplies them in order: ``ideal(W . Z) = ideal(W) ideal(Z)``, the
    extensions with a submodule on ``Z`` and a quotient on ``W``."""
    _same_ambient(W, Z)
    if op == "intersect":
        return zero_locus(ideal_combine("sum", W.ideal, Z.ideal))
    if op == "union":
        return zero_locus(ideal_combine("intersect", W.ideal, Z.ideal))
    if op == "gabriel":
        return zero_locus(ideal_combine("product", W.ideal, Z.ideal))
    raise ValueError(f"unknown closed-subspace operation {op!r}")


# ---------------------------------------------------------------------------
# points and primes


@dataclass(frozen=True)
class Point:
    index: int
    end_dim: int
    name: str = ""

    @property
    def rational(self) -> bool:
        return self.end_dim == 1


@dataclass(frozen=True, eq=False)
class PointsAndPrimes:
    points: tuple
    primes: tuple
    is_prime_subspace: Callable


def points_and_primes(A: Algebra) -> PointsAndPrimes:
    S = A.structure.require_split()
    pts = tuple(
        Point(i, hom_basis(simple_module(A, i), simple_module(A, i)).shape[0], point_name(A, i))
        for i in range(S.simple_count)
    )
    primes = tuple(zero_locus(P) for P in S.prime_ideals)

    def is_prime_subspace(W: ClosedSubspace) -> bool:
        return any(W == P for P in primes)

    return PointsAndPrimes(pts, primes, is_prime_subspace)


def is_prime_ideal_bruteforce(I: Ideal) -> bool:
    """Definition check ``aAb in I => a in I or b in I`` over every pair of
    vectors (tiny GF(p) algebras only)."""
    A = I.ambient
    f = A.field
    if not f.p or f.p**A.dim > 1 << 12:
        raise ModuleError("brute-force primality needs a tiny finite algebra")
    if I.dim == A.dim:
        return False
    elems = [np.asarray(c, dtype=np.int64) for c in itertools.product(range(f.p), repeat=A.dim)]
    outside = [a for a in elems if not I.space.contains_vector(a)]
    basis = [A.basis_vector(i) for i in range(A.dim)]
    for a in outside:
        aA = [A.mul(a, x) for x in basis]
        for b in outside:
            if all(I.space.contains_vector(A.mul(y, b)) for y in aA):
                return False
    return True


# ---------------------------------------------------------------------------
# Serre classes


@dataclass(frozen=True)
class SerreClass:
    ambient: Algebra
    simples: frozenset

    def __post_init__(self):
        n = self.ambient.structure.require_split().simple_count
        object.__setattr__(self, "simples", frozenset(int(i) for i in self.simples))
        bad = [i for i in self.simples if not 0 <= i < n]
        if bad:
            raise AlgebraError(f"simple indices {bad} out of range 0..{n - 1}")

    def __eq__(self, other):
        return isinstance(other, SerreClass) and self.simples == other.simples

    def __hash__(self):
        return hash(self.simples)

    def __or__(self, other: "SerreClass") -> "SerreClass":
        return SerreClass(self.ambient, self.simples | other.simples)

    def __and__(self, other: "SerreClass") -> "SerreClass":
        return SerreClass(self.ambient, self.simples & other.simples)

    @property
    def complement(self) -> "SerreClass":
        n = self.ambient.structure.simple_count
        return SerreClass(self.ambient, frozenset(range(n)) - self.simples)

    def names(self) -> list:
        return sorted(point_name(self.ambient, i) for i in self.simples)


@dataclass(frozen=True, eq=False)
class WeaklyClosedGen:
    ambient: Algebra
    generators: tuple
    bound: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if any(G.dim == 0 for G in self.generators):
            raise ModuleError("weakly closed generators must be nonzero")


def weakly_closed_gen(generators: Sequence[Module], bound: Optional[int] = None, ambient: Optional[Algebra] = None) -> WeaklyClosedGen:
    gens = tuple(generators)
    if ambient is None:
        if not gens:
            raise ModuleError("an empty generator list needs an explicit ambient algebra")
        ambient = gens[0].algebra
    return WeaklyClosedGen(ambient, gens, bound)


def wc_member(M: Module, W: WeaklyClosedGen) -> bool:
    """Is ``M`` a subquotient of a finite sum of copies of the generators?"""
    if not M.field.p:
        raise ModuleError("weakly closed membership is decided only over GF(p)")
    if M.dim == 0:
        return True
    if not W.generators:
        return False
    G = direct_sum(*W.generators).module
    return is_subquotient(M, G, W.bound).found


def serre_and_sat(arg) -> SerreClass:
    """The Serre class of a closed subspace, or the saturation of a
    weakly closed generator list."""
    if isinstance(arg, ClosedSubspace):
        return SerreClass(arg.ambient, arg.simples())
    if isinstance(arg, WeaklyClosedGen):
        if not arg.ambient.field.p:
            raise ModuleError("saturation of generator lists is supported only over GF(p)")
        arg.ambient.structure.require_split()
        found = set()
        for G in arg.generators:
            found.update(composition_factors(G))
        return SerreClass(arg.ambient, frozenset(found))
    if isinstance(arg, SerreClass):
        return arg
    raise TypeError(f"cannot saturate {type(arg).__name__}")


def member_modW(M: Module, cls: SerreClass) -> bool:
    return set(composition_factors(M)) <= set(cls.simples)


def filtration_member(M: Module, W: ClosedSubspace) -> bool:
    """Direct filtration test: repeatedly split off the largest submodule
    annihilated by ``ideal(W)``."""
    f = M.field
    I = W.ideal.space
    cur = M
    while cur.dim:
        if I.dim == 0:
            return True
        big = np.concatenate([cur.act(x) for x in I.basis], axis=1)
        killed = Subspace.span(f, cur.dim, f.left_kernel(big))
        if killed.dim == 0:
            return False
        cur = quotient_module(cur, killed).module
    return True


# ---------------------------------------------------------------------------
# annihilator witnesses


@dataclass(frozen=True, eq=False)
class FbnReport:
    witnesses: tuple  # one tuple of vectors per sample (None when none found)
    enough_closed: bool


def _ann_of_family(M: Module, vecs) -> Subspace:
    A = M.algebra
    f = A.field
    if not vecs:
        return Subspace.full(f, A.dim)
    rows = np.stack([np.concatenate([f.matmul(v.reshape(1, -1), a).reshape(-1) for v in vecs]) for a in M.action])
    return Subspace.span(f, A.dim, f.left_kernel(rows))


def fbn_witness(M: Module, seed: int = 0, tries: int = 64):
    """Elements ``m_1..m_n`` (``n <= dim M``) with ``Ann M`` equal to the
    intersection of their right annihilators.  Greedy over the basis first,
    then over random vectors."""
    f = M.field
    target = annihilator(M).space
    if M.dim == 0:
        return ()
    chosen: list = []
    cur = Subspace.full(f, M.algebra.dim)
    pool = [f.unit_vector(M.dim, i) for i in range(M.dim)]
    rng = np.random.default_rng(seed)
    pool += [f.random(rng, M.dim) for _ in range(tries)]
    # a single generic element often suffices; try the unit-like sum first
    total = f.zeros(M.dim)
    for v in pool[: M.dim]:
        total = f.add(total, v)
    if _ann_of_family(M, [total]) == target:
        return (total,)
    for v in pool:
        if cur == target or len(chosen) >= M.dim:
            break
        nxt = cur & element_annihilator(M, v)
        if nxt.dim < cur.dim:
            chosen.append(v)
            cur = nxt
    return tuple(chosen) if cur == target else None


def fbn_check(A: Algebra, sample: Sequence[Module], seed: int = 0) -> FbnReport:
    wits = tuple(fbn_witness(M, seed) for M in sample)
    return FbnReport(wits, all(w is not None for w in wits))


# ---------------------------------------------------------------------------
# primes versus indecomposable injectives


@dataclass(frozen=True)
class LocalCertificate:
    local: bool
    end_dim: int
    radical_codim: int
    method: str


def end_is_local(M: Module, enumerate_limit: int = 1 << 12) -> LocalCertificate:
    """``End(M)`` local: every endomorphism invertible or nilpotent.

    Over GF(p) with a small Hom space every element is checked; otherwise
    each basis element and pairwise sum is checked and the radical of
    ``End(M)`` must have codimension one (a split local algebra).
    """
    f = M.field
    E = end_algebra(M)
    H = hom_basis(M, M)
    r = H.shape[0]
    codim = r - radical(E).dim

    def ok(F):
        if f.det_nonzero(F):
            return True
        P = F
        for _ in range(M.dim):
            P = f.matmul(P, F)
        return not np.any(P != 0)

    if f.p and f.p**r <= enumerate_limit:
        flat = H.reshape(r, -1)
        for c in itertools.product(range(f.p), repeat=r):
            F = f.matmul(np.asarray(c, dtype=np.int64).reshape(1, -1), flat).reshape(M.dim, M.dim)
            if not ok(F):
                return LocalCertificate(False, r, codim, "enumeration")
        return LocalCertificate(True, r, codim, "enumeration")
    cands = list(H) + [f.add(H[i], H[j]) for i in range(r) for j in range(i + 1, r)]
    local = all(ok(F) for F in cands) and codim == 1
    return LocalCertificate(local, r, codim, "basis+radical")


@dataclass(frozen=True, eq=False)
class PrimeInjectivePair:
    prime: ClosedSubspace
    injective: Module
    simple: int
    certificate: LocalCertificate


def prime_injective_table(A: Algebra) -> tuple:
    S = A.structure.require_split()
    out = []
    for i, P in enumerate(S.prime_ideals):
        E = injective_envelope(simple_module(A, i)).module
        cert = end_is_local(E)
        if not cert.local:
            raise AssertionError(f"injective envelope of simple {i} has a non-local endomorphism ring")
        out.append(PrimeInjectivePair(zero_locus(P), E, i, cert))
    if len(out) != S.simple_count:
        raise AssertionError("prime and injective counts differ")
    return tuple(out)
