"""Seeded random instances: quiver algebras, modules, ideals, Serre classes."""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

import numpy as np

from .algebra import Algebra, Ideal, QuiverPresentation, compile_quiver, ideal_generated
from .linalg import GF, Field, Subspace
from .modules import (
    Module,
    direct_sum,
    indecomposable_projective,
    injective_envelope,
    module_from_subspace,
    quotient_module,
    radical_submodule,
    simple_module,
    submodule_generated,
    subspaces_of_dim,
)
from .subspaces import SerreClass


def _parallel_pairs(arrows):
    """Length-two paths grouped by (source, target)."""
    groups: dict = {}
    for s1, t1, a in arrows:
        for s2, t2, b in arrows:
            if t1 == s2:
                groups.setdefault((s1, t2), []).append((a, b))
    return groups


def random_quiver(
    rng: np.random.Generator,
    field: Field,
    max_vertices: int = 3,
    max_arrows: int = 3,
    bound: int = 2,
    relation_prob: float = 0.5,
) -> QuiverPresentation:
    """Random quiver with paths longer than ``bound`` set to zero, plus at
    most one random relation among parallel paths of length two."""
    nv = int(rng.integers(1, max_vertices + 1))
    na = int(rng.integers(0, max_arrows + 1))
    vertices = tuple(range(1, nv + 1))
    arrows = []
    for k in range(na):
        s, t = (int(x) for x in rng.integers(1, nv + 1, size=2))
        arrows.append((s, t, "abcdefgh"[k]))
    rels = []
    if bound >= 2 and rng.random() < relation_prob:
        groups = [g for g in _parallel_pairs(arrows).values()]
        if groups:
            g = groups[int(rng.integers(len(groups)))]
            coeffs = field.random(rng, len(g))
            if field.p == 0:
                coeffs = [int(c) for c in coeffs]
            terms = [(list(w), int(c)) for w, c in zip(g, coeffs) if c != 0]
            if terms:
                rels.append(terms)
    return QuiverPresentation(vertices, tuple(arrows), tuple(tuple(r) for r in rels), bound, field)


def random_algebra(rng: np.random.Generator, field: Field, max_dim: Optional[int] = 12, **kw) -> Algebra:
    """Compile random quivers until one has dimension at most ``max_dim``."""
    for _ in range(100):
        Q = random_quiver(rng, field, **kw)
        A = compile_quiver(Q, "rand")
        if max_dim is None or A.dim <= max_dim:
            return A
    raise RuntimeError("could not draw a small enough random algebra")


def random_module(rng: np.random.Generator, A: Algebra, max_dim: int = 5) -> Module:
    """A quotient of a random projective or a submodule of a random injective,
    of dimension at most ``max_dim``."""
    f = A.field
    n = A.structure.require_split().simple_count
    for _ in range(50):
        picks = [int(i) for i in rng.integers(0, n, size=int(rng.integers(1, 3)))]
        if rng.random() < 0.5:
            P = direct_sum(*[indecomposable_projective(A, i) for i in picks]).module
            rad = radical_submodule(P)
            if rad.dim:
                k = int(rng.integers(0, rad.dim + 1))
                vecs = f.matmul(f.random(rng, (k, rad.dim)), rad.basis) if k else f.zeros(0, P.dim)
                K = submodule_generated(P, vecs)
            else:
                K = Subspace.zero(f, P.dim)
            M = quotient_module(P, K).module
        else:
            E = direct_sum(*[injective_envelope(simple_module(A, i)).module for i in picks]).module
            k = int(rng.integers(1, 3))
            U = submodule_generated(E, f.random(rng, (k, E.dim)))
            if U.dim == 0:
                continue
            M = module_from_subspace(E, U)
        if 0 < M.dim <= max_dim:
            return M
    return simple_module(A, int(rng.integers(0, n)))


def random_ideal(rng: np.random.Generator, A: Algebra, max_gens: int = 2) -> Ideal:
    k = int(rng.integers(0, max_gens + 1))
    return ideal_generated(A, [A.field.random(rng, A.dim) for _ in range(k)])


def random_serre_class(rng: np.random.Generator, A: Algebra) -> SerreClass:
    n = A.structure.require_split().simple_count
    return SerreClass(A, frozenset(i for i in range(n) if rng.random() < 0.5))


def quiver_family_f2(max_dim: int = 4, max_vertices: int = 3, max_arrows: int = 3) -> Iterator[tuple]:
    """Every quiver algebra over GF(2) from the sampling family (paths of
    length at most 1 or 2, at most one relation) with dimension ``<= max_dim``.

    Yields ``(QuiverPresentation, Algebra)``; quivers equal up to relabelling
    the vertices are not de-duplicated.
    """
    f = GF(2)
    for nv in range(1, max_vertices + 1):
        if nv > max_dim:
            break
        vertices = tuple(range(1, nv + 1))
        edges = [(s, t) for s in vertices for t in vertices]
        for na in range(0, max_arrows + 1):
            if nv + na > max_dim:
                break
            for combo in itertools.combinations_with_replacement(edges, na):
                arrows = tuple((s, t, "abc"[k]) for k, (s, t) in enumerate(combo))
                for bound in (1, 2):
                    if bound == 2 and not any(t1 == s2 for _, t1, _ in arrows for s2, _, _ in arrows):
                        continue
                    rel_options = [()]
                    if bound == 2:
                        for group in _parallel_pairs(arrows).values():
                            for mask in range(1, 1 << len(group)):
                                terms = tuple((list(w), 1) for k, w in enumerate(group) if mask >> k & 1)
                                rel_options.append((terms,))
                    for rels in rel_options:
                        Q = QuiverPresentation(vertices, arrows, rels, bound, f)
                        A = compile_quiver(Q, "fam")
                        if A.dim <= max_dim:
                            yield Q, A


def all_ideals(A: Algebra) -> list:
    """Every two-sided ideal of a small GF(p) algebra, by subspace enumeration."""
    f = A.field
    out = []
    for k in range(A.dim + 1):
        for B in subspaces_of_dim(f, A.dim, k):
            I = Ideal(A, Subspace.span(f, A.dim, B) if k else Subspace.zero(f, A.dim))
            if I.is_two_sided():
                out.append(I)
    return out
