import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncspaces.algebra import DUAL, KK, T2, AlgebraError, ideal_generated, upper_triangular
from ncspaces.linalg import GF, QQ
from ncspaces.modules import direct_sum, enumerate_modules, indecomposable_projective, simple_module
from ncspaces.sampling import random_algebra, random_ideal, random_module
from ncspaces.subspaces import (
    SerreClass,
    closed_combine,
    empty_subspace,
    fbn_check,
    filtration_member,
    ideal_of,
    member_modW,
    point_index,
    point_name,
    point_names,
    point_subspace,
    points_and_primes,
    prime_injective_table,
    serre_and_sat,
    support,
    wc_member,
    weakly_closed_gen,
    whole_space,
    zero_locus,
)

seeds = st.integers(0, 10**6)


def killed_by(M, I):
    return all(not np.any(M.act(x)) for x in I.space.basis)


def on_gabriel_product(M, I, J):
    """``M`` is an extension of a module killed by ``I`` by one killed by ``J``
    exactly when ``M I J = 0``: take the submodule ``M I``."""
    f = M.field
    MI = [f.matmul(v.reshape(1, -1), M.act(x)) for v in f.eye(M.dim) for x in I.space.basis]
    return all(not np.any(f.matmul(w, M.act(y))) for w in MI for y in J.space.basis)


def test_t2_gabriel_asymmetry(field):
    A = T2(field)
    p, q = point_subspace(A, "p"), point_subspace(A, "q")
    assert closed_combine("union", p, q).ideal.describe() == ["e12"]
    assert closed_combine("gabriel", p, q).ideal.describe() == ["e12"]
    assert closed_combine("gabriel", q, p).ideal.dim == 0
    assert closed_combine("intersect", p, q).is_empty


def test_point_names_and_primes():
    A = T2(GF(2))
    assert point_names(A) == {"q": 0, "p": 1}
    assert point_index(A, "p") == 1 and point_name(A, 0) == "q"
    with pytest.raises(AlgebraError):
        point_index(A, "r")
    pp = points_and_primes(A)
    assert [pt.rational for pt in pp.points] == [True, True]
    assert pp.is_prime_subspace(point_subspace(A, "q")) and not pp.is_prime_subspace(whole_space(A))


def test_unnamed_points_get_default_names():
    assert sorted(point_names(upper_triangular(3, GF(2)))) == ["p0", "p1", "p2"]


def test_whole_and_empty():
    A = DUAL(QQ)
    assert whole_space(A).is_whole and empty_subspace(A).is_empty
    assert support(simple_module(A, 0)) == point_subspace(A, "o")
    assert support(indecomposable_projective(A, 0)) == whole_space(A)


@given(seeds, st.sampled_from([2, 3]))
def test_closed_ops_match_module_membership(seed, p):
    rng = np.random.default_rng(seed)
    A = random_algebra(rng, GF(p), max_dim=8)
    I, J = random_ideal(rng, A), random_ideal(rng, A)
    W, Z = zero_locus(I), zero_locus(J)
    M = random_module(rng, A, 4)
    assert closed_combine("intersect", W, Z).contains_module(M) == (killed_by(M, I) and killed_by(M, J))
    assert closed_combine("gabriel", W, Z).contains_module(M) == on_gabriel_product(M, I, J)
    assert ideal_of(closed_combine("union", W, Z)).space == (I.space & J.space)
    assert W.contains_module(M) == killed_by(M, I)
    # IJ + JI lies inside I n J
    gw, gz = closed_combine("gabriel", W, Z), closed_combine("gabriel", Z, W)
    assert (gw.ideal.space + gz.ideal.space) <= (I.space & J.space)


@given(seeds)
def test_serre_class_equals_filtration(seed):
    rng = np.random.default_rng(seed)
    A = random_algebra(rng, GF(2), max_dim=8)
    W = zero_locus(random_ideal(rng, A))
    cls = serre_and_sat(W)
    for _ in range(3):
        M = random_module(rng, A, 4)
        assert filtration_member(M, W) == member_modW(M, cls)


def test_weakly_closed_generated_by_simple():
    A = T2(GF(2))
    W = weakly_closed_gen([simple_module(A, 0)])
    mods = enumerate_modules(A, 2)
    members = [M for M in mods if wc_member(M, W)]
    assert [M.dim for M in members] == [1, 2]  # O_q and O_q + O_q
    assert serre_and_sat(W) == SerreClass(A, frozenset({0}))


def test_fbn_witnesses_on_fixture_modules():
    A = T2(GF(3))
    sample = [indecomposable_projective(A, 0), direct_sum(simple_module(A, 0), simple_module(A, 1)).module]
    rep = fbn_check(A, sample)
    assert rep.enough_closed and all(1 <= len(w) <= 2 for w in rep.witnesses)


@pytest.mark.parametrize("make", [T2, KK, DUAL])
def test_primes_match_indecomposable_injectives(make, field):
    A = make(field)
    table = prime_injective_table(A)
    assert len(table) == A.structure.simple_count == len(A.structure.prime_ideals)
    assert all(row.certificate.local for row in table)


def test_ideal_generated_zero_locus_roundtrip():
    A = T2(GF(2))
    I = ideal_generated(A, [A.basis_vector(1)])
    assert ideal_of(zero_locus(I)) == I
    assert zero_locus(I).simples() == frozenset({0, 1})
