import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncspaces.algebra import (
    DUAL,
    KK,
    T2,
    Algebra,
    AlgebraError,
    Ideal,
    NotSplitError,
    QuiverPresentation,
    compile_quiver,
    corner_algebra,
    find_basis_matching,
    full_matrix_algebra,
    ideal_combine,
    ideal_generated,
    ideal_power,
    quotient_algebra,
    radical,
    truncated_polynomial,
    upper_triangular,
)
from ncspaces.linalg import GF, QQ, Subspace
from ncspaces.sampling import all_ideals, random_algebra
from ncspaces.subspaces import ClosedSubspace


def is_associative(A):
    f = A.field
    for i in range(A.dim):
        for j in range(A.dim):
            for k in range(A.dim):
                a, b, c = (A.basis_vector(x) for x in (i, j, k))
                if np.any(A.mul(A.mul(a, b), c) != A.mul(a, A.mul(b, c))):
                    return False
    return f is not None


def test_fixture_shapes(field):
    # frozen: (dim, dim rad, #simples)
    assert [(A.dim, radical(A).dim, A.structure.simple_count) for A in (T2(field), KK(field), DUAL(field))] == [
        (3, 1, 2),
        (2, 0, 2),
        (2, 1, 1),
    ]


def test_t2_radical_and_products():
    A = T2(GF(2))
    assert radical(A).describe() == ["e12"]
    e11, e12, e22 = (A.basis_vector(i) for i in range(3))
    assert np.array_equal(A.mul(e11, e12), e12)
    assert not np.any(A.mul(e12, e11))
    assert ideal_power(radical(A), 2).dim == 0


def test_t2_has_five_ideals():
    labels = sorted(tuple(I.describe()) for I in all_ideals(T2(GF(2))))
    assert labels == [(), ("e11", "e12"), ("e11", "e12", "e22"), ("e12",), ("e12", "e22")]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_upper_triangular_structure(n):
    A = upper_triangular(n, QQ)
    assert is_associative(A)
    assert radical(A).dim == n * (n - 1) // 2
    assert A.structure.simple_count == n


def test_matrix_algebra_is_simple_with_one_block():
    S = full_matrix_algebra(2, GF(3)).structure
    assert S.radical.dim == 0 and S.block_sizes == (2,) and S.simple_count == 1


def test_not_split_detected():
    f = GF(2)
    t = f.zeros(2, 2, 2)
    t[0, 0, 0] = t[0, 1, 1] = t[1, 0, 1] = 1
    t[1, 1, 0] = t[1, 1, 1] = 1  # x^2 = x + 1: GF(4)
    A = Algebra(f, ["1", "x"], t, [1, 0], "GF4")
    assert is_associative(A)
    assert not A.structure.split
    with pytest.raises(NotSplitError):
        A.structure.require_split()


@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_random_quiver_radical_is_arrow_ideal(seed, p):
    A = random_algebra(np.random.default_rng(seed), GF(p), max_dim=10)
    nv = A.structure.simple_count
    assert radical(A).dim == A.dim - nv
    assert all(b == 1 for b in A.structure.block_sizes)


def test_quiver_compile_frozen():
    Q = QuiverPresentation((1, 2, 3), ((1, 2, "a"), (2, 3, "b"), (1, 3, "c")), (([["a", "b"], 1], [["c"], 0]),), 2, GF(3))
    A = compile_quiver(Q, "Q3")
    assert A.dim == 6  # three vertices, three arrows, the path ab killed by the relation
    assert is_associative(A)


def test_quiver_a2_is_t2():
    A = compile_quiver(QuiverPresentation((1, 2), ((1, 2, "a"),), (), 1, GF(2)))
    assert find_basis_matching(A, T2(GF(2))) is not None
    assert find_basis_matching(A, KK(GF(2)).permuted([0, 1])) is None


def test_ideal_combine_and_quotient():
    A = T2(QQ)
    I = ideal_generated(A, [A.basis_vector(0)])
    J = ideal_generated(A, [A.basis_vector(2)])
    assert ideal_combine("sum", I, J).dim == 3
    assert ideal_combine("intersect", I, J).describe() == ["e12"]
    assert ideal_combine("product", I, J).describe() == ["e12"]
    assert ideal_combine("product", J, I).dim == 0
    assert quotient_algebra(A, radical(A)).algebra.dim == 2
    with pytest.raises(ValueError):
        ideal_combine("xor", I, J)


def test_corner_of_t2():
    A = T2(GF(2))
    C = corner_algebra(A, A.basis_vector(2))
    assert C.algebra.dim == 1 and C.Ae.dim == 2 and C.eA.dim == 1


def test_non_ideal_rejected():
    A = T2(GF(2))
    I = Ideal(A, Subspace.span(A.field, 3, A.basis_vector(0).reshape(1, -1)))
    assert not I.is_two_sided()
    with pytest.raises(AlgebraError):
        ClosedSubspace(A, I)


def test_opposite_and_truncated_polynomial():
    A = T2(GF(3))
    assert find_basis_matching(A.opposite(), A) is not None  # T2 is self-opposite up to relabelling
    R = truncated_polynomial(4, GF(3))
    assert R.labels == ("1", "x", "x^2", "x^3") and radical(R).dim == 3
