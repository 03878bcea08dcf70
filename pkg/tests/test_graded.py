import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncspaces.algebra import KK, T2, find_basis_matching, radical, truncated_polynomial, upper_triangular
from ncspaces.graded import (
    GradedError,
    InsufficientTruncation,
    central_divisor,
    degree_zero_localization,
    graded_isomorphic,
    graded_line,
    graded_line_block,
    graded_plane,
    graded_presentation,
    graded_regular,
    hilbert,
    point_tails,
    rees,
    shift,
    tails_iso_bounded,
    truncate,
)
from ncspaces.linalg import GF, QQ
from ncspaces.modules import simple_module


def test_hilbert_functions_frozen():
    f = GF(3)
    assert graded_presentation([("a", 1), ("b", 1)], [], 5, f).dims == (1, 2, 4, 8, 16, 32)
    assert graded_presentation([("x", 1), ("y", 2)], [{"x*y": 1, "y*x": -1}], 8, f).dims == (1, 1, 2, 2, 3, 3, 4, 4, 5)
    assert graded_plane(8, QQ).dims == tuple(range(1, 10))
    assert graded_line(4, f).dims == (1, 1, 1, 1, 1)


@given(st.integers(1, 2), st.integers(0, 5))
def test_quantum_plane_hilbert(q, bound):
    # u t = q t u has the same Hilbert function as the commutative plane
    A = graded_presentation([("u", 1), ("t", 1)], [{"u*t": 1, "t*u": -q}], bound, GF(3))
    assert A.dims == tuple(range(1, bound + 2))


def test_plane_is_commutative_and_associative(field):
    A = graded_plane(4, field)
    _, u = A.generator_vector("u")
    _, t = A.generator_vector("t")
    assert np.array_equal(A.multiply(1, u, 1, t), A.multiply(1, t, 1, u))
    uu = A.multiply(1, u, 1, u)
    assert np.array_equal(A.multiply(2, uu, 1, t), A.multiply(1, u, 2, A.multiply(1, u, 1, t)))
    with pytest.raises(InsufficientTruncation):
        A.multiply(3, A.element(3, {A.labels[3][0]: 1}), 2, A.element(2, {A.labels[2][0]: 1}))


def test_generator_order_does_not_change_isomorphism_class():
    f = GF(2)
    A = graded_plane(5, f)
    B = graded_presentation([("t", 1), ("u", 1)], [{"t*u": 1, "u*t": 1}], 5, f)
    assert graded_isomorphic(A, B) is not None
    free = graded_presentation([("a", 1), ("b", 1)], [], 5, f)
    assert graded_isomorphic(A, free) is None


@pytest.mark.parametrize("name,gen,coker", [("GL", "x", [1, 0, 0, 0, 0, 0, 0, 0, 0]), ("UT", "t", [1] * 9)])
def test_divisor_sequences(field, name, gen, coker):
    A = graded_line(8, field) if name == "GL" else graded_plane(8, field)
    d, z = A.generator_vector(gen)
    rep = central_divisor(A, z, d, graded_regular(A))
    assert rep.ok
    assert rep.kernel_dims == (0,) * 9
    assert list(hilbert(rep.cokernel)) == coker


def test_non_central_divisor_rejected():
    A = graded_presentation([("a", 1), ("b", 1)], [], 4, GF(2))
    d, z = A.generator_vector("a")
    with pytest.raises(GradedError):
        central_divisor(A, z, d, graded_regular(A))


def test_shift_and_truncate():
    M = graded_regular(graded_plane(6, GF(2)))
    assert hilbert(truncate(M, 3)) == (4, 5, 6, 7)
    assert shift(M, -1).lo == 1 and hilbert(shift(M, -1))[:2] == (1, 2)


@pytest.mark.parametrize("D,target", [((0, 1), "T2"), ((0, 1, 2), "UT3"), ((4, 5, 6), "UT3"), ((0, 2), "KK")])
def test_line_blocks(field, D, target):
    B = graded_line_block(D, field)
    ref = {"T2": T2(field), "UT3": upper_triangular(3, field), "KK": KK(field)}[target]
    assert find_basis_matching(B, ref) is not None


def test_line_block_with_a_gap_splits():
    B = graded_line_block((0, 1, 3), GF(2))
    assert B.dim == 4 and radical(B).dim == 1 and B.structure.simple_count == 3


def test_rees_of_polynomial_is_plane(field):
    R = truncated_polynomial(9, field)
    G = rees(R, ["x"], 8)
    assert G.dims == tuple(range(1, 10))
    assert graded_isomorphic(G, graded_plane(8, field)) is not None


def test_degree_zero_localizations():
    f = GF(3)
    GL = graded_line(8, f)
    L = degree_zero_localization(GL, GL.generator_vector("x")[1], 1)
    assert L.algebra is not None and L.algebra.dim == 1
    UT = graded_plane(8, f)
    L = degree_zero_localization(UT, UT.generator_vector("t")[1], 1)
    assert L.polynomial_in == "u/z" and L.filtration_dims == tuple(range(1, 10))


def test_point_tails_over_t2(field):
    A = T2(field)
    tails = [point_tails(A, simple_module(A, i), ["e12", "e11"], 6) for i in range(2)]
    assert all(hilbert(V) == (1,) * 7 for V in tails)
    assert not tails_iso_bounded(tails[0], tails[1], 5)
    assert tails_iso_bounded(tails[0], tails[0], 5).from_degree == 0


def test_tails_need_enough_window():
    V = point_tails(T2(GF(2)), simple_module(T2(GF(2)), 0), ["e12", "e11"], 3)
    with pytest.raises(InsufficientTruncation):
        tails_iso_bounded(V, V, 3)


def test_rees_needs_exhaustive_filtration():
    with pytest.raises(GradedError, match="not exhaustive"):
        rees(T2(GF(2)), ["e12"], 3)
