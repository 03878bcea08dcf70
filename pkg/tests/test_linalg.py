from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ncspaces.linalg import GF, QQ, Field, FieldMismatch, Matrix, Subspace, field_from_tag, field_tag, rref_solve
from ncspaces.linalg import _kernels as K

small_prime = st.sampled_from([2, 3, 5, 7, 32003])


def int_matrix(rows=st.integers(0, 6), cols=st.integers(0, 6), lo=-5, hi=5):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(rc)
        )
    )


def test_rref_frozen_rational():
    a = QQ.array([[2, 4, 1], [1, 2, 0], [3, 6, 1]])
    R, piv = QQ.rref(a)
    assert piv == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]
    assert all(isinstance(x, Fraction) for x in R.ravel())


def test_rref_frozen_mod_3():
    R, piv = GF(3).rref(np.array([[1, 2, 0], [2, 1, 1], [0, 0, 2]]))
    assert piv == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


@given(int_matrix())
def test_rational_rref_matches_sympy(a):
    R, piv = QQ.rref(QQ.array(a))
    oracle, opiv = sympy.Matrix(a.tolist()).rref() if a.size else (sympy.zeros(*a.shape), ())
    assert piv == list(opiv)
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in R.tolist()] == oracle.tolist()[: len(piv)]


@given(int_matrix(lo=0, hi=40), small_prime)
def test_modp_kernels_agree(a, p):
    a = a % p
    w1, w2 = a.copy(), a.copy()
    r1, p1 = K.rref_modp_numba(w1, p)
    r2, p2 = K.rref_modp_numpy(w2, p)
    assert r1 == r2 and list(p1) == list(p2)
    assert np.array_equal(w1, w2)


@given(int_matrix(lo=0, hi=50), small_prime)
def test_modp_rank_matches_naive_elimination(a, p):
    f = GF(p)
    a = a % p
    m = a.copy()
    rank = 0
    for c in range(m.shape[1] if m.size else 0):
        rows = [r for r in range(rank, m.shape[0]) if m[r, c] % p]
        if not rows:
            continue
        m[[rank, rows[0]]] = m[[rows[0], rank]]
        m[rank] = m[rank] * pow(int(m[rank, c]), -1, p) % p
        for r in range(m.shape[0]):
            if r != rank:
                m[r] = (m[r] - m[r, c] * m[rank]) % p
        rank += 1
    assert f.rank(a) == rank


@given(int_matrix(rows=st.integers(1, 5), cols=st.integers(1, 5)))
def test_nullspace_is_kernel(a):
    for f in (GF(5), QQ):
        x = f.array(a % 5 if f.p else a)
        N = f.nullspace(x)
        assert f.is_zero(f.matmul(x, N.T)) if N.shape[0] else True
        assert N.shape[0] + f.rank(x) == x.shape[1]


@given(int_matrix(rows=st.just(4), cols=st.just(4)))
def test_inverse_roundtrip(a):
    for f in (GF(7), QQ):
        x = f.array(a % 7 if f.p else a)
        if f.det_nonzero(x):
            assert np.array_equal(f.matmul(x, f.inverse(x)), f.eye(4))
        else:
            with pytest.raises(ValueError):
                f.inverse(x)


def test_rational_matmul_exact():
    a = QQ.array([[Fraction(1, 3), Fraction(-2, 7)], [5, Fraction(1, 2)]])
    b = QQ.array([[Fraction(3, 1), 0], [Fraction(7, 2), 1]])
    assert QQ.matmul(a, b).tolist() == [[Fraction(0), Fraction(-2, 7)], [Fraction(67, 4), Fraction(1, 2)]]


def test_subspace_lattice_ops():
    f = GF(2)
    U = Subspace.span(f, 3, np.array([[1, 0, 0], [0, 1, 0]]))
    V = Subspace.span(f, 3, np.array([[0, 1, 0], [0, 0, 1]]))
    assert (U & V).basis.tolist() == [[0, 1, 0]]
    assert (U + V) == Subspace.full(f, 3)
    assert (U & V) <= U and not (U <= V)
    assert Subspace.span(f, 3, np.array([[1, 1, 0], [0, 1, 0]])) == U


def test_rref_solve_particular_and_inconsistent():
    A = Matrix.of(QQ, [[1, 2], [2, 4]])
    res = rref_solve(A, [3, 6])
    assert res.rank == 1 and res.particular.tolist() == [3, 0] and res.kernel.dim == 1
    assert rref_solve(A, [3, 7]).particular is None


def test_field_tags_and_validation():
    assert field_from_tag({"Fp": 5}) == GF(5) and field_from_tag("Q") is QQ and field_from_tag("F3") == GF(3)
    assert field_tag(GF(7)) == {"Fp": 7} and field_tag(QQ) == "Q"
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(2147483647)
    with pytest.raises(FieldMismatch):
        GF(2).check(GF(3))


def test_numpy_fallback_flag(monkeypatch):
    monkeypatch.setattr(K, "USE_NUMBA", False)
    R, piv = GF(5).rref(np.array([[2, 4], [1, 3]]))
    assert piv == [0, 1] and R.tolist() == [[1, 0], [0, 1]]
