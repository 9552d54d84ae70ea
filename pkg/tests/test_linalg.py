from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from hopf_einstein import linalg as la
from oracles import float_signature

small = st.integers(min_value=-6, max_value=6)


def int_matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(lambda c: int_matrices(r, c))))
def test_nullspace_is_kernel_and_rank_nullity(rows):
    M = la.qmat(rows)
    N = la.nullspace(M)
    assert la.is_zero(M * N) if N.ncols() else True
    assert la.rank(M) + N.ncols() == M.ncols()
    for j in range(N.ncols()):
        col = [N[i, j] for i in range(N.nrows()) if N[i, j] != 0]
        assert col[0] > 0


@given(st.integers(1, 6).flatmap(lambda n: int_matrices(n, n)))
def test_signature_matches_float_eigenvalues(rows):
    A = np.array(rows)
    S = A + A.T
    assert la.signature(la.from_int_array(S)) == float_signature(S)


@given(st.integers(1, 4).flatmap(lambda n: int_matrices(n, n)), st.integers(1, 12))
def test_int_parts_round_trip(rows, den):
    M = la.from_int_array(np.array(rows), den)
    num, d = la.int_parts(M)
    assert la.from_int_array(num, d) == M


def test_solve_in_span():
    B = la.qmat([[1, 0], [1, 1], [0, 2]])
    v = B * la.qmat([[Fraction(1, 3)], [-2]])
    x = la.solve_in_span(B, v)
    assert x == la.qmat([[Fraction(1, 3)], [-2]])
    assert la.solve_in_span(B, la.qmat([[1], [0], [0]])) is None


def test_signature_of_diagonal_forms():
    assert la.signature(la.qdiag([-1, -1, 1, 0])) == (1, 2, 1)
    assert la.signature(la.qmat([[0, 1], [1, 0]])) == (1, 1, 0)


def test_frac_str():
    assert la.frac_str(Fraction(-3, 11)) == "-3/11"
    assert la.frac_str(Fraction(4)) == "4"


def test_int_einsum_matches_numpy():
    rng = np.random.default_rng(3)
    a = rng.integers(-5, 5, (3, 4))
    b = rng.integers(-5, 5, (4, 2))
    assert np.array_equal(la.int_einsum("ij,jk->ik", a, b), a @ b)
