from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopf_einstein import linalg as la
from hopf_einstein.curvature import nomizu_maps, ricci_from_curvature, sectional_numerator
from hopf_einstein.einstein import (EinsteinError, canonical_space, einstein_constant, einstein_residual,
                                    einstein_tensor, ricci, row_space, scalar_curvature)
from hopf_einstein.fibrations import build_fibration, variation
from hopf_einstein.groups import build
from hopf_einstein.transitivity import TABLE1, ActionInstance, table_row


@pytest.mark.parametrize("row", sorted(TABLE1))
def test_canonical_spaces_have_constant_curvature(row):
    sp = row_space(table_row(1, row))
    n = sp.dim
    ric = ricci(sp)
    assert ric == sp.metric * -(n - 1)
    assert scalar_curvature(sp) == -n * (n - 1)
    assert einstein_residual(sp) == 0
    assert ric == ricci_from_curvature(sp)


@pytest.mark.parametrize("n,r", [(2, 0), (3, 1), (4, 0), (4, 2), (5, 3)])
def test_signature_of_canonical_metric(n, r):
    sp = row_space(table_row(1, 1, {"n": n, "r": r}))
    assert sp.signature == (n - r, r)


def test_sp11_canonical_signature():
    assert row_space(table_row(1, 11)).signature == (4, 3)


def test_metric_is_pullback_of_ambient_form():
    a = table_row(1, 1, {"n": 3, "r": 1}).action
    sp = canonical_space(a)
    x0 = a.point
    J = la.qdiag(a.form)
    for i in range(sp.dim):
        v = sp.algebra.qmatrix(sp.dim_h + i) * x0
        assert sp.metric[i, i] == (v.transpose() * J * v)[0, 0]


def test_sectional_curvature_is_minus_one():
    sp = row_space(table_row(1, 1, {"n": 3, "r": 0}))
    g = sp.metric
    for a in range(sp.dim):
        for b in range(sp.dim):
            if a == b:
                continue
            area = g[a, a] * g[b, b] - g[a, b] ** 2
            assert sectional_numerator(sp, a, b) == -area


@pytest.mark.parametrize("row", [2, 5, 11, 14])
def test_reductive_invariants(row):
    sp = row_space(table_row(1, row))
    assert all(sp.invariants().values())


def test_ricci_is_symmetric_and_ad_h_invariant_off_einstein():
    sp = variation(build_fibration("piH", 1, 0), Fraction(2))
    ric = ricci(sp)
    assert ric == ric.transpose()
    for z in range(sp.dim_h):
        A = sp.ad_m(z)
        assert la.is_zero(A.transpose() * ric + ric * A)
    assert ric == ricci_from_curvature(sp)
    assert einstein_residual(sp) > 0
    with pytest.raises(EinsteinError):
        einstein_constant(sp)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(lambda c: c != 0))
def test_ricci_is_homothety_invariant(c):
    sp = variation(build_fibration("piH", 1, 0), Fraction(3))
    scaled = sp.with_metric(sp.metric * la.to_fmpq(c))
    assert ricci(scaled) == ricci(sp)
    # E is unchanged while g^-1 scales by 1/c
    assert einstein_residual(scaled) == einstein_residual(sp) / abs(c)
    einstein = variation(build_fibration("piH", 1, 0), Fraction(1, 5))
    assert einstein_residual(einstein.with_metric(einstein.metric * la.to_fmpq(c))) == 0


@given(st.fractions(min_value=-5, max_value=5, max_denominator=9).filter(lambda t: t != 0))
def test_two_ricci_routes_agree_on_variations(t):
    sp = variation(build_fibration("piCH", 1, 0), t)
    assert ricci(sp) == ricci_from_curvature(sp)


def test_einstein_tensor_is_trace_free():
    sp = variation(build_fibration("piB", 1, 0), Fraction(2))
    E = sp.inverse_metric * einstein_tensor(sp)
    assert sum((E[i, i] for i in range(sp.dim)), la.to_fmpq(0)) == 0


def test_nomizu_maps_are_metric():
    sp = variation(build_fibration("piH", 1, 0), Fraction(1, 3))
    g = sp.metric
    for L in nomizu_maps(sp):
        assert la.is_zero(L.transpose() * g + g * L)


def test_canonical_space_requires_transitivity():
    A = build("so(2,1)")
    from hopf_einstein.liealg import MatrixLieAlgebra
    import numpy as np
    sub = MatrixLieAlgebra("so(2)", A.num[2:3], A.den)
    with pytest.raises(EinsteinError):
        canonical_space(ActionInstance(2, 0, sub))
    assert np.array_equal(sub.num[0], A.num[2])
