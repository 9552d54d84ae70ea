from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_einstein import linalg as la
from hopf_einstein.einstein import einstein_residual
from hopf_einstein.fibrations import (CATALOG, FibrationError, build_fibration, einstein_scan,
                                      enumerate_einstein_metrics, lambda_values, parse_space_tag, t_zero,
                                      expected_count, variation, variation_metric)

ALL = sorted(CATALOG)


@pytest.mark.parametrize("id_,k,p,q", [("piH", 3, 3, 4), ("piB", 3, 3, 4), ("piC", 0, 1, 2), ("piA", 0, 1, 2),
                                       ("piO1", 21, 7, 8), ("piO2", 21, 7, 8), ("piOprime", 21, 7, 8),
                                       ("piCH", 4, 2, 4), ("piCB", 4, 2, 4), ("piAB", 4, 2, 4)])
def test_dimensions(id_, k, p, q):
    fib = build_fibration(id_)
    assert (fib.dim_k, fib.p, fib.q) == (k, p, q)


@pytest.mark.parametrize("id_", ALL)
def test_totally_geodesic_fibres(id_):
    assert build_fibration(id_).vertical_bracket_horizontal_part_zero()


@pytest.mark.parametrize("id_", ["piH", "piB", "piO1", "piO2", "piOprime", "piCH", "piCB", "piAB"])
def test_oneill_tensor_nonzero(id_):
    assert build_fibration(id_).oneill_nonzero()


@pytest.mark.parametrize("m,s", [(1, 0), (1, 1), (2, 0), (2, 1)])
def test_quaternionic_lambdas(m, s):
    fib = build_fibration("piH", m, s)
    assert lambda_values(fib) == (-(4 * m + 8), -2)
    assert t_zero(fib) == Fraction(1, 2 * m + 3)


@pytest.mark.parametrize("m", [1, 2])
def test_para_quaternionic_lambdas(m):
    fib = build_fibration("piB", m)
    assert lambda_values(fib) == (-(4 * m + 8), -2)
    assert t_zero(fib) == Fraction(1, 2 * m + 3)


@pytest.mark.parametrize("id_", ["piO1", "piO2", "piOprime"])
def test_octonionic_lambdas(id_):
    fib = build_fibration(id_)
    assert lambda_values(fib) == (-28, -6)
    assert t_zero(fib) == Fraction(3, 11)


@pytest.mark.parametrize("id_,m", [("piCH", 1), ("piCB", 1), ("piAB", 1), ("piCH", 2), ("piCB", 2), ("piAB", 2)])
def test_twistor_lambdas(id_, m):
    fib = build_fibration(id_, m)
    assert lambda_values(fib) == (-(4 * m + 8), -4)
    assert t_zero(fib) == Fraction(1, m + 1)


@pytest.mark.parametrize("id_,m,s", [("piC", 1, 0), ("piC", 2, 1), ("piA", 1, 0), ("piA", 2, 0)])
def test_one_dimensional_fibres_have_no_t0(id_, m, s):
    fib = build_fibration(id_, m, s)
    assert lambda_values(fib)[1] == 0
    assert t_zero(fib) is None


SCANS = [("piH", 1, 0), ("piH", 2, 1), ("piB", 1, 0), ("piB", 2, 0), ("piC", 1, 0), ("piC", 2, 1),
         ("piA", 1, 0), ("piA", 2, 0), ("piCH", 1, 0), ("piCH", 2, 0), ("piCB", 1, 0), ("piCB", 2, 0),
         ("piAB", 1, 0), ("piAB", 2, 0), ("piO1", 1, 0), ("piO2", 1, 0), ("piOprime", 1, 0)]


@pytest.mark.parametrize("id_,m,s", SCANS)
def test_scan_equals_one_and_t0(id_, m, s):
    fib = build_fibration(id_, m, s)
    t0 = t_zero(fib)
    res = einstein_scan(fib)
    assert set(res.roots) == {Fraction(1)} | ({t0} if t0 is not None else set())
    assert all(v == 0 for v in res.residuals.values())


def test_scan_with_other_samples():
    fib = build_fibration("piH", 1, 0)
    res = einstein_scan(fib, [Fraction(k, 3) for k in range(1, 6)])
    assert res.roots == [Fraction(1, 5), Fraction(1)]
    with pytest.raises(FibrationError):
        einstein_scan(fib, [Fraction(1), Fraction(2)])


@settings(max_examples=15)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=8).filter(
    lambda t: t not in (0, 1, Fraction(1, 5))))
def test_non_einstein_away_from_roots(t):
    assert einstein_residual(variation(build_fibration("piH", 1, 0), t)) > 0


def test_variation_blocks():
    fib = build_fibration("piH", 1, 0)
    assert variation_metric(fib, 1) == fib.metric
    g = variation_metric(fib, Fraction(-1))
    assert la.signature(la.submatrix(fib.metric, range(3), range(3)))[:2] == (0, 3)
    assert la.signature(la.submatrix(g, range(3), range(3)))[:2] == (3, 0)
    assert la.submatrix(g, range(3, 7), range(3, 7)) == fib.base_metric
    with pytest.raises(FibrationError):
        variation(fib, 0)


def test_bad_fibrations():
    with pytest.raises(FibrationError):
        build_fibration("piZ")
    with pytest.raises((FibrationError, ValueError)):
        build_fibration("piH", 1, 2)


def test_enumerate_h15_7_descriptors():
    metrics = enumerate_einstein_metrics("H:15:7")
    assert [d.get("fibration", "canonical") for d in metrics] == ["canonical", "piH", "piB", "piO2", "piOprime"]
    assert [d["t"] for d in metrics] == ["1", "1/9", "1/9", "3/11", "3/11"]


def test_enumerate_h15_15_descriptors():
    metrics = enumerate_einstein_metrics("H:15:15")
    assert [d.get("fibration", "canonical") for d in metrics] == ["canonical", "piH", "piO1"]


@pytest.mark.parametrize("tag", ["H:4:1", "CH:4:2", "BP:1", "AP:2", "H:7:3", "CH:3:1", "AP:3", "H:15:7",
                                 "H:15:15", "H:11:11", "CH:5:2", "H:6:2", "CH:2:1"])
def test_counts_agree_with_stated_clauses(tag):
    assert len(enumerate_einstein_metrics(tag)) == expected_count(tag)


def test_uncovered_tags():
    assert expected_count("HH:1:0") is None
    assert len(enumerate_einstein_metrics("HH:1:0")) == 1


@pytest.mark.parametrize("tag", ["X:1", "H:15", "H:a:b", "H:3:5", "AP:1:2"])
def test_bad_tags(tag):
    with pytest.raises(FibrationError):
        parse_space_tag(tag)
