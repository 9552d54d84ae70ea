from fractions import Fraction

import pytest

from hopf_einstein import linalg as la
from hopf_einstein.duality import (TABLE3_SOURCE, DualityError, cartan_involution, compact_dual, dual_space,
                                   einstein_transfers, greedy_rank, killing_compact, verify_table3)
from hopf_einstein.einstein import canonical_space, einstein_constant, einstein_residual, ricci, row_space
from hopf_einstein.fibrations import build_fibration, t_zero, variation
from hopf_einstein.groups import build
from hopf_einstein.transitivity import ActionInstance, table_row


@pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (3, 2), (4, 4), (5, 0)])
def test_so_split_is_block_decomposition(p, q):
    data = cartan_involution(build(f"so({p},{q})"))
    assert data.dim_plus == p * (p - 1) // 2 + q * (q - 1) // 2
    assert data.dim_plus + data.dim_minus == (p + q) * (p + q - 1) // 2


@pytest.mark.parametrize("spec,plus,minus", [("su(2,1)", 4, 4), ("su_pi(2)", 1, 2), ("sp(1,1)", 6, 4),
                                             ("g2_star", 6, 8), ("spin(4,3)", 9, 12), ("spin(8,1)", 28, 8)])
def test_split_dimensions(spec, plus, minus):
    data = cartan_involution(build(spec))
    assert (data.dim_plus, data.dim_minus) == (plus, minus)
    assert data.is_involution()
    assert data.is_automorphism()
    assert data.split_brackets_ok()
    assert data.killing_split_ok()


@pytest.mark.parametrize("spec,dim", [("so(2,1)", 3), ("so(4,1)", 10), ("su_pi(3)", 8), ("sp_pi(2)", 10),
                                      ("spin(5,4)", 36), ("g2_star", 14)])
def test_compact_dual(spec, dim):
    C = compact_dual(build(spec))
    assert C.dim == dim
    assert la.signature(C.killing_form()) == (0, dim, 0)
    assert C.jacobi_residual_zero()


def test_compact_input_is_its_own_dual():
    A = build("spin(7,0)")
    data = cartan_involution(A)
    assert data.dim_minus == 0
    assert data.dual.num.tolist() == data.adapted.structure.num.tolist()


def test_reductive_dual_has_center_as_radical():
    C = compact_dual(build("u(1,1)"))
    assert killing_compact(C)
    assert la.signature(C.killing_form())[2] == C.center().dim == 1


@pytest.mark.parametrize("spec,rank", [("so(4,1)", 2), ("su(2,1)", 2), ("sp(1,1)", 2), ("g2_star", 2),
                                       ("spin(4,3)", 3), ("spin(8,1)", 4), ("u(1,1)", 2)])
def test_greedy_rank(spec, rank):
    assert greedy_rank(compact_dual(build(spec))) == rank


def test_dual_of_riemannian_hyperbolic_space():
    sp = row_space(table_row(1, 1, {"n": 4, "r": 0}))
    dual = dual_space(sp)
    assert dual.space.signature == (4, 0)
    assert (dual.dims["m_plus"], dual.dims["m_minus"]) == (0, 4)
    assert einstein_constant(dual.space) == 3


def test_dual_of_sp11_quotient():
    sp = row_space(table_row(1, 11))
    dual = dual_space(sp)
    assert sp.signature == (4, 3)
    assert dual.space.signature == (7, 0)
    assert einstein_constant(dual.space) == 6


def test_einstein_transfers_to_dual():
    fib = build_fibration("piH", 1, 0)
    assert einstein_transfers(variation(fib, Fraction(1, 5))) == (True, True)
    assert einstein_transfers(variation(fib, Fraction(2))) == (False, False)
    for id_ in ("piB", "piCH", "piO2"):
        f = build_fibration(id_)
        assert einstein_transfers(variation(f, t_zero(f))) == (True, True)


def test_dual_ricci_routes_agree():
    from hopf_einstein.curvature import ricci_from_curvature
    dual = dual_space(variation(build_fibration("piCB", 1, 0), Fraction(3))).space
    assert ricci(dual) == ricci_from_curvature(dual)
    assert einstein_residual(dual) > 0


def test_non_invariant_isotropy_is_rejected():
    A = build("so(2,1)")
    a = ActionInstance(2, 0, A, (Fraction(5, 3), Fraction(4, 3), Fraction(0)))
    with pytest.raises(DualityError):
        dual_space(canonical_space(a))


def test_dual_space_needs_the_matrix_algebra():
    fib = build_fibration("piH", 1, 0)
    with pytest.raises(DualityError):
        dual_space(fib.fibre_space())


@pytest.mark.parametrize("row", sorted(TABLE3_SOURCE))
def test_table3_minimal(row):
    rep = verify_table3(row)
    assert rep.passed, rep.failures()
    assert rep.to_json()["pass"]


def _second(row):
    if row == 1:
        return {"n": 6, "r": 2}
    t, r = TABLE3_SOURCE[row]
    params = table_row(t, r).params
    if "s" in params:
        return {"m": 2, "s": 1}
    if "m" in params:
        return {"m": 2}
    return None


@pytest.mark.parametrize("row", [r for r in sorted(TABLE3_SOURCE) if _second(r) is not None])
def test_table3_second_parameters(row):
    rep = verify_table3(row, _second(row))
    assert rep.passed, rep.failures()


def test_table3_examples():
    rep = verify_table3(1, {"n": 4, "r": 1})
    assert (rep.dims["g"], rep.dims["h"], rep.dims["m"]) == (10, 6, 4)
    rep = verify_table3(9)
    assert (rep.dims["g"], rep.dims["h"], rep.dims["m"]) == (36, 21, 15)
    rep = verify_table3(21, {"m": 2})
    assert (rep.dims["g"], rep.dims["h"], rep.dims["m"]) == (8, 4, 4)


def test_table3_unknown_row():
    with pytest.raises(DualityError):
        verify_table3(25)
