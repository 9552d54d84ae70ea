import numpy as np
import pytest

from hopf_einstein import linalg as la
from hopf_einstein.clifford import (CliffordError, build_clifford, even_realization, invariant_spinor_form,
                                    irreducible_module_dim, spin_algebra, spinor_module, word_matrix,
                                    word_square, words_anticommute)

# real Clifford algebras Cl(p, q) (p generators squaring to +1) by (p - q) mod 8:
# (division algebra dimension, number of simple summands)
CLASSIFICATION = {0: (1, 1), 1: (1, 2), 2: (1, 1), 3: (2, 1), 4: (4, 1), 5: (4, 2), 6: (4, 1), 7: (2, 1)}

PAIRS = [(p, n - p) for n in range(1, 10) for p in range(n + 1)]


def _irreducible_from_table(p, q):
    d, s = CLASSIFICATION[(p - q) % 8]
    k2 = 2 ** (p + q) // (s * d)
    k = int(round(k2 ** 0.5))
    assert k * k == k2
    return k * d


@pytest.mark.parametrize("p,q", PAIRS)
def test_irreducible_dimension_matches_classification(p, q):
    assert irreducible_module_dim(p, q) == _irreducible_from_table(p, q)


@pytest.mark.parametrize("p,q", PAIRS)
def test_anticommutation(p, q):
    rep = build_clifford(p, q)
    assert rep.anticommutation_holds()
    assert rep.size >= irreducible_module_dim(p, q)
    assert rep.size <= 2 * max(2, irreducible_module_dim(p, q))


def test_words():
    assert word_square("X") == 1 and word_square("E") == -1
    assert words_anticommute("XI", "ZI")
    assert not words_anticommute("XX", "ZZ")
    assert np.array_equal(word_matrix("E") @ word_matrix("E"), -np.eye(2, dtype=np.int64))


def test_bad_sizes():
    with pytest.raises(CliffordError):
        build_clifford(0, 0)
    with pytest.raises(CliffordError):
        build_clifford(10, 0)


@pytest.mark.parametrize("p,q", [(3, 0), (4, 3), (7, 0), (8, 1), (5, 4), (9, 0)])
def test_spin_algebra_dimension_and_form(p, q):
    rep = build_clifford(p, q)
    S = spin_algebra(rep)
    n = p + q
    assert S.dim == n * (n - 1) // 2
    B = invariant_spinor_form(rep)
    assert np.array_equal(B, B.T)
    assert S.preserves_form(la.from_int_array(B))


@pytest.mark.parametrize("p,q,split,size,neg", [(9, 0, 0, 16, 16), (8, 1, 8, 16, 8), (5, 4, 0, 16, 8),
                                                 (7, 0, None, 8, 8), (4, 3, None, 8, 4)])
def test_spinor_modules(p, q, split, size, neg):
    mod = spinor_module(p, q, split)
    assert len(mod.form) == size
    assert mod.negatives == neg
    assert mod.algebra.preserves_form(la.qdiag(mod.form))
    assert mod.algebra.dim == (p + q) * (p + q - 1) // 2


def test_no_symmetric_form_for_sl2():
    # spin(2,1) = sl(2,R) preserves only a skew form on its 2-dim spinors
    with pytest.raises(CliffordError):
        invariant_spinor_form(build_clifford(2, 1))


def test_half_spinor_split_is_balanced():
    mod = spinor_module(9, 0, 0)
    assert sorted(set(mod.half)) == [-1, 1]
    assert mod.half.count(1) == 8


def test_split_generator_without_real_split():
    with pytest.raises(CliffordError):
        spinor_module(8, 1, 0)


def test_even_realization_relations():
    ev = even_realization(4, 3)
    for i in range(7):
        for j in range(i + 1, 7):
            e = ev.pair(i, j)
            assert np.array_equal(e @ e, -np.eye(e.shape[0], dtype=e.dtype) * (ev.rep.signs[i] * ev.rep.signs[j]))
