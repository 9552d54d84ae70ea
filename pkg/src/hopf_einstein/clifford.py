"""Real Clifford representations and spin algebras on real spinor modules.

Gamma matrices are tensor products ("words") of the real 2x2 seeds

    I = 1,  X = [[0, 1], [1, 0]],  Z = [[1, 0], [0, -1]],  E = [[0, 1], [-1, 0]].

A word squares to (-1)^(number of E letters), and two words anticommute iff
the number of positions where both letters are non-I and differ is odd.  The
generators for signature (p, q) are the first solution of a depth-first
search over words in lexicographic order (letters ordered I < X < Z < E),
starting at the size of the irreducible real module.

spin(p, q) is realized on the irreducible module of the even subalgebra,
using Cl^0(p, q) = Cl(aux): with a pivot generator g_n (negative when q > 0),
f_i = g_i g_n satisfy f_i^2 = -eta_i eta_n, and g_i g_j maps to -eta_n f_i f_j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg as la
from .liealg import MatrixLieAlgebra

_SEEDS = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.int64),
    "X": np.array([[0, 1], [1, 0]], dtype=np.int64),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.int64),
    "E": np.array([[0, 1], [-1, 0]], dtype=np.int64),
}
_LETTERS = "IXZE"

# real dimension of an irreducible Cl(p, q) module, by (p - q) mod 8
_EXPONENT_SHIFT = {0: 0, 1: -1, 2: 0, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1}


class CliffordError(ValueError):
    pass


def word_matrix(word: str) -> np.ndarray:
    out = np.array([[1]], dtype=np.int64)
    for ch in word:
        out = np.kron(out, _SEEDS[ch])
    return out


def word_square(word: str) -> int:
    return -1 if word.count("E") % 2 else 1


def words_anticommute(a: str, b: str) -> bool:
    clashes = sum(1 for x, y in zip(a, b) if x != "I" and y != "I" and x != y)
    return clashes % 2 == 1


def irreducible_module_dim(p: int, q: int) -> int:
    n = p + q
    return 2 ** ((n + _EXPONENT_SHIFT[(p - q) % 8]) // 2)


def _search(signs: Sequence[int], k: int) -> list[str] | None:
    words = ["".join(w) for w in product(_LETTERS, repeat=k)][1:]
    by_sign = {1: [w for w in words if word_square(w) == 1],
               -1: [w for w in words if word_square(w) == -1]}
    chosen: list[str] = []

    def dfs(t: int) -> bool:
        if t == len(signs):
            return True
        for w in by_sign[signs[t]]:
            if all(words_anticommute(w, c) for c in chosen):
                chosen.append(w)
                if dfs(t + 1):
                    return True
                chosen.pop()
        return False

    return list(chosen) if dfs(0) else None


@lru_cache(maxsize=None)
def _generator_words(signs: tuple[int, ...]) -> tuple[str, ...]:
    p = signs.count(1)
    q = len(signs) - p
    k = max(irreducible_module_dim(p, q).bit_length() - 1, 1)
    for size in range(k, k + 3):
        found = _search(signs, size)
        if found is not None:
            return tuple(found)
    raise CliffordError(f"no word representation found for Cl({p},{q})")


@dataclass(frozen=True)
class CliffordRep:
    p: int
    q: int
    words: tuple[str, ...]
    gammas: tuple[np.ndarray, ...] = field(repr=False, compare=False)

    @property
    def signs(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q

    @property
    def size(self) -> int:
        return self.gammas[0].shape[0] if self.gammas else 1

    def anticommutation_holds(self) -> bool:
        eye = np.eye(self.size, dtype=np.int64)
        for i, gi in enumerate(self.gammas):
            for j, gj in enumerate(self.gammas):
                target = 2 * self.signs[i] * eye if i == j else 0 * eye
                if not np.array_equal(gi @ gj + gj @ gi, target):
                    return False
        return True


def build_clifford(p: int, q: int) -> CliffordRep:
    """Generators of Cl(p, q) (p squares +1, q squares -1) on a real module."""
    if p < 0 or q < 0 or p + q == 0:
        raise CliffordError("need p, q >= 0 with p + q >= 1")
    if p + q > 9:
        raise CliffordError(f"unsupported size Cl({p},{q}): p + q must be at most 9")
    words = _generator_words((1,) * p + (-1,) * q)
    return CliffordRep(p, q, words, tuple(word_matrix(w) for w in words))


@dataclass(frozen=True)
class EvenRealization:
    """The map from products of generators of Cl(p, q) into an aux Clifford module."""

    rep: CliffordRep
    aux: CliffordRep
    pivot: int
    images: tuple[np.ndarray | None, ...] = field(repr=False, compare=False)

    def pair(self, i: int, j: int) -> np.ndarray:
        """Image of g_i g_j (i != j)."""
        eta = self.rep.signs
        n = self.pivot
        if i == j:
            raise CliffordError("pair needs distinct generators")
        if j == n:
            return self.images[i]
        if i == n:
            return -self.images[j]
        return -eta[n] * (self.images[i] @ self.images[j])

    def even_product(self, indices: Sequence[int]) -> np.ndarray:
        """Image of g_{a1} g_{a2} ... for an even number of distinct generators."""
        if len(indices) % 2:
            raise CliffordError("even_product needs an even number of generators")
        out = np.eye(self.aux.size, dtype=np.int64)
        for a in range(0, len(indices), 2):
            out = out @ self.pair(indices[a], indices[a + 1])
        return out


@lru_cache(maxsize=None)
def even_realization(p: int, q: int) -> EvenRealization:
    rep = build_clifford(p, q)
    eta = rep.signs
    n = len(eta) - 1
    # aux signs f_i^2 = -eta_i eta_n, assigned to aux generators in order
    aux_signs = [-eta[i] * eta[n] for i in range(n)]
    if n == 0:
        return EvenRealization(rep, rep, n, (None,))
    aux = build_clifford(aux_signs.count(1), aux_signs.count(-1))
    pos = iter(range(aux.p))
    neg = iter(range(aux.p, aux.p + aux.q))
    images: list[np.ndarray | None] = []
    for i in range(n):
        images.append(aux.gammas[next(pos) if aux_signs[i] == 1 else next(neg)])
    images.append(None)
    return EvenRealization(rep, aux, n, tuple(images))


def spin_algebra(rep: CliffordRep) -> MatrixLieAlgebra:
    """spin(p, q): span of the bivectors g_i g_j (i < j) on the real spinor module."""
    ev = even_realization(rep.p, rep.q)
    n = rep.p + rep.q
    if n < 2:
        raise CliffordError("spin needs at least two generators")
    mats = [ev.pair(i, j) for i in range(n) for j in range(i + 1, n)]
    return MatrixLieAlgebra(f"spin({rep.p},{rep.q})", np.stack(mats))


def invariant_spinor_form(rep: CliffordRep) -> np.ndarray:
    """A nondegenerate symmetric B with b^T B + B b = 0 for every bivector b.

    Returns the first vector of an exact nullspace basis, scaled to be a
    primitive integer matrix.
    """
    ev = even_realization(rep.p, rep.q)
    n = rep.p + rep.q
    gens = [ev.pair(i, ev.pivot) for i in range(n) if i != ev.pivot]
    s = ev.aux.size
    pairs = [(a, b) for a in range(s) for b in range(a, s)]
    cols = []
    for a, b in pairs:
        S = np.zeros((s, s), dtype=np.int64)
        S[a, b] = S[b, a] = 1
        cols.append(np.concatenate([(g.T @ S + S @ g).ravel() for g in gens]))
    system = la.from_int_array(np.stack(cols, axis=1))
    null = la.nullspace(system)
    for j in range(null.ncols()):
        v = [int(la.fraction(x)) for x in la.columns(null, [j]).entries()]
        B = np.zeros((s, s), dtype=np.int64)
        for (a, b), x in zip(pairs, v):
            B[a, b] = B[b, a] = x
        if la.from_int_array(B).det() != 0:
            return B
    raise CliffordError(f"no symmetric invariant spinor form for spin({rep.p},{rep.q})")


@dataclass(frozen=True)
class SpinorModule:
    """spin(p, q) in a basis where the invariant form is diag(-1.., +1..).

    ``half`` holds the eigenvalue of the chosen volume element on each basis
    vector (all 0 when no splitting generator was requested); the base point
    is basis vector 0.
    """

    algebra: MatrixLieAlgebra
    form: tuple[int, ...]
    half: tuple[int, ...]

    @property
    def negatives(self) -> int:
        return self.form.count(-1)


def _projector_basis(ops: Sequence[np.ndarray], size: int) -> list[tuple[np.ndarray, tuple[int, ...]]]:
    found: list[tuple[np.ndarray, tuple[int, ...]]] = []
    eye = np.eye(size, dtype=np.int64)
    rank_mat = np.zeros((0, size), dtype=np.int64)
    for t in range(size):
        for chars in product((-1, 1), repeat=len(ops)):
            v = eye[:, t]
            for op, c in zip(ops, chars):
                v = v + c * (op @ v)
            if not np.any(v):
                continue
            g = int(np.gcd.reduce(np.abs(v[v != 0])))
            v = v // g
            trial = np.vstack([rank_mat, v])
            if la.rank(la.from_int_array(trial)) > rank_mat.shape[0]:
                rank_mat = trial
                found.append((v, chars))
    return found


@lru_cache(maxsize=None)
def spinor_module(p: int, q: int, split: int | None = None) -> SpinorModule:
    """Standardized spin(p, q) module.

    ``split`` names a generator a whose complementary volume element
    Omega_a (product of all other generators) defines the half-spinor split
    used for the octonionic fibrations.
    """
    rep = build_clifford(p, q)
    ev = even_realization(p, q)
    B = invariant_spinor_form(rep)
    size = ev.aux.size
    sig = la.signature(la.from_int_array(B))
    if sig[1] == 0:
        B = -B
    eye = np.eye(size, dtype=np.int64)
    if not np.array_equal(B @ B, eye):
        raise CliffordError("invariant form is not a signed permutation")
    ops = [B]
    if split is not None:
        Omega = ev.even_product([i for i in range(p + q) if i != split])
        if not np.array_equal(Omega @ Omega, eye) or not np.array_equal(Omega @ B, B @ Omega):
            raise CliffordError(f"generator {split} does not give a real half-spinor split")
        ops.append(Omega)
    vecs = _projector_basis(ops, size)
    vecs.sort(key=lambda vc: vc[1][0])  # negatives of the form first
    S = np.stack([v for v, _ in vecs], axis=1)
    c = int((S[:, 0] @ S[:, 0]))
    if not np.array_equal(S.T @ S, c * eye):
        raise CliffordError("joint eigenvectors do not have a common norm")
    form = tuple(ch[0] for _, ch in vecs)
    if not np.array_equal(S.T @ B @ S, c * np.diag(form)):
        raise CliffordError("standardized form is not diagonal")
    half = tuple(ch[1] for _, ch in vecs) if split is not None else (0,) * size
    alg = spin_algebra(rep)
    num = np.stack([S.T @ alg.num[i] @ S for i in range(alg.dim)])
    std = MatrixLieAlgebra(f"spin({p},{q})", num, c * alg.den)
    return SpinorModule(std, form, half)
