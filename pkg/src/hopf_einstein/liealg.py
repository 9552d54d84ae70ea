"""Real matrix Lie algebras over Q: brackets, structure constants, invariant forms.

A ``MatrixLieAlgebra`` stores its basis as an integer array ``num`` of shape
(dim, N, N) with one common denominator ``den``.  Its structure constants are
a ``StructureConstants`` object, which is also how abstract algebras (compact
duals) are represented.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np
from flint import fmpq_mat

from . import linalg as la


class NotSubalgebraError(ValueError):
    """A bracket left the span of the basis."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


def bracket(X, Y):
    """Commutator XY - YX of two square matrices of the same size."""
    if isinstance(X, fmpq_mat):
        if X.nrows() != X.ncols() or (X.nrows(), X.ncols()) != (Y.nrows(), Y.ncols()):
            raise ValueError("bracket needs square matrices of the same size")
        return X * Y - Y * X
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape != Y.shape:
        raise ValueError("bracket needs square matrices of the same size")
    return X @ Y - Y @ X


class StructureConstants:
    """Abstract Lie algebra: [X_i, X_j] = sum_k C[i, j, k] X_k with C = num / den."""

    def __init__(self, num: np.ndarray, den: int = 1, name: str = ""):
        num = np.asarray(num)
        if num.ndim != 3 or len(set(num.shape)) > 1:
            raise ValueError("structure constants need shape (d, d, d)")
        self.num, self.den = la.normalize_parts(la.compact_int(num), int(den))
        self.name = name

    @property
    def dim(self) -> int:
        return self.num.shape[0]

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        return Fraction(int(self.num[i, j, k]), self.den)

    def tensor(self) -> np.ndarray:
        """C as an object array of Fractions."""
        out = np.empty(self.num.shape, dtype=object)
        for idx, x in np.ndenumerate(self.num):
            out[idx] = Fraction(int(x), self.den)
        return out

    def ad(self, a: int) -> fmpq_mat:
        """Matrix of ad X_a in the basis: column j holds the coordinates of [X_a, X_j]."""
        return la.from_int_array(self.num[a].T, self.den)

    def bracket_coords(self, u: fmpq_mat, v: fmpq_mat) -> fmpq_mat:
        """Coordinates of [u, v] for coordinate column vectors u, v."""
        d = self.dim
        uf = [la.fraction(x) for x in u.entries()]
        vf = [la.fraction(x) for x in v.entries()]
        out = [Fraction(0)] * d
        for i in range(d):
            if not uf[i]:
                continue
            for j in range(d):
                if not vf[j]:
                    continue
                w = uf[i] * vf[j] / self.den
                row = self.num[i, j]
                for k in np.nonzero(row)[0]:
                    out[k] += w * int(row[k])
        return la.qmat([[x] for x in out])

    @cached_property
    def killing_num(self) -> np.ndarray:
        return la.int_einsum("ajk,bkj->ab", self.num, self.num)

    def killing_form(self) -> fmpq_mat:
        """K(X_a, X_b) = tr(ad X_a ad X_b)."""
        return la.from_int_array(self.killing_num, self.den * self.den)

    def is_antisymmetric(self) -> bool:
        return bool(np.all(self.num == -self.num.transpose(1, 0, 2)))

    def jacobi_residual_zero(self) -> bool:
        """Exact check of sum_cyc [[X_i, X_j], X_k] = 0 for all basis triples."""
        d = self.dim
        C = self.num
        flat = C.reshape(d, d * d)
        for i in range(d):
            # [[X_i, X_j], X_k] + [[X_j, X_k], X_i] + [[X_k, X_i], X_j], indexed [j, k, m]
            T = la.int_matmul(C[i], flat).reshape(d, d, d)
            U = la.int_einsum("jkl,lm->jkm", C, C[:, i, :])
            V = la.int_einsum("kl,ljm->jkm", C[:, i, :], C)
            if np.any(T.astype(object) + U + V != 0):
                return False
        return True

    def center(self) -> "Subspace":
        d = self.dim
        M = la.from_int_array(self.num.transpose(1, 2, 0).reshape(d * d, d))
        return Subspace(self, la.nullspace(M))

    def derived_subalgebra(self) -> "Subspace":
        d = self.dim
        M = la.from_int_array(self.num.reshape(d * d, d).T)
        return Subspace(self, la.column_basis(M) if d else M)

    def is_semisimple(self) -> bool:
        return self.dim > 0 and self.killing_form().det() != 0

    def restrict(self, indices: Sequence[int], name: str = "") -> "StructureConstants":
        """Structure constants of the span of the given basis vectors (must close)."""
        idx = list(indices)
        rest = [k for k in range(self.dim) if k not in set(idx)]
        sub = self.num[np.ix_(idx, idx)]
        if rest and np.any(sub[:, :, rest] != 0):
            raise NotSubalgebraError("basis subset is not closed under the bracket")
        return StructureConstants(sub[:, :, idx], self.den, name or self.name)

    def is_subalgebra(self, space: "Subspace") -> bool:
        V = space.vectors
        cols = [la.columns(V, [j]) for j in range(V.ncols())]
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                if la.solve_in_span(V, self.bracket_coords(cols[a], cols[b])) is None:
                    return False
        return True


class MatrixLieAlgebra:
    """A real Lie algebra spanned by N x N rational matrices."""

    def __init__(self, name: str, basis, den: int = 1):
        arr = basis if isinstance(basis, np.ndarray) else _as_array(basis)
        if arr.dtype == object and any(not isinstance(x, (int, np.integer)) for x in arr.ravel()):
            num, d2 = la.fractions_to_parts(arr)
            den = den * d2
        else:
            num = la.compact_int(arr)
        if num.ndim != 3 or num.shape[1] != num.shape[2]:
            raise ValueError("basis must have shape (d, N, N)")
        self.name = name
        self.num, self.den = la.normalize_parts(num, int(den))
        d, N, _ = self.num.shape
        flat = la.from_int_array(self.num.reshape(d, N * N)) if d else fmpq_mat(0, N * N)
        if la.rank(flat) != d:
            raise ValueError(f"{name}: basis matrices are linearly dependent")
        self._pivots = la.pivot_columns(flat)
        self._pivot_inv = la.columns(flat, self._pivots).inv() if d else fmpq_mat(0, 0)

    @property
    def dim(self) -> int:
        return self.num.shape[0]

    @property
    def N(self) -> int:
        return self.num.shape[1]

    def __repr__(self) -> str:
        return f"MatrixLieAlgebra({self.name!r}, dim={self.dim}, N={self.N})"

    def matrix(self, i: int) -> np.ndarray:
        """Basis matrix i as an object array of Fractions."""
        out = np.empty((self.N, self.N), dtype=object)
        for idx, x in np.ndenumerate(self.num[i]):
            out[idx] = Fraction(int(x), self.den)
        return out

    def qmatrix(self, i: int) -> fmpq_mat:
        return la.from_int_array(self.num[i], self.den)

    def element(self, coords: fmpq_mat) -> fmpq_mat:
        """Matrix of the element with the given coordinate column."""
        Z, D = la.int_parts(coords.transpose())
        m = la.int_einsum("i,ixy->xy", Z[0], self.num)
        return la.from_int_array(m, D * self.den)

    def coordinates(self, Y: np.ndarray, yden: int = 1) -> fmpq_mat:
        """Coordinates (rows) of matrices Y[m] / yden in the basis; exact check.

        Raises NotSubalgebraError with the offending index if some Y[m] is not
        in the span.
        """
        Y = la.compact_int(np.asarray(Y))
        m = Y.shape[0]
        d, N = self.dim, self.N
        flatY = Y.reshape(m, N * N)
        if d == 0:
            bad = np.nonzero(np.any(flatY != 0, axis=1))[0]
            if len(bad):
                raise NotSubalgebraError("matrix outside span", (int(bad[0]), -1))
            return fmpq_mat(m, 0)
        rows = la.from_int_array(flatY[:, self._pivots])
        coords = rows * self._pivot_inv * self.den / yden
        cnum, cden = la.int_parts(coords)
        recon = la.int_matmul(cnum, self.num.reshape(d, N * N))
        # recon / (cden * den) must equal Y / yden
        lhs = recon.astype(object) * yden
        rhs = flatY.astype(object) * (cden * self.den)
        diff = np.nonzero(np.any(lhs != rhs, axis=1))[0]
        if len(diff):
            raise NotSubalgebraError("matrix outside span", (int(diff[0]), -1))
        return coords

    @cached_property
    def structure(self) -> StructureConstants:
        """Structure constants; raises NotSubalgebraError if a bracket escapes."""
        d, N = self.dim, self.N
        if d == 0:
            return StructureConstants(np.zeros((0, 0, 0), dtype=np.int64), 1, self.name)
        prod = la.int_matmul(self.num[:, None], self.num[None, :])
        br = prod - prod.transpose(1, 0, 2, 3)
        try:
            coords = self.coordinates(br.reshape(d * d, N, N), self.den * self.den)
        except NotSubalgebraError as exc:
            k = exc.pair[0]
            raise NotSubalgebraError(f"{self.name}: [X_{k // d}, X_{k % d}] is not in the span",
                                     (k // d, k % d)) from None
        cnum, cden = la.int_parts(coords)
        return StructureConstants(cnum.reshape(d, d, d), cden, self.name)

    def structure_constants(self) -> np.ndarray:
        return self.structure.tensor()

    def killing_form(self) -> fmpq_mat:
        return self.structure.killing_form()

    def trace_form(self) -> fmpq_mat:
        """T(X_i, X_j) = tr(X_i X_j) in the defining representation."""
        t = la.int_einsum("iab,jba->ij", self.num, self.num)
        return la.from_int_array(t, self.den * self.den)

    def is_semisimple(self) -> bool:
        return self.structure.is_semisimple()

    def center(self) -> "Subspace":
        return Subspace(self, self.structure.center().vectors)

    def derived_subalgebra(self) -> "Subspace":
        return Subspace(self, self.structure.derived_subalgebra().vectors)

    def subalgebra(self, space, name: str = "") -> "MatrixLieAlgebra":
        """The matrix algebra spanned by a Subspace (or coordinate columns)."""
        V = space.vectors if isinstance(space, Subspace) else space
        if V.ncols() == 0:
            return MatrixLieAlgebra(name or self.name, np.zeros((0, self.N, self.N), dtype=np.int64))
        Z, D = la.int_parts(V)
        num = la.int_einsum("ik,ixy->kxy", Z, self.num)
        return MatrixLieAlgebra(name or self.name, num, D * self.den)

    def flat(self) -> fmpq_mat:
        """Basis as rows of flattened matrices."""
        d, N = self.dim, self.N
        return la.from_int_array(self.num.reshape(d, N * N), self.den)

    def preserves_form(self, J: fmpq_mat) -> bool:
        """X^T J + J X = 0 for every basis element."""
        for i in range(self.dim):
            X = self.qmatrix(i)
            if not la.is_zero(X.transpose() * J + J * X):
                return False
        return True

    def commutes_with(self, A: fmpq_mat) -> bool:
        return all(la.is_zero(bracket(self.qmatrix(i), A)) for i in range(self.dim))

    def to_json(self) -> dict:
        basis = []
        for i in range(self.dim):
            mat = []
            for row in self.num[i]:
                r = []
                for x in row:
                    f = Fraction(int(x), self.den)
                    r.append([f.numerator, f.denominator])
                mat.append(r)
            basis.append(mat)
        return {"name": self.name, "N": self.N, "basis": basis}

    @classmethod
    def from_json(cls, doc: dict) -> "MatrixLieAlgebra":
        N = doc["N"]
        arr = np.empty((len(doc["basis"]), N, N), dtype=object)
        for i, mat in enumerate(doc["basis"]):
            for a, row in enumerate(mat):
                for b, (p, q) in enumerate(row):
                    arr[i, a, b] = Fraction(p, q)
        return cls(doc["name"], arr)


def _as_array(basis) -> np.ndarray:
    mats = []
    for X in basis:
        if isinstance(X, fmpq_mat):
            mats.append(np.array([[la.fraction(x) for x in r] for r in la.entries(X)], dtype=object))
        else:
            mats.append(np.asarray(X))
    if not mats:
        raise ValueError("empty basis needs an explicit (0, N, N) array")
    if all(m.dtype != object for m in mats):
        return np.stack(mats)
    return np.stack([m.astype(object) for m in mats])


@dataclass(frozen=True)
class Subspace:
    """Span of the columns of ``vectors`` (coordinates in the parent basis)."""

    parent: object
    vectors: fmpq_mat

    def __post_init__(self):
        if self.vectors.nrows() != self.parent.dim:
            raise ValueError("coordinate length does not match the parent dimension")
        if la.rank(self.vectors) != self.vectors.ncols():
            raise ValueError("subspace vectors are not independent")

    @classmethod
    def span(cls, parent, vectors: fmpq_mat) -> "Subspace":
        if vectors.ncols() == 0:
            return cls(parent, vectors)
        return cls(parent, la.column_basis(vectors))

    @classmethod
    def whole(cls, parent) -> "Subspace":
        return cls(parent, la.qeye(parent.dim))

    @classmethod
    def zero(cls, parent) -> "Subspace":
        return cls(parent, fmpq_mat(parent.dim, 0))

    @property
    def dim(self) -> int:
        return self.vectors.ncols()

    def contains(self, other: "Subspace") -> bool:
        return sum_dim(self, other) == self.dim


def _same_parent(A: Subspace, B: Subspace):
    if A.parent is not B.parent and A.parent.dim != B.parent.dim:
        raise ValueError("subspaces live in different algebras")


def sum_space(A: Subspace, B: Subspace) -> Subspace:
    _same_parent(A, B)
    if A.dim == 0:
        return B
    if B.dim == 0:
        return A
    return Subspace.span(A.parent, la.hstack([A.vectors, B.vectors]))


def sum_dim(A: Subspace, B: Subspace) -> int:
    _same_parent(A, B)
    if A.dim + B.dim == 0:
        return 0
    return la.rank(la.hstack([A.vectors, B.vectors]))


def intersect(A: Subspace, B: Subspace) -> Subspace:
    _same_parent(A, B)
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(A.parent)
    K = la.nullspace(la.hstack([A.vectors, -B.vectors]))
    if K.ncols() == 0:
        return Subspace.zero(A.parent)
    x = la.submatrix(K, range(A.dim), range(K.ncols()))
    return Subspace.span(A.parent, A.vectors * x)


def orthogonal_complement(A: Subspace, form: fmpq_mat, within: Subspace | None = None) -> Subspace:
    """Vectors of ``within`` (default: the parent) orthogonal to A under ``form``.

    Raises ValueError when the form is degenerate on A.
    """
    W = within if within is not None else Subspace.whole(A.parent)
    if A.dim == 0:
        return W
    M = A.vectors.transpose() * form * W.vectors
    K = la.nullspace(M)
    comp = Subspace(A.parent, W.vectors * K) if K.ncols() else Subspace.zero(A.parent)
    if intersect(A, comp).dim != 0:
        raise ValueError("form is degenerate on the subspace")
    return comp
