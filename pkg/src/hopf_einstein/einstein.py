"""Reductive homogeneous spaces, invariant metrics and their Ricci tensors.

A ``ReductiveSpace`` is given in an adapted basis [h | m] of g by structure
constants, the size of h, and a symmetric metric on the m-coordinates.

For an orthonormal-free basis X_1..X_n of m with metric g and G = g^-1 the
Ricci tensor is

    Ric(X, Y) = -1/2 sum G^{ij} <[X, X_i]_m, [Y, X_j]_m>
                - 1/2 B(X, Y)
                + 1/4 sum G^{ik} G^{jl} <[X_i, X_j]_m, X> <[X_k, X_l]_m, Y>
                - 1/2 (<[Z, X]_m, Y> + <[Z, Y]_m, X>)

with B the Killing form of g and Z in m defined by <Z, X> = tr(ad_m X).
``curvature.ricci_from_curvature`` computes the same tensor from the full
curvature operator and serves as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from flint import fmpq, fmpq_mat

from . import linalg as la
from .liealg import MatrixLieAlgebra, StructureConstants, Subspace, orthogonal_complement
from .transitivity import ActionInstance, RowInstance, _images, check_transitive, stabilizer


class EinsteinError(ValueError):
    pass


@dataclass(frozen=True)
class ReductiveSpace:
    structure: StructureConstants
    dim_h: int
    metric: fmpq_mat
    algebra: MatrixLieAlgebra | None = None
    name: str = ""

    @property
    def dim(self) -> int:
        return self.structure.dim - self.dim_h

    @cached_property
    def inverse_metric(self) -> fmpq_mat:
        if self.metric.det() == 0:
            raise EinsteinError("metric is degenerate")
        return self.metric.inv()

    @property
    def signature(self) -> tuple[int, int]:
        p, q, _ = la.signature(self.metric)
        return (p, q)

    def m_block(self) -> tuple[np.ndarray, int]:
        """(C[m, m, m] numerators, denominator)."""
        h = self.dim_h
        return self.structure.num[h:, h:, h:], self.structure.den

    def ad_m(self, a: int) -> fmpq_mat:
        """m-part of ad X_a restricted to m, for any basis index a."""
        h = self.dim_h
        return la.from_int_array(self.structure.num[a, h:, h:].T, self.structure.den)

    def invariants(self) -> dict[str, bool]:
        C, h = self.structure.num, self.dim_h
        g = self.metric
        out = {
            "h_subalgebra": not np.any(C[:h, :h, h:]),
            "h_m_in_m": not np.any(C[:h, h:, :h]),
            "metric_symmetric": g == g.transpose(),
            "metric_nondegenerate": g.det() != 0,
        }
        out["metric_ad_h_invariant"] = all(
            la.is_zero(self.ad_m(z).transpose() * g + g * self.ad_m(z)) for z in range(h))
        return out

    def with_metric(self, metric: fmpq_mat, name: str = "") -> "ReductiveSpace":
        return ReductiveSpace(self.structure, self.dim_h, metric, self.algebra, name or self.name)


def _vec_rows(mats: list[fmpq_mat]) -> fmpq_mat:
    n2 = mats[0].nrows() * mats[0].ncols()
    return fmpq_mat(len(mats), n2, [x for M in mats for x in M.entries()])


def _unvec(row: list, n: int) -> fmpq_mat:
    return fmpq_mat(n, n, row)


def ricci(space: ReductiveSpace) -> fmpq_mat:
    n, h = space.dim, space.dim_h
    if n == 0:
        return fmpq_mat(0, 0)
    Cm, D = space.m_block()
    g = space.metric
    G = space.inverse_metric
    M = [la.from_int_array(Cm[a].T, D) for a in range(n)]  # M_a[k, j] = C[a, j, k]

    P = [g * M[b] * G for b in range(n)]
    T1 = _vec_rows(M) * _vec_rows(P).transpose() * fmpq(-1, 2)

    K = la.submatrix(space.structure.killing_form(), range(h, h + n), range(h, h + n))

    Rs = la.from_int_array(Cm.transpose(2, 0, 1).reshape(n, n * n), D)  # row k: C[:, :, k]
    Ws = g * Rs
    flat = Ws.entries()
    W = [_unvec(flat[a * n * n:(a + 1) * n * n], n) for a in range(n)]
    Q = [G * W[b] * G for b in range(n)]
    T3 = Ws * _vec_rows(Q).transpose() * fmpq(1, 4)

    z = [sum((M[a][k, k] for k in range(n)), fmpq(0)) for a in range(n)]
    zeta = G * la.qmat([[x] for x in z])
    Mz = fmpq_mat(n, n)
    for c in range(n):
        if zeta[c, 0] != 0:
            Mz += M[c] * zeta[c, 0]
    gM = g * Mz
    Zt = (gM + gM.transpose()) * fmpq(-1, 2)

    ric = T1 - K * fmpq(1, 2) + T3 + Zt
    if ric != ric.transpose():
        raise EinsteinError("Ricci tensor is not symmetric")
    return ric


def scalar_curvature(space: ReductiveSpace, ric: fmpq_mat | None = None) -> Fraction:
    ric = ricci(space) if ric is None else ric
    S = space.inverse_metric * ric
    return la.fraction(sum((S[i, i] for i in range(space.dim)), fmpq(0)))


def einstein_tensor(space: ReductiveSpace, ric: fmpq_mat | None = None) -> fmpq_mat:
    """Ric - (s / n) g."""
    ric = ricci(space) if ric is None else ric
    s = scalar_curvature(space, ric)
    return ric - space.metric * la.to_fmpq(s / space.dim)


def einstein_residual(space: ReductiveSpace, ric: fmpq_mat | None = None) -> Fraction:
    """max |entries of g^-1 (Ric - (s/n) g)|; exactly zero iff the metric is Einstein."""
    if space.dim == 0:
        return Fraction(0)
    E = space.inverse_metric * einstein_tensor(space, ric)
    return max(abs(la.fraction(x)) for x in E.entries())


def einstein_constant(space: ReductiveSpace) -> Fraction:
    ric = ricci(space)
    if einstein_residual(space, ric) != 0:
        raise EinsteinError(f"{space.name or 'space'} is not Einstein")
    return scalar_curvature(space, ric) / space.dim


def adapted(G: MatrixLieAlgebra, blocks: list[fmpq_mat], name: str = "") -> MatrixLieAlgebra:
    """The subalgebra of G with basis given by concatenated coordinate blocks."""
    cols = [B for B in blocks if B.ncols()]
    A = G.subalgebra(la.hstack(cols), name or G.name)
    if A.dim != G.dim:
        raise EinsteinError("adapted blocks do not span the algebra")
    return A


def projected_metric(A: MatrixLieAlgebra, start: int, x0: fmpq_mat, form: fmpq_mat,
                     W: fmpq_mat | None = None) -> fmpq_mat:
    """<pi X_a x0, pi X_b x0> for basis indices a, b >= start.

    pi is the form-orthogonal projection off span(W) (identity when W is None).
    """
    V = la.hstack([A.qmatrix(a) * x0 for a in range(start, A.dim)])
    g = V.transpose() * form * V
    if W is not None and W.ncols():
        WJW = W.transpose() * form * W
        C = W.transpose() * form * V
        g = g - C.transpose() * WJW.inv() * C
    return g


def canonical_space(a: ActionInstance, W: fmpq_mat | None = None, name: str = "") -> ReductiveSpace:
    """G/H with H = {X : X x0 in span W} (the isotropy when W is None).

    m is the trace-form complement of h and the metric is the ambient form on
    pi(X x0).  With W = None this is the constant curvature -1 metric.
    """
    if not check_transitive(a).transitive:
        raise EinsteinError(f"{a.algebra.name} is not transitive on H^{a.n}_{a.r}")
    G = a.algebra
    x0 = a.point
    form = la.qdiag(a.form)
    H = stabilizer(G, x0, W)
    hcoords = la.hstack([G.coordinates(H.num, H.den).transpose()]) if H.dim else fmpq_mat(G.dim, 0)
    hs = Subspace(G, hcoords)
    ms = orthogonal_complement(hs, G.trace_form())
    A = adapted(G, [hs.vectors, ms.vectors], name or G.name)
    g = projected_metric(A, hs.dim, x0, form, W)
    space = ReductiveSpace(A.structure, hs.dim, g, A, name or f"{G.name}/{H.dim}")
    bad = [k for k, v in space.invariants().items() if not v]
    if bad:
        raise EinsteinError(f"canonical space fails {bad}")
    return space


def row_space(inst: RowInstance) -> ReductiveSpace:
    """Canonical space of a table row; table 2 rows quotient by the right scalars at x0."""
    a = inst.action
    if inst.table == 1:
        return canonical_space(a, name=inst.space)
    W = la.hstack([_images(R, a.point) for R in inst.right_scalars])
    return canonical_space(a, W, name=inst.space)
