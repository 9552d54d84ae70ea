"""Cartan involutions, compact duals and dual invariant metrics.

With theta(X) = -X^T, g = g+ + g- and the compact dual g* = g+ + i g- has the
structure constants of g except that brackets of two g- elements change sign.
A reductive space (g, h, m, <,>) with theta-invariant h and m dualizes to
(g*, h*, m*) with metric -<,> on m+ and +<,> on m-; for the catalog
embeddings m+ is timelike, so this dual metric is positive definite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from flint import fmpq_mat

from . import linalg as la
from .einstein import ReductiveSpace, einstein_residual, row_space
from .liealg import MatrixLieAlgebra, StructureConstants
from .transitivity import table_row


class DualityError(ValueError):
    pass


def _theta_matrix(L: MatrixLieAlgebra) -> fmpq_mat:
    try:
        rows = L.coordinates(-L.num.transpose(0, 2, 1), L.den)
    except ValueError:
        raise DualityError(f"{L.name}: -X^T leaves the algebra; change the base point or basis") from None
    return rows.transpose()


def _eigenspace(theta: fmpq_mat, sign: int) -> fmpq_mat:
    d = theta.nrows()
    return la.nullspace(theta - la.qeye(d) * sign)


@dataclass(frozen=True)
class DualityData:
    source: MatrixLieAlgebra
    theta: fmpq_mat
    plus: fmpq_mat
    minus: fmpq_mat

    @property
    def dim_plus(self) -> int:
        return self.plus.ncols()

    @property
    def dim_minus(self) -> int:
        return self.minus.ncols()

    @cached_property
    def adapted(self) -> MatrixLieAlgebra:
        return self.source.subalgebra(la.hstack([self.plus, self.minus]) if self.source.dim else self.plus,
                                      self.source.name)

    @cached_property
    def dual(self) -> StructureConstants:
        return flip_minus(self.adapted.structure, range(self.dim_plus, self.source.dim),
                          f"{self.source.name}*")

    def is_involution(self) -> bool:
        return self.theta * self.theta == la.qeye(self.theta.nrows())

    def is_automorphism(self) -> bool:
        C = self.source.structure
        Tn, Td = la.int_parts(self.theta)
        # theta [X_i, X_j] versus [theta X_i, theta X_j], both scaled by Td^2 * den
        lhs = la.int_einsum("ka,ija->ijk", Tn, C.num) * Td
        step = la.int_einsum("ai,abk->ibk", Tn, C.num)
        rhs = la.int_einsum("bj,ibk->ijk", Tn, step)
        return bool(np.all(lhs.astype(object) == rhs.astype(object)))

    def killing_split_ok(self) -> bool:
        """Killing form negative definite on g+ and positive definite on g- (semisimple g)."""
        K = self.source.structure.killing_form()
        kp = self.plus.transpose() * K * self.plus
        km = self.minus.transpose() * K * self.minus
        return (la.signature(kp)[1] == self.dim_plus and la.signature(km)[0] == self.dim_minus)

    def split_brackets_ok(self) -> bool:
        """[g+, g+] in g+, [g+, g-] in g-, [g-, g-] in g+."""
        C = self.adapted.structure.num
        p = self.dim_plus
        return not (np.any(C[:p, :p, p:]) or np.any(C[:p, p:, :p]) or np.any(C[p:, p:, p:]))


def cartan_involution(L: MatrixLieAlgebra) -> DualityData:
    theta = _theta_matrix(L)
    plus = _eigenspace(theta, 1)
    minus = _eigenspace(theta, -1)
    if plus.ncols() + minus.ncols() != L.dim:
        raise DualityError(f"{L.name}: -X^T is not an involution on the algebra")
    return DualityData(L, theta, plus, minus)


def flip_minus(C: StructureConstants, minus, name: str = "") -> StructureConstants:
    idx = list(minus)
    num = np.array(C.num, copy=True)
    if idx:
        num[np.ix_(idx, idx)] = -num[np.ix_(idx, idx)]
    return StructureConstants(num, C.den, name or C.name)


def compact_dual(L: MatrixLieAlgebra, data: DualityData | None = None) -> StructureConstants:
    data = data or cartan_involution(L)
    C = data.dual
    if not killing_compact(C):
        raise DualityError(f"{L.name}: dual Killing form is not of compact type; theta is not Cartan")
    return C


def killing_compact(C: StructureConstants) -> bool:
    """Killing form negative definite, or negative semidefinite with radical = center."""
    pos, neg, zero = la.signature(C.killing_form())
    if pos:
        return False
    return zero == C.center().dim


def greedy_rank(C: StructureConstants) -> int:
    """Dimension of a maximal abelian subalgebra built greedily from basis vectors.

    In a compact algebra every maximal abelian subalgebra is a maximal torus,
    so this is the rank.
    """
    d = C.dim
    chosen: list[fmpq_mat] = []
    ads = [C.ad(a) for a in range(d)]
    while True:
        if chosen:
            blocks = []
            for v in chosen:
                M = fmpq_mat(d, d)
                for a in range(d):
                    if v[a, 0] != 0:
                        M += ads[a] * v[a, 0]
                blocks.append(M)
            cent = la.nullspace(la.vstack(blocks))
        else:
            cent = la.qeye(d)
        span = la.hstack(chosen) if chosen else fmpq_mat(d, 0)
        new = None
        for j in range(cent.ncols()):
            v = la.columns(cent, [j])
            if not chosen or la.rank(la.hstack([span, v])) > len(chosen):
                new = v
                break
        if new is None:
            return len(chosen)
        chosen.append(new)


@dataclass(frozen=True)
class DualSpace:
    space: ReductiveSpace
    dims: dict
    metric_raw: fmpq_mat


def dual_space(space: ReductiveSpace) -> DualSpace:
    """Dual of a reductive space given with its matrix algebra in basis [h | m]."""
    A = space.algebra
    if A is None:
        raise DualityError("dual_space needs the matrix realization of the space")
    theta = _theta_matrix(A)
    h, d = space.dim_h, A.dim
    n = d - h
    if not (la.is_zero(la.submatrix(theta, range(h, d), range(h))) and
            la.is_zero(la.submatrix(theta, range(h), range(h, d)))):
        raise DualityError("h or m is not theta-invariant; change the base point")
    th = la.submatrix(theta, range(h), range(h))
    tm = la.submatrix(theta, range(h, d), range(h, d))
    hp, hm = (_eigenspace(th, 1), _eigenspace(th, -1)) if h else (fmpq_mat(0, 0), fmpq_mat(0, 0))
    mp, mm = _eigenspace(tm, 1), _eigenspace(tm, -1)
    P = fmpq_mat(d, d)
    col = 0
    for block, offset in ((hp, 0), (hm, 0), (mp, h), (mm, h)):
        for j in range(block.ncols()):
            for i in range(block.nrows()):
                P[offset + i, col] = block[i, j]
            col += 1
    if col != d:
        raise DualityError("theta does not diagonalize on h and m")
    B = A.subalgebra(P, A.name)
    minus = list(range(hp.ncols(), h)) + list(range(h + mp.ncols(), d))
    C = flip_minus(B.structure, minus, f"{A.name}*")
    Pm = la.submatrix(P, range(h, d), range(h, d))
    g = Pm.transpose() * space.metric * Pm
    k = mp.ncols()
    if not la.is_zero(la.submatrix(g, range(k), range(k, n))):
        raise DualityError("m+ and m- are not orthogonal")
    gd = fmpq_mat(g)
    for a in range(k):
        for b in range(k):
            gd[a, b] = -g[a, b]
    pos, neg, zero = la.signature(gd)
    if pos != n:
        raise DualityError(f"dual metric is not positive definite (signature {pos},{neg},{zero})")
    dual = ReductiveSpace(C, h, gd, None, f"dual of {space.name}")
    dims = {"h_plus": hp.ncols(), "h_minus": h - hp.ncols(), "m_plus": k, "m_minus": n - k}
    return DualSpace(dual, dims, g)


# --- Table 3 ---------------------------------------------------------------

def _so(n: int) -> tuple[int, int]:
    return (n * (n - 1) // 2, n // 2)


def _claims(row: int, p: dict) -> dict:
    m = p.get("m", 1)
    sp = lambda k: k * (2 * k + 1)
    if row == 1:
        n = p["n"]
        dg, rk = _so(n + 1)
        return {"g": dg, "rank": rk, "h": n * (n - 1) // 2, "m": n}
    if row in (2, 3):
        return {"g": 14, "rank": 2, "h": 8, "m": 6}
    if row == 4:
        return {"g": 21, "rank": 3, "h": 14, "m": 7}
    if row in (5, 7):
        return {"g": (m + 1) ** 2 - 1, "rank": m, "h": m * m - 1, "m": 2 * m + 1}
    if row in (6, 8):
        return {"g": (m + 1) ** 2, "rank": m + 1, "h": m * m, "m": 2 * m + 1}
    if row in (9, 10):
        return {"g": 36, "rank": 4, "h": 21, "m": 15}
    if row in (11, 14):
        return {"g": sp(m + 1), "rank": m + 1, "h": sp(m), "m": 4 * m + 3}
    if row in (12, 15, 16):
        return {"g": sp(m + 1) + 1, "rank": m + 2, "h": sp(m) + 1, "m": 4 * m + 3}
    if row in (13, 17):
        return {"g": sp(m + 1) + 3, "rank": m + 2, "h": sp(m) + 3, "m": 4 * m + 3}
    if row in (18, 21):
        return {"g": (m + 1) ** 2 - 1, "rank": m, "h": m * m, "m": 2 * m}
    if row in (19, 20, 22):
        return {"g": sp(m + 1), "rank": m + 1, "h": sp(m) + 1, "m": 4 * m + 2}
    if row in (23, 24):
        return {"g": sp(m + 1), "rank": m + 1, "h": sp(m) + 3, "m": 4 * m}
    raise DualityError(f"no row {row} in table 3")


TABLE3_SOURCE: dict[int, tuple[int, int]] = {
    1: (1, 1), 2: (1, 8), 3: (1, 9), 4: (1, 7), 5: (1, 10), 6: (1, 16), 7: (1, 13), 8: (1, 18),
    9: (1, 5), 10: (1, 6), 11: (1, 11), 12: (1, 17), 13: (1, 12), 14: (1, 14), 15: (1, 20),
    16: (1, 19), 17: (1, 15), 18: (2, 1), 19: (2, 2), 20: (2, 3), 21: (2, 4), 22: (2, 5),
    23: (2, 6), 24: (2, 7),
}


@dataclass
class Table3Report:
    row: int
    params: dict
    source: tuple[int, int]
    dims: dict
    claimed: dict
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"table": 3, "row": self.row, "params": self.params,
                "source": {"table": self.source[0], "row": self.source[1]},
                "dims": self.dims, "claimed": self.claimed, "checks": self.checks, "pass": self.passed}


def verify_table3(row: int, params: dict | None = None) -> Table3Report:
    if row not in TABLE3_SOURCE:
        raise DualityError(f"no row {row} in table 3")
    t, r = TABLE3_SOURCE[row]
    inst = table_row(t, r, params)
    claimed = _claims(row, inst.params)
    G = inst.action.algebra
    data = cartan_involution(G)
    C = data.dual
    space = row_space(inst)
    checks = {
        "involution": data.is_involution(),
        "automorphism": data.is_automorphism(),
        "split_brackets": data.split_brackets_ok(),
        "dual_jacobi": C.jacobi_residual_zero(),
        "dual_compact": killing_compact(C),
    }
    rank = greedy_rank(C)
    dims = {"g": C.dim, "h": space.dim_h, "m": space.dim, "rank": rank,
            "g_plus": data.dim_plus, "g_minus": data.dim_minus}
    checks["g_dim"] = C.dim == claimed["g"]
    checks["rank"] = rank == claimed["rank"]
    checks["h_dim"] = space.dim_h == claimed["h"]
    checks["m_dim"] = space.dim == claimed["m"]
    try:
        dual = dual_space(space)
        checks["dual_metric_positive"] = True
        dims.update(dual.dims)
        hstar = dual.space.structure.restrict(range(space.dim_h)) if space.dim_h else None
        checks["h_dual_compact"] = hstar is None or killing_compact(hstar)
        checks["dual_einstein"] = einstein_residual(dual.space) == 0
    except (DualityError, ValueError):
        checks["dual_metric_positive"] = False
    return Table3Report(row, inst.params, (t, r), dims, claimed, checks)


def einstein_transfers(space: ReductiveSpace) -> tuple[bool, bool]:
    """(space is Einstein, its dual is Einstein)."""
    dual = dual_space(space).space
    return einstein_residual(space) == 0, einstein_residual(dual) == 0
