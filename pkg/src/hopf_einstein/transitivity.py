"""Isotropy subalgebras, the sum criterion for transitivity and the table catalogs.

An action is a subalgebra g of so(n - r, r + 1) acting on R^{n+1} with the form
diag(-1 x (r+1), +1 x (n-r)); it is transitive on H^n_r at x0 iff
g + iso(x0) = so(n - r, r + 1), where iso(x0) is the ambient isotropy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from flint import fmpq, fmpq_mat

from . import linalg as la
from .clifford import spinor_module
from .groups import (FamilySpec, FModule, F_FAMILIES, Realization, g2_action, realize, so_basis)
from .liealg import MatrixLieAlgebra


class TransitivityError(ValueError):
    pass


def ambient_form(n: int, r: int) -> tuple[int, ...]:
    if not 0 <= r <= n:
        raise TransitivityError(f"need 0 <= r <= n, got n={n}, r={r}")
    return (-1,) * (r + 1) + (1,) * (n - r)


def ambient_so(n: int, r: int) -> MatrixLieAlgebra:
    return MatrixLieAlgebra(f"so({n - r},{r + 1})", so_basis(ambient_form(n, r)))


@dataclass(frozen=True)
class ActionInstance:
    n: int
    r: int
    algebra: MatrixLieAlgebra
    x0: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.algebra.N != self.n + 1:
            raise TransitivityError(f"{self.algebra.name} acts on R^{self.algebra.N}, not R^{self.n + 1}")
        if not self.x0:
            object.__setattr__(self, "x0", tuple(Fraction(int(i == 0)) for i in range(self.n + 1)))
        if sum(s * x * x for s, x in zip(self.form, self.x0)) != -1:
            raise TransitivityError("base point does not have norm -1")
        if not self.algebra.preserves_form(la.qdiag(self.form)):
            raise TransitivityError(f"{self.algebra.name} is not inside so({self.n - self.r},{self.r + 1})")

    @property
    def form(self) -> tuple[int, ...]:
        return ambient_form(self.n, self.r)

    @property
    def point(self) -> fmpq_mat:
        return la.qmat([[x] for x in self.x0])


def _images(algebra: MatrixLieAlgebra, x: fmpq_mat) -> fmpq_mat:
    """N x d matrix whose columns are X_i x."""
    xnum, xden = la.int_parts(x)
    cols = la.int_einsum("dab,bk->adk", algebra.num, xnum)[:, :, 0]
    return la.from_int_array(cols, algebra.den * xden)


def stabilizer(algebra: MatrixLieAlgebra, x: fmpq_mat, target: fmpq_mat | None = None,
               name: str = "") -> MatrixLieAlgebra:
    """{X in algebra : X x in span(target)} (target None means X x = 0)."""
    img = _images(algebra, x)
    d = algebra.dim
    system = img if target is None or target.ncols() == 0 else la.hstack([img, -target])
    K = la.nullspace(system)
    if K.ncols() == 0:
        return algebra.subalgebra(fmpq_mat(d, 0), name)
    coords = la.column_basis(la.submatrix(K, range(d), range(K.ncols())))
    return algebra.subalgebra(coords, name)


def isotropy_subalgebra(a: ActionInstance) -> MatrixLieAlgebra:
    return stabilizer(a.algebra, a.point, name=f"iso({a.algebra.name})")


def flat_rank(*algebras: MatrixLieAlgebra) -> int:
    """Dimension of the sum of several subspaces of gl(N)."""
    mats = [A.flat() for A in algebras if A.dim]
    return la.rank(la.vstack(mats)) if mats else 0


@dataclass(frozen=True)
class TransitivityReport:
    ambient: int
    g: int
    isotropy_ambient: int
    sum: int

    @property
    def transitive(self) -> bool:
        return self.sum == self.ambient


def check_transitive(a: ActionInstance, extra: Sequence[MatrixLieAlgebra] = ()) -> TransitivityReport:
    """Sum criterion; ``extra`` adds algebras acting alongside g (right scalars)."""
    amb = ambient_so(a.n, a.r)
    iso = stabilizer(amb, a.point)
    total = flat_rank(a.algebra, iso, *extra)
    return TransitivityReport(amb.dim, a.algebra.dim, iso.dim, total)


def contained_in(small: MatrixLieAlgebra, big: MatrixLieAlgebra) -> bool:
    return flat_rank(small, big) == big.dim


# --- catalog ------------------------------------------------------------

@dataclass(frozen=True)
class RowInstance:
    """One table row instantiated at concrete parameters."""

    table: int
    row: int
    params: dict
    space: str
    action: ActionInstance
    quotient_dim: int
    claimed: MatrixLieAlgebra | None = None
    claimed_invariants: tuple | None = None
    right_scalars: tuple[MatrixLieAlgebra, ...] = ()
    notes: str = ""


def _invariants(A: MatrixLieAlgebra) -> tuple:
    return (A.dim, la.signature(A.killing_form()))


def _family_action(spec: str, r_expected: int | None = None) -> tuple[Realization, ActionInstance]:
    real = realize(FamilySpec.parse(spec))
    n = real.algebra.N - 1
    r = real.form.count(-1) - 1
    if r_expected is not None and r != r_expected:
        raise TransitivityError(f"{spec}: index {r}, expected {r_expected}")
    return real, ActionInstance(n, r, real.algebra)


def _matrices(name: str, mats: Sequence[np.ndarray], N: int) -> MatrixLieAlgebra:
    if not mats:
        return MatrixLieAlgebra(name, np.zeros((0, N, N), dtype=np.int64))
    return MatrixLieAlgebra(name, np.stack(mats))


def _claimed_family(real: Realization, trace: bool, diag_units: Sequence[str] = (),
                    left_units: Sequence[str] = (), name: str = "") -> MatrixLieAlgebra:
    """Block family on coordinates 1..m plus extra generators, as one algebra.

    ``diag_units`` adds R(u) - E_00 L(u); ``left_units`` adds E_00 L(u).
    """
    mod: FModule = real.module
    first = FamilySpec.parse(real.algebra.name.split("+")[0])
    trace_unit = F_FAMILIES[first.family][1] if trace else None
    mats = list(mod.family(range(1, mod.blocks), trace_unit)) if mod.blocks > 1 else []
    mats += [mod.right(u) - mod.left(0, 0, u) for u in diag_units]
    mats += [mod.left(0, 0, u) for u in left_units]
    return _matrices(name, mats, mod.N)


def _check_mn(m: int, s: int) -> None:
    if m < 1 or not 0 <= s <= m:
        raise TransitivityError(f"need m >= 1 and 0 <= s <= m, got m={m}, s={s}")


def _spin_row(table_row: int, p: int, q: int, sub: str, space: str) -> Callable:
    def make(params: dict) -> RowInstance:
        sm = spinor_module(p, q)
        A = MatrixLieAlgebra(f"spin({p},{q})", sm.algebra.num, sm.algebra.den)
        n = A.N - 1
        r = sm.negatives - 1
        ref = g2_action(*_G2[sub]).algebra if sub in _G2 else realize(FamilySpec.parse(sub)).algebra
        return RowInstance(1, table_row, params, space, ActionInstance(n, r, A), n,
                           claimed_invariants=_invariants(ref), notes=f"H compared with {sub}")
    return make


_G2 = {"g2": (False, -1), "g2_star": (True, -1)}


def _g2_row(table_row: int, split: bool, sign: int, sub: str, space: str) -> Callable:
    def make(params: dict) -> RowInstance:
        real = g2_action(split, sign)
        n = 6
        r = real.form.count(-1) - 1
        ref = realize(FamilySpec.parse(sub)).algebra
        return RowInstance(1, table_row, params, space, ActionInstance(n, r, real.algebra), n,
                           claimed_invariants=_invariants(ref), notes=f"H compared with {sub}")
    return make


def _row1(params: dict) -> RowInstance:
    n, r = params["n"], params["r"]
    form = ambient_form(n, r)
    A = MatrixLieAlgebra(f"so({n - r},{r + 1})", so_basis(form))
    sub = so_basis(form[1:])
    claimed = np.zeros((len(sub), n + 1, n + 1), dtype=np.int64)
    claimed[:, 1:, 1:] = sub
    return RowInstance(1, 1, params, f"H^{n}_{r}", ActionInstance(n, r, A), n,
                       claimed=_matrices(f"so({n - r},{r})", list(claimed), n + 1))


def _f_row(table_row: int, spec_fn: Callable[[int, int], str], space_fn: Callable[[int, int], str],
           trace: bool, diag_units: Sequence[str] = (), uses_s: bool = True) -> Callable:
    def make(params: dict) -> RowInstance:
        m, s = params["m"], params.get("s", 0)
        _check_mn(m, s)
        real, act = _family_action(spec_fn(m, s))
        claimed = _claimed_family(real, trace, diag_units, name="H")
        return RowInstance(1, table_row, params, space_fn(m, s), act, act.n, claimed=claimed)
    return make


def _table2_row(table_row: int, spec_fn: Callable[[int, int], str], units: Sequence[str],
                space_fn: Callable[[int, int], str], trace: bool) -> Callable:
    def make(params: dict) -> RowInstance:
        m, s = params["m"], params.get("s", 0)
        _check_mn(m, s)
        real, act = _family_action(spec_fn(m, s))
        mod = real.module
        rights = tuple(_matrices(f"R({u})", [mod.right(u)], mod.N) for u in units)
        claimed = _claimed_family(real, False, left_units=units, name="H")
        if trace:
            claimed = _intersection(claimed, real.algebra)
        return RowInstance(2, table_row, params, space_fn(m, s), act, act.n - len(units),
                           claimed=claimed, right_scalars=rights)
    return make


def _intersection(A: MatrixLieAlgebra, B: MatrixLieAlgebra) -> MatrixLieAlgebra:
    """A intersected with B inside gl(N), as a subalgebra of A."""
    if A.dim == 0 or B.dim == 0:
        return A.subalgebra(fmpq_mat(A.dim, 0))
    K = la.nullspace(la.hstack([A.flat().transpose(), -B.flat().transpose()]))
    if K.ncols() == 0:
        return A.subalgebra(fmpq_mat(A.dim, 0))
    return A.subalgebra(la.column_basis(la.submatrix(K, range(A.dim), range(K.ncols()))), A.name)


def _hn(n_fn: Callable[[int, int], int], r_fn: Callable[[int, int], int]) -> Callable[[int, int], str]:
    return lambda m, s: f"H^{n_fn(m, s)}_{r_fn(m, s)}"


_H_C = _hn(lambda m, s: 2 * m + 1, lambda m, s: 2 * s + 1)
_H_H = _hn(lambda m, s: 4 * m + 3, lambda m, s: 4 * s + 3)
_H_A = _hn(lambda m, s: 2 * m + 1, lambda m, s: m)
_H_B = _hn(lambda m, s: 4 * m + 3, lambda m, s: 2 * m + 1)

TABLE1: dict[int, tuple[Callable, dict]] = {
    1: (_row1, {"n": 4, "r": 1}),
    2: (_spin_row(2, 9, 0, "spin(7)", "H^15_15"), {}),
    3: (_spin_row(3, 7, 0, "g2", "H^7_7"), {}),
    4: (_g2_row(4, False, -1, "su(3)", "H^6_6"), {}),
    5: (_spin_row(5, 8, 1, "spin(7)", "H^15_7"), {}),
    6: (_spin_row(6, 5, 4, "spin(4,3)", "H^15_7"), {}),
    7: (_spin_row(7, 4, 3, "g2_star", "H^7_3"), {}),
    8: (_g2_row(8, True, -1, "su(2,1)", "H^6_2"), {}),
    9: (_g2_row(9, True, 1, "su_pi(3)", "H^6_3"), {}),
    10: (_f_row(10, lambda m, s: f"su({m - s},{s + 1})", _H_C, True), {"m": 1, "s": 0}),
    11: (_f_row(11, lambda m, s: f"sp({m - s},{s + 1})", _H_H, True), {"m": 1, "s": 0}),
    12: (_f_row(12, lambda m, s: f"sp({m - s},{s + 1})+sp(1)", _H_H, True, ("i", "j", "k")),
         {"m": 1, "s": 0}),
    13: (_f_row(13, lambda m, s: f"su_pi({m + 1})", _H_A, True), {"m": 1}),
    14: (_f_row(14, lambda m, s: f"sp_pi({m + 1})", _H_B, True), {"m": 1}),
    15: (_f_row(15, lambda m, s: f"sp_pi({m + 1})+sp_pi(1)", _H_B, True, ("i", "j", "k")), {"m": 1}),
    16: (_f_row(16, lambda m, s: f"su({m - s},{s + 1})+u(1)", _H_C, True, ("i",)), {"m": 1, "s": 0}),
    17: (_f_row(17, lambda m, s: f"sp({m - s},{s + 1})+u(1)", _H_H, True, ("i",)), {"m": 1, "s": 0}),
    18: (_f_row(18, lambda m, s: f"u_pi({m + 1})", _H_A, True), {"m": 1}),
    19: (_f_row(19, lambda m, s: f"sp_pi({m + 1})+u_pi(1)", _H_B, True, ("j",)), {"m": 1}),
    20: (_f_row(20, lambda m, s: f"sp_pi({m + 1})+u(1)", _H_B, True, ("i",)), {"m": 1}),
}

TABLE2: dict[int, tuple[Callable, dict]] = {
    1: (_table2_row(1, lambda m, s: f"su({m - s},{s + 1})", ("i",),
                    lambda m, s: f"CH^{m}_{s}", True), {"m": 1, "s": 0}),
    2: (_table2_row(2, lambda m, s: f"sp({m - s},{s + 1})", ("i",),
                    lambda m, s: f"CH^{2 * m + 1}_{2 * s + 1}", False), {"m": 1, "s": 0}),
    3: (_table2_row(3, lambda m, s: f"sp_pi({m + 1})", ("i",),
                    lambda m, s: f"CH^{2 * m + 1}_{m}", False), {"m": 1}),
    4: (_table2_row(4, lambda m, s: f"su_pi({m + 1})", ("e",),
                    lambda m, s: f"AP^{m}", True), {"m": 1}),
    5: (_table2_row(5, lambda m, s: f"sp_pi({m + 1})", ("j",),
                    lambda m, s: f"AP^{2 * m + 1}", False), {"m": 1}),
    6: (_table2_row(6, lambda m, s: f"sp({m - s},{s + 1})", ("i", "j", "k"),
                    lambda m, s: f"HH^{m}_{s}", False), {"m": 1, "s": 0}),
    7: (_table2_row(7, lambda m, s: f"sp_pi({m + 1})", ("i", "j", "k"),
                    lambda m, s: f"BP^{m}", False), {"m": 1}),
}

TABLE2_METADATA = {
    1: "center quotient Z_{m+1}",
    2: "center quotient Z_2",
    3: "center quotient Z_2",
    4: "center quotient Z_2 when m is odd, none when m is even",
    5: "center quotient Z_2",
    6: "center quotient Z_2",
    7: "center quotient Z_2",
}


def table_row(table: int, row: int, params: dict | None = None) -> RowInstance:
    catalog = {1: TABLE1, 2: TABLE2}.get(table)
    if catalog is None or row not in catalog:
        raise TransitivityError(f"no row {row} in table {table}")
    make, defaults = catalog[row]
    merged = dict(defaults)
    if params:
        unknown = set(params) - set(defaults)
        if unknown:
            raise TransitivityError(f"table {table} row {row} takes no parameter {sorted(unknown)}")
        merged.update(params)
    return make(merged)


@dataclass
class RowReport:
    table: int
    row: int
    params: dict
    space: str
    dims: dict
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"table": self.table, "row": self.row, "params": self.params, "space": self.space,
                "dims": self.dims, "checks": self.checks, "pass": self.passed}


def verify_instance(inst: RowInstance) -> RowReport:
    a = inst.action
    rep = check_transitive(a, inst.right_scalars)
    if inst.table == 1:
        iso = isotropy_subalgebra(a)
    else:
        units = [_images(R, a.point) for R in inst.right_scalars]
        iso = stabilizer(a.algebra, a.point, la.hstack(units), name="H")
    checks = {"transitive": rep.transitive,
              "quotient_dim": a.algebra.dim - iso.dim == inst.quotient_dim}
    if inst.claimed is not None:
        checks["claimed_dim"] = inst.claimed.dim == iso.dim
        checks["claimed_contained"] = contained_in(inst.claimed, iso)
    if inst.claimed_invariants is not None:
        checks["claimed_invariants"] = _invariants(iso) == inst.claimed_invariants
    dims = {"ambient": rep.ambient, "g": rep.g, "h": iso.dim, "sum": rep.sum}
    return RowReport(inst.table, inst.row, inst.params, inst.space, dims, checks)


def verify_table_row(table: int, row: int, params: dict | None = None) -> RowReport:
    return verify_instance(table_row(table, row, params))


# --- negative controls --------------------------------------------------

def _embed(mats: np.ndarray, N: int, coords: Sequence[int]) -> np.ndarray:
    out = np.zeros((mats.shape[0], N, N), dtype=mats.dtype)
    idx = np.ix_(range(mats.shape[0]), coords, coords)
    out[idx] = mats
    return out


def negative_controls() -> list[tuple[str, ActionInstance]]:
    out = []
    so4 = so_basis((1, 1, 1, 1))
    out.append(("so(4) on the positive coordinates of so(4,1)",
                ActionInstance(4, 0, MatrixLieAlgebra("so(4)", _embed(so4, 5, range(1, 5))))))
    u2 = realize(FamilySpec.parse("u(2,0)")).algebra
    out.append(("u(2) on the positive coordinates of so(4,1)",
                ActionInstance(4, 0, MatrixLieAlgebra("u(2)", _embed(u2.num, 5, range(1, 5)), u2.den))))
    so31 = so_basis((-1, 1, 1, 1))
    out.append(("so(3,1) on coordinates 0..3 of so(4,1)",
                ActionInstance(4, 0, MatrixLieAlgebra("so(3,1)", _embed(so31, 5, range(4))))))
    g2 = g2_action(False, 1).algebra
    out.append(("g2 on the positive coordinates of so(7,1)",
                ActionInstance(7, 0, MatrixLieAlgebra("g2", _embed(g2.num, 8, range(1, 8)), g2.den))))
    sp7 = realize(FamilySpec.parse("spin(7)")).algebra
    out.append(("spin(7) on the positive coordinates of so(8,1)",
                ActionInstance(8, 0, MatrixLieAlgebra("spin(7)", _embed(sp7.num, 9, range(1, 9)), sp7.den))))
    so22 = so_basis((-1, -1, 1, 1))
    out.append(("so(2,2) on coordinates 0..3 of so(3,2)",
                ActionInstance(4, 1, MatrixLieAlgebra("so(2,2)", _embed(so22, 5, range(4))))))
    return out


# --- Witt decomposition -------------------------------------------------

@dataclass(frozen=True)
class WittBasis:
    """Columns w_1..w_{n+1}; W1 = first r+1, W2 = next r+1, U = the rest.

    w_i = (e_{i+r+1} - e_i)/2 and w_{i+r+1} = (e_i + e_{i+r+1})/2 for
    i = 1..r+1, w_k = e_k otherwise, where e_1..e_{r+1} are the negative
    directions.  With this sign choice Q = z_1 z_{r+2} + ... + z_{r+1} z_{2r+2}
    on W1 + W2.  The alternative w_i = (e_i - e_{i+r+1})/2 gives the negative
    of that form (see ``literal_gram``).
    """

    n: int
    r: int
    vectors: fmpq_mat

    @property
    def split(self) -> tuple[int, int, int]:
        return (self.r + 1, self.r + 1, self.n - 2 * self.r - 1)

    @cached_property
    def gram(self) -> fmpq_mat:
        J = la.qdiag(ambient_form(self.n, self.r))
        return self.vectors.transpose() * J * self.vectors

    def expected_gram(self) -> fmpq_mat:
        """[[0, I/2], [I/2, 0]] on W1 + W2 and the identity on U."""
        N, k = self.n + 1, self.r + 1
        G = la.qzeros(N, N)
        for i in range(k):
            G[i, i + k] = fmpq(1, 2)
            G[i + k, i] = fmpq(1, 2)
        for j in range(2 * k, N):
            G[j, j] = 1
        return G

    def Q(self, z: Sequence) -> Fraction:
        v = la.qmat([[x] for x in z])
        return la.fraction((v.transpose() * self.gram * v)[0, 0])


def _witt_vectors(n: int, r: int, sign: int) -> fmpq_mat:
    if not 0 <= r or 2 * r + 1 > n:
        raise TransitivityError(f"Witt basis needs 2r + 1 <= n, got n={n}, r={r}")
    N, k = n + 1, r + 1
    W = la.qzeros(N, N)
    half = fmpq(1, 2)
    for i in range(k):
        W[i, i] = -sign * half
        W[i + k, i] = sign * half
        W[i, i + k] = half
        W[i + k, i + k] = half
    for j in range(2 * k, N):
        W[j, j] = 1
    return W


def witt_basis(n: int, r: int) -> WittBasis:
    return WittBasis(n, r, _witt_vectors(n, r, 1))


def literal_gram(n: int, r: int) -> fmpq_mat:
    """Gram matrix for the choice w_i = (e_i - e_{i+r+1})/2."""
    W = _witt_vectors(n, r, -1)
    J = la.qdiag(ambient_form(n, r))
    return W.transpose() * J * W


def witt_point(zs: Sequence) -> list[Fraction]:
    """(z_1, .., z_{r+1}, -z_1/R, .., -z_{r+1}/R) with R = sum z_i^2."""
    zs = [la.fraction(z) for z in zs]
    R = sum(z * z for z in zs)
    if R == 0:
        raise TransitivityError("the point formula needs a nonzero z")
    return zs + [-z / R for z in zs]
