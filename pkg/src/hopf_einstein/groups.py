"""Matrix realizations of the classical, para and exceptional families.

Family strings follow the grammar

    spec    := factor ("+" factor)*
    factor  := name [ "(" int ["," int] ")" ]
    name    := so | su | u | sp | sp_pi | su_pi | u_pi | gl_plus | spin | g2 | g2_star

so(p, q), su/u/sp(p, q) take a signature, su_pi/u_pi/gl_plus/sp_pi take a
size m, spin takes (p, q), and g2/g2_star take nothing.  In a product every
factor after the first is a scalar factor (u(1), u_pi(1), sp(1), sp_pi(1))
acting by right multiplication on the module of the first factor.

F-families act on F^n realified block by block, F-coordinate a occupying
real indices a*k .. a*k + k - 1 in the unit order of the algebra kind.  The
form on block a is sigma * eps_a * Re(conj(x) y), with sigma = +1 for C, H
and sigma = -1 for the para kinds.  Coordinates are then stably reordered so
that negative directions come first, giving the diagonal form diag(-1.., +1..).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import algebra as alg
from . import linalg as la
from .clifford import spinor_module
from .liealg import MatrixLieAlgebra

F_FAMILIES = {
    # family: (algebra kind, trace unit for the "special" condition or None)
    "su": ("Complex", "i"),
    "u": ("Complex", None),
    "sp": ("Quaternion", None),
    "su_pi": ("ParaComplex", "e"),
    "u_pi": ("ParaComplex", None),
    "gl_plus": ("ParaComplex", None),
    "sp_pi": ("ParaQuaternion", None),
}
SIGNATURE_FAMILIES = ("so", "su", "u", "sp", "spin")
SIZE_FAMILIES = ("su_pi", "u_pi", "gl_plus", "sp_pi")
BARE_FAMILIES = ("g2", "g2_star")
FAMILIES = SIGNATURE_FAMILIES + SIZE_FAMILIES + BARE_FAMILIES

# right scalar factors: (factor name, module kind) -> units acting on the right
RIGHT_FACTORS = {
    ("u", "Complex"): ("i",),
    ("u", "Quaternion"): ("i",),
    ("u", "ParaQuaternion"): ("i",),
    ("u_pi", "ParaComplex"): ("e",),
    ("u_pi", "ParaQuaternion"): ("j",),
    ("sp", "Quaternion"): ("i", "j", "k"),
    ("sp_pi", "ParaQuaternion"): ("i", "j", "k"),
}


class GroupSpecError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()
    factors: tuple["FamilySpec", ...] = ()

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        parts = [p.strip() for p in text.replace(" ", "").split("+")]
        if not all(parts):
            raise GroupSpecError(f"malformed family spec {text!r}")
        specs = tuple(_parse_factor(p) for p in parts)
        if len(specs) == 1:
            return specs[0]
        return cls("product", (), specs)

    def __str__(self) -> str:
        if self.family == "product":
            return "+".join(str(f) for f in self.factors)
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(p) for p in self.params)})"


_FACTOR_RE = re.compile(r"^([a-z0-9_]+)(?:\((\d+)(?:,(\d+))?\))?$")


def _parse_factor(text: str) -> FamilySpec:
    m = _FACTOR_RE.match(text)
    if not m:
        raise GroupSpecError(f"malformed factor {text!r}")
    name = m.group(1)
    params = tuple(int(g) for g in m.group(2, 3) if g is not None)
    if name not in FAMILIES:
        raise GroupSpecError(f"unknown family {name!r}")
    if name in BARE_FAMILIES:
        if params:
            raise GroupSpecError(f"{name} takes no parameters")
    elif name in SIZE_FAMILIES:
        if len(params) != 1 or params[0] < 1:
            raise GroupSpecError(f"{name} needs one size parameter m >= 1")
    else:
        if len(params) == 1:
            params = (params[0], 0)
        if len(params) != 2 or params[0] + params[1] < 1:
            raise GroupSpecError(f"{name} needs a signature (p, q) with p + q >= 1")
    return FamilySpec(name, params)


@dataclass(frozen=True)
class FModule:
    """F^n realified, with signs eps per F-coordinate."""

    tag: str
    signs: tuple[int, ...]
    sigma: int

    @cached_property
    def kind(self) -> alg.AlgebraKind:
        return alg.kind(self.tag)

    @property
    def k(self) -> int:
        return self.kind.dimension

    @property
    def blocks(self) -> int:
        return len(self.signs)

    @property
    def N(self) -> int:
        return self.k * self.blocks

    @cached_property
    def raw_form(self) -> tuple[int, ...]:
        g = alg.basis_gram(self.kind)
        return tuple(int(self.sigma * e * g[u, u]) for e in self.signs for u in range(self.k))

    @cached_property
    def order(self) -> tuple[int, ...]:
        """order[t] is the raw index placed at position t."""
        return tuple(sorted(range(self.N), key=lambda i: self.raw_form[i] > 0))

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * self.N
        for t, i in enumerate(self.order):
            pos[i] = t
        return tuple(pos)

    @property
    def form(self) -> tuple[int, ...]:
        return tuple(self.raw_form[i] for i in self.order)

    def index(self, block: int, unit: str) -> int:
        """Position of the real coordinate (block, unit) in the reordered basis."""
        return self.position[block * self.k + self.kind.names.index(unit)]

    def permute(self, X: np.ndarray) -> np.ndarray:
        o = list(self.order)
        return X[np.ix_(o, o)]

    def left(self, row: int, col: int, unit: str) -> np.ndarray:
        """E_{row,col} tensor left multiplication by a unit."""
        X = np.zeros((self.N, self.N), dtype=np.int64)
        L = _unit_left(self.tag, unit)
        X[row * self.k:(row + 1) * self.k, col * self.k:(col + 1) * self.k] = L
        return self.permute(X)

    def right(self, unit: str, blocks: Sequence[int] | None = None) -> np.ndarray:
        """Right multiplication by a unit on the given F-coordinates (default all)."""
        X = np.zeros((self.N, self.N), dtype=np.int64)
        R = _unit_right(self.tag, unit)
        for a in (range(self.blocks) if blocks is None else blocks):
            X[a * self.k:(a + 1) * self.k, a * self.k:(a + 1) * self.k] = R
        return self.permute(X)

    def family(self, blocks: Sequence[int] | None = None, trace_unit: str | None = None) -> np.ndarray:
        """Basis of the form-preserving left-linear maps on the given blocks.

        With ``trace_unit`` the extra condition tr(X R(unit)) = 0 is imposed.
        """
        blocks = list(range(self.blocks) if blocks is None else blocks)
        gens = [self.left(a, b, u) for a in blocks for b in blocks for u in self.kind.names]
        J = np.diag(self.form)
        rows = [np.stack([(g.T @ J + J @ g).ravel() for g in gens], axis=1)]
        if trace_unit is not None:
            R = self.right(trace_unit, blocks)
            rows.append(np.array([[int(np.trace(g @ R)) for g in gens]]))
        null = la.nullspace(la.from_int_array(np.vstack(rows)))
        Z, _ = la.int_parts(null)
        return la.int_einsum("gk,gxy->kxy", Z, np.stack(gens))


@lru_cache(maxsize=None)
def _unit_left(tag: str, unit: str) -> np.ndarray:
    k = alg.kind(tag)
    return np.array(alg.left_matrix(k.unit(unit)), dtype=np.int64)


@lru_cache(maxsize=None)
def _unit_right(tag: str, unit: str) -> np.ndarray:
    k = alg.kind(tag)
    return np.array(alg.right_matrix(k.unit(unit)), dtype=np.int64)


def f_module(spec: FamilySpec) -> FModule:
    """The realified module of an F-family (or of the first factor of a product)."""
    if spec.family == "product":
        return f_module(spec.factors[0])
    if spec.family not in F_FAMILIES:
        raise GroupSpecError(f"{spec} is not an F-family")
    tag = F_FAMILIES[spec.family][0]
    if spec.family in SIZE_FAMILIES:
        return FModule(tag, (1,) * spec.params[0], -1)
    p, q = spec.params
    return FModule(tag, (-1,) * q + (1,) * p, 1)


@dataclass(frozen=True)
class Realization:
    """An algebra, its invariant diagonal form, and structure matrices it commutes with."""

    algebra: MatrixLieAlgebra
    form: tuple[int, ...]
    structures: tuple[np.ndarray, ...] = field(default=(), repr=False, compare=False)
    module: FModule | None = None


def expected_dim(spec: FamilySpec) -> int:
    f, ps = spec.family, spec.params
    if f == "product":
        first = spec.factors[0]
        return expected_dim(first) + sum(
            len(RIGHT_FACTORS[(g.family, F_FAMILIES[first.family][0])]) for g in spec.factors[1:])
    if f in ("g2", "g2_star"):
        return 14
    if f in ("so", "spin"):
        n = ps[0] + ps[1]
        return n * (n - 1) // 2
    if f in ("su", "u"):
        n = ps[0] + ps[1]
        return n * n - (f == "su")
    if f == "sp":
        n = ps[0] + ps[1]
        return n * (2 * n + 1)
    m = ps[0]
    if f == "su_pi":
        return m * m - 1
    if f in ("u_pi", "gl_plus"):
        return m * m
    return m * (2 * m + 1)  # sp_pi


def so_basis(form: Sequence[int]) -> np.ndarray:
    """so of a diagonal form: J_aa E_ab - J_bb E_ba for a < b."""
    N = len(form)
    mats = []
    for a in range(N):
        for b in range(a + 1, N):
            X = np.zeros((N, N), dtype=np.int64)
            X[a, b] = form[a]
            X[b, a] = -form[b]
            mats.append(X)
    return np.stack(mats) if mats else np.zeros((0, N, N), dtype=np.int64)


@lru_cache(maxsize=None)
def realize(spec: FamilySpec) -> Realization:
    f = spec.family
    if f == "so":
        p, q = spec.params
        form = (-1,) * q + (1,) * p
        if p + q < 2:
            raise GroupSpecError("so needs p + q >= 2")
        out = Realization(MatrixLieAlgebra(str(spec), so_basis(form)), form)
    elif f == "spin":
        p, q = spec.params
        try:
            sm = spinor_module(p, q)
        except ValueError as exc:
            raise GroupSpecError(f"unsupported spin signature ({p},{q}): {exc}") from None
        out = Realization(MatrixLieAlgebra(str(spec), sm.algebra.num, sm.algebra.den), sm.form)
    elif f in BARE_FAMILIES:
        out = Realization(build_g2(f == "g2_star"), g2_form(f == "g2_star", -1)[0])
    elif f in F_FAMILIES:
        mod = f_module(spec)
        basis = mod.family(trace_unit=F_FAMILIES[f][1])
        rights = tuple(mod.right(u) for u in mod.kind.names[1:])
        out = Realization(MatrixLieAlgebra(str(spec), basis), mod.form, rights, mod)
    elif f == "product":
        out = _product(spec)
    else:
        raise GroupSpecError(f"unknown family {f!r}")
    _check(spec, out)
    return out


def _product(spec: FamilySpec) -> Realization:
    first = realize(spec.factors[0])
    mod = first.module
    if mod is None:
        raise GroupSpecError("the first factor of a product must be an F-family")
    mats = [first.algebra.num]
    den = first.algebra.den
    for g in spec.factors[1:]:
        units = RIGHT_FACTORS.get((g.family, mod.tag))
        if units is None or g.params not in ((1,), (1, 0)):
            raise GroupSpecError(f"{g} is not a right scalar factor on {mod.tag} modules")
        mats.append(den * np.stack([mod.right(u) for u in units]))
    algebra = product([first.algebra] + [MatrixLieAlgebra(str(g), m, den)
                                         for g, m in zip(spec.factors[1:], mats[1:])], str(spec))
    return Realization(algebra, first.form, (), mod)


def product(algebras: Sequence[MatrixLieAlgebra], name: str = "") -> MatrixLieAlgebra:
    """Sum of pairwise commuting subalgebras of one gl(N)."""
    for a in range(len(algebras)):
        for b in range(a + 1, len(algebras)):
            A, B = algebras[a], algebras[b]
            ab = la.int_matmul(A.num[:, None], B.num[None, :])
            ba = la.int_matmul(B.num[None, :], A.num[:, None])
            if np.any(ab != ba):
                raise GroupSpecError(f"factors {A.name} and {B.name} do not commute")
    den = 1
    for A in algebras:
        den = np.lcm(den, A.den)
    num = np.concatenate([A.num * (den // A.den) for A in algebras])
    return MatrixLieAlgebra(name or "+".join(A.name for A in algebras), num, int(den))


def _check(spec: FamilySpec, out: Realization) -> None:
    A = out.algebra
    if A.dim != expected_dim(spec):
        raise GroupSpecError(f"{spec}: dimension {A.dim}, expected {expected_dim(spec)}")
    J = la.qdiag(out.form)
    if not A.preserves_form(J):
        raise GroupSpecError(f"{spec}: basis does not preserve its form")
    for S in out.structures:
        if not A.commutes_with(la.from_int_array(S)):
            raise GroupSpecError(f"{spec}: basis is not F-linear")


def build(spec: FamilySpec | str) -> MatrixLieAlgebra:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    return realize(spec).algebra


@lru_cache(maxsize=None)
def _derivations(split: bool) -> np.ndarray:
    k = alg.kind("SplitOctonion" if split else "Octonion")
    d = k.dimension
    cols = []
    for a in range(d):
        for b in range(d):
            # D = E_ab; residual D(e_p e_q) - D(e_p) e_q - e_p D(e_q)
            res = np.zeros((d, d, d), dtype=np.int64)
            for p in range(d):
                for q in range(d):
                    r, s = k.table[p][q]
                    if r == b:
                        res[p, q, a] += s
                    if p == b:
                        r2, s2 = k.table[a][q]
                        res[p, q, r2] -= s2
                    if q == b:
                        r3, s3 = k.table[p][a]
                        res[p, q, r3] -= s3
            cols.append(res.ravel())
    null = la.nullspace(la.from_int_array(np.stack(cols, axis=1)))
    Z, _ = la.int_parts(null)
    return Z.T.reshape(-1, d, d)


def build_g2(split: bool) -> MatrixLieAlgebra:
    """Derivations of the (split) octonions restricted to the imaginary part.

    Basis order of the 7-dimensional module is (i, j, k, l, il, jl, kl).
    """
    D = _derivations(split)
    if np.any(D[:, :, 0]) or np.any(D[:, 0, :]):
        raise GroupSpecError("derivation does not preserve the real/imaginary split")
    return MatrixLieAlgebra("g2_star" if split else "g2", D[:, 1:, 1:])


def g2_form(split: bool, sign: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(diagonal form, coordinate order) for g2 on the imaginary octonions.

    The form is sign * N restricted to the imaginary part, reordered with
    negative directions first; the order lists imaginary unit indices 0..6.
    """
    k = alg.kind("SplitOctonion" if split else "Octonion")
    g = alg.basis_gram(k)
    raw = [int(sign * g[u, u]) for u in range(1, 8)]
    order = tuple(sorted(range(7), key=lambda i: raw[i] > 0))
    return tuple(raw[i] for i in order), order


def g2_action(split: bool, sign: int) -> Realization:
    form, order = g2_form(split, sign)
    D = build_g2(split).num
    o = list(order)
    alg_ = MatrixLieAlgebra("g2_star" if split else "g2", D[:, o][:, :, o])
    out = Realization(alg_, form)
    if not alg_.preserves_form(la.qdiag(form)):
        raise GroupSpecError("g2 does not preserve the octonion norm")
    return out
