"""Hopf-type submersions G/K -> G/H_b, their canonical variations and Einstein members.

For a fibration with K in H_b in G, m is the trace-form complement of k in g,
m1 = m n h_b is vertical and m2 (the trace complement of h_b) horizontal.
The canonical variation g_t scales the metric on m1 by t.  With lam' the
Einstein constant of the base and lam^ that of the fibre, g_t is Einstein for
t = 1 and for t0 = lam^ / (lam' - lam^) unless lam^ = 0, lam^ = lam'/2 or the
horizontal distribution is integrable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from flint import fmpq, fmpq_mat, fmpq_poly

from . import linalg as la
from .clifford import spinor_module
from .einstein import (EinsteinError, ReductiveSpace, adapted, einstein_constant, einstein_residual,
                       einstein_tensor, projected_metric)
from .groups import FamilySpec, realize
from .liealg import MatrixLieAlgebra, Subspace, intersect, orthogonal_complement
from .transitivity import ActionInstance, check_transitive, stabilizer


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    group: str
    total: str
    base: str
    fibre_units: tuple[str, ...] = ()
    total_units: tuple[str, ...] = ()
    spin: tuple[int, int, int] | None = None
    uses_s: bool = False


CATALOG: dict[str, CatalogEntry] = {
    "piC": CatalogEntry("piC", "su({m_s},{s1})", "H^{2m+1}_{2s+1}", "CH^{m}_{s}", ("i",), uses_s=True),
    "piA": CatalogEntry("piA", "su_pi({m1})", "H^{2m+1}_{m}", "AP^{m}", ("e",)),
    "piH": CatalogEntry("piH", "sp({m_s},{s1})", "H^{4m+3}_{4s+3}", "HH^{m}_{s}", ("i", "j", "k"),
                        uses_s=True),
    "piB": CatalogEntry("piB", "sp_pi({m1})", "H^{4m+3}_{2m+1}", "BP^{m}", ("i", "j", "k")),
    "piO1": CatalogEntry("piO1", "spin(9,0)", "H^15_15", "H^8_8", spin=(9, 0, 0)),
    "piO2": CatalogEntry("piO2", "spin(8,1)", "H^15_7", "H^8_0", spin=(8, 1, 8)),
    "piOprime": CatalogEntry("piOprime", "spin(5,4)", "H^15_7", "H^8_4", spin=(5, 4, 0)),
    "piCH": CatalogEntry("piCH", "sp({m_s},{s1})", "CH^{2m+1}_{2s+1}", "HH^{m}_{s}", ("i", "j", "k"),
                         ("i",), uses_s=True),
    "piCB": CatalogEntry("piCB", "sp_pi({m1})", "CH^{2m+1}_{m}", "BP^{m}", ("i", "j", "k"), ("i",)),
    "piAB": CatalogEntry("piAB", "sp_pi({m1})", "AP^{2m+1}", "BP^{m}", ("i", "j", "k"), ("j",)),
}


class FibrationError(ValueError):
    pass


def _fmt(template: str, m: int, s: int) -> str:
    vals = {"m": m, "s": s, "m_s": m - s, "s1": s + 1, "m1": m + 1}
    out = template
    for expr, val in (("{2m+1}", 2 * m + 1), ("{2s+1}", 2 * s + 1), ("{4m+3}", 4 * m + 3),
                      ("{4s+3}", 4 * s + 3)):
        out = out.replace(expr, str(val))
    return out.format(**vals)


@dataclass(frozen=True)
class HopfFibration:
    id: str
    m: int
    s: int
    group: str
    algebra: MatrixLieAlgebra  # adapted basis [k | m1 | m2]
    dim_k: int
    p: int
    q: int
    metric: fmpq_mat  # canonical metric on m, blocks [m1 | m2]
    total: str = ""
    base: str = ""

    @property
    def dim(self) -> int:
        return self.p + self.q

    @cached_property
    def structure(self):
        return self.algebra.structure

    @cached_property
    def fibre_metric(self) -> fmpq_mat:
        return la.submatrix(self.metric, range(self.p), range(self.p))

    @cached_property
    def base_metric(self) -> fmpq_mat:
        r = range(self.p, self.dim)
        return la.submatrix(self.metric, r, r)

    def total_space(self) -> ReductiveSpace:
        return ReductiveSpace(self.structure, self.dim_k, self.metric, self.algebra, f"{self.id} total")

    def fibre_space(self) -> ReductiveSpace:
        sub = self.structure.restrict(range(self.dim_k + self.p), f"{self.id} fibre")
        return ReductiveSpace(sub, self.dim_k, self.fibre_metric, None, f"{self.id} fibre")

    def base_space(self) -> ReductiveSpace:
        return ReductiveSpace(self.structure, self.dim_k + self.p, self.base_metric, self.algebra,
                              f"{self.id} base")

    def vertical_bracket_horizontal_part_zero(self) -> bool:
        """[m1, m1] has no m2 component (totally geodesic fibres)."""
        k, p = self.dim_k, self.p
        C = self.structure.num
        return not np.any(C[k:k + p, k:k + p, k + p:])

    def oneill_nonzero(self) -> bool:
        """Some [X, Y] with X, Y in m2 has a nonzero m1 component."""
        k, p = self.dim_k, self.p
        C = self.structure.num
        return bool(np.any(C[k + p:, k + p:, k:k + p]))


def _units_columns(N: int, idx: list[int]) -> fmpq_mat:
    W = fmpq_mat(N, len(idx))
    for c, i in enumerate(idx):
        W[i, c] = 1
    return W


@lru_cache(maxsize=None)
def build_fibration(id: str, m: int = 1, s: int = 0) -> HopfFibration:
    entry = CATALOG.get(id)
    if entry is None:
        raise FibrationError(f"unknown fibration {id!r}; choose from {sorted(CATALOG)}")
    if entry.spin is None:
        if m < 1 or not 0 <= s <= m or (s and not entry.uses_s):
            raise FibrationError(f"{id}: invalid parameters m={m}, s={s}")
        group = _fmt(entry.group, m, s)
        real = realize(FamilySpec.parse(group))
        mod = real.module
        G = real.algebra
        WH = _units_columns(mod.N, [mod.index(0, u) for u in entry.fibre_units])
        WK = _units_columns(mod.N, [mod.index(0, u) for u in entry.total_units]) if entry.total_units else None
        total, base = _fmt(entry.total, m, s), _fmt(entry.base, m, s)
    else:
        if (m, s) != (1, 0):
            raise FibrationError(f"{id} takes no parameters")
        p_, q_, split = entry.spin
        sm = spinor_module(p_, q_, split)
        G = MatrixLieAlgebra(entry.group, sm.algebra.num, sm.algebra.den)
        WH = _units_columns(G.N, [i for i, h in enumerate(sm.half) if h == sm.half[0]])
        WK = None
        total, base = entry.total, entry.base
        group = entry.group
    n = G.N - 1
    r = realize_negatives(G) - 1
    act = ActionInstance(n, r, G)
    if not check_transitive(act).transitive:
        raise FibrationError(f"{group} is not transitive on H^{n}_{r}")
    x0 = act.point
    K = stabilizer(G, x0, WK)
    Hb = stabilizer(G, x0, WH)
    T = G.trace_form()
    ks = Subspace(G, G.coordinates(K.num, K.den).transpose()) if K.dim else Subspace.zero(G)
    hbs = Subspace(G, G.coordinates(Hb.num, Hb.den).transpose())
    if not hbs.contains(ks):
        raise FibrationError(f"{id}: K is not inside H_b")
    ms = orthogonal_complement(ks, T)
    m1 = intersect(ms, hbs)
    m2 = orthogonal_complement(hbs, T)
    if m1.dim + m2.dim != ms.dim:
        raise FibrationError(f"{id}: m does not split as m1 + m2")
    A = adapted(G, [ks.vectors, m1.vectors, m2.vectors], group)
    g = projected_metric(A, ks.dim, x0, la.qdiag(act.form), WK)
    p = m1.dim
    cross = la.submatrix(g, range(p), range(p, ms.dim))
    if not la.is_zero(cross):
        raise FibrationError(f"{id}: m1 and m2 are not orthogonal")
    return HopfFibration(id, m, s, group, A, ks.dim, p, m2.dim, g, total, base)


def realize_negatives(G: MatrixLieAlgebra) -> int:
    """Number of negative directions of the diagonal form preserved by G."""
    N = G.N
    for neg in range(1, N + 1):
        form = la.qdiag([-1] * neg + [1] * (N - neg))
        if G.preserves_form(form):
            return neg
    raise FibrationError(f"{G.name} preserves no standard diagonal form")


def variation_metric(fib: HopfFibration, t) -> fmpq_mat:
    t = la.to_fmpq(t)
    if t == 0:
        raise FibrationError("the canonical variation needs t != 0")
    g = fmpq_mat(fib.metric)
    for a in range(fib.p):
        for b in range(fib.p):
            g[a, b] = g[a, b] * t
    return g


def variation(fib: HopfFibration, t) -> ReductiveSpace:
    return ReductiveSpace(fib.structure, fib.dim_k, variation_metric(fib, t), fib.algebra,
                          f"{fib.id} t={la.frac_str(t)}")


def lambda_values(fib: HopfFibration) -> tuple[Fraction, Fraction]:
    """(Einstein constant of the base, Einstein constant of the fibre)."""
    try:
        lam_base = einstein_constant(fib.base_space())
        lam_fibre = einstein_constant(fib.fibre_space())
    except EinsteinError as exc:
        raise FibrationError(f"{fib.id}: {exc}") from None
    return lam_base, lam_fibre


def t_zero(fib: HopfFibration) -> Fraction | None:
    lam_base, lam_fibre = lambda_values(fib)
    if lam_fibre == 0 or 2 * lam_fibre == lam_base or not fib.oneill_nonzero():
        return None
    return lam_fibre / (lam_base - lam_fibre)


DEGREE_BOUND = 4
CHECK_POINTS = (Fraction(6), Fraction(1, 2), Fraction(-1))


def _scaled_einstein(fib: HopfFibration, t: Fraction) -> list[fmpq]:
    E = einstein_tensor(variation(fib, t))
    tq = la.to_fmpq(t)
    return [x * tq for x in E.entries()]


def _interpolate(xs: list[Fraction], ys: list[fmpq]) -> fmpq_poly:
    out = fmpq_poly([0])
    for i, xi in enumerate(xs):
        if ys[i] == 0:
            continue
        term = fmpq_poly([ys[i]])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * fmpq_poly([-la.to_fmpq(xj), 1]) / la.to_fmpq(xi - xj)
        out += term
    return out


@dataclass
class ScanResult:
    roots: list[Fraction]
    polynomial: fmpq_poly
    residuals: dict = field(default_factory=dict)


def einstein_scan(fib: HopfFibration, samples: list[Fraction] | None = None) -> ScanResult:
    """All t != 0 with g_t Einstein, via exact interpolation of t * E(t)."""
    xs = samples or [Fraction(k) for k in range(1, DEGREE_BOUND + 2)]
    if len(xs) < DEGREE_BOUND + 1:
        raise FibrationError("need at least degree bound + 1 samples")
    values = [_scaled_einstein(fib, x) for x in xs]
    polys = [_interpolate(xs, [v[e] for v in values]) for e in range(len(values[0]))]
    for x in CHECK_POINTS:
        if x in xs:
            continue
        got = _scaled_einstein(fib, x)
        xq = la.to_fmpq(x)
        if any(P(xq) != y for P, y in zip(polys, got)):
            raise FibrationError(f"{fib.id}: interpolation check failed at t={x}; increase the degree bound")
    nonzero = [P for P in polys if P != 0]
    if not nonzero:
        raise FibrationError(f"{fib.id}: every g_t is Einstein; the scan is degenerate")
    gcd = nonzero[0]
    for P in nonzero[1:]:
        gcd = gcd.gcd(P)
    roots = []
    if gcd.degree() > 0:
        _, factors = gcd.factor()
        for f, _mult in factors:
            if f.degree() == 1:
                c = f.coeffs()
                root = -la.fraction(c[0]) / la.fraction(c[1])
                if root != 0:
                    roots.append(root)
    roots.sort()
    residuals = {r: einstein_residual(variation(fib, r)) for r in roots}
    bad = [r for r, v in residuals.items() if v != 0]
    if bad:
        raise FibrationError(f"{fib.id}: candidate roots {bad} are not Einstein")
    return ScanResult(roots, gcd, residuals)


# --- enumeration ---------------------------------------------------------

_TAG_RE = re.compile(r"^(H|CH|HH|AP|BP):(\d+)(?::(\d+))?$")


@dataclass(frozen=True)
class SpaceTag:
    kind: str
    a: int
    b: int | None

    def __str__(self) -> str:
        return f"{self.kind}:{self.a}" + (f":{self.b}" if self.b is not None else "")


def parse_space_tag(tag: str) -> SpaceTag:
    mt = _TAG_RE.match(tag.strip())
    if not mt:
        raise FibrationError(f"unrecognized space tag {tag!r}; use H:n:r, CH:m:s, HH:m:s, AP:m or BP:m")
    kind, a, b = mt.group(1), int(mt.group(2)), mt.group(3)
    b = int(b) if b is not None else None
    if kind in ("H", "CH", "HH"):
        if b is None or not 0 <= b <= a or a < 1:
            raise FibrationError(f"{tag}: need {kind}:n:r with 0 <= r <= n and n >= 1")
    elif b is not None or a < 1:
        raise FibrationError(f"{tag}: need {kind}:m with m >= 1")
    return SpaceTag(kind, a, b)


def matching_fibrations(tag: SpaceTag) -> list[tuple[str, int, int]]:
    """Catalog fibrations whose total space is the tagged space (m >= 1)."""
    out = []
    a, b = tag.a, tag.b
    if tag.kind == "H":
        n, r = a, b
        if n % 2 == 1 and r % 2 == 1 and n >= 3:
            out.append(("piC", (n - 1) // 2, (r - 1) // 2))
        if n % 2 == 1 and r == (n - 1) // 2 and n >= 3:
            out.append(("piA", (n - 1) // 2, 0))
        if n % 4 == 3 and r % 4 == 3 and n >= 7:
            out.append(("piH", (n - 3) // 4, (r - 3) // 4))
        if n % 4 == 3 and r == (n - 1) // 2 and n >= 7:
            out.append(("piB", (n - 3) // 4, 0))
        if (n, r) == (15, 15):
            out.append(("piO1", 1, 0))
        if (n, r) == (15, 7):
            out += [("piO2", 1, 0), ("piOprime", 1, 0)]
    elif tag.kind == "CH":
        M, S = a, b
        if M % 2 == 1 and S % 2 == 1 and M >= 3:
            out.append(("piCH", (M - 1) // 2, (S - 1) // 2))
        if M % 2 == 1 and S == (M - 1) // 2 and M >= 3:
            out.append(("piCB", (M - 1) // 2, 0))
    elif tag.kind == "AP":
        if a % 2 == 1 and a >= 3:
            out.append(("piAB", (a - 1) // 2, 0))
    return out


MAX_AMBIENT = 24


def enumerate_einstein_metrics(tag: str) -> list[dict]:
    """Canonical metric plus one descriptor per matching fibration with t0 defined."""
    st = parse_space_tag(tag)
    out = [{"metric": "canonical", "space": str(st), "t": "1"}]
    for id_, m, s in matching_fibrations(st):
        if _ambient_size(id_, m) > MAX_AMBIENT:
            raise FibrationError(f"{tag}: {id_} at m={m} exceeds the desk-scale bound N <= {MAX_AMBIENT}")
        fib = build_fibration(id_, m, s)
        t0 = t_zero(fib)
        if t0 is None:
            continue
        if einstein_residual(variation(fib, t0)) != 0:
            raise FibrationError(f"{id_}: g_t0 is not Einstein")
        lam_base, lam_fibre = lambda_values(fib)
        out.append({"metric": "variation", "fibration": id_, "params": fibration_params(id_, m, s),
                    "group": fib.group, "t": la.frac_str(t0),
                    "lambda_base": la.frac_str(lam_base), "lambda_fibre": la.frac_str(lam_fibre)})
    return out


def fibration_params(id_: str, m: int, s: int) -> dict:
    """The parameters a catalog fibration actually depends on."""
    entry = CATALOG[id_]
    if entry.spin is not None:
        return {}
    return {"m": m, "s": s} if entry.uses_s else {"m": m}


def _ambient_size(id_: str, m: int) -> int:
    entry = CATALOG[id_]
    if entry.spin is not None:
        return 16
    k = {"su": 2, "su_pi": 2, "sp": 4, "sp_pi": 4}[entry.group.split("(")[0]]
    return k * (m + 1)


def expected_count(tag: str) -> int | None:
    """Number of Einstein metrics stated for the tagged space, None when no clause applies."""
    st = parse_space_tag(tag)
    a, b = st.a, st.b
    if st.kind == "H":
        n, r = a, b
        if (n, r) == (15, 7):
            return 5
        if (n, r) == (15, 15):
            return 3
        if n % 8 == 7 and r % 4 == 3 and n == 2 * r + 1 and (r - 3) // 4 != 1:
            return 3
        if n % 2 == 0 or n % 4 == 1:
            return 1
        if n % 4 == 3 and r % 4 == 3:
            m, s = (n - 3) // 4, (r - 3) // 4
            if m != 3 and m != 2 * s + 1:
                return 2
        return None
    if st.kind == "CH":
        M, S = a, b
        if M % 2 == 0:
            return 1
        m = (M - 1) // 2
        if S % 2 == 0:
            if m == S:
                return 2
            return 1
        s = (S - 1) // 2
        if m == 2 * s + 1:
            return 3
        return 2
    if st.kind == "AP":
        return 1 if a % 2 == 0 else 2
    if st.kind == "BP":
        return 1
    return None
