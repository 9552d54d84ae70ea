"""Curvature of a reductive space from its Levi-Civita (Nomizu) map.

    L(X) Y = 1/2 [X, Y]_m + U(X, Y),
    <U(X, Y), W> = 1/2 (<[W, X]_m, Y> + <X, [W, Y]_m>),
    R(X, Y) = [L(X), L(Y)] - L([X, Y]_m) - ad([X, Y]_h)|_m,
    Ric(Y, Z) = trace of X -> R(X, Y) Z.

Used as an independent check of ``einstein.ricci``.
"""
from __future__ import annotations

from flint import fmpq, fmpq_mat

from . import linalg as la
from .einstein import ReductiveSpace


def nomizu_maps(space: ReductiveSpace) -> list[fmpq_mat]:
    """L(X_a) as n x n matrices (column b = coordinates of L(X_a) X_b)."""
    n, h = space.dim, space.dim_h
    g, G = space.metric, space.inverse_metric
    M = [space.ad_m(h + w) for w in range(n)]
    S = []
    for w in range(n):
        gM = g * M[w]
        S.append((gM + gM.transpose()) * fmpq(1, 2))
    maps = []
    for a in range(n):
        # lower-index components of U(X_a, X_b): column b, row w = S_w[a, b]
        lower = fmpq_mat(n, n, [S[w][a, b] for w in range(n) for b in range(n)])
        maps.append(M[a] * fmpq(1, 2) + G * lower)
    return maps


def curvature_operator(space: ReductiveSpace, maps: list[fmpq_mat], a: int, b: int) -> fmpq_mat:
    h = space.dim_h
    C, D = space.structure.num, space.structure.den
    R = maps[a] * maps[b] - maps[b] * maps[a]
    for k in range(space.structure.dim):
        c = int(C[h + a, h + b, k])
        if c == 0:
            continue
        coef = fmpq(c, D)
        if k >= h:
            R -= maps[k - h] * coef
        else:
            R -= space.ad_m(k) * coef
    return R


def ricci_from_curvature(space: ReductiveSpace) -> fmpq_mat:
    n = space.dim
    maps = nomizu_maps(space)
    ric = fmpq_mat(n, n)
    for a in range(n):
        for b in range(n):
            R = curvature_operator(space, maps, a, b)
            for c in range(n):
                ric[b, c] += R[a, c]
    return ric


def sectional_numerator(space: ReductiveSpace, a: int, b: int) -> fmpq:
    """<R(X_a, X_b) X_b, X_a>."""
    maps = nomizu_maps(space)
    R = curvature_operator(space, maps, a, b)
    v = la.columns(R, [b])
    return (space.metric * v)[a, 0]
