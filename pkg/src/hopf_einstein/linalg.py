"""Exact rational linear algebra helpers built on python-flint.

Dense rational matrices are ``flint.fmpq_mat``.  Large integer tensors (Lie
algebra bases, structure constants) are numpy arrays of integers paired with a
common denominator; products fall back to Python integers whenever int64 could
overflow.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np
from flint import fmpq, fmpq_mat, fmpz

_INT64_LIMIT = 2**62


class LinearAlgebraError(ValueError):
    pass


def fraction(x) -> Fraction:
    """Convert int, Fraction, fmpq, fmpz or 'p/q' string to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def to_fmpq(x) -> fmpq:
    f = fraction(x)
    return fmpq(f.numerator, f.denominator)


def qmat(rows: Sequence[Sequence]) -> fmpq_mat:
    """Build an fmpq_mat from nested sequences of exact rationals."""
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    return fmpq_mat(m, n, [to_fmpq(x) for r in rows for x in r])


def qzeros(m: int, n: int) -> fmpq_mat:
    return fmpq_mat(m, n)


def qeye(n: int) -> fmpq_mat:
    return fmpq_mat(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])


def qdiag(values: Iterable) -> fmpq_mat:
    vals = [to_fmpq(v) for v in values]
    n = len(vals)
    out = fmpq_mat(n, n)
    for i, v in enumerate(vals):
        out[i, i] = v
    return out


def from_int_array(a: np.ndarray, den: int = 1) -> fmpq_mat:
    a = np.asarray(a)
    if a.ndim != 2:
        raise LinearAlgebraError("expected a 2-d array")
    m, n = a.shape
    flat = [int(x) for x in a.ravel().tolist()]
    out = fmpq_mat(m, n, flat)
    if den != 1:
        out = out / den
    return out


def int_parts(M: fmpq_mat) -> tuple[np.ndarray, int]:
    """Return (integer numerator array, common denominator) of M."""
    Z, d = M.numer_denom()
    rows = [[int(x) for x in r] for r in Z.tolist()] if M.nrows() else []
    arr = np.array(rows, dtype=object).reshape(M.nrows(), M.ncols())
    return compact_int(arr), int(d)


def compact_int(a: np.ndarray) -> np.ndarray:
    """Store an integer array as int64 when safe, else as Python ints."""
    a = np.asarray(a)
    if a.size == 0:
        return a.astype(np.int64)
    big = max(abs(int(a.max())), abs(int(a.min())))
    if big < _INT64_LIMIT:
        return a.astype(np.int64)
    return a.astype(object)


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return max(abs(int(a.max())), abs(int(a.min())))


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matmul; int64 when the bound allows, else object ints."""
    inner = a.shape[-1]
    if _maxabs(a) * _maxabs(b) * max(inner, 1) < _INT64_LIMIT:
        return np.matmul(a.astype(np.int64), b.astype(np.int64))
    return compact_int(np.matmul(a.astype(object), b.astype(object)))


def int_einsum(spec: str, *ops: np.ndarray) -> np.ndarray:
    """Exact integer einsum for two operands with an overflow guard."""
    a, b = ops
    letters_a, rest = spec.split(",")
    letters_b, _ = rest.split("->")
    summed = set(letters_a) & set(letters_b)
    count = 1
    for ch in summed:
        count *= a.shape[letters_a.index(ch)]
    if _maxabs(a) * _maxabs(b) * max(count, 1) < _INT64_LIMIT:
        return np.einsum(spec, a.astype(np.int64), b.astype(np.int64))
    return compact_int(np.einsum(spec, a.astype(object), b.astype(object)))


def normalize_parts(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    """Cancel the common gcd of a (numerator array, denominator) pair."""
    g = int(den)
    for x in np.unique(np.asarray(num).ravel()):
        g = gcd(g, int(x))
        if g == 1:
            break
    if g > 1:
        num = compact_int(np.asarray(num, dtype=object) // g)
        den //= g
    if den < 0:
        num, den = -num, -den
    return num, int(den)


def fractions_to_parts(values: np.ndarray) -> tuple[np.ndarray, int]:
    """Convert an array of exact rationals to (numerators, common denominator)."""
    flat = [fraction(x) for x in np.asarray(values, dtype=object).ravel()]
    den = 1
    for f in flat:
        den = lcm(den, f.denominator)
    nums = np.array([f.numerator * (den // f.denominator) for f in flat], dtype=object)
    return compact_int(nums.reshape(np.asarray(values, dtype=object).shape)), den


def entries(M: fmpq_mat) -> list[list[fmpq]]:
    flat = M.entries()
    n = M.ncols()
    return [flat[i * n:(i + 1) * n] for i in range(M.nrows())]


def to_fractions(M: fmpq_mat) -> list[list[Fraction]]:
    return [[fraction(x) for x in row] for row in entries(M)]


def submatrix(M: fmpq_mat, rows: Sequence[int], cols: Sequence[int]) -> fmpq_mat:
    flat = M.entries()
    n = M.ncols()
    return fmpq_mat(len(rows), len(cols), [flat[i * n + j] for i in rows for j in cols])


def columns(M: fmpq_mat, cols: Sequence[int]) -> fmpq_mat:
    return submatrix(M, range(M.nrows()), cols)


def hstack(mats: Sequence[fmpq_mat]) -> fmpq_mat:
    mats = [M for M in mats if M.ncols()]
    if not mats:
        raise LinearAlgebraError("nothing to stack")
    m = mats[0].nrows()
    rows = [[] for _ in range(m)]
    for M in mats:
        if M.nrows() != m:
            raise LinearAlgebraError("row count mismatch")
        for i, r in enumerate(entries(M)):
            rows[i].extend(r)
    total = sum(M.ncols() for M in mats)
    return fmpq_mat(m, total, [x for r in rows for x in r])


def vstack(mats: Sequence[fmpq_mat]) -> fmpq_mat:
    return hstack([M.transpose() for M in mats]).transpose()


def is_zero(M: fmpq_mat) -> bool:
    return all(x == 0 for x in M.entries())


def pivot_columns(M: fmpq_mat) -> list[int]:
    """Pivot columns of the reduced row echelon form of M."""
    if M.nrows() == 0 or M.ncols() == 0:
        return []
    Z, _ = M.numer_denom()
    R, _, rank = Z.rref()
    flat = R.entries()
    n = R.ncols()
    pivots = []
    col = 0
    for i in range(int(rank)):
        while flat[i * n + col] == 0:
            col += 1
        pivots.append(col)
    return pivots


def rank(M: fmpq_mat) -> int:
    if M.nrows() == 0 or M.ncols() == 0:
        return 0
    return int(M.rank())


def nullspace(M: fmpq_mat) -> fmpq_mat:
    """Basis of {x : M x = 0} as columns of primitive integer vectors."""
    n = M.ncols()
    if M.nrows() == 0:
        return qeye(n)
    Z, _ = M.numer_denom()
    N, nullity = Z.nullspace()
    nullity = int(nullity)
    cols = []
    flat = N.entries()
    for j in range(nullity):
        v = [int(flat[i * N.ncols() + j]) for i in range(n)]
        g = 0
        for x in v:
            g = gcd(g, x)
        first = next(x for x in v if x)
        if first < 0:
            g = -g
        cols.append([x // g for x in v])
    if not cols:
        return fmpq_mat(n, 0)
    return fmpq_mat(n, nullity, [cols[j][i] for i in range(n) for j in range(nullity)])


def column_basis(M: fmpq_mat) -> fmpq_mat:
    """A maximal independent subset of the columns of M (first-come order)."""
    if M.ncols() == 0:
        return M
    return columns(M, pivot_columns(M))


def solve_in_span(B: fmpq_mat, v: fmpq_mat) -> fmpq_mat | None:
    """Coordinates x with B x = v, or None when v is not in the column span."""
    k = B.ncols()
    if k == 0:
        return fmpq_mat(0, v.ncols()) if is_zero(v) else None
    rows = pivot_columns(B.transpose())
    Bp = submatrix(B, rows, range(k))
    x = Bp.solve(submatrix(v, rows, range(v.ncols())))
    if B * x != v:
        return None
    return x


def signature(S: fmpq_mat) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix.

    Uses the characteristic polynomial: its roots are all real, so Descartes'
    rule of signs counts the positive and negative eigenvalues exactly.
    """
    n = S.nrows()
    if S != S.transpose():
        raise LinearAlgebraError("signature needs a symmetric matrix")
    if n == 0:
        return (0, 0, 0)
    coeffs = [fraction(c) for c in S.charpoly().coeffs()]
    zero = next(i for i, c in enumerate(coeffs) if c != 0)

    def changes(cs):
        signs = [c > 0 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = changes(coeffs)
    neg = changes([c if i % 2 == 0 else -c for i, c in enumerate(coeffs)])
    if pos + neg + zero != n:
        raise LinearAlgebraError("inertia count mismatch")
    return (pos, neg, zero)


def frac_str(x) -> str:
    f = fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
