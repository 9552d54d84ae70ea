"""Composition and para algebras (R, C, A, H, B, O, split O) with exact arithmetic.

Every non-real kind is a Cayley-Dickson double of a smaller one,
``(a, b)(c, d) = (ac + g conj(d) b, d a + b conj(c))`` with ``conj(a, b) =
(conj a, -b)`` and doubling parameter ``g``:

==============  ===========  ===
kind            doubled      g
==============  ===========  ===
Complex         Real         -1
ParaComplex     Real         +1
Quaternion      Complex      -1
ParaQuaternion  Complex      +1
Octonion        Quaternion   -1
SplitOctonion   Quaternion   +1
==============  ===========  ===

Basis order follows the doubling: the second half of the basis of a doubled
kind is ``e_p * u`` where ``u`` is the new unit.  So the quaternion basis is
(1, i, j, k) with k = ij, the para-quaternions have i^2 = -1, j^2 = k^2 = +1,
and the octonion basis is (1, i, j, k, l, il, jl, kl).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .linalg import fraction

TAGS = ("Real", "Complex", "ParaComplex", "Quaternion", "ParaQuaternion",
        "Octonion", "SplitOctonion")

_DOUBLING = {
    "Complex": ("Real", -1),
    "ParaComplex": ("Real", 1),
    "Quaternion": ("Complex", -1),
    "ParaQuaternion": ("Complex", 1),
    "Octonion": ("Quaternion", -1),
    "SplitOctonion": ("Quaternion", 1),
}

_UNIT_NAMES = {
    "Real": ("1",),
    "Complex": ("1", "i"),
    "ParaComplex": ("1", "e"),
    "Quaternion": ("1", "i", "j", "k"),
    "ParaQuaternion": ("1", "i", "j", "k"),
    "Octonion": ("1", "i", "j", "k", "l", "il", "jl", "kl"),
    "SplitOctonion": ("1", "i", "j", "k", "l", "il", "jl", "kl"),
}


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraKind:
    """A real algebra given by a signed multiplication table on a basis.

    ``table[p][q] = (r, s)`` means ``e_p e_q = s e_r``.
    """

    tag: str
    dimension: int
    table: tuple[tuple[tuple[int, int], ...], ...]
    conjugation: tuple[int, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return _UNIT_NAMES[self.tag]

    def unit(self, name: str) -> "AlgebraElement":
        """Basis element by name, e.g. ``H.unit("j")``."""
        return self.basis(self.names.index(name))

    def basis(self, p: int) -> "AlgebraElement":
        coeffs = [Fraction(0)] * self.dimension
        coeffs[p] = Fraction(1)
        return AlgebraElement(self, tuple(coeffs))

    def element(self, coeffs: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(fraction(c) for c in coeffs))

    def one(self) -> "AlgebraElement":
        return self.basis(0)

    def __repr__(self) -> str:
        return f"AlgebraKind({self.tag})"


def _double(base: AlgebraKind, gamma: int) -> tuple[tuple, tuple]:
    d = base.dimension
    t = base.table
    c = base.conjugation

    def mul(p, q):
        # product of basis elements of the doubled algebra
        if p < d and q < d:
            r, s = t[p][q]
            return r, s
        if p < d <= q:
            r, s = t[q - d][p]
            return r + d, s
        if q < d <= p:
            r, s = t[p - d][q]
            return r + d, s * c[q]
        r, s = t[q - d][p - d]
        return r, gamma * c[q - d] * s

    table = tuple(tuple(mul(p, q) for q in range(2 * d)) for p in range(2 * d))
    conj = c + tuple(-1 for _ in range(d))
    return table, conj


@lru_cache(maxsize=None)
def kind(tag: str) -> AlgebraKind:
    """The algebra kind for a tag in ``TAGS``."""
    if tag == "Real":
        return AlgebraKind("Real", 1, (((0, 1),),), (1,))
    if tag not in _DOUBLING:
        raise AlgebraError(f"unknown algebra kind {tag!r}")
    base_tag, gamma = _DOUBLING[tag]
    base = kind(base_tag)
    table, conj = _double(base, gamma)
    return AlgebraKind(tag, 2 * base.dimension, table, conj)


@dataclass(frozen=True)
class AlgebraElement:
    kind: AlgebraKind
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.kind.dimension:
            raise AlgebraError("coefficient length does not match the algebra dimension")

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement) or other.kind.tag != self.kind.tag:
            raise AlgebraError("algebra kind mismatch")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.kind, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.kind, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.kind, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        s = fraction(other)
        return AlgebraElement(self.kind, tuple(a * s for a in self.coeffs))

    def __rmul__(self, other):
        s = fraction(other)
        return AlgebraElement(self.kind, tuple(a * s for a in self.coeffs))

    @property
    def real(self) -> Fraction:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for a, name in zip(self.coeffs, self.kind.names):
            if a:
                terms.append(f"{a}" if name == "1" else f"{a}*{name}")
        return " + ".join(terms) if terms else "0"


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    k = a.kind
    out = [Fraction(0)] * k.dimension
    for p, x in enumerate(a.coeffs):
        if not x:
            continue
        row = k.table[p]
        for q, y in enumerate(b.coeffs):
            if y:
                r, s = row[q]
                out[r] += s * x * y
    return AlgebraElement(k, tuple(out))


def conjugate(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.kind, tuple(s * x for s, x in zip(a.kind.conjugation, a.coeffs)))


def norm(a: AlgebraElement) -> Fraction:
    """N(a) = a conj(a), which is real for every kind here."""
    prod = multiply(a, conjugate(a))
    if any(prod.coeffs[1:]):
        raise AlgebraError("a conj(a) is not real")
    return prod.real


def associator(a: AlgebraElement, b: AlgebraElement, c: AlgebraElement) -> AlgebraElement:
    return multiply(multiply(a, b), c) - multiply(a, multiply(b, c))


def inner_product(z: Sequence[AlgebraElement], w: Sequence[AlgebraElement]) -> Fraction:
    """Re(sum conj(z_i) w_i) on F^m."""
    if len(z) != len(w):
        raise AlgebraError("vectors have different lengths")
    total = Fraction(0)
    for zi, wi in zip(z, w):
        zi._check(wi)
        total += multiply(conjugate(zi), wi).real
    return total


def signature_inner_product_Rn(x: Sequence, y: Sequence, r: int) -> Fraction:
    """-sum_{i<=r} x_i y_i + sum_{i>r} x_i y_i on R^{n+1}."""
    if len(x) != len(y):
        raise AlgebraError("vectors have different lengths")
    n = len(x) - 1
    if not 0 <= r <= n:
        raise AlgebraError("index r out of range")
    xs = [fraction(v) for v in x]
    ys = [fraction(v) for v in y]
    return -sum(xs[i] * ys[i] for i in range(r + 1)) + sum(xs[i] * ys[i] for i in range(r + 1, n + 1))


def left_matrix(a: AlgebraElement) -> np.ndarray:
    """Real matrix of x -> a x in the kind's basis (object array of Fractions)."""
    k = a.kind
    out = np.zeros((k.dimension, k.dimension), dtype=object)
    out[:] = Fraction(0)
    for q in range(k.dimension):
        col = multiply(a, k.basis(q))
        out[:, q] = col.coeffs
    return out


def right_matrix(a: AlgebraElement) -> np.ndarray:
    """Real matrix of x -> x a in the kind's basis."""
    k = a.kind
    out = np.zeros((k.dimension, k.dimension), dtype=object)
    out[:] = Fraction(0)
    for q in range(k.dimension):
        col = multiply(k.basis(q), a)
        out[:, q] = col.coeffs
    return out


def basis_gram(k: AlgebraKind) -> np.ndarray:
    """Gram matrix Re(conj(e_p) e_q) of the standard inner product on F."""
    out = np.zeros((k.dimension, k.dimension), dtype=object)
    for p in range(k.dimension):
        for q in range(k.dimension):
            out[p, q] = multiply(conjugate(k.basis(p)), k.basis(q)).real
    return out


def realified_gram(k: AlgebraKind, m: int) -> np.ndarray:
    """Gram matrix of the inner product on F^m in the realified basis."""
    g = basis_gram(k)
    d = k.dimension
    out = np.zeros((d * m, d * m), dtype=object)
    out[:] = Fraction(0)
    for a in range(m):
        out[a * d:(a + 1) * d, a * d:(a + 1) * d] = g
    return out
