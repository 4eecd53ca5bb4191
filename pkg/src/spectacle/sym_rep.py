"""The coefficient representation: degree-2k forms in two variables.

An element is a rational linear combination of the monomials
e1^i * e2^(2k-i), stored as the coefficient tuple indexed by i (the e1-degree).
The group acts by substitution e1 -> a*e1 + c*e2, e2 -> b*e1 + d*e2, which
matches the conjugation action on the quadratic space under the dictionary

    e1^2 <-> u,   e2^2 <-> u',   e1*e2 <-> -w0/2.

The invariant pairing is normalized so that (u^k, u'^k) = (-1)^k; on monomials

    (e1^i e2^(2k-i), e1^j e2^(2k-j)) = 0 unless i + j = 2k, and
    (e1^i e2^(2k-i), e1^(2k-i) e2^i) = (-1)^(k+i) / C(2k, i).

The raising operator R is the derivation with R e2 = e1, R e1 = 0, so the
unipotent n(t) acts as exp(t R).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence, Tuple, Union

from .quad_space import VecV

RationalLike = Union[int, Fraction]
MatLike = Union["GammaMat", Sequence[RationalLike]]

__all__ = [
    "SymVector",
    "GammaMat",
    "S_MAT",
    "n_mat",
    "act",
    "act_n",
    "raising",
    "pairing",
    "embed_vector",
    "embed_power",
    "u_power",
    "uprime_power",
    "weight_vector",
    "weight_normalizer",
]


@dataclass(frozen=True)
class SymVector:
    """Homogeneous degree-2k form; coeffs[i] multiplies e1^i e2^(2k-i)."""

    k: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if len(self.coeffs) != 2 * self.k + 1:
            raise ValueError("coefficient tuple must have length 2k+1")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, k: int) -> "SymVector":
        return cls(k, (Fraction(0),) * (2 * k + 1))

    @classmethod
    def monomial(cls, k: int, i: int, coeff: RationalLike = 1) -> "SymVector":
        c = [Fraction(0)] * (2 * k + 1)
        c[i] = Fraction(coeff)
        return cls(k, tuple(c))

    def __add__(self, other: "SymVector") -> "SymVector":
        self._check(other)
        return SymVector(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "SymVector") -> "SymVector":
        self._check(other)
        return SymVector(self.k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "SymVector":
        return SymVector(self.k, tuple(-a for a in self.coeffs))

    def __rmul__(self, t: RationalLike) -> "SymVector":
        t = Fraction(t)
        return SymVector(self.k, tuple(t * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "SymVector") -> None:
        if self.k != other.k:
            raise ValueError(f"mismatched degrees: k={self.k} vs k={other.k}")


@dataclass(frozen=True)
class GammaMat:
    """Integral 2x2 matrix (a, b, c, d) with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1")

    def entries(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


S_MAT = GammaMat(0, -1, 1, 0)


def n_mat(r: RationalLike) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Upper unipotent n(r) = [[1, r], [0, 1]] with rational r."""
    return (Fraction(1), Fraction(r), Fraction(0), Fraction(1))


def _entries(g: MatLike) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    if isinstance(g, GammaMat):
        a, b, c, d = g.entries()
    else:
        a, b, c, d = g
    a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
    if a * d - b * c != 1:
        raise ValueError("determinant must be 1")
    return a, b, c, d


def act(g: MatLike, v: SymVector) -> SymVector:
    """Substitution action of a determinant-1 matrix."""
    a, b, c, d = _entries(g)
    n = 2 * v.k
    out = [Fraction(0)] * (n + 1)
    for i, coeff in enumerate(v.coeffs):
        if not coeff:
            continue
        # (a e1 + c e2)^i  *  (b e1 + d e2)^(n-i)
        first = [comb(i, t) * a**t * c ** (i - t) for t in range(i + 1)]
        m = n - i
        second = [comb(m, t) * b**t * d ** (m - t) for t in range(m + 1)]
        for t1, f1 in enumerate(first):
            if not f1:
                continue
            for t2, f2 in enumerate(second):
                if f2:
                    out[t1 + t2] += coeff * f1 * f2
    return SymVector(v.k, tuple(out))


def act_n(r: RationalLike, v: SymVector) -> SymVector:
    return act(n_mat(r), v)


def raising(v: SymVector) -> SymVector:
    """R v for the derivation R with R e2 = e1, R e1 = 0."""
    n = 2 * v.k
    out = [Fraction(0)] * (n + 1)
    for i in range(n):
        if v.coeffs[i]:
            out[i + 1] += (n - i) * v.coeffs[i]
    return SymVector(v.k, tuple(out))


def pairing(v1: SymVector, v2: SymVector) -> Fraction:
    """Invariant pairing, normalized by (u^k, u'^k) = (-1)^k."""
    if v1.k != v2.k:
        raise ValueError(f"mismatched degrees: k={v1.k} vs k={v2.k}")
    k = v1.k
    n = 2 * k
    total = Fraction(0)
    for i in range(n + 1):
        a = v1.coeffs[i]
        b = v2.coeffs[n - i]
        if a and b:
            total += (-1) ** (k + i) * a * b / comb(n, i)
    return total


def embed_vector(x: VecV) -> SymVector:
    """The quadratic form of x: c*e1^2 - 2b*e1*e2 - a*e2^2 (k = 1 element)."""
    return SymVector(1, (-x.a, -2 * x.b, x.c))


def embed_power(x: VecV, k: int) -> SymVector:
    """Image of the harmonic part of x^k: the k-th power of embed_vector(x).

    For isotropic y one has pairing(embed_power(x, k), embed_power(y, k)) =
    inner(x, y)^k; against the weight basis it reproduces the classical
    weight-vector normalizations.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    base = embed_vector(x).coeffs
    out = [Fraction(1)]
    for _ in range(k):
        new = [Fraction(0)] * (len(out) + 2)
        for i, c1 in enumerate(out):
            if not c1:
                continue
            for j, c2 in enumerate(base):
                if c2:
                    new[i + j] += c1 * c2
        out = new
    return SymVector(k, tuple(out))


def u_power(k: int) -> SymVector:
    """Embedding of u^k, the highest weight vector e1^(2k)."""
    return SymVector.monomial(k, 2 * k)


def uprime_power(k: int) -> SymVector:
    """Embedding of u'^k, the lowest weight vector e2^(2k)."""
    return SymVector.monomial(k, 0)


def weight_normalizer(k: int, i: int) -> Fraction:
    return Fraction(
        (-2) ** k * factorial(k) ** 2, factorial(k + i) * factorial(k - i)
    )


def weight_vector(k: int, i: int) -> SymVector:
    """Weight-2i vector v_{2i} = (-2)^k (k!)^2 / ((k+i)! (k-i)!) e1^(k+i) e2^(k-i).

    v_0 = embed_power(w0, k); v_{2k} and v_{-2k} are c_k times the u- and
    u'-powers with c_k = (-2)^k (k!)^2 / (2k)!.
    """
    if abs(i) > k:
        raise ValueError(f"weight index i={i} out of range [-{k}, {k}]")
    return SymVector.monomial(k, k + i, weight_normalizer(k, i))
