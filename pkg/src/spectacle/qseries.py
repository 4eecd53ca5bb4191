"""Truncated q-expansions with exact rational coefficients.

Exponents live on the grid (1/exp_den) * Z>=0 and are stored by numerator;
``n_max`` bounds the stored numerators, so the reliable exponent range is
[0, n_max/exp_den].  Comparing two expansions beyond either reliable range is
an error, never False.

An expansion may carry a separate non-holomorphic part: ``nonholo[m]`` is the
rational multiplier of q^(m/exp_den) / (pi * v) where v is the imaginary part
of the modular variable.  The two parts never mix; equality checks assert
them separately.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exact_arith import (
    bernoulli_number,
    divisor_power_sum,
    divisors,
    fundamental_discriminant_split,
    generalized_bernoulli,
    kronecker_symbol,
    moebius,
)

RationalLike = Union[int, Fraction]
ExponentLike = Union[int, Fraction]

__all__ = ["QExpansion", "TruncationError", "eisenstein_level1", "cohen_eisenstein"]


class TruncationError(ValueError):
    """Comparison or access beyond the reliable truncation range."""


def _clean(d: Dict[int, Fraction]) -> Dict[int, Fraction]:
    return {n: Fraction(c) for n, c in d.items() if c}


class QExpansion:
    """Truncated formal q-series over the rationals."""

    def __init__(
        self,
        exp_den: int,
        n_max: int,
        coeffs: Dict[int, RationalLike],
        nonholo: Optional[Dict[int, RationalLike]] = None,
    ) -> None:
        if exp_den < 1:
            raise ValueError("exp_den must be >= 1")
        if n_max < 0:
            raise ValueError("n_max must be >= 0")
        self.exp_den = exp_den
        self.n_max = n_max
        self.coeffs = _clean({int(n): Fraction(c) for n, c in coeffs.items()})
        self.nonholo = (
            None
            if nonholo is None
            else _clean({int(n): Fraction(c) for n, c in nonholo.items()})
        )
        for n in self.coeffs:
            if n < 0 or n > n_max:
                raise ValueError(f"exponent numerator {n} outside [0, {n_max}]")
        if self.nonholo:
            for n in self.nonholo:
                if n < 0 or n > n_max:
                    raise ValueError(f"nonholo numerator {n} outside [0, {n_max}]")

    # -- bounds ------------------------------------------------------------

    @property
    def exponent_bound(self) -> Fraction:
        """Largest exponent this expansion is reliable up to."""
        return Fraction(self.n_max, self.exp_den)

    def _numerator_of(self, e: ExponentLike) -> Optional[int]:
        e = Fraction(e)
        num = e * self.exp_den
        if num.denominator != 1:
            return None
        return num.numerator

    def coefficient(self, e: ExponentLike) -> Fraction:
        """Coefficient of q^e; exact zero off the grid, error past n_max."""
        e = Fraction(e)
        if e < 0 or e > self.exponent_bound:
            raise TruncationError(f"exponent {e} outside [0, {self.exponent_bound}]")
        num = self._numerator_of(e)
        if num is None:
            return Fraction(0)
        return self.coeffs.get(num, Fraction(0))

    def nonholo_coefficient(self, e: ExponentLike) -> Fraction:
        e = Fraction(e)
        if e < 0 or e > self.exponent_bound:
            raise TruncationError(f"exponent {e} outside [0, {self.exponent_bound}]")
        if not self.nonholo:
            return Fraction(0)
        num = self._numerator_of(e)
        if num is None:
            return Fraction(0)
        return self.nonholo.get(num, Fraction(0))

    def support(self) -> List[Fraction]:
        return [Fraction(n, self.exp_den) for n in sorted(self.coeffs)]

    # -- arithmetic ----------------------------------------------------------

    def _unified(self, other: "QExpansion") -> Tuple[int, int]:
        den = math.lcm(self.exp_den, other.exp_den)
        bound = min(self.exponent_bound, other.exponent_bound)
        n_max = int(bound * den)
        return den, n_max

    def __add__(self, other: "QExpansion") -> "QExpansion":
        den, n_max = self._unified(other)
        out: Dict[int, Fraction] = {}
        nh: Dict[int, Fraction] = {}
        for src in (self, other):
            scale = den // src.exp_den
            for n, c in src.coeffs.items():
                m = n * scale
                if m <= n_max:
                    out[m] = out.get(m, Fraction(0)) + c
            if src.nonholo:
                for n, c in src.nonholo.items():
                    m = n * scale
                    if m <= n_max:
                        nh[m] = nh.get(m, Fraction(0)) + c
        has_nh = self.nonholo is not None or other.nonholo is not None
        return QExpansion(den, n_max, out, nh if has_nh else None)

    def __rmul__(self, t: RationalLike) -> "QExpansion":
        t = Fraction(t)
        return QExpansion(
            self.exp_den,
            self.n_max,
            {n: t * c for n, c in self.coeffs.items()},
            None
            if self.nonholo is None
            else {n: t * c for n, c in self.nonholo.items()},
        )

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + (-1) * other

    def dilate(self, m: int) -> "QExpansion":
        """Substitute q -> q^m (exponents scale by m)."""
        if m < 1:
            raise ValueError("dilation factor must be >= 1")
        g = math.gcd(m, self.exp_den)
        den = self.exp_den // g
        scale = m // g
        return QExpansion(
            den,
            self.n_max * scale,
            {n * scale: c for n, c in self.coeffs.items()},
            None
            if self.nonholo is None
            else {n * scale: c for n, c in self.nonholo.items()},
        )

    # -- comparison ----------------------------------------------------------

    def first_mismatch(
        self, other: "QExpansion", up_to: Optional[ExponentLike] = None
    ) -> Optional[Tuple[Fraction, Fraction, Fraction, str]]:
        """First exponent <= up_to where the expansions differ, or None.

        Returns (exponent, own value, other value, part) with part 'holo' or
        'nonholo'.  Raises TruncationError when up_to exceeds either bound.
        """
        bound = min(self.exponent_bound, other.exponent_bound)
        if up_to is None:
            up_to = bound
        up_to = Fraction(up_to)
        if up_to > bound:
            raise TruncationError(
                f"comparison up to {up_to} exceeds common truncation {bound}"
            )
        den = math.lcm(self.exp_den, other.exp_den)
        top = int(up_to * den)
        for num in range(0, top + 1):
            e = Fraction(num, den)
            a, b = self.coefficient(e), other.coefficient(e)
            if a != b:
                return (e, a, b, "holo")
            a, b = self.nonholo_coefficient(e), other.nonholo_coefficient(e)
            if a != b:
                return (e, a, b, "nonholo")
        return None

    def equals_to(self, other: "QExpansion", up_to: Optional[ExponentLike] = None) -> bool:
        return self.first_mismatch(other, up_to) is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (
            self.exp_den == other.exp_den
            and self.n_max == other.n_max
            and self.coeffs == other.coeffs
            and (self.nonholo or {}) == (other.nonholo or {})
        )

    def __repr__(self) -> str:
        head = ", ".join(
            f"q^({n}/{self.exp_den}): {c}" if self.exp_den > 1 else f"q^{n}: {c}"
            for n, c in sorted(self.coeffs.items())[:6]
        )
        return f"QExpansion(exp_den={self.exp_den}, n_max={self.n_max}, [{head}...])"

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "exp_den": self.exp_den,
            "n_max": self.n_max,
            "coeffs": [[n, str(c)] for n, c in sorted(self.coeffs.items())],
            "nonholo": None
            if self.nonholo is None
            else [[n, str(c)] for n, c in sorted(self.nonholo.items())],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "QExpansion":
        return cls(
            d["exp_den"],
            d["n_max"],
            {int(n): Fraction(c) for n, c in d["coeffs"]},
            None
            if d.get("nonholo") is None
            else {int(n): Fraction(c) for n, c in d["nonholo"]},
        )


def eisenstein_level1(m: int, n_max: int) -> QExpansion:
    """Classical level-one Eisenstein series E_m = 1 - (2m/B_m) sum sigma_{m-1}(n) q^n."""
    if m < 4 or m % 2:
        raise ValueError("weight must be even and >= 4")
    scale = -Fraction(2 * m) / bernoulli_number(m)
    coeffs: Dict[int, Fraction] = {0: Fraction(1)}
    for n in range(1, n_max + 1):
        coeffs[n] = scale * divisor_power_sum(n, m - 1)
    return QExpansion(1, n_max, coeffs)


def _cohen_coefficient(r: int, N: int) -> Fraction:
    if N == 0:
        # zeta(1 - 2r)
        return -bernoulli_number(2 * r) / (2 * r)
    delta = (-1) ** r * N
    if delta % 4 not in (0, 1):
        return Fraction(0)
    D, f = fundamental_discriminant_split(delta)
    total = Fraction(0)
    for d in divisors(f):
        mu = moebius(d)
        if mu:
            total += (
                mu
                * kronecker_symbol(D, d)
                * d ** (r - 1)
                * divisor_power_sum(f // d, 2 * r - 1)
            )
    return -generalized_bernoulli(r, D) / r * total


def cohen_eisenstein(r: int, n_max: int) -> QExpansion:
    """Half-integral weight r + 1/2 Eisenstein coefficients H(r, N).

    H(r, 0) = zeta(1 - 2r); for N > 0 with (-1)^r N = D f^2 (D fundamental
    or 1),

        H(r, N) = (-B_{r,chi_D}/r) sum_{d | f} mu(d) chi_D(d) d^(r-1)
                  sigma_{2r-1}(f/d),

    and H(r, N) = 0 unless (-1)^r N = 0, 1 (mod 4).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    coeffs = {N: _cohen_coefficient(r, N) for N in range(n_max + 1)}
    return QExpansion(1, n_max, coeffs)
