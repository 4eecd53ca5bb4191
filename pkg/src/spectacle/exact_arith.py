"""Exact rational arithmetic used everywhere else in the package.

Bernoulli numbers and polynomials, generalized Bernoulli numbers attached to
quadratic characters, Kronecker symbols, divisor-power sums, and a few small
multiplicative helpers.  Every function returns exact values; no floating
point appears in this module.

Conventions
-----------
* ``Rational`` is ``fractions.Fraction`` (always lowest terms, positive
  denominator).
* Bernoulli numbers use B_1 = -1/2, so that B_n = B_n(0) with
  B_n(x) = sum_j C(n, j) B_j x^(n-j).  The shifted-argument cap formulas only
  come out right in this convention.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import Dict, List, Tuple

Rational = Fraction

__all__ = [
    "Rational",
    "bernoulli_number",
    "bernoulli_poly",
    "kronecker_symbol",
    "generalized_bernoulli",
    "divisor_power_sum",
    "divisors",
    "factorize",
    "moebius",
    "is_fundamental_discriminant",
    "fundamental_discriminant_split",
]

# Memoized B_0, B_1, ... ; guarded so concurrent fills stay race-free.
_bernoulli_cache: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """Bernoulli number B_n (convention B_1 = -1/2), as an exact Fraction.

    Uses the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if n < len(_bernoulli_cache):
        return _bernoulli_cache[n]
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= n:
            m = len(_bernoulli_cache)
            s = sum(
                Fraction(comb(m + 1, j)) * _bernoulli_cache[j] for j in range(m)
            )
            _bernoulli_cache.append(-s / (m + 1))
    return _bernoulli_cache[n]


def bernoulli_poly(n: int, x: Rational) -> Fraction:
    """Bernoulli polynomial B_n(x) = sum_j C(n, j) B_j x^(n-j).

    Evaluated by Horner on the binomial expansion; exact for rational x.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    x = Fraction(x)
    bernoulli_number(n)  # populate cache through index n
    acc = Fraction(1)  # B_0 coefficient of x^n
    for j in range(1, n + 1):
        acc = acc * x + comb(n, j) * _bernoulli_cache[j]
    return acc


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization {p: e} of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> List[int]:
    """Sorted list of positive divisors of n >= 1."""
    if n < 1:
        raise ValueError("divisors expects n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def moebius(n: int) -> int:
    """Moebius function mu(n)."""
    mu = 1
    for _, e in factorize(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu if n > 1 else 1


def divisor_power_sum(n: int, k: int) -> int:
    """sigma_k(n) = sum of d^k over positive divisors d of n."""
    if n < 1:
        raise ValueError("divisor_power_sum expects n >= 1")
    if k < 0:
        raise ValueError("divisor_power_sum expects k >= 0")
    return sum(d**k for d in divisors(n))


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def kronecker_symbol(D: int, m: int) -> int:
    """Kronecker symbol (D/m) for m >= 1, completely multiplicative in m."""
    if m < 1:
        raise ValueError("kronecker_symbol expects m >= 1")
    out = 1
    for p, e in factorize(m).items():
        if p == 2:
            if D % 2 == 0:
                return 0
            s = 1 if D % 8 in (1, 7) else -1
        else:
            s = _legendre(D, p)
            if s == 0:
                return 0
        if e % 2 == 1:
            out *= s
        elif s == 0:
            return 0
    return out


def _squarefree_check(n: int) -> Tuple[bool, int]:
    """(is_squarefree, offending prime) for n >= 1; prime is 0 when squarefree."""
    for p, e in factorize(n).items():
        if e > 1:
            return False, p
    return True, 0


def is_fundamental_discriminant(D: int) -> bool:
    """True when D is 1 or a fundamental discriminant."""
    if D == 1:
        return True
    if D == 0:
        return False
    r = D % 4
    if r == 1:
        return _squarefree_check(abs(D))[0]
    if r == 0:
        q = D // 4
        if q % 4 in (2, 3):
            return _squarefree_check(abs(q))[0]
        return False
    return False


def generalized_bernoulli(n: int, D: int) -> Fraction:
    """Generalized Bernoulli number B_{n,chi_D} for the quadratic character
    chi_D attached to a fundamental discriminant D (or the trivial character
    for D = 1).

    B_{n,chi} = |D|^(n-1) * sum_{a=1}^{|D|} chi_D(a) B_n(a/|D|).
    """
    if n < 1:
        raise ValueError("generalized Bernoulli index must be >= 1")
    if D == 1:
        # Trivial character mod 1; only reached with n >= 2 in the Cohen
        # coefficient formula, where the a=1 endpoint convention is moot.
        return bernoulli_number(n)
    if not is_fundamental_discriminant(D):
        raise ValueError(_non_fundamental_message(D))
    aD = abs(D)
    total = Fraction(0)
    for a in range(1, aD + 1):
        chi = kronecker_symbol(D, a)
        if chi:
            total += chi * bernoulli_poly(n, Fraction(a, aD))
    return Fraction(aD) ** (n - 1) * total


def _non_fundamental_message(D: int) -> str:
    if D == 0:
        return "D = 0 is not a fundamental discriminant"
    r = D % 4
    if r in (2, 3):
        return f"D = {D} is not a fundamental discriminant: D = {r} (mod 4)"
    if r == 1:
        ok, p = _squarefree_check(abs(D))
        if not ok:
            return (
                f"D = {D} is not a fundamental discriminant: "
                f"divisible by the square {p}**2"
            )
    if r == 0:
        q = D // 4
        if q % 4 in (0, 1):
            return (
                f"D = {D} is not a fundamental discriminant: "
                f"divisible by the square 2**2 (D/4 = {q % 4} mod 4)"
            )
        ok, p = _squarefree_check(abs(q))
        if not ok:
            return (
                f"D = {D} is not a fundamental discriminant: "
                f"divisible by the square {p}**2"
            )
    return f"D = {D} is not a fundamental discriminant"


def fundamental_discriminant_split(delta: int) -> Tuple[int, int]:
    """Write delta = D * f**2 with D fundamental (or 1) and f >= 1.

    Requires delta != 0 and delta = 0 or 1 (mod 4).
    """
    if delta == 0:
        raise ValueError("discriminant must be nonzero")
    if delta % 4 not in (0, 1):
        raise ValueError(f"{delta} is not 0 or 1 (mod 4)")
    sign = 1 if delta > 0 else -1
    s = 1  # squarefree kernel (with sign)
    t = 1  # extracted square root
    for p, e in factorize(abs(delta)).items():
        t *= p ** (e // 2)
        if e % 2:
            s *= p
    s *= sign
    if s % 4 == 1:
        return s, t
    # s = 2, 3 (mod 4): the fundamental discriminant is 4s and t must be even
    # because delta = s t^2 = 0, 1 (mod 4) forces 2 | t.
    return 4 * s, t // 2
