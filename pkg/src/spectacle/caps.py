"""Cap coefficient vectors for capped geodesic cycles.

A geodesic joining two rational cusps carries a constant coefficient v.  At a
cusp of width M with boundary position r, the cap is the unique vector w with

    (gamma^(-1) - Id) w = v          (gamma = n(M) in cusp-normal form)

whose boundary period polynomial t -> (n(t) u'^k, w) integrates to zero over
one width [r, r + M].  The jump equation is solvable exactly when v has no
component on the lowest weight e2^(2k) (equivalently v is orthogonal to the
highest weight vector u^k), and then w is unique up to u^k; the period
normalization removes that freedom because (n(t) u'^k, u^k) = (-1)^k is a
nonzero constant.

Two independent routes are provided: ``cap_solve`` solves the nilpotent
triangular system plus the exact polynomial integral, and ``cap_closed_form``
evaluates the Bernoulli-polynomial closed formula

    w = sum_{j=i-1}^{k} (-M)^(j-i) C(k+j, j+1-i) B_{j+1-i}(-r/M)/(k+i) v_{2j}

for jump value n(r) v_{2i}.  They agree exactly; tests enforce it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional, Tuple, Union

from .exact_arith import bernoulli_poly
from .quad_space import (
    GeometryError,
    IsotropicLine,
    VecV,
    conjugate_vec,
    is_rational_square,
    isotropic_lines_of,
    qform,
    sigma_matrix,
)
from .sym_rep import SymVector, act, embed_power, weight_vector

RationalLike = Union[int, Fraction]

__all__ = [
    "CapInput",
    "SpectacleCycle",
    "CapJumpError",
    "cap_solve",
    "cap_closed_form",
    "spectacle_assemble",
    "boundary_pairing_polynomial",
    "gamma0_width",
]


class CapJumpError(ValueError):
    """Jump value not capped off by any boundary chain."""


@dataclass(frozen=True)
class CapInput:
    """Cap problem at one cusp, in cusp-normal (infinity) coordinates.

    k: coefficient degree; cusp: the isotropic line (metadata only, the data
    below is already normalized); width: the cusp width M > 0; position: the
    boundary point r; jump: the jump value v, orthogonal to u^k.
    """

    k: int
    width: Fraction
    position: Fraction
    jump: SymVector
    cusp: Optional[IsotropicLine] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "width", Fraction(self.width))
        object.__setattr__(self, "position", Fraction(self.position))
        if self.width <= 0:
            raise ValueError("cusp width must be positive")
        if self.jump.k != self.k:
            raise ValueError("jump value degree does not match k")


def boundary_pairing_polynomial(w: SymVector) -> Tuple[Fraction, ...]:
    """Coefficients (in t) of p(t) = pairing(n(t) u'^k, w).

    With the monomial expansion n(t) u'^k = sum_m C(2k, m) t^m e1^m e2^(2k-m)
    the pairing collapses to p(t) = sum_m (-1)^(k+m) w_{2k-m} t^m.
    """
    k = w.k
    n = 2 * k
    return tuple((-1) ** (k + m) * w.coeffs[n - m] for m in range(n + 1))


def _poly_integral(coeffs: Tuple[Fraction, ...], lo: Fraction, hi: Fraction) -> Fraction:
    total = Fraction(0)
    for m, c in enumerate(coeffs):
        if c:
            total += c * (hi ** (m + 1) - lo ** (m + 1)) / (m + 1)
    return total


def cap_solve(inp: CapInput) -> SymVector:
    """Solve the jump equation with vanishing boundary period.

    gamma^(-1) - Id = exp(-M R) - Id is nilpotent triangular in the monomial
    basis; the system is solved bottom-up, and the leftover u^k freedom is
    fixed by the exact integral of the period polynomial over [r, r + M].
    """
    k, M, r, v = inp.k, inp.width, inp.position, inp.jump
    n = 2 * k
    if v.coeffs[0] != 0:
        raise CapJumpError(
            "no primitive: jump has highest-weight component "
            "(not orthogonal to u^k)"
        )
    # (exp(-M R) - Id) w at index m pulls w_{m-j} with weight
    # (-M)^j / j! * (2k - m + j)! / (2k - m)!.
    w = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        falling = Fraction(factorial(n - m + 1), factorial(n - m))  # j = 1 factor
        lead = -M * falling
        acc = v.coeffs[m]
        for j in range(2, m + 1):
            cmj = (
                Fraction((-M) ** j, factorial(j))
                * Fraction(factorial(n - m + j), factorial(n - m))
            )
            acc -= cmj * w[m - j]
        w[m - 1] = acc / lead
    # Normalize: subtract the right multiple of u^k so the period vanishes.
    p = boundary_pairing_polynomial(SymVector(k, tuple(w)))
    period = _poly_integral(p, r, r + M)
    # u^k contributes the constant (-1)^k to p(t), hence (-1)^k * M to the
    # integral.
    w[n] -= period / ((-1) ** k * M)
    return SymVector(k, tuple(w))


def cap_closed_form(
    k: int, i: int, r: RationalLike, M: RationalLike
) -> SymVector:
    """Bernoulli closed form of the cap for jump value n(r) v_{2i}.

    Valid for -k+1 <= i <= k; the sum starts at j = i-1 and that first term
    is genuinely nonzero (its binomial is C(k+i-1, 0) = 1).
    """
    if not (-k + 1 <= i <= k):
        raise ValueError(f"weight index i={i} out of range [-k+1, k]")
    r = Fraction(r)
    M = Fraction(M)
    if M <= 0:
        raise ValueError("width must be positive")
    out = SymVector.zero(k)
    for j in range(i - 1, k + 1):
        # (-M)^(j-i); the j = i-1 term carries the negative power 1/(-M).
        sign = -1 if (j - i) % 2 else 1
        term = (
            sign
            * M ** (j - i)
            * comb(k + j, j + 1 - i)
            * bernoulli_poly(j + 1 - i, -r / M)
            / (k + i)
        )
        if term:
            out = out + term * weight_vector(k, j)
    return out


def gamma0_width(N: int) -> Callable[[IsotropicLine], Fraction]:
    """Cusp width function for the level-N congruence group Gamma_0(N)."""
    if N < 1:
        raise ValueError("level must be >= 1")

    def width(line: IsotropicLine) -> Fraction:
        _, beta = line.cusp
        return Fraction(N, math.gcd(beta * beta, N))

    return width


def _unit_width(_: IsotropicLine) -> Fraction:
    return Fraction(1)


@dataclass(frozen=True)
class SpectacleCycle:
    """Full capped-cycle data for a spacelike vector x.

    For split x (q(x) a positive rational square) the geodesic runs from the
    second cusp to the first one, and ``cap_first``/``cap_second`` are the
    cap vectors there (in global coordinates); the capped cycle is
    geodesic - (chain at first cusp) (x) cap_first
             + (chain at second cusp) (x) cap_second.
    For non-split x the geodesic is closed and both caps are None.
    """

    x: VecV
    k: int
    coefficient: SymVector
    first: Optional[Tuple[IsotropicLine, Fraction]]
    second: Optional[Tuple[IsotropicLine, Fraction]]
    cap_first: Optional[SymVector]
    cap_second: Optional[SymVector]


def _cusp_cap(
    line: IsotropicLine,
    x: VecV,
    k: int,
    v: SymVector,
    width: Fraction,
) -> Tuple[Fraction, SymVector]:
    """Solve the cap at one cusp by transport to normal form and back."""
    sig = sigma_matrix(line)
    inv = (sig[3], -sig[1], -sig[2], sig[0])
    xt = conjugate_vec(inv, x)
    if xt.a != 0:
        raise GeometryError("transported geodesic is not vertical")
    r = -xt.c / (2 * xt.b)
    vt = act(inv, v)
    wt = cap_solve(CapInput(k=k, width=width, position=r, jump=vt, cusp=line))
    return r, act(sig, wt)


def spectacle_assemble(
    x: VecV,
    k: int,
    width_of: Optional[Callable[[IsotropicLine], Fraction]] = None,
) -> SpectacleCycle:
    """Assemble the capped cycle carrying the coefficient embed_power(x, k).

    ``width_of`` maps a cusp to its width (default: width 1 everywhere, the
    level-one normalization).
    """
    q = qform(x)
    if q <= 0:
        raise GeometryError("x must be spacelike (q(x) > 0)")
    if k < 1:
        raise ValueError("coefficient degree k must be >= 1 to cap off")
    coeff = embed_power(x, k)
    if not is_rational_square(q):
        # closed geodesic: nothing to cap
        return SpectacleCycle(x, k, coeff, None, None, None, None)
    l1, l2 = isotropic_lines_of(x)
    width_of = width_of or _unit_width
    r1, w1 = _cusp_cap(l1, x, k, coeff, Fraction(width_of(l1)))
    r2, w2 = _cusp_cap(l2, x, k, coeff, Fraction(width_of(l2)))
    return SpectacleCycle(x, k, coeff, (l1, r1), (l2, r2), w1, w2)
