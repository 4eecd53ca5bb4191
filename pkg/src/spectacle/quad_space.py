"""The rational quadratic space of signature (2,1) in Witt-adapted coordinates.

A vector is stored as coordinates (a, b, c) and stands for the trace-zero
2x2 matrix [[b, c], [a, -b]], i.e. x = b*w0 + c*u - a*u' for the basis

    u  = [[0, 1], [0, 0]]      (isotropic, the infinity direction)
    u' = [[0, 0], [-1, 0]]     (isotropic, the zero direction, (u, u') = -1)
    w0 = [[1, 0], [0, -1]]     (spacelike, q(w0) = 1)

so q(x) = -det = b^2 + a*c and (x, y) = tr(xy) = 2 b_x b_y + a_x c_y + a_y c_x.

Orientation bookkeeping.  The ambient orientation is fixed by the orthonormal
frame e_1 = (u - u')/sqrt2, e_2 = w0/sqrt2, e_3 = (u + u')/sqrt2 with
(e_3, e_3) = -1.  In that frame the volume of (u, w0, u') is sqrt2 > 0, so the
determinant of coordinates in the (u, w0, u') basis is a positive multiple of
the true volume form; we take that determinant itself as ``triple`` (the
constant sqrt2 never matters because only signs are consumed).  The cross
product is defined by (cross(x, y), z) = triple(x, y, z).  "Points down" means
negative e_3-component; since e_3 = (u + u')/sqrt2 and (v, e_3) = -v_3 for the
e_3-component v_3 of v, that is exactly (v, u + u') > 0.  The intersection
sign of the oriented geodesics attached to two spacelike vectors spanning a
positive-definite plane is +1 precisely when their cross product points down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple, Union

RationalLike = Union[int, Fraction]

__all__ = [
    "VecV",
    "U_VEC",
    "UPRIME_VEC",
    "W0_VEC",
    "GeometryError",
    "UnboundedEnumerationError",
    "inner",
    "qform",
    "triple",
    "cross",
    "epsilon_sign",
    "IsotropicLine",
    "LINE_INFINITY",
    "LINE_ZERO",
    "sigma_matrix",
    "conjugate_vec",
    "isotropic_lines_of",
    "is_rational_square",
    "rational_sqrt",
    "LatticeCoset",
    "CosetConstraint",
    "line_lattice_data",
    "enumerate_coset",
]


class GeometryError(ValueError):
    """Raised on invalid geometric input (non-positive planes and friends)."""


class UnboundedEnumerationError(ValueError):
    """Raised when a lattice enumeration request does not bound its region."""


@dataclass(frozen=True)
class VecV:
    """Vector in the quadratic space, coordinates (a, b, c) as above."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))

    def __add__(self, other: "VecV") -> "VecV":
        return VecV(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "VecV") -> "VecV":
        return VecV(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "VecV":
        return VecV(-self.a, -self.b, -self.c)

    def __rmul__(self, t: RationalLike) -> "VecV":
        t = Fraction(t)
        return VecV(t * self.a, t * self.b, t * self.c)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c)

    def as_matrix(self) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
        return ((self.b, self.c), (self.a, -self.b))


U_VEC = VecV(0, 0, 1)
UPRIME_VEC = VecV(-1, 0, 0)
W0_VEC = VecV(0, 1, 0)
_DOWN_TEST = U_VEC + UPRIME_VEC  # u + u' = sqrt2 * e_3


def inner(x: VecV, y: VecV) -> Fraction:
    """Bilinear form (x, y) = tr(xy)."""
    return 2 * x.b * y.b + x.a * y.c + y.a * x.c


def qform(x: VecV) -> Fraction:
    """Quadratic form q(x) = (x, x)/2 = -det of the matrix model."""
    return x.b * x.b + x.a * x.c


def triple(x: VecV, y: VecV, z: VecV) -> Fraction:
    """Alternating trilinear form: determinant of (u, w0, u')-coordinates.

    Positive multiple of the oriented volume; triple(u, w0, u') = 1.
    """
    # Coordinates of v in the (u, w0, u') basis are (c, b, -a).
    return (
        x.c * (y.b * -z.a - z.b * -y.a)
        - x.b * (y.c * -z.a - z.c * -y.a)
        + -x.a * (y.c * z.b - z.c * y.b)
    )


def cross(x: VecV, y: VecV) -> VecV:
    """Minkowski cross product: the unique p with (p, z) = triple(x, y, z)."""
    return VecV(
        x.a * y.b - y.a * x.b,
        (y.a * x.c - x.a * y.c) / 2,
        x.b * y.c - y.b * x.c,
    )


def _check_positive_plane(x: VecV, y: VecV) -> None:
    gram = qform(x) * qform(y) * 4 - inner(x, y) ** 2
    if qform(x) <= 0 or qform(y) <= 0 or gram <= 0:
        raise GeometryError("not a positive 2-plane")


def epsilon_sign(x: VecV, y: VecV) -> int:
    """Intersection multiplicity (+1/-1) of the oriented geodesics of x and y.

    +1 iff cross(x, y) points down, i.e. (cross(x, y), u + u') > 0; see the
    module docstring for the derivation.  Requires x, y spacelike spanning a
    positive-definite plane.
    """
    _check_positive_plane(x, y)
    s = inner(cross(x, y), _DOWN_TEST)
    # s = 0 cannot happen: the complement of a positive 2-plane is a negative
    # line, so cross(x, y) is timelike and never orthogonal to e_3.
    return 1 if s > 0 else -1


def _normalize_cusp(alpha: int, beta: int) -> Tuple[int, int]:
    if alpha == 0 and beta == 0:
        raise GeometryError("cusp [0:0] is not projective")
    g = math.gcd(alpha, beta)
    alpha, beta = alpha // g, beta // g
    if beta < 0 or (beta == 0 and alpha < 0):
        alpha, beta = -alpha, -beta
    return alpha, beta


@dataclass(frozen=True)
class IsotropicLine:
    """Oriented rational isotropic line, tagged by its cusp [alpha : beta].

    The oriented generator is the primitive integral vector with matrix
    [[-alpha*beta, alpha^2], [-beta^2, alpha*beta]].
    """

    generator: VecV
    cusp: Tuple[int, int]

    @classmethod
    def from_cusp(cls, alpha: int, beta: int) -> "IsotropicLine":
        alpha, beta = _normalize_cusp(alpha, beta)
        gen = VecV(-beta * beta, -alpha * beta, alpha * alpha)
        return cls(gen, (alpha, beta))

    @classmethod
    def from_ratio(cls, num: RationalLike, den: RationalLike) -> "IsotropicLine":
        r_num = Fraction(num)
        r_den = Fraction(den)
        alpha = r_num.numerator * r_den.denominator
        beta = r_den.numerator * r_num.denominator
        return cls.from_cusp(alpha, beta)


LINE_INFINITY = IsotropicLine.from_cusp(1, 0)
LINE_ZERO = IsotropicLine.from_cusp(0, 1)


def sigma_matrix(line: IsotropicLine) -> Tuple[int, int, int, int]:
    """Integral matrix (a, b, c, d), det 1, first column the cusp (alpha, beta).

    It moves the infinity cusp to the line's cusp and u to the line's
    oriented generator (under conjugation).
    """
    alpha, beta = line.cusp
    g, s, t = _xgcd(alpha, beta)
    assert g == 1
    # alpha*s + beta*t = 1; want alpha*d - beta*b = 1.
    return (alpha, -t, beta, s)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q_ = old_r // r
        old_r, r = r, old_r - q_ * r
        old_s, s = s, old_s - q_ * s
        old_t, t = t, old_t - q_ * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def conjugate_vec(g: Sequence[RationalLike], x: VecV) -> VecV:
    """Action of g = (a, b, c, d) in SL_2 on the space: x -> g x g^(-1)."""
    p, q_, r, s = (Fraction(t) for t in g)
    det = p * s - q_ * r
    if det != 1:
        raise ValueError("conjugate_vec expects a determinant-1 matrix")
    (m00, m01), (m10, m11) = x.as_matrix()
    # g * X
    n00 = p * m00 + q_ * m10
    n01 = p * m01 + q_ * m11
    n10 = r * m00 + s * m10
    n11 = r * m01 + s * m11
    # (g X) * g^(-1), with g^(-1) = [[s, -q], [-r, p]]
    t00 = n00 * s + n01 * -r
    t01 = n00 * -q_ + n01 * p
    t10 = n10 * s + n11 * -r
    return VecV(t10, t00, t01)


def is_rational_square(q: Fraction) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


def rational_sqrt(q: Fraction) -> Fraction:
    q = Fraction(q)
    if not is_rational_square(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def isotropic_lines_of(x: VecV) -> Tuple[IsotropicLine, IsotropicLine]:
    """The oriented pair of rational isotropic lines orthogonal to x.

    Ordered so that (generator_1, x, generator_2) is positively oriented,
    i.e. triple(u_1, x, u_2) > 0.  Requires q(x) to be a positive rational
    square (otherwise the geodesic is closed and has no rational endpoints).
    """
    q = qform(x)
    if q <= 0 or not is_rational_square(q):
        raise GeometryError("cycle is closed (non-split); no rational endpoints")
    s = rational_sqrt(q)
    if x.a != 0:
        # alpha/beta solves a t^2 - 2 b t - c = 0, t = (b +- s)/a
        lines = [
            _line_from_fraction((x.b + s) / x.a),
            _line_from_fraction((x.b - s) / x.a),
        ]
    else:
        second = IsotropicLine.from_ratio(-x.c, 2 * x.b)
        lines = [LINE_INFINITY, second]
    l1, l2 = lines
    t = triple(l1.generator, x, l2.generator)
    if t == 0:
        raise GeometryError("degenerate isotropic pair")
    if t < 0:
        l1, l2 = l2, l1
    return l1, l2


def _line_from_fraction(t: Fraction) -> IsotropicLine:
    return IsotropicLine.from_cusp(t.numerator, t.denominator)


# ---------------------------------------------------------------------------
# Lattice cosets


@dataclass(frozen=True)
class LatticeCoset:
    """Coset L + shift of an even lattice spanned by three vectors."""

    basis: Tuple[VecV, VecV, VecV]
    shift: VecV

    def __post_init__(self) -> None:
        gram = [[inner(b1, b2) for b2 in self.basis] for b1 in self.basis]
        for i in range(3):
            if gram[i][i].denominator != 1 or gram[i][i] % 2 != 0:
                raise ValueError("lattice is not even: (b, b) not in 2Z")
            for j in range(3):
                if gram[i][j].denominator != 1:
                    raise ValueError("lattice is not integral")

    @classmethod
    def standard(cls, half_shift: bool = False) -> "LatticeCoset":
        """Z*w0 + Z*u + Z*u', shifted by w0/2 when half_shift is set."""
        shift = Fraction(1, 2) * W0_VEC if half_shift else VecV(0, 0, 0)
        return cls((W0_VEC, U_VEC, UPRIME_VEC), shift)

    def coordinates_of(self, x: VecV) -> Tuple[Fraction, Fraction, Fraction]:
        """Coordinates of x in the lattice basis (exact 3x3 solve)."""
        b1, b2, b3 = self.basis
        det = triple(b1, b2, b3)
        if det == 0:
            raise ValueError("degenerate lattice basis")
        return (
            triple(x, b2, b3) / det,
            triple(b1, x, b3) / det,
            triple(b1, b2, x) / det,
        )

    def contains(self, x: VecV) -> bool:
        coords = self.coordinates_of(x - self.shift)
        return all(t.denominator == 1 for t in coords)


# Arithmetic progressions {offset + step*Z}, step > 0, or None for empty.
Progression = Tuple[Fraction, Fraction]


def _progression_normalize(offset: Fraction, step: Fraction) -> Progression:
    step = abs(step)
    return (offset % step, step)


def _progression_intersect(
    p1: Optional[Progression], p2: Optional[Progression]
) -> Optional[Progression]:
    if p1 is None or p2 is None:
        return None
    o1, s1 = p1
    o2, s2 = p2
    d = math.lcm(o1.denominator, s1.denominator, o2.denominator, s2.denominator)
    O1, S1, O2, S2 = (int(t * d) for t in (o1, s1, o2, s2))
    g = math.gcd(S1, S2)
    if (O2 - O1) % g:
        return None
    m = S2 // g
    k0 = ((O2 - O1) // g * pow(S1 // g, -1, m)) % m if m > 1 else 0
    step = Fraction(math.lcm(S1, S2), d)
    offset = Fraction(O1 + S1 * k0, d)
    return _progression_normalize(offset, step)


def _progression_contains(p: Optional[Progression], t: Fraction) -> bool:
    if p is None:
        return False
    o, s = p
    r = (t - o) / s
    return r.denominator == 1


def _progression_min_abs_nonzero(p: Progression) -> Fraction:
    o, s = p
    return s if o == 0 else min(o, s - o)


def _progression_range(p: Progression, lo: Fraction, hi: Fraction) -> Iterator[Fraction]:
    o, s = p
    k = math.ceil((lo - o) / s)
    t = o + k * s
    while t <= hi:
        yield t
        t += s


def line_lattice_data(
    coset: LatticeCoset, line: IsotropicLine
) -> Optional[Tuple[Fraction, Fraction]]:
    """The arithmetic progression (M Z + h) u_line cut out of the line by the
    coset, as (M, h) with 0 <= h < M, or None when the coset misses the line.
    """
    u = line.generator
    p = coset.coordinates_of(u)
    q_ = coset.coordinates_of(coset.shift)
    # Solve t*p_i - q_i in Z for each basis coordinate; u != 0 guarantees at
    # least one condition, so no spurious integrality is assumed up front.
    prog: Optional[Progression] = None
    have_condition = False
    for pi, qi in zip(p, q_):
        if pi == 0:
            if qi.denominator != 1:
                return None
            continue
        cond = _progression_normalize(qi / pi, Fraction(1) / pi)
        prog = cond if not have_condition else _progression_intersect(prog, cond)
        have_condition = True
        if prog is None:
            return None
    assert prog is not None
    o, s = prog
    return (s, o)


@dataclass(frozen=True)
class CosetConstraint:
    """Finite enumeration window for coset vectors.

    q_value: exact value of q(x); u_positive: require q of the split (u, u')
    part positive; u_zero: require the split part to vanish; box: bounds
    (|a|, |b|, |c|) <= box.  The combination must bound the region, else the
    enumeration refuses.
    """

    q_value: Optional[Fraction] = None
    u_positive: bool = False
    u_zero: bool = False
    box: Optional[Tuple[RationalLike, RationalLike, RationalLike]] = None


def _split_adapted_progressions(
    coset: LatticeCoset,
) -> Tuple[Progression, Progression, Progression]:
    """Coordinate progressions (for a, b, c) of a split-adapted coset.

    Requires every basis vector to lie on one of the axes Q*u, Q*w0, Q*u'.
    """
    steps = {"a": None, "b": None, "c": None}
    for v in coset.basis:
        nonzero = [(axis, getattr(v, axis)) for axis in "abc" if getattr(v, axis)]
        if len(nonzero) != 1:
            raise NotImplementedError(
                "enumerate_coset supports split-adapted bases only"
            )
        axis, val = nonzero[0]
        if steps[axis] is not None:
            raise NotImplementedError("basis vectors repeat an axis")
        steps[axis] = abs(val)
    if any(s is None for s in steps.values()):
        raise NotImplementedError("basis does not span all three axes")
    return tuple(
        _progression_normalize(getattr(coset.shift, axis), steps[axis])
        for axis in "abc"
    )  # type: ignore[return-value]


def enumerate_coset(
    coset: LatticeCoset, constraint: CosetConstraint
) -> Iterator[VecV]:
    """Enumerate coset vectors meeting the constraint, each exactly once.

    Refuses with :class:`UnboundedEnumerationError` when the constraint does
    not make the region finite.
    """
    bounded = constraint.box is not None or (
        constraint.q_value is not None
        and (constraint.u_positive or constraint.u_zero)
    )
    if not bounded:
        raise UnboundedEnumerationError(
            "constraint does not bound the enumeration region: need a box or "
            "an exact q-value with a split-part condition"
        )
    prog_a, prog_b, prog_c = _split_adapted_progressions(coset)
    if constraint.box is not None:
        ba, bb, bc = (Fraction(t) for t in constraint.box)
        for a in _progression_range(prog_a, -ba, ba):
            for b in _progression_range(prog_b, -bb, bb):
                for c in _progression_range(prog_c, -bc, bc):
                    v = VecV(a, b, c)
                    if constraint.q_value is None or qform(v) == constraint.q_value:
                        if not constraint.u_positive or a * c > 0:
                            if not constraint.u_zero or (a == 0 and c == 0):
                                yield v
        return
    n = Fraction(constraint.q_value)
    if constraint.u_zero:
        # x = b*w0 with b^2 = n; the split coordinates must admit zero.
        if not (
            _progression_contains(prog_a, Fraction(0))
            and _progression_contains(prog_c, Fraction(0))
        ):
            return
        if not is_rational_square(n):
            return
        s = rational_sqrt(n)
        for b in ([s, -s] if s else [s]):
            if _progression_contains(prog_b, b):
                yield VecV(0, b, 0)
        return
    # u_positive: q(x) = b^2 + a*c = n with a*c > 0.
    min_c = _progression_min_abs_nonzero(prog_c)
    for b in _progression_range(prog_b, -_isqrt_bound(n), _isqrt_bound(n)):
        rem = n - b * b
        if rem <= 0:
            continue
        bound_a = rem / min_c
        for a in _progression_range(prog_a, -bound_a, bound_a):
            if a == 0:
                continue
            c = rem / a
            if c != 0 and a * c > 0 and _progression_contains(prog_c, c):
                yield VecV(a, b, c)


def _isqrt_bound(n: Fraction) -> Fraction:
    """A rational upper bound for sqrt(n), tight enough for range scans."""
    if n <= 0:
        return Fraction(0)
    hi = Fraction(math.isqrt(n.numerator) + 1, max(math.isqrt(n.denominator), 1))
    return hi
