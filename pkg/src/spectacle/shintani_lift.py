"""Both sides of the capped-cycle generating series identity, on the concrete
even lattice of 2x2 integral trace-zero matrices.

Setup.  The lattice L = Z w0 + Z u + Z u' (dual quotient of order two, level
four) is Witt-split along the modular symbol y = w0, whose geodesic is the
imaginary axis:

    coset = (Z + 0) u  +  (Z w0 + h_W)  +  (Z + 0) u',   h_W in {0, w0/2}.

Pairing the theta lift against that symbol with coefficient u'^k gives a
q-series in two ways, and the package computes both:

* theta side: the split-plane sum sgn-weighted over interior vectors, plus a
  boundary cross block (Bernoulli constant times the positive-definite theta
  series of the w0-line), plus for k = 1 a holomorphic remainder from the cap
  at the zero cusp; the two 1/(pi v) pieces (one from the split-plane
  integral, one from the cap term) must cancel exactly and are checked
  symbolically per exponent.

* geometric side: intersection numbers.  Interior crossings use the cross
  product orientation sign; boundary contributions count the cap components
  of the cycles hitting each cusp (a Bernoulli multiple at infinity, and for
  k = 1 a -2cn/M2 term at zero); the degree-zero term pairs the boundary
  cycle at infinity with the symbol.

Sign arbitration.  Three binary conventions are pinned programmatically, in
order: (1) the split-plane global sign comes from ``theta11.global_sign``
(calibrated against the classical Eisenstein expansion); (2) the boundary
incidence sign of the geometric constant term is pinned by equality of the
two sides at q^0; (3) the relative sign between the theta side's interior
block and its boundary blocks is pinned, if needed, by the geometric interior
(whose orientation is the cross-product definition).  The resolved record is
attached to every report.  With the conventions pinned this way the two sides
agree exactly, and the combination of the two coset components is a rational
multiple of the half-integral weight Eisenstein coefficients H(k+1, N).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple, Union

from .exact_arith import bernoulli_poly
from .qseries import QExpansion, cohen_eisenstein
from .quad_space import (
    LINE_INFINITY,
    LatticeCoset,
    VecV,
    W0_VEC,
    epsilon_sign,
    line_lattice_data,
)
from . import theta11

RationalLike = Union[int, Fraction]

__all__ = [
    "LiftConfig",
    "SignConvention",
    "LiftReport",
    "LiftError",
    "arbitrate_signs",
    "lift_theta_side",
    "lift_geometric_side",
    "lift_theta_nonholo_parts",
    "main_theorem_check",
    "PlusSpaceResult",
    "plus_space_check",
    "boundary_family_multiplicity",
]

log = logging.getLogger("spectacle.lift")


class LiftError(RuntimeError):
    """Internal identity of the lift failed (formula regression)."""


@dataclass(frozen=True)
class LiftConfig:
    """Configuration: coefficient degree k, coset tag, truncation.

    ``h`` is the w0-multiple of the coset shift (0 or 1/2); ``n_max`` bounds
    the exponent numerators on the grid (1/exp_den) Z, with exp_den = 1 for
    the unshifted coset and 4 for the half-shifted one.
    """

    k: int
    h: Fraction
    n_max: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", Fraction(self.h))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.h not in (Fraction(0), Fraction(1, 2)):
            raise ValueError("coset tag must be 0 or 1/2 (times w0)")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")

    @property
    def exp_den(self) -> int:
        return 1 if self.h == 0 else 4

    @property
    def exponent_bound(self) -> Fraction:
        return Fraction(self.n_max, self.exp_den)

    def coset(self) -> LatticeCoset:
        return LatticeCoset.standard(half_shift=self.h != 0)

    # split-plane data: both isotropic progressions are Z + 0
    M1 = Fraction(1)
    h1 = Fraction(0)
    M2 = Fraction(1)
    h2 = Fraction(0)

    def w_values(self, bound: Fraction) -> Iterator[Fraction]:
        """Points m of the w0-progression Z + h with m*m <= bound."""
        m = self.h
        while m * m <= bound:
            yield m
            if m != 0:
                yield -m
            m += 1

    def w_square_count(self, e: Fraction) -> int:
        """Number of progression points with m^2 = e."""
        if e < 0:
            return 0
        return sum(1 for m in self.w_values(e) if m * m == e)


@dataclass(frozen=True)
class SignConvention:
    """Resolved binary conventions, recorded with every report."""

    sigma_glob: int
    interior_relative: int
    boundary_incidence: int

    @property
    def effective_interior(self) -> int:
        return self.sigma_glob * self.interior_relative

    def to_json_dict(self) -> dict:
        return {
            "sigma_glob": self.sigma_glob,
            "interior_relative": self.interior_relative,
            "effective_interior": self.effective_interior,
            "boundary_incidence": self.boundary_incidence,
        }


_CONVENTION: Optional[SignConvention] = None


# ---------------------------------------------------------------------------
# building blocks


def _interior_terms(cfg: LiftConfig) -> Iterator[Tuple[int, int, Fraction, Fraction]]:
    """Index set of interior vectors: (m1, m2, m, exponent).

    m1 u + m2 u' + m w0 runs over coset vectors with positive split part
    (m1 m2 < 0) and q = -m1 m2 + m^2 <= the truncation bound.
    """
    top = cfg.exponent_bound
    for m1 in range(1, int(top) + 1):
        for m2 in range(-int(top / m1), 0):
            base = Fraction(-m1 * m2)
            for m in cfg.w_values(top - base):
                yield (m1, m2, m, base + m * m)
                yield (-m1, -m2, m, base + m * m)


def _interior_theta(cfg: LiftConfig) -> Dict[int, Fraction]:
    """Split-plane route: sgn(m1) (x_U, u')^k = sgn(m1) (-m1)^k."""
    out: Dict[int, Fraction] = {}
    for m1, _m2, _m, e in _interior_terms(cfg):
        num = int(e * cfg.exp_den)
        sgn = 1 if m1 > 0 else -1
        val = Fraction(sgn * (-m1) ** cfg.k)
        out[num] = out.get(num, Fraction(0)) + val
    return out


def _interior_geometric(cfg: LiftConfig) -> Dict[int, Fraction]:
    """Cross-product route: epsilon(x, w0) (x_U, u')^k per interior vector."""
    out: Dict[int, Fraction] = {}
    for m1, m2, m, e in _interior_terms(cfg):
        x = VecV(-m2, m, m1)  # m1 u + m2 u' + m w0
        eps = epsilon_sign(x, W0_VEC)
        val = Fraction(eps * (-m1) ** cfg.k)
        num = int(e * cfg.exp_den)
        out[num] = out.get(num, Fraction(0)) + val
    return out


def _bernoulli_block_scalar(cfg: LiftConfig) -> Fraction:
    """(-1)^(k+1) M1^k B_{k+1}(h1/M1) / (k+1); the boundary cross constant."""
    k = cfg.k
    return (
        (-1) ** (k + 1)
        * cfg.M1**k
        * bernoulli_poly(k + 1, cfg.h1 / cfg.M1)
        / (k + 1)
    )


def _const_block(cfg: LiftConfig) -> Dict[int, Fraction]:
    """Cross block: the Bernoulli scalar times the w0-line theta series."""
    scalar = _bernoulli_block_scalar(cfg)
    out: Dict[int, Fraction] = {}
    if cfg.h2 != 0 or scalar == 0:
        return out
    for num in range(cfg.n_max + 1):
        e = Fraction(num, cfg.exp_den)
        cnt = cfg.w_square_count(e)
        if cnt:
            out[num] = scalar * cnt
    return out


def _cap_remainder(cfg: LiftConfig) -> Dict[int, Fraction]:
    """k = 1 only: -delta(h1=0)/M2 * sum (w, w) q^{q(w)} over the w0-line."""
    out: Dict[int, Fraction] = {}
    if cfg.k != 1 or cfg.h1 != 0:
        return out
    top = cfg.exponent_bound
    for m in cfg.w_values(top):
        e = m * m
        if e == 0:
            continue
        num = int(e * cfg.exp_den)
        out[num] = out.get(num, Fraction(0)) - 2 * e / cfg.M2
    return out


def lift_theta_nonholo_parts(
    cfg: LiftConfig,
) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
    """The two 1/(pi v) multiplier tables for k = 1.

    First: from the split-plane integral, -delta(h1=0)/(4 M2) theta_W;
    second: from the cap term at the zero cusp, +delta(h1=0)/(4 M2) theta_W.
    They must cancel exactly; ``lift_theta_side`` asserts it.
    """
    if cfg.k != 1:
        return {}, {}
    part1: Dict[int, Fraction] = {}
    part2: Dict[int, Fraction] = {}
    if cfg.h1 != 0:
        return part1, part2
    for num in range(cfg.n_max + 1):
        e = Fraction(num, cfg.exp_den)
        cnt = cfg.w_square_count(e)
        if cnt:
            part1[num] = Fraction(-1, 4) / cfg.M2 * cnt
            part2[num] = Fraction(1, 4) / cfg.M2 * cnt
    return part1, part2


# ---------------------------------------------------------------------------
# sign arbitration


def arbitrate_signs() -> SignConvention:
    """Pin the three binary conventions; cached for the process lifetime.

    (1) sigma_glob from the split-plane calibration; (2) the boundary
    incidence sign from equality of the two sides at q^0; (3) the interior
    relative sign from the cross-product interior at the first nonzero
    exponent.  A probe configuration is then verified outright.
    """
    global _CONVENTION
    if _CONVENTION is not None:
        return _CONVENTION
    sigma = theta11.global_sign()
    probe = LiftConfig(k=1, h=Fraction(0), n_max=6)

    theta_const = _const_block(probe).get(0, Fraction(0))
    geo_const_unsigned = _bernoulli_block_scalar(probe)  # incidence not applied
    if geo_const_unsigned == 0 or theta_const % geo_const_unsigned != 0:
        raise LiftError("cannot pin boundary incidence sign at q^0")
    incidence = int(theta_const / geo_const_unsigned)
    if incidence not in (1, -1):
        raise LiftError("boundary incidence sign is not a sign")

    t_int = _interior_theta(probe)
    g_int = _interior_geometric(probe)
    relative = 1
    for num in sorted(set(t_int) | set(g_int)):
        tv = sigma * t_int.get(num, Fraction(0))
        gv = g_int.get(num, Fraction(0))
        if tv == gv == 0:
            continue
        if tv == gv:
            relative = 1
        elif tv == -gv:
            relative = -1
        else:
            raise LiftError("interior blocks differ by more than a sign")
        break
    conv = SignConvention(sigma, relative, incidence)
    # verify the probe outright before caching
    for num in sorted(set(t_int) | set(g_int)):
        if conv.effective_interior * t_int.get(num, Fraction(0)) != g_int.get(
            num, Fraction(0)
        ):
            raise LiftError("interior blocks do not match after arbitration")
    _CONVENTION = conv
    log.info(
        "arbitrated signs: sigma_glob=%+d interior_relative=%+d incidence=%+d",
        sigma,
        relative,
        incidence,
    )
    return conv


# ---------------------------------------------------------------------------
# the two sides


def lift_theta_side(
    cfg: LiftConfig, convention: Optional[SignConvention] = None
) -> QExpansion:
    """Theta route: interior sum + boundary cross block (+ k=1 remainder).

    The k = 1 non-holomorphic multipliers are computed on both routes and
    must cancel exactly per exponent; the returned expansion carries an
    identically-zero nonholo table for k = 1 as a witness.
    """
    conv = convention or arbitrate_signs()
    s = conv.effective_interior
    coeffs: Dict[int, Fraction] = {}
    for num, v in _interior_theta(cfg).items():
        coeffs[num] = coeffs.get(num, Fraction(0)) + s * v
    for num, v in _const_block(cfg).items():
        coeffs[num] = coeffs.get(num, Fraction(0)) + v
    for num, v in _cap_remainder(cfg).items():
        coeffs[num] = coeffs.get(num, Fraction(0)) + v
    nonholo: Optional[Dict[int, Fraction]] = None
    if cfg.k == 1:
        p1, p2 = lift_theta_nonholo_parts(cfg)
        total = {n: p1.get(n, Fraction(0)) + p2.get(n, Fraction(0)) for n in set(p1) | set(p2)}
        bad = {n: v for n, v in total.items() if v}
        if bad:
            raise LiftError(f"non-holomorphic parts fail to cancel: {bad}")
        nonholo = {}
    return QExpansion(cfg.exp_den, cfg.n_max, coeffs, nonholo)


def boundary_family_multiplicity(cfg: LiftConfig) -> int:
    """Boundary family multiplicity c: 2 when twice the shift lies in the
    w0-line lattice (both oriented geodesic families hit the cusp), else 1.

    Equals the number of progression points with m^2 = e whenever vectors of
    that length exist; the geometric side counts the families directly via
    ``w_square_count``.
    """
    return 2 if (2 * cfg.h) % 1 == 0 else 1


def lift_geometric_side(
    cfg: LiftConfig, convention: Optional[SignConvention] = None
) -> QExpansion:
    """Intersection route: cross-product interior + boundary cap counts."""
    conv = convention or arbitrate_signs()
    coeffs: Dict[int, Fraction] = dict(_interior_geometric(cfg))
    k = cfg.k
    block = _bernoulli_block_scalar(cfg)
    top = cfg.exponent_bound
    if cfg.h2 == 0:
        for m in cfg.w_values(top):
            if m <= 0:
                continue
            e = m * m
            num = int(e * cfg.exp_den)
            fams = cfg.w_square_count(e)  # families terminating/originating
            coeffs[num] = coeffs.get(num, Fraction(0)) + fams * block
    if k == 1 and cfg.h1 == 0:
        # each oriented family contributes -2 m^2 / M2 at the zero cusp
        for m in cfg.w_values(top):
            if m <= 0:
                continue
            e = m * m
            num = int(e * cfg.exp_den)
            fams = cfg.w_square_count(e)
            coeffs[num] = coeffs.get(num, Fraction(0)) - 2 * fams * e / cfg.M2
    # constant term: boundary cycle at infinity paired with the symbol
    data = line_lattice_data(cfg.coset(), LINE_INFINITY)
    if data is not None:
        M_ell, h_ell = data
        const = (
            conv.boundary_incidence
            * (-1) ** (k + 1)
            * M_ell**k
            * bernoulli_poly(k + 1, h_ell / M_ell)
            / (k + 1)
        )
        if const:
            coeffs[0] = coeffs.get(0, Fraction(0)) + const
    nonholo: Optional[Dict[int, Fraction]] = {} if k == 1 else None
    return QExpansion(cfg.exp_den, cfg.n_max, coeffs, nonholo)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class LiftReport:
    """Both coefficient tables plus the convention record and the verdict."""

    k: int
    h: Fraction
    n_max: int
    theta_side: QExpansion
    geometric_side: QExpansion
    sign_convention: SignConvention
    equal_to: Optional[int]
    first_mismatch: Optional[Tuple[Fraction, Fraction, Fraction, str]]
    proportionality: Optional[Tuple[Fraction, str]] = None

    @property
    def equal(self) -> bool:
        return self.equal_to is not None

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "h": str(self.h),
            "n_max": self.n_max,
            "exp_den": self.theta_side.exp_den,
            "theta_side": self.theta_side.to_json_dict(),
            "geometric_side": self.geometric_side.to_json_dict(),
            "sign_convention": self.sign_convention.to_json_dict(),
            "equal_to": self.equal_to,
            "first_mismatch": None
            if self.first_mismatch is None
            else {
                "exponent": str(self.first_mismatch[0]),
                "theta": str(self.first_mismatch[1]),
                "geometric": str(self.first_mismatch[2]),
                "part": self.first_mismatch[3],
            },
            "proportionality": None
            if self.proportionality is None
            else {
                "lambda": str(self.proportionality[0]),
                "target": self.proportionality[1],
            },
        }


def main_theorem_check(cfg: LiftConfig, with_proportionality: bool = False) -> LiftReport:
    """Compute both sides and compare exactly on all exponents <= the bound.

    ``with_proportionality`` additionally runs the two-component comparison
    against the half-integral weight Eisenstein coefficients (odd k only)
    and records the resulting rational multiple.
    """
    conv = arbitrate_signs()
    ts = lift_theta_side(cfg, conv)
    gs = lift_geometric_side(cfg, conv)
    mism = ts.first_mismatch(gs)
    proportionality: Optional[Tuple[Fraction, str]] = None
    if with_proportionality and cfg.k % 2 == 1:
        bound = cfg.n_max if cfg.exp_den == 4 else 4 * cfg.n_max
        res = plus_space_check(cfg.k, bound)
        if res.passed and res.lam is not None:
            proportionality = (res.lam, f"Cohen r = {cfg.k + 1}")
    return LiftReport(
        k=cfg.k,
        h=cfg.h,
        n_max=cfg.n_max,
        theta_side=ts,
        geometric_side=gs,
        sign_convention=conv,
        equal_to=cfg.n_max if mism is None else None,
        first_mismatch=mism,
        proportionality=proportionality,
    )


@dataclass(frozen=True)
class PlusSpaceResult:
    k: int
    lam: Optional[Fraction]
    passed: bool
    n_checked: int
    first_break: Optional[Tuple[int, Fraction, Fraction]]
    combined: QExpansion

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "lambda": None if self.lam is None else str(self.lam),
            "passed": self.passed,
            "n_checked": self.n_checked,
            "first_break": None
            if self.first_break is None
            else [self.first_break[0], str(self.first_break[1]), str(self.first_break[2])],
            "combined": self.combined.to_json_dict(),
        }


def plus_space_check(k: int, n_max: int) -> PlusSpaceResult:
    """Combine the two coset components at 4*tau and compare with H(k+1, .).

    F(tau) = component(h=0)(4 tau) + component(h=1/2)(4 tau) must be a single
    rational multiple of the weight k + 3/2 Eisenstein coefficient series
    H(k+1, N) on all N <= n_max; lambda comes from the first nonzero
    coefficient.  Both lift sides are verified for each component first.
    """
    if k % 2 == 0:
        raise ValueError("the combined lift vanishes for even k; k must be odd")
    n_max -= n_max % 4  # the dilated components live on a numerator-4 grid
    rep0 = main_theorem_check(LiftConfig(k=k, h=Fraction(0), n_max=n_max // 4))
    reph = main_theorem_check(LiftConfig(k=k, h=Fraction(1, 2), n_max=n_max))
    if not (rep0.equal and reph.equal):
        raise LiftError("lift sides disagree; refusing the plus-space check")
    combined = rep0.theta_side.dilate(4) + reph.theta_side.dilate(4)
    target = cohen_eisenstein(k + 1, n_max)
    lam: Optional[Fraction] = None
    first_break: Optional[Tuple[int, Fraction, Fraction]] = None
    for N in range(n_max + 1):
        f = combined.coefficient(N)
        hh = target.coefficient(N)
        if lam is None:
            if f == 0 and hh == 0:
                continue
            if hh == 0:
                first_break = (N, f, hh)
                break
            lam = f / hh
            continue
        if f != lam * hh:
            first_break = (N, f, lam * hh)
            break
    passed = first_break is None and lam is not None
    return PlusSpaceResult(
        k=k,
        lam=lam,
        passed=passed,
        n_checked=n_max,
        first_break=first_break,
        combined=combined,
    )
