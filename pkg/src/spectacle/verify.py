"""Acceptance matrix: every headline identity, each with its stated tolerance.

Each criterion is a standalone function returning a :class:`CriterionResult`;
``verify_all`` runs the full matrix.  The CLI prints one PASS/FAIL line per
criterion and the test suite asserts each result.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, List, Optional

from .caps import CapInput, cap_closed_form, cap_solve, gamma0_width, spectacle_assemble
from .exact_arith import bernoulli_number
from .periods import HolomorphicFormSpec, geodesic_intersection_numeric, spectacle_period
from .qseries import cohen_eisenstein
from .quad_space import U_VEC, UPRIME_VEC, VecV, W0_VEC, epsilon_sign, inner, qform
from .shintani_lift import (
    LiftConfig,
    lift_theta_nonholo_parts,
    main_theorem_check,
    plus_space_check,
)
from .sym_rep import (
    act_n,
    embed_power,
    embed_vector,
    pairing,
    raising,
    u_power,
    uprime_power,
    weight_vector,
)
from .theta11 import SplitLatticeU, siegel_weil_check, theta11_series

__all__ = ["CriterionResult", "verify_all", "CRITERIA"]


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}  ({self.seconds:.2f}s)  {self.detail}"


def _run(name: str, budget: Optional[float], body: Callable[[], str]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        detail = body()
        passed = True
    except AssertionError as exc:
        detail = f"assertion failed: {exc}"
        passed = False
    elapsed = time.perf_counter() - t0
    if passed and budget is not None and elapsed > budget:
        passed = False
        detail += f"; exceeded runtime budget {budget:.0f}s"
    return CriterionResult(name, passed, detail, elapsed)


def criterion_cap_double_path() -> CriterionResult:
    def body() -> str:
        rng = random.Random(20260809)
        count = 0
        for k in range(1, 7):
            for i in range(-k + 1, k + 1):
                for _ in range(20):
                    r = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
                    M = Fraction(rng.randint(1, 15), rng.randint(1, 8))
                    v = act_n(r, weight_vector(k, i))
                    w = cap_solve(CapInput(k=k, width=M, position=r, jump=v))
                    wc = cap_closed_form(k, i, r, M)
                    assert w == wc, f"k={k} i={i} r={r} M={M}"
                    count += 1
        return f"{count} cap pairs agree exactly (k <= 6)"

    return _run("cap double-path oracle", 5.0, body)


def criterion_worked_cap_example() -> CriterionResult:
    def body() -> str:
        half = Fraction(1, 2)
        sixth = Fraction(1, 6)
        for N in (1, 2, 3, 5):
            cyc = spectacle_assemble(W0_VEC, 1, width_of=gamma0_width(N))
            want_first = embed_vector(UPRIME_VEC - half * W0_VEC + sixth * U_VEC)
            want_second = embed_vector(
                -Fraction(1, N) * U_VEC - half * W0_VEC - Fraction(N, 6) * UPRIME_VEC
            )
            assert cyc.cap_first == want_first, f"N={N} cap at infinity"
            assert cyc.cap_second == want_second, f"N={N} cap at zero"
        return "caps u' - x/2 + u/6 and -u/N - x/2 - N u'/6 exact for N in {1,2,3,5}"

    return _run("worked cap example (both cusps)", None, body)


def criterion_siegel_weil() -> CriterionResult:
    def body() -> str:
        lat = SplitLatticeU.unimodular()
        for k in (3, 5, 7):
            rep = siegel_weil_check(lat, k, 200)
            assert rep.passed, f"k={k}: {rep.note} {rep.first_mismatch}"
        return "theta series equals (-B_{k+1}/(k+1)) E_{k+1} to q^200 for k=3,5,7"

    return _run("level-one Eisenstein comparison", 10.0, body)


def criterion_main_theorem() -> CriterionResult:
    def body() -> str:
        for k in (1, 3):
            for h in (Fraction(0), Fraction(1, 2)):
                cfg = LiftConfig(k=k, h=h, n_max=100)
                rep = main_theorem_check(cfg)
                assert rep.equal, f"k={k} h={h}: {rep.first_mismatch}"
                if k == 1:
                    p1, p2 = lift_theta_nonholo_parts(cfg)
                    for num in set(p1) | set(p2):
                        total = p1.get(num, Fraction(0)) + p2.get(num, Fraction(0))
                        assert total == 0, f"nonholo residue at numerator {num}"
        return "theta and intersection sides agree exactly to numerator 100, all (k, h)"

    return _run("generating-series identity", 30.0, body)


def criterion_plus_space() -> CriterionResult:
    def body() -> str:
        lambdas = {}
        for k, want_abs in ((1, 10), (3, 2)):
            res = plus_space_check(k, 240)
            assert res.passed, f"k={k}: first break {res.first_break}"
            assert res.lam is not None and abs(res.lam) == want_abs, (
                f"k={k}: lambda={res.lam}, |lambda| should be {want_abs}"
            )
            lambdas[k] = res.lam
            rep0 = main_theorem_check(LiftConfig(k=k, h=Fraction(0), n_max=8))
            const = rep0.theta_side.coefficient(0)
            assert abs(const) == abs(bernoulli_number(k + 1) / (k + 1)), (
                f"k={k}: |constant| {const}"
            )
        return f"single rational multiple of H(k+1, .) to N=240; lambda = {lambdas}"

    return _run("half-integral weight proportionality", None, body)


def criterion_lvalue_periods() -> CriterionResult:
    def body() -> str:
        e4 = HolomorphicFormSpec.eisenstein(4)
        e8 = HolomorphicFormSpec.eisenstein(8)
        grid = (3.0, 5.0, 10.0)
        vals4 = [spectacle_period(e4, 1, 0, t1, t2) for t1 in grid for t2 in grid]
        vals8 = [spectacle_period(e8, 3, 0, t1, t2) for t1 in grid for t2 in grid]
        for v in vals4:
            assert abs(v + 5 / 3) < 1e-8, f"E4 period {v}"
        for v in vals8:
            assert abs(v + 2 / 15) < 1e-8, f"E8 period {v}"
        assert max(vals4) - min(vals4) < 1e-8, "E4 T-dependence"
        assert max(vals8) - min(vals8) < 1e-8, "E8 T-dependence"
        drop = abs(
            spectacle_period(e4, 1, 0, 3.0, 3.0, include_caps=False)
            - spectacle_period(e4, 1, 0, 10.0, 10.0, include_caps=False)
        )
        assert drop > 1e-2, f"negative control too small: {drop}"
        return "periods -5/3 and -2/15 to 1e-8, T-independent; no-caps control breaks"

    return _run("completed L-value periods", 10.0, body)


def criterion_intersection_oracle() -> CriterionResult:
    def body() -> str:
        rng = random.Random(424242)
        checked = 0
        while checked < 500:
            x = VecV(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
            y = VecV(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
            if qform(x) <= 0 or qform(y) <= 0:
                continue
            if 4 * qform(x) * qform(y) - inner(x, y) ** 2 <= 0:
                continue
            _, sign = geodesic_intersection_numeric(x, y)
            assert sign == epsilon_sign(x, y), f"disagreement at {x}, {y}"
            checked += 1
        return "500 random positive-plane pairs, zero disagreements"

    return _run("intersection-sign oracle", None, body)


def criterion_rep_theory() -> CriterionResult:
    def body() -> str:
        for k in range(1, 9):
            ck = Fraction((-2) ** k * factorial(k) ** 2, factorial(2 * k))
            assert weight_vector(k, k) == ck * u_power(k)
            assert weight_vector(k, -k) == ck * uprime_power(k)
            assert weight_vector(k, 0) == embed_power(W0_VEC, k)
            for i in range(-k, k + 1):
                sign = 1 if i % 2 == 0 else -1
                want = Fraction(
                    sign * ck**2 * factorial(2 * k),
                    factorial(k + i) * factorial(k - i),
                )
                assert pairing(weight_vector(k, i), weight_vector(k, -i)) == want
            for i in range(-k, k):
                assert weight_vector(k, i + 1) == Fraction(1, i + k + 1) * raising(
                    weight_vector(k, i)
                )
        rng = random.Random(515151)
        for _ in range(100):
            k = rng.randint(1, 6)
            r = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
            x = VecV(-1, -r, r * r)  # n(r) acting on u', isotropic
            y = VecV(rng.randint(-7, 7), rng.randint(-7, 7), rng.randint(-7, 7))
            assert (
                pairing(embed_power(x, k), embed_power(y, k)) == inner(x, y) ** k
            ), f"k={k} r={r} y={y}"
        return "weight-vector table exact for k <= 8; 100 isotropic power pairings"

    return _run("representation-theory identities", None, body)


def criterion_vanishing() -> CriterionResult:
    def body() -> str:
        series = theta11_series(SplitLatticeU.unimodular(), 2, 0, 1, 40)
        assert all(series.coefficient(n) == 0 for n in range(41)), "theta k=2"
        for h in (Fraction(0), Fraction(1, 2)):
            rep = main_theorem_check(LiftConfig(k=2, h=h, n_max=40))
            assert rep.equal
            assert all(c == 0 for c in rep.theta_side.coeffs.values()), f"lift h={h}"
        for r in (1, 2, 3, 4):
            series = cohen_eisenstein(r, 60)
            for n, c in series.coeffs.items():
                assert ((-1) ** r * n) % 4 in (0, 1), f"H({r},{n}) = {c} off support"
        return "even-k series vanish to q^40; Cohen support is 0,1 mod 4"

    return _run("vanishing laws", None, body)


CRITERIA: List[Callable[[], CriterionResult]] = [
    criterion_cap_double_path,
    criterion_worked_cap_example,
    criterion_siegel_weil,
    criterion_main_theorem,
    criterion_plus_space,
    criterion_lvalue_periods,
    criterion_intersection_oracle,
    criterion_rep_theory,
    criterion_vanishing,
]


def verify_all() -> List[CriterionResult]:
    return [c() for c in CRITERIA]
