import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectacle.caps import (
    CapInput,
    CapJumpError,
    boundary_pairing_polynomial,
    cap_closed_form,
    cap_solve,
    gamma0_width,
    spectacle_assemble,
)
from spectacle.exact_arith import bernoulli_poly
from spectacle.quad_space import (
    GeometryError,
    U_VEC,
    UPRIME_VEC,
    VecV,
    W0_VEC,
    qform,
    sigma_matrix,
)
from spectacle.sym_rep import (
    act,
    act_n,
    embed_vector,
    pairing,
    u_power,
    uprime_power,
    weight_vector,
)


def _integral(poly, lo, hi):
    total = Fraction(0)
    for m, c in enumerate(poly):
        total += c * (hi ** (m + 1) - lo ** (m + 1)) / (m + 1)
    return total


def test_cap_example_weight_one():
    w = cap_solve(CapInput(k=1, width=1, position=0, jump=weight_vector(1, 0)))
    assert w == embed_vector(UPRIME_VEC - Fraction(1, 2) * W0_VEC + Fraction(1, 6) * U_VEC)
    w2 = cap_solve(CapInput(k=1, width=1, position=0, jump=weight_vector(1, 1)))
    assert w2 == Fraction(-1, 2) * weight_vector(1, 0) + Fraction(-1, 2) * weight_vector(1, 1)


def test_closed_form_examples():
    assert cap_closed_form(1, 0, 0, 1) == embed_vector(
        UPRIME_VEC - Fraction(1, 2) * W0_VEC + Fraction(1, 6) * U_VEC
    )
    assert cap_closed_form(1, 1, 0, 1) == Fraction(-1, 2) * weight_vector(1, 0) + Fraction(
        -1, 2
    ) * weight_vector(1, 1)


@pytest.mark.parametrize("k", range(1, 6))
def test_highest_weight_coefficient(k):
    # at weight index 0 the top coefficient is (2M)^k B_{k+1}(-r/M)/(k+1)
    M, r = Fraction(3, 2), Fraction(1, 3)
    w = cap_closed_form(k, 0, r, M)
    top = pairing(w, uprime_power(k)) / pairing(u_power(k), uprime_power(k))
    assert top == (2 * M) ** k * bernoulli_poly(k + 1, -r / M) / (k + 1)


def test_double_path_and_defining_conditions():
    rng = random.Random(2024)
    for k in range(1, 7):
        for i in range(-k + 1, k + 1):
            for _ in range(4):
                r = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
                M = Fraction(rng.randint(1, 12), rng.randint(1, 9))
                v = act_n(r, weight_vector(k, i))
                w = cap_solve(CapInput(k=k, width=M, position=r, jump=v))
                assert w == cap_closed_form(k, i, r, M)
                # jump identity
                assert act_n(-M, w) - w == v
                # vanishing boundary period
                assert _integral(boundary_pairing_polynomial(w), r, r + M) == 0


@settings(max_examples=40)
@given(
    k=st.integers(min_value=1, max_value=4),
    data=st.data(),
)
def test_cap_solve_linearity(k, data):
    # the jump solve and the period normalization are both linear in v
    i1 = data.draw(st.integers(min_value=-k + 1, max_value=k))
    i2 = data.draw(st.integers(min_value=-k + 1, max_value=k))
    a = data.draw(st.fractions(min_value=-5, max_value=5, max_denominator=6))
    b = data.draw(st.fractions(min_value=-5, max_value=5, max_denominator=6))
    r = data.draw(st.fractions(min_value=-4, max_value=4, max_denominator=5))
    v1, v2 = weight_vector(k, i1), weight_vector(k, i2)
    combo = a * v1 + b * v2
    solve = lambda v: cap_solve(CapInput(k=k, width=Fraction(3, 2), position=r, jump=v))
    assert solve(combo) == a * solve(v1) + b * solve(v2)


def test_cap_solve_rejects_bad_jump():
    with pytest.raises(CapJumpError, match="highest-weight"):
        cap_solve(CapInput(k=2, width=1, position=0, jump=uprime_power(2)))


def test_closed_form_range():
    with pytest.raises(ValueError, match="out of range"):
        cap_closed_form(3, -3, 0, 1)
    cap_closed_form(3, -2, 0, 1)  # boundary index is admissible


def test_boundary_term_at_lowest_admissible_index():
    # the sum's first term j = i-1 does not vanish at i = -k+1
    k = 3
    i = -k + 1
    w = cap_closed_form(k, i, Fraction(1, 5), Fraction(2))
    lowest = w.coeffs[0]  # coefficient on e2^(2k), the v_{-2k} direction
    assert lowest != 0


def test_spectacle_assemble_worked_example():
    for N in (1, 2, 3, 5):
        cyc = spectacle_assemble(W0_VEC, 1, width_of=gamma0_width(N))
        assert cyc.first[0].cusp == (1, 0)
        assert cyc.second[0].cusp == (0, 1)
        assert cyc.cap_first == embed_vector(
            UPRIME_VEC - Fraction(1, 2) * W0_VEC + Fraction(1, 6) * U_VEC
        )
        assert cyc.cap_second == embed_vector(
            Fraction(-1, N) * U_VEC - Fraction(1, 2) * W0_VEC - Fraction(N, 6) * UPRIME_VEC
        )


def test_spectacle_assemble_orientation_swap():
    c1 = spectacle_assemble(W0_VEC, 1)
    c2 = spectacle_assemble(-W0_VEC, 1)
    assert c1.first[0] == c2.second[0]
    assert c1.second[0] == c2.first[0]


def test_spectacle_assemble_closed_cycle():
    cyc = spectacle_assemble(VecV(2, 0, 1), 1)
    assert cyc.cap_first is None and cyc.cap_second is None
    with pytest.raises(GeometryError):
        spectacle_assemble(VecV(0, 0, 1), 1)


def test_spectacle_assemble_jump_in_global_coordinates():
    # (gamma_ell^{-1} - Id) w = v for the actual stabilizer generator
    rng = random.Random(31)
    found = 0
    while found < 25:
        x = VecV(rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-6, 6))
        if qform(x) <= 0:
            continue
        try:
            cyc = spectacle_assemble(x, rng.randint(1, 3))
        except GeometryError:
            continue
        if cyc.cap_first is None:
            continue
        found += 1
        for (line, _pos), w in ((cyc.first, cyc.cap_first), (cyc.second, cyc.cap_second)):
            a, b, c, d = sigma_matrix(line)
            # gamma = sigma n(M) sigma^(-1) with width M = 1
            n1 = (1, 1, 0, 1)
            gamma = _mat_mul(_mat_mul((a, b, c, d), n1), (d, -b, -c, a))
            gamma_inv = (gamma[3], -gamma[1], -gamma[2], gamma[0])
            assert act(gamma_inv, w) - w == cyc.coefficient


def _mat_mul(u, v):
    return (
        u[0] * v[0] + u[1] * v[2],
        u[0] * v[1] + u[1] * v[3],
        u[2] * v[0] + u[3] * v[2],
        u[2] * v[1] + u[3] * v[3],
    )
