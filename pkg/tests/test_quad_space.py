import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectacle.quad_space import (
    LINE_INFINITY,
    LINE_ZERO,
    CosetConstraint,
    GeometryError,
    IsotropicLine,
    LatticeCoset,
    U_VEC,
    UPRIME_VEC,
    UnboundedEnumerationError,
    VecV,
    W0_VEC,
    conjugate_vec,
    cross,
    enumerate_coset,
    epsilon_sign,
    inner,
    isotropic_lines_of,
    line_lattice_data,
    qform,
    sigma_matrix,
    triple,
)


def rand_vec(rng, span=9):
    return VecV(rng.randint(-span, span), rng.randint(-span, span), rng.randint(-span, span))


def test_matrix_model_identities():
    rng = random.Random(1)
    for _ in range(100):
        x, y = rand_vec(rng), rand_vec(rng)
        (m00, m01), (m10, m11) = x.as_matrix()
        det = m00 * m11 - m01 * m10
        assert qform(x) == -det
        (n00, n01), (n10, n11) = y.as_matrix()
        trace_xy = m00 * n00 + m01 * n10 + m10 * n01 + m11 * n11
        assert inner(x, y) == trace_xy


def test_inner_examples():
    assert inner(U_VEC, UPRIME_VEC) == -1
    assert inner(U_VEC, W0_VEC) == 0
    assert qform(VecV(1, 0, 1)) == 1
    assert qform(U_VEC) == 0


def test_triple_orientation():
    assert triple(U_VEC, W0_VEC, UPRIME_VEC) == 1
    assert triple(UPRIME_VEC, W0_VEC, U_VEC) == -1
    assert triple(U_VEC, U_VEC, W0_VEC) == 0


def test_cross_defining_property():
    rng = random.Random(2)
    for _ in range(100):
        x, y, z = rand_vec(rng), rand_vec(rng), rand_vec(rng)
        assert inner(cross(x, y), z) == triple(x, y, z)
        assert cross(y, x) == -cross(x, y)
        assert inner(cross(x, y), x) == 0


def test_cross_matches_euclidean_frame_exactly():
    # Orthonormal frame e1 = (u - u')/sqrt2, e2 = w0/sqrt2, e3 = (u + u')/sqrt2;
    # the frame formula is x cross y = (x2 y3 - x3 y2) e1 - (x1 y3 - x3 y1) e2
    # - (x1 y2 - x2 y1) e3, and our rational cross is that divided by sqrt2.
    # For rational vectors all frame coordinates are rational multiples of
    # 1/sqrt2, so with x_i = a_i/sqrt2 the sqrt2 factors cancel exactly:
    # frame_num(cross(x, y)) must equal the bracket expressions over 2.

    def frame_num(v):
        # v = sum (a_i / sqrt2) e_i; returns the rational a_i
        return (
            inner(v, U_VEC - UPRIME_VEC),
            2 * v.b,
            -inner(v, U_VEC + UPRIME_VEC),
        )

    rng = random.Random(3)
    for _ in range(100):
        x, y = rand_vec(rng, 7), rand_vec(rng, 7)
        a1, a2, a3 = frame_num(x)
        b1, b2, b3 = frame_num(y)
        want = (
            Fraction(a2 * b3 - a3 * b2, 2),
            Fraction(-(a1 * b3 - a3 * b1), 2),
            Fraction(-(a1 * b2 - a2 * b1), 2),
        )
        assert frame_num(cross(x, y)) == want


def test_epsilon_examples():
    assert epsilon_sign(VecV(1, 0, 1), W0_VEC) == 1
    assert epsilon_sign(W0_VEC, VecV(1, 0, 1)) == -1
    assert epsilon_sign(2 * VecV(1, 0, 1), 3 * W0_VEC) == 1
    with pytest.raises(GeometryError, match="positive 2-plane"):
        epsilon_sign(U_VEC + UPRIME_VEC, W0_VEC)


def test_isotropic_lines_of_w0():
    l1, l2 = isotropic_lines_of(W0_VEC)
    assert (l1, l2) == (LINE_INFINITY, LINE_ZERO)
    l1, l2 = isotropic_lines_of(-W0_VEC)
    assert (l1, l2) == (LINE_ZERO, LINE_INFINITY)


def test_isotropic_lines_unit_semicircle():
    pair = isotropic_lines_of(VecV(1, 0, 1))
    assert {l.cusp for l in pair} == {(1, 1), (-1, 1)}


def test_isotropic_lines_exact_properties():
    rng = random.Random(4)
    found = 0
    while found < 60:
        x = rand_vec(rng)
        q = qform(x)
        try:
            l1, l2 = isotropic_lines_of(x)
        except GeometryError:
            continue
        found += 1
        for line in (l1, l2):
            assert qform(line.generator) == 0
            assert inner(line.generator, x) == 0
            assert not line.generator.is_zero()
        assert triple(l1.generator, x, l2.generator) > 0


def test_isotropic_lines_nonsplit_rejected():
    with pytest.raises(GeometryError, match="closed"):
        isotropic_lines_of(VecV(2, 0, 1))
    with pytest.raises(GeometryError):
        isotropic_lines_of(U_VEC)


def test_sigma_matrix_properties():
    for line in (LINE_INFINITY, LINE_ZERO, IsotropicLine.from_cusp(3, 5), IsotropicLine.from_cusp(-2, 7)):
        a, b, c, d = sigma_matrix(line)
        assert a * d - b * c == 1
        assert (a, c) == line.cusp
        assert conjugate_vec((a, b, c, d), U_VEC) == line.generator


def test_line_lattice_data_standard():
    L0 = LatticeCoset.standard()
    Lh = LatticeCoset.standard(half_shift=True)
    assert line_lattice_data(L0, LINE_INFINITY) == (1, 0)
    assert line_lattice_data(L0, LINE_ZERO) == (1, 0)
    assert line_lattice_data(Lh, LINE_INFINITY) is None
    assert line_lattice_data(Lh, LINE_ZERO) is None
    # scaled line: generator of cusp 1 is u - w0 - u' scaled
    line1 = IsotropicLine.from_cusp(1, 1)
    M, h = line_lattice_data(L0, line1)
    assert M == 1 and h == 0


def test_line_lattice_data_brute_force():
    # scan multiples of the generator directly
    rng = random.Random(5)
    for half in (False, True):
        coset = LatticeCoset.standard(half_shift=half)
        for _ in range(20):
            line = IsotropicLine.from_cusp(rng.randint(-6, 6), rng.randint(1, 6))
            data = line_lattice_data(coset, line)
            hits = [
                Fraction(num, 12)
                for num in range(-12 * 4, 12 * 4 + 1)
                if coset.contains(Fraction(num, 12) * line.generator)
            ]
            if data is None:
                assert hits == []
                continue
            M, h = data
            assert 0 <= h < M
            for t in hits:
                assert (t - h) % M == 0
            # conversely the progression lands in the coset
            for j in range(-3, 4):
                assert coset.contains((h + j * M) * line.generator)


small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=6)
pos_fracs = st.fractions(min_value=Fraction(1, 6), max_value=4, max_denominator=6)


@settings(max_examples=150, deadline=None)
@given(o1=small_fracs, s1=pos_fracs, o2=small_fracs, s2=pos_fracs)
def test_progression_intersection_membership(o1, s1, o2, s2):
    from spectacle.quad_space import (
        _progression_contains,
        _progression_intersect,
        _progression_normalize,
        _progression_range,
    )

    p1 = _progression_normalize(o1, s1)
    p2 = _progression_normalize(o2, s2)
    meet = _progression_intersect(p1, p2)
    lo, hi = Fraction(-30), Fraction(30)
    # points of p1 lie in the meet exactly when they lie in p2, and the meet
    # is contained in both
    for t in _progression_range(p1, lo, hi):
        both = _progression_contains(p2, t)
        assert _progression_contains(meet, t) == both, t
    if meet is not None:
        for t in _progression_range(meet, lo, hi):
            assert _progression_contains(p1, t) and _progression_contains(p2, t)


def test_line_lattice_data_fractional_width():
    # a lattice containing half of a primitive isotropic vector:
    # basis ((u + u')/2 + w0/2, 2u, w0) is even and meets the line in (1/2)Z
    v = VecV(Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2))
    coset = LatticeCoset((v, 2 * U_VEC, W0_VEC), VecV(0, 0, 0))
    line = IsotropicLine.from_cusp(1, -1)
    assert line_lattice_data(coset, line) == (Fraction(1, 2), 0)
    for num in range(-8, 9):
        t = Fraction(num, 4)
        assert coset.contains(t * line.generator) == (t % Fraction(1, 2) == 0)


def test_enumerate_coset_examples():
    L0 = LatticeCoset.standard()
    vs = sorted(
        enumerate_coset(L0, CosetConstraint(q_value=Fraction(1), u_positive=True)),
        key=lambda v: (v.a, v.b, v.c),
    )
    # divisor pairs of a*c = 1: exactly u - u' and its negative
    assert vs == [VecV(-1, 0, -1), VecV(1, 0, 1)]
    Lh = LatticeCoset.standard(half_shift=True)
    vs2 = set(enumerate_coset(Lh, CosetConstraint(q_value=Fraction(1, 4), u_zero=True)))
    assert vs2 == {VecV(0, Fraction(1, 2), 0), VecV(0, Fraction(-1, 2), 0)}
    assert list(enumerate_coset(L0, CosetConstraint(q_value=Fraction(-3), u_positive=True))) == []


def test_enumerate_coset_box_matches_filter():
    L0 = LatticeCoset.standard()
    got = set(enumerate_coset(L0, CosetConstraint(q_value=Fraction(4), box=(3, 3, 3))))
    brute = {
        VecV(a, b, c)
        for a in range(-3, 4)
        for b in range(-3, 4)
        for c in range(-3, 4)
        if b * b + a * c == 4
    }
    assert got == brute


def test_enumerate_coset_refuses_unbounded():
    L0 = LatticeCoset.standard()
    with pytest.raises(UnboundedEnumerationError, match="bound"):
        list(enumerate_coset(L0, CosetConstraint(q_value=Fraction(4))))


def test_lattice_coset_validates_evenness():
    with pytest.raises(ValueError, match="even"):
        LatticeCoset((Fraction(1, 2) * W0_VEC, U_VEC, UPRIME_VEC), VecV(0, 0, 0))
