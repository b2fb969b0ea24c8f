"""Family constructions: golden coefficients, symmetry, exact identities,
Chebyshev reduction, |P(iz)|^2 expansion, serialization."""

import json
import math
import random
from fractions import Fraction

import pytest
from mpmath import mp

from circlezero.enclosure import ComplexEnclosure, RealEnclosure, lambda_k
from circlezero.errors import DomainError
from circlezero.families import (
    ZetaCoefficient,
    abs_square_coeffs,
    build_family,
    build_P,
    build_Q,
    build_R,
    build_S,
    build_W,
    build_Y,
    chebyshev_form,
    chebyshev_reduce,
    s_at_one,
    w_combination_scalar,
    y_coeff_sum,
)

F = Fraction


def test_zeta_coefficient_ring():
    a = ZetaCoefficient(F(1, 2), F(3), F(0))
    b = ZetaCoefficient(F(2), F(-1), F(0))
    assert (a + b).a == F(5, 2)
    prod = a * b
    assert prod.a == 1 and prod.b == F(11, 2) and prod.c == -3
    lam2 = ZetaCoefficient(F(0), F(0), F(1))
    with pytest.raises(DomainError):
        _ = lam2 * ZetaCoefficient.lam()  # would be lam^3


def test_S_golden():
    assert [c.a for c in build_S(1).coeffs] == [-1, -1]
    assert [c.a for c in build_S(2).coeffs] == [5, 6, 5]
    # all coefficients share sign (-1)^k
    for k in range(1, 20):
        sign = -1 if k % 2 else 1
        assert all(sign * c.a > 0 for c in build_S(k).coeffs)


def test_P2_matches_zeta3_polynomial():
    # -90 * p_2(z) reproduces z^4 + 5 z^2 + 1 - (90 zeta3/pi^3)(z^3 + z)
    p2 = build_P(2)
    assert p2.pi_power == 3
    assert [p2.coeffs[j].a * -90 for j in (0, 2, 4)] == [1, 5, 1]
    assert p2.coeffs[1] == ZetaCoefficient.lam(1)
    assert p2.coeffs[3] == ZetaCoefficient.lam(1)
    assert p2.coeffs[2 * 2 - 1].triple() == ["0/1", "1/1", "0/1"]


def test_P_self_inversive_random_points():
    # z^2k P_k(1/z) = (-1)^k P_k(z) at random unit-circle points
    k = 3
    p = build_P(k)
    bits = 128
    rng = random.Random(7)
    for _ in range(20):
        theta = F(rng.randrange(1, 997), 997)
        pi = RealEnclosure.pi(bits)
        from circlezero.enclosure import ball_cos_sin
        c, s = ball_cos_sin(pi * theta * 2)
        z = ComplexEnclosure(c, s)
        zinv = ComplexEnclosure(c, -s)  # 1/z = conj(z) on the circle
        lhs = z.pow_int(2 * k) * p.eval_ball(zinv, bits)
        rhs = p.eval_ball(z, bits) * p.epsilon
        assert (lhs - rhs).contains_zero()


def test_Q2_golden():
    q2 = build_Q(2)
    assert q2.coeffs[2].a == F(-1, 2)
    assert q2.coeffs[1].b == 7 and q2.coeffs[3].b == 7
    # z^1 coefficient is (-1)^k (2^(2k-1) - 1) lam for general k
    for k in (2, 3, 7):
        q = build_Q(k)
        want = F((-1) ** k * ((1 << (2 * k - 1)) - 1))
        assert q.coeffs[1].b == want


def test_W2_golden():
    w2 = build_W(2)
    r0 = w2.coeffs[0].a
    assert [c.a / r0 for c in w2.coeffs[::2]] == [1, F(-10, 7), 1]
    assert all(c.is_rational() for c in w2.coeffs)
    assert w_combination_scalar(2) == 2


def test_Y_golden():
    assert [c.a for c in build_Y(2).coeffs] == [0, F(1, 16), 0]
    assert [c.a for c in build_Y(3).coeffs] == [0, F(-1, 192), F(-1, 192), 0]
    assert build_Y(2).pi_power == 4


def test_Y_symmetrization_consistency():
    # pi/2^2k (Q_k(i sqrt(z)) + Q_k(-i sqrt(z))) equals the closed form,
    # checked at random positive rational z in enclosure arithmetic
    k = 4
    bits = 160
    q = build_Q(k)
    y = build_Y(k)
    rng = random.Random(11)
    pi = RealEnclosure.pi(bits)
    for _ in range(20):
        z = F(rng.randrange(1, 400), rng.randrange(1, 400))
        sq = RealEnclosure.exact(z, bits).sqrt()
        zi = ComplexEnclosure(RealEnclosure.exact(0, bits), sq)
        vals = q.eval_ball(zi, bits) + q.eval_ball(-zi, bits)
        # normalized: Q carries pi^(2k-1); Y carries pi^(2k); the pi/2^2k
        # prefactor closes the gap
        lhs = vals * F(1, 1 << (2 * k))
        rhs = ComplexEnclosure.from_real(y.eval_ball(ComplexEnclosure.exact(z, 0, bits), bits).re)
        assert (lhs - rhs).contains_zero()


def test_R_conventions():
    r1 = build_R(1)
    assert [c.a for c in r1.coeffs[::2]] == [F(-1, 720), F(1, 144), F(-1, 720)]
    assert r1.self_inversive_ok()
    printed = build_R(2, convention="printed")
    assert printed.coeffs[0].a == F(1, 30240)
    assert printed.degree == 2
    assert [c.a for c in printed.coeffs] == [F(1, 30240), 0, F(-1, 8640)]
    with pytest.raises(DomainError):
        build_R(1, convention="nonsense")


def test_self_inversive_symmetry_all_families():
    for k in range(2, 61, 7):
        for fam in "RPQYWS":
            poly = build_family(fam, k)
            assert poly.self_inversive_ok(), (fam, k)
            want_eps = (-1) ** k if fam in "PQW" else 1
            assert poly.epsilon == want_eps, (fam, k)


def test_combination_vs_closed_form_exact():
    for k in range(2, 61, 6):
        build_Q(k)  # raises on mismatch
        assert w_combination_scalar(k) == 2


def test_y_coeff_sum_identity():
    for k in range(2, 51):
        lhs, rhs = y_coeff_sum(k)
        assert lhs == rhs, k


def test_s_at_one_identity():
    for k in range(1, 51):
        lhs, rhs = s_at_one(k)
        assert lhs == rhs, k
    assert s_at_one(2) == (16, 16)


def test_origin_structure():
    for k in (2, 5, 10):
        assert build_Q(k).origin_multiplicity == 1
        assert build_Y(k).origin_multiplicity == 1
        assert build_P(k).origin_multiplicity == 0
        assert build_W(k).origin_multiplicity == 0
        assert build_S(k).origin_multiplicity == 0
    assert build_Y(2).strip_origin().degree == 0  # degenerate constant


def test_chebyshev_reduce_golden():
    cf = chebyshev_reduce(2)
    assert [c.a for c in cf.coeffs[::2]] == [F(-1, 90), F(-1, 18), F(-1, 90)]
    assert cf.coeffs[1].b == 1 and cf.coeffs[3].b == 1
    # 2 P*_k(1) = (1 + (-1)^k) P_k(1): for odd k both sides vanish exactly
    assert chebyshev_reduce(3).eval_at_pm1(1).is_zero()
    assert chebyshev_reduce(3).eval_at_pm1(-1).is_zero()
    assert not chebyshev_reduce(2).eval_at_pm1(1).is_zero()


def test_chebyshev_identity_at_angle():
    # (z^2k + (-1)^k) P_k(z) = 2 z^2k P*_k(u) at z = e^(i theta), theta = 0.7
    from circlezero.enclosure import ball_cos_sin
    for k in (2, 5):
        bits = 160
        p = build_P(k)
        cf = chebyshev_reduce(k)
        pi = RealEnclosure.pi(bits)
        theta = RealEnclosure.exact(F(7, 10), bits)
        c, s = ball_cos_sin(theta)
        z = ComplexEnclosure(c, s)
        lhs = (z.pow_int(2 * k) + (-1) ** k) * p.eval_ball(z, bits)
        ustar = cf.eval_ball(c, bits)
        rhs = z.pow_int(2 * k) * ComplexEnclosure.from_real(ustar + ustar)
        assert (lhs - rhs).contains_zero(), k


def test_chebyshev_round_trip_random_circle_points():
    from circlezero.enclosure import ball_cos_sin
    rng = random.Random(42)
    for k in (2, 5, 10, 25):
        p = build_P(k)
        cf = chebyshev_reduce(k)
        bits = 160
        pi = RealEnclosure.pi(bits)
        for _ in range(50 if k == 2 else 12):
            r = F(rng.randrange(1, 1999), 1999)
            c, s = ball_cos_sin(pi * r)
            z = ComplexEnclosure(c, s)
            lhs = (z.pow_int(2 * k) + (-1) ** k) * p.eval_ball(z, bits)
            ustar = cf.eval_ball(c, bits)
            rhs = z.pow_int(2 * k) * ComplexEnclosure.from_real(ustar + ustar)
            assert (lhs - rhs).contains_zero(), (k, r)


def test_chebyshev_power_basis_round_trip():
    # T-basis -> power basis conversion agrees with direct evaluation
    cf = chebyshev_reduce(2)
    power = cf.to_power_basis()
    # P*_2(u) = sum over T: compare at u = 1/3 exactly in Q[lam]
    u = F(1, 3)
    acc = ZetaCoefficient()
    for j, c in enumerate(power):
        acc = acc + c * u ** j
    # Clenshaw with exact rationals via eval_at: emulate with balls
    bits = 160
    ub = RealEnclosure.exact(u, bits)
    direct = cf.eval_ball(ub, bits)
    lam = lambda_k(2, bits)
    assert (acc.eval(lam) - direct).contains_zero()


def test_abs_square_structure():
    for k in (2, 3):
        A = abs_square_coeffs(k)
        assert len(A) == 4 * k + 1
        assert A[0].a == A[4 * k].a and A[0].is_rational()
        assert all(A[j].is_zero() for j in range(1, 4 * k, 2))
        # palindromic
        assert all((A[j] - A[4 * k - j]).is_zero() for j in range(4 * k + 1))
    A = abs_square_coeffs(2)
    assert A[0].a == F(1, 8100)
    assert (A[2].a, A[2].c) == (F(-1, 810), 1)
    assert (A[4].a, A[4].c) == (F(1, 300), -2)


def test_abs_square_numeric_consistency():
    # sum A_j z^j = |P_k(iz)|^2 at z = 0.37, k = 3 (real z)
    k, bits = 3, 192
    z = F(37, 100)
    A = abs_square_coeffs(k)
    lam = lambda_k(k, bits)
    acc = RealEnclosure.exact(0, bits)
    for j in reversed(range(len(A))):
        acc = acc * z + A[j].eval(lam)
    p = build_P(k)
    iz = ComplexEnclosure(RealEnclosure.exact(0, bits), RealEnclosure.exact(z, bits))
    val = p.eval_ball(iz, bits)
    # normalizations match: |p(iz)|^2 is pi^(4k-2)-normalized like A
    assert (val.abs2() - acc).contains_zero()


def test_serialization_deterministic():
    doc1 = json.dumps(build_Q(5).to_doc(), sort_keys=True)
    doc2 = json.dumps(build_Q(5).to_doc(), sort_keys=True)
    assert doc1 == doc2
    doc = build_S(2).to_doc()
    assert doc["coeffs"] == [["5/1", "0/1", "0/1"], ["6/1", "0/1", "0/1"], ["5/1", "0/1", "0/1"]]
    assert doc["pi_power"] == 0 and doc["epsilon"] == 1


def test_family_domain_errors():
    with pytest.raises(DomainError):
        build_P(1)
    with pytest.raises(DomainError):
        build_family("Z", 3)
    with pytest.raises(DomainError):
        build_S(0)


def test_chebyshev_endpoint_identity_even_k():
    # 2 P*_k(1) = (1 + (-1)^k) P_k(1) checked for even k in enclosure arithmetic
    bits = 160
    k = 4
    cf = chebyshev_reduce(k)
    p = build_P(k)
    lam = lambda_k(k, bits)
    lhs = cf.eval_at_pm1(1).eval(lam) * 2
    rhs = p.eval_ball(ComplexEnclosure.exact(1, 0, bits), bits).re * 2
    assert (lhs - rhs).contains_zero()
