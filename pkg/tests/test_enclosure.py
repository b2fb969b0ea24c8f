"""Ball arithmetic: enclosure soundness, zeta providers, function enclosures."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from circlezero.enclosure import (
    ComplexEnclosure,
    PrecisionConfig,
    RealEnclosure,
    ball_acos,
    ball_cos,
    ball_cos_sin,
    ball_exp,
    ball_log,
    ball_sech,
    ball_sin,
    exp_complex,
    lambda_k,
    zeta_int,
    zeta_odd,
)
from circlezero.errors import DomainError


def in_ball(value_mpf, ball: RealEnclosure) -> bool:
    return ball.lower <= value_mpf <= ball.upper


def test_pi_radius_contract():
    for bits in (64, 128, 256):
        pi = RealEnclosure.pi(bits)
        assert pi.radius <= mp.mpf(2) ** (-bits + 4) * pi.midpoint
        with mp.workprec(bits + 64):
            assert in_ball(mp.pi, pi)


def test_sin_of_pi_encloses_zero():
    assert ball_sin(RealEnclosure.pi(128)).contains_zero()


def test_cos_of_pi_encloses_minus_one():
    assert ball_cos(RealEnclosure.pi(128)).contains(Fraction(-1))


def test_exp_zero_is_one():
    e = ball_exp(RealEnclosure.exact(0, 128))
    assert e.contains(Fraction(1))
    assert float(e.radius) < 1e-35


def test_zeta3_reference_digits():
    z3 = zeta_odd(3, 128)
    with mp.workprec(256):
        ref = mp.zeta(3)
        assert in_ball(ref, z3)
    assert float(z3.radius) <= 2.0 ** (-120)


def test_zeta5_reference():
    z5 = zeta_odd(5, 128)
    with mp.workprec(256):
        assert in_ball(mp.zeta(5), z5)


def test_zeta_odd_high_s_near_one():
    # zeta(s) - 1 < 2 * 2^(1-s) for s >= 11
    for s in (11, 21, 41):
        z = zeta_odd(s, 96)
        assert (z - 1).lt(Fraction(2, 2 ** (s - 1)))


def test_zeta_nested_precisions():
    z64 = zeta_int(3, 64)
    z128 = zeta_int(3, 128)
    z256 = zeta_int(3, 256)
    assert z64.contains_ball(z128)
    assert z128.contains_ball(z256)


def test_zeta_euler_product_sandwich():
    # 1/(1 - 2^-n) < zeta(n) < 1/(1 - 2^(1-n)) for 3 <= n <= 64; the margin
    # shrinks like 3^-n, so the working precision grows with n
    for n in range(3, 65):
        z = zeta_int(n, 96 + 2 * n)
        assert z.gt(Fraction(2 ** n, 2 ** n - 1))
        assert z.lt(Fraction(2 ** (n - 1), 2 ** (n - 1) - 1))


def test_lambda_values_and_monotonicity():
    lam2 = lambda_k(2, 128)
    with mp.workprec(192):
        assert in_ball(mp.zeta(3) / mp.pi ** 3, lam2)
    lam3 = lambda_k(3, 128)
    with mp.workprec(192):
        assert in_ball(mp.zeta(5) / mp.pi ** 5, lam3)
    prev = lam2
    for k in range(3, 22):
        cur = lambda_k(k, 128)
        assert (prev - cur).sign() > 0  # strictly decreasing
        prev = cur
    assert lambda_k(21, 128).sign() > 0


def test_alpha_arccos_example():
    # arccos(0.3/(pi^2/3 - 2))/pi = 0.42...
    pi = RealEnclosure.pi(128)
    alpha = ball_acos(RealEnclosure.exact(Fraction(3, 10), 128) / (pi * pi * Fraction(1, 3) - 2)) / pi
    assert alpha.gt(Fraction(42, 100))
    assert alpha.lt(Fraction(43, 100))


def test_arithmetic_soundness_sampled():
    # 1000 random rational inputs: the 256-bit evaluation of a composed
    # expression lies inside its 64-bit enclosure
    rng = random.Random(20110606)
    for _ in range(1000):
        num = rng.randrange(-10 ** 6, 10 ** 6)
        den = rng.randrange(1, 10 ** 6)
        q = Fraction(num, den)
        vals = {}
        for bits in (64, 256):
            x = RealEnclosure.exact(q, bits)
            pi = RealEnclosure.pi(bits)
            expr = (x * pi - Fraction(1, 3)) / (x * x + 1) + pi
            vals[bits] = expr
        hi_mid = vals[256].midpoint
        assert vals[64].lower <= hi_mid <= vals[64].upper


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=-4, max_value=4))
def test_trig_exp_soundness(q):
    coarse_c, coarse_s = ball_cos_sin(RealEnclosure.exact(q, 64))
    fine_c, fine_s = ball_cos_sin(RealEnclosure.exact(q, 192))
    assert coarse_c.lower <= fine_c.midpoint <= coarse_c.upper
    assert coarse_s.lower <= fine_s.midpoint <= coarse_s.upper
    coarse_e = ball_exp(RealEnclosure.exact(q, 64))
    fine_e = ball_exp(RealEnclosure.exact(q, 192))
    assert coarse_e.lower <= fine_e.midpoint <= coarse_e.upper


def test_division_by_zero_ball_rejected():
    x = RealEnclosure.exact(1, 128)
    zero_ish = RealEnclosure.from_endpoints(
        RealEnclosure.exact(Fraction(-1, 10), 128).mid,
        RealEnclosure.exact(Fraction(1, 10), 128).mid, 128)
    with pytest.raises(ZeroDivisionError):
        x / zero_ish


def test_sqr_nonnegative():
    x = RealEnclosure.from_endpoints(
        RealEnclosure.exact(Fraction(-1, 4), 128).mid,
        RealEnclosure.exact(Fraction(1, 8), 128).mid, 128)
    s = x.sqr()
    assert s.lower >= 0
    assert s.contains(Fraction(1, 64))


def test_complex_exp_matches_mpmath():
    z = ComplexEnclosure.exact(Fraction(3, 10), Fraction(7, 10), 128)
    w = exp_complex(z)
    with mp.workprec(192):
        ref = mp.exp(mp.mpc(mp.mpf(3) / 10, mp.mpf(7) / 10))
        assert in_ball(ref.real, w.re)
        assert in_ball(ref.imag, w.im)


def test_complex_division_round_trip():
    z = ComplexEnclosure.exact(Fraction(3, 7), Fraction(-2, 5), 128)
    w = ComplexEnclosure.exact(Fraction(1, 3), Fraction(9, 4), 128)
    back = (z / w) * w
    assert back.re.contains(Fraction(3, 7))
    assert back.im.contains(Fraction(-2, 5))


def test_sech_value():
    s = ball_sech(RealEnclosure.exact(0, 128))
    assert s.contains(Fraction(1))
    with mp.workprec(192):
        assert in_ball(mp.sech(mp.mpf(2)), ball_sech(RealEnclosure.exact(2, 128)))


def test_log_domain():
    with pytest.raises(DomainError):
        ball_log(RealEnclosure.exact(0, 128))
    lg = ball_log(ball_exp(RealEnclosure.exact(1, 128)))
    assert lg.contains(Fraction(1))


def test_precision_config_floor():
    with pytest.raises(DomainError):
        PrecisionConfig(bits=32)
    assert PrecisionConfig().bits == 128


def test_zeta_even_rational_agrees_with_summation():
    # zeta_even_rational(n) pi^2n overlaps the summation enclosure, n <= 20
    from circlezero.exact import zeta_even_rational
    for n in range(1, 21):
        direct = zeta_int(2 * n, 128)
        scaled = RealEnclosure.pi(160).pow_int(2 * n) * zeta_even_rational(n)
        assert (direct - scaled).contains_zero(), n
