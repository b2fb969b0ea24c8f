"""Verification engines: criteria, oscillation, sign counting, root finding."""

import math
from fractions import Fraction

import pytest
from mpmath import mp

from circlezero.enclosure import RealEnclosure
from circlezero.errors import DomainError, NumericError
from circlezero.families import (
    FamilyPoly,
    ZetaCoefficient,
    build_family,
    build_P,
    build_Q,
    build_R,
    build_S,
    build_W,
    build_Y,
    chebyshev_form,
    chebyshev_reduce,
)
from circlezero.verify import (
    CERTIFIED_FALSE,
    CERTIFIED_TRUE,
    abs_square_poly,
    alternating_verify,
    build_qk_samples,
    build_wk_samples,
    find_roots,
    lakatos_check,
    observation_identity,
    oscillation_verify_Q,
    oscillation_verify_W,
    schinzel_check,
    schinzel_constant_S,
    schinzel_constant_Y,
    sign_change_count,
    simplicity_check,
    verify_by_roots,
    verify_by_sign_count,
    verify_family,
    _w_eval,
)

F = Fraction


# -- criteria ---------------------------------------------------------------

def test_lakatos_S2():
    rep = lakatos_check(build_S(2))
    assert rep.holds == CERTIFIED_TRUE and rep.exact
    # |A_top| - sum |A_j - A_top| = 5 - (0 + 1 + 0) = 4
    assert rep.margin.contains(F(4))


def test_lakatos_abs_square_certified_false():
    # Lakatos margin for |P_k(iz)|^2 is |A_4k| (1 - 4k(k-1)) < 0
    for k in (2, 3):
        rep = lakatos_check(abs_square_poly(k))
        assert rep.holds == CERTIFIED_FALSE
    rep = lakatos_check(abs_square_poly(2))
    assert rep.margin.contains(F(1, 8100) * (1 - 8))


def test_lakatos_constant_trivial():
    rep = lakatos_check(build_Y(2).strip_origin())
    assert rep.holds == CERTIFIED_TRUE


def test_lakatos_non_reciprocal_rejected():
    poly = FamilyPoly("S", 1, 0, (ZetaCoefficient.rational(1),
                                  ZetaCoefficient.rational(2)), +1)
    with pytest.raises(DomainError):
        lakatos_check(poly)


def test_schinzel_S_paper_constant():
    for k in (1, 3, 25, 50):
        rep = schinzel_check(build_S(k), schinzel_constant_S(k))
        assert rep.holds == CERTIFIED_TRUE, k
        assert rep.margin.sign() > 0


def test_schinzel_Y_paper_constant():
    for k in (3, 5, 25, 50):
        rep = schinzel_check(build_Y(k), schinzel_constant_Y(k))
        assert rep.holds == CERTIFIED_TRUE, k


def test_schinzel_c_zero_certified_false():
    rep = schinzel_check(build_S(3), F(0))
    assert rep.holds == CERTIFIED_FALSE and rep.exact


def test_observation_identity_examples():
    for k in (2, 3, 10, 25):
        exact_ok, residual = observation_identity(k)
        assert exact_ok, k
        assert residual.contains_zero()
        assert float(residual.radius) < 1e-30


# -- sample grids and oscillation --------------------------------------------

def test_wk_samples_k12():
    pts = build_wk_samples(12)
    assert len(pts) == 25  # 2k + 1
    assert all(pts[i] < pts[i + 1] for i in range(len(pts) - 1))
    assert pts[12] == 0
    # j0 = floor(11 alpha) + 1 = 5: four integer points before the halves
    assert pts[13:17] == [F(1, 11), F(2, 11), F(3, 11), F(4, 11)]
    assert pts[17] == F(9, 22)  # (j0 - 1/2)/(k-1)
    assert -pts[0] == pts[-1] < 1


def test_wk_samples_domain():
    build_wk_samples(11)
    with pytest.raises(DomainError):
        build_wk_samples(10)


def test_qk_samples():
    pts = build_qk_samples(12)
    # k = 2 j0 makes the two excluded points coincide: 2k points retained
    assert len(pts) in (23, 24)
    assert all(pts[i] < pts[i + 1] for i in range(len(pts) - 1))
    with pytest.raises(DomainError):
        build_qk_samples(5)


def test_w_eval_examples():
    w12 = _w_eval(12)
    assert w12(F(0), 128).gt(F(3))          # w_k(0) > 3
    at_pi = w12(F(1), 128)                   # sign (-1)^k, |.| > 19
    assert at_pi.gt(F(19))
    w13 = _w_eval(13)
    assert (-w13(F(1), 128)).gt(F(19))


def test_alternating_verify_w12():
    pts = build_wk_samples(12)
    rep = alternating_verify(_w_eval(12), pts, F(3, 10))
    assert rep.order_achieved >= 24
    assert all(s != 0 for s in rep.signs)
    assert rep.min_abs.gt(F(3, 10))


def test_alternating_rejects_unsorted():
    with pytest.raises(DomainError):
        alternating_verify(_w_eval(12), [F(1, 2), F(1, 4)], F(1, 10))


def test_oscillation_W():
    for k in (11, 12, 35):
        rep = oscillation_verify_W(k)
        assert rep.certified and rep.zeros_on_circle == 2 * k, k
        assert rep.method == "oscillation"
    # the exact closed-form limit bound: -3 + (2(1-2^-2k)/(1-2^(3-2k)) - 1) pi^2/3 < 0.3
    k = 12
    pi = RealEnclosure.pi(128)
    ratio = F(2) * (1 - F(2) ** (-2 * k)) / (1 - F(2) ** (3 - 2 * k)) - 1
    closed = pi * pi * F(1, 3) * ratio - 3
    assert closed.lt(F(3, 10))


def test_oscillation_Q():
    for k in (7, 8, 35):
        rep = oscillation_verify_Q(k)
        assert rep.certified and rep.zeros_on_circle == 2 * k - 2, k


def test_oscillation_routing_small_k():
    rep = oscillation_verify_Q(2)
    assert rep.method == "sign-count" and rep.certified
    assert rep.detail.get("routed_from") == "oscillation"
    rep = oscillation_verify_W(7)
    assert rep.method == "sign-count" and rep.certified


def test_oscillation_uniform_bounds_recorded():
    rep = oscillation_verify_W(12)
    assert "bound_mid" in rep.detail["oscillation"]


# -- sign counting -----------------------------------------------------------

def test_sign_count_P2_target4():
    rep = sign_change_count(chebyshev_reduce(2), 4)
    assert rep.certified and rep.detail["changes"] == 4


def test_sign_count_constant_trivial():
    cform = chebyshev_form(build_Y(2))
    rep = sign_change_count(cform, 0)
    assert rep.certified and rep.zeros_on_circle == 0


def test_sign_count_P100_target200():
    rep = verify_by_sign_count(build_P(100))
    assert rep.certified and rep.zeros_on_circle == 200


def test_sign_count_all_families_small():
    for fam in "PQYWS":
        for k in (2, 3, 9):
            rep = verify_by_sign_count(build_family(fam, k))
            assert rep.certified, (fam, k)
            stripped = build_family(fam, k).strip_origin()
            assert rep.zeros_on_circle == stripped.degree


def test_sign_count_generic_path_odd_degree():
    # odd-degree reductions (S_k, odd k) take the direct p* counter
    rep = verify_by_sign_count(build_S(31))
    assert rep.certified and not rep.detail.get("factored", False)


def test_sign_count_R_not_certified():
    # the symmetric R family keeps 4 zeros off the circle; counting stalls
    rep = verify_by_sign_count(build_R(5), bits=96)
    assert not rep.certified
    assert rep.zeros_on_circle < rep.degree_nontrivial


# -- roots -------------------------------------------------------------------

def test_find_roots_S2_quadratic_oracle():
    # 5 z^2 + 6 z + 5: roots (-3 +- 4i)/5, modulus 1, distance 8/5
    roots = find_roots(build_S(2))
    assert len(roots) == 2
    for r in roots:
        assert r.re.contains(F(-3, 5))
        assert abs(r.im.midpoint) - mp.mpf(4) / 5 < 1e-30
        assert (r.abs() - 1).abs().lt(F(1, 10 ** 30))
    sep = simplicity_check(roots)
    assert sep.contains(F(8, 5))


def test_find_roots_Q2():
    roots = find_roots(build_Q(2))
    assert len(roots) == 2
    fourth = [r for r in roots if r.im.sign() < 0][0]
    assert abs(float(fourth.re.midpoint) - 0.92) < 0.01
    assert abs(float(fourth.im.midpoint) + 0.39) < 0.01


def test_find_roots_degree_one():
    roots = find_roots(build_S(1))
    assert len(roots) == 1
    assert roots[0].re.contains(F(-1)) and roots[0].im.contains(F(0))


def test_find_roots_repeated_root_fails():
    dbl = FamilyPoly("S", 1, 0, (ZetaCoefficient.rational(1),
                                 ZetaCoefficient.rational(-2),
                                 ZetaCoefficient.rational(1)), +1)  # (z-1)^2
    with pytest.raises(NumericError):
        roots = find_roots(dbl)
        sep = simplicity_check(roots)
        assert sep is None or sep.sign() == 0  # overlapping disks if no raise


def test_verify_by_roots_W2():
    rep = verify_by_roots(build_W(2))
    assert rep.certified
    assert float(rep.max_mod_dev.upper) < 1e-25
    assert rep.min_root_sep.gt(F(1, 10))
    assert rep.detail["n_roots"] == 4


def test_root_count_conservation_R():
    poly = build_R(5)
    roots = find_roots(poly)
    on_circle = sum(1 for r in roots if (r.abs() - 1).abs().lt(F(1, 10 ** 20)))
    off_circle = sum(1 for r in roots if (r.abs() - 1).abs().gt(F(1, 10 ** 20)))
    assert on_circle + off_circle + poly.origin_multiplicity == poly.degree
    assert off_circle == 4


def test_verify_by_roots_refutes_R():
    rep = verify_by_roots(build_R(5))
    assert not rep.certified
    assert rep.verdict == CERTIFIED_FALSE


# -- dispatch ----------------------------------------------------------------

def test_verify_family_all_methods_agree():
    for fam, k in (("S", 6), ("Y", 6), ("W", 12), ("Q", 8), ("P", 6)):
        reports = verify_family(fam, k, "all")
        certified = [r for r in reports if r.certified]
        assert certified, (fam, k)
        counts = {r.zeros_on_circle for r in certified}
        assert len(counts) == 1, (fam, k, counts)
        by_roots = [r for r in reports if r.method == "roots"]
        assert by_roots and by_roots[0].certified


def test_verify_family_domain_checks():
    with pytest.raises(DomainError):
        verify_family("P", 1, "sign-count")
    with pytest.raises(DomainError):
        verify_family("S", 3, "oscillation")
    with pytest.raises(DomainError):
        verify_family("S", 3, "bogus")


def test_oscillation_sign_tables_sampled():
    # w_k: strictly alternating signs over the whole mirrored grid; q_k:
    # strictly alternating except one documented repeated-sign pair when the
    # two excluded half-integer points coincide (k = 2 j0)
    for k in (12, 17, 23, 29, 34, 38, 41, 47, 53, 60):
        w_rep = alternating_verify(_w_eval(k), build_wk_samples(k), F(3, 10))
        assert all(s != 0 for s in w_rep.signs), k
        assert w_rep.order_achieved == len(w_rep.signs) - 1 == 2 * k, k

        from circlezero.verify import _q_eval
        pts = build_qk_samples(k)
        q_rep = alternating_verify(_q_eval(k), pts, F(3, 100))
        assert all(s != 0 for s in q_rep.signs), k
        repeats = [i for i in range(len(q_rep.signs) - 1)
                   if q_rep.signs[i] == q_rep.signs[i + 1]]
        assert q_rep.order_achieved == 2 * k - 2, k
        if len(pts) == 2 * k - 1:
            assert repeats == [], k
        else:
            assert len(repeats) == 1, k
