"""Unit-circle zero certification engines.

Three independent methods:

1. Coefficient criteria (Lakatos / Schinzel with d = 1): a margin enclosure
   |A_top| - sum |c A_j - A_top| certified positive puts every zero of a
   reciprocal/self-inversive polynomial on the unit circle.
2. Oscillation: for W_k and Q_k, a trigonometric comparison function is
   certified alternating on an explicit sample grid while the exact
   coefficient-difference sum bounds the approximation error uniformly below
   the oscillation distance.
3. Chebyshev sign counting: u = (z + 1/z)/2 maps circle zeros to real zeros
   in [-1, 1]; certified sign alternations of the T-basis reduction are
   counted on cos(j pi / M) grids in exact fixed-point arithmetic.

A complex root refiner (float Aberth sweep + high-precision polish + certified
residual radii) cross-validates every certification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from mpmath import libmp, mp

from .enclosure import (
    ComplexEnclosure,
    PrecisionConfig,
    RealEnclosure,
    ball_acos,
    ball_cos,
    ball_cos_sin,
    ball_sin,
    lambda_k,
)
from .errors import DomainError, NumericError, PrecisionError
from .families import (
    ChebyshevForm,
    FamilyPoly,
    ZERO_COEFF,
    ZetaCoefficient,
    abs_square_coeffs,
    build_family,
    build_Q,
    build_W,
    chebyshev_form,
    family_min_k,
)

CERTIFIED_TRUE = "certified-true"
CERTIFIED_FALSE = "certified-false"
INDETERMINATE = "indeterminate"


@dataclass
class CriteriaReport:
    family: str
    k: int
    criterion: str  # "lakatos" | "schinzel"
    c: RealEnclosure
    margin: RealEnclosure
    holds: str
    exact: bool = False

    def to_doc(self) -> dict:
        cm, cr = self.c.str_pair()
        mm, mr = self.margin.str_pair()
        return {"family": self.family, "k": self.k, "criterion": self.criterion,
                "c_mid": cm, "c_rad": cr, "margin_mid": mm, "margin_rad": mr,
                "holds": self.holds, "exact": self.exact}


@dataclass
class OscillationReport:
    k: int
    points: list[Fraction]          # angles as multiples of pi
    signs: list[int]                # certified signs, 0 where indeterminate
    min_abs: RealEnclosure | None
    order_achieved: int
    d: Fraction
    uniform_bound: RealEnclosure | None = None

    def to_doc(self) -> dict:
        doc = {"k": self.k, "points": [str(p) for p in self.points],
               "signs": self.signs, "order_achieved": self.order_achieved,
               "d": str(self.d)}
        if self.min_abs is not None:
            doc["min_abs_mid"], doc["min_abs_rad"] = self.min_abs.str_pair()
        if self.uniform_bound is not None:
            doc["bound_mid"], doc["bound_rad"] = self.uniform_bound.str_pair()
        return doc


@dataclass
class VerificationReport:
    family: str
    k: int
    method: str  # "criteria" | "oscillation" | "sign-count" | "roots"
    zeros_on_circle: int
    degree_nontrivial: int
    max_mod_dev: RealEnclosure | None
    min_root_sep: RealEnclosure | None
    certified: bool
    origin_zeros: int = 0
    detail: dict = field(default_factory=dict)
    verdict: str = ""

    def __post_init__(self):
        if not self.verdict:
            self.verdict = CERTIFIED_TRUE if self.certified else INDETERMINATE

    def to_doc(self) -> dict:
        doc = {"family": self.family, "k": self.k, "method": self.method,
               "zeros_on_circle": self.zeros_on_circle,
               "degree_nontrivial": self.degree_nontrivial,
               "origin_zeros": self.origin_zeros,
               "certified": self.certified, "verdict": self.verdict}
        for name, enc in (("max_mod_dev", self.max_mod_dev), ("min_root_sep", self.min_root_sep)):
            if enc is not None:
                doc[name + "_mid"], doc[name + "_rad"] = enc.str_pair()
            else:
                doc[name + "_mid"] = doc[name + "_rad"] = ""
        if self.detail:
            doc["detail"] = {k: v for k, v in self.detail.items()}
        return doc


# ---------------------------------------------------------------------------
# coefficient criteria
# ---------------------------------------------------------------------------

def _reciprocal_coeffs(poly: FamilyPoly) -> list[ZetaCoefficient]:
    p = poly.strip_origin()
    d = p.degree
    coeffs = list(p.coeffs[:d + 1])
    for j in range(d + 1):
        if coeffs[d - j] - coeffs[j] != ZERO_COEFF:
            raise DomainError(f"{poly.family}_{poly.k}: not reciprocal, criteria do not apply")
    return coeffs


def _margin_exact(coeffs: list[Fraction], c: Fraction) -> Fraction:
    top = coeffs[-1]
    return abs(top) - sum(abs(c * a - top) for a in coeffs)


def _margin_ball(poly: FamilyPoly, coeffs: list[ZetaCoefficient],
                 c: RealEnclosure, bits: int) -> RealEnclosure:
    lam = poly.lam_ball(bits) if not all(x.is_rational() for x in coeffs) else RealEnclosure.exact(0, bits)
    vals = [x.eval(lam) for x in coeffs]
    top = vals[-1]
    acc = RealEnclosure.exact(0, bits)
    for v in vals:
        acc = acc + (c * v - top).abs()
    return top.abs() - acc


def _criteria_verdict(margin: RealEnclosure) -> str:
    s = margin.sign()
    if s > 0:
        return CERTIFIED_TRUE
    if s < 0:
        return CERTIFIED_FALSE
    return INDETERMINATE


def lakatos_check(poly: FamilyPoly, bits: int = 128, max_retries: int = 4) -> CriteriaReport:
    """Lakatos condition: |A_top| >= sum |A_j - A_top| on a reciprocal polynomial."""
    coeffs = _reciprocal_coeffs(poly)
    one = RealEnclosure.exact(1, bits)
    if all(x.is_rational() for x in coeffs):
        margin = _margin_exact([x.a for x in coeffs], Fraction(1))
        enc = RealEnclosure.exact(margin, bits)
        return CriteriaReport(poly.family, poly.k, "lakatos", one, enc,
                              _criteria_verdict(enc), exact=True)
    b = bits
    for _ in range(max_retries + 1):
        margin = _margin_ball(poly, coeffs, RealEnclosure.exact(1, b), b)
        verdict = _criteria_verdict(margin)
        if verdict != INDETERMINATE:
            return CriteriaReport(poly.family, poly.k, "lakatos", one, margin, verdict)
        b *= 2
    return CriteriaReport(poly.family, poly.k, "lakatos", one, margin, INDETERMINATE)


def schinzel_check(poly: FamilyPoly, c, bits: int = 128, max_retries: int = 4) -> CriteriaReport:
    """Schinzel condition with d = 1: |A_top| >= sum |c A_j - A_top|.

    `c` may be a Fraction (exact path when the polynomial is rational) or a
    callable bits -> RealEnclosure for irrational constants.
    """
    coeffs = _reciprocal_coeffs(poly)
    if isinstance(c, (int, Fraction)) and all(x.is_rational() for x in coeffs):
        cq = Fraction(c)
        margin = _margin_exact([x.a for x in coeffs], cq)
        enc = RealEnclosure.exact(margin, bits)
        return CriteriaReport(poly.family, poly.k, "schinzel",
                              RealEnclosure.exact(cq, bits), enc,
                              _criteria_verdict(enc), exact=True)
    b = bits
    for _ in range(max_retries + 1):
        c_ball = c(b) if callable(c) else RealEnclosure.exact(Fraction(c), b)
        margin = _margin_ball(poly, coeffs, c_ball, b)
        verdict = _criteria_verdict(margin)
        if verdict != INDETERMINATE:
            return CriteriaReport(poly.family, poly.k, "schinzel", c_ball, margin, verdict)
        b *= 2
    return CriteriaReport(poly.family, poly.k, "schinzel", c_ball, margin, INDETERMINATE)


def schinzel_constant_S(k: int) -> Callable[[int], RealEnclosure]:
    """c = pi / (4 (1 + 3^(-1-2k))) for S_k."""
    scale = Fraction(3 ** (1 + 2 * k), 4 * (3 ** (1 + 2 * k) + 1))
    return lambda bits: RealEnclosure.pi(bits) * scale


def schinzel_constant_Y(k: int) -> Callable[[int], RealEnclosure]:
    """c = pi^2 (1 - 2^(2-2k)) / (8 (1 - 2^(3-2k))) for Y_k/z."""
    scale = (1 - Fraction(2) ** (2 - 2 * k)) / (8 * (1 - Fraction(2) ** (3 - 2 * k)))
    return lambda bits: RealEnclosure.pi(bits).pow_int(2) * scale


def abs_square_poly(k: int) -> FamilyPoly:
    """|P_k(iz)|^2 packaged as a (reciprocal) FamilyPoly over Q[lam^2]."""
    return FamilyPoly("P", k, 4 * k - 2, abs_square_coeffs(k), +1, note="|P_k(iz)|^2")


def observation_identity(k: int, bits: int = 256) -> tuple[bool, RealEnclosure]:
    """Check 4k(k-1)|A_4k| = sum_j |A_4k - A_j| for |P_k(iz)|^2.

    Certifies the sign of each difference with enclosures, then cancels the
    lam^2 parts exactly in Q[lam^2]; returns (exact_identity_holds, residual
    enclosure of lhs - rhs).
    """
    coeffs = abs_square_coeffs(k)
    top = coeffs[-1]
    assert top.is_rational() and top.a > 0
    lam = lambda_k(k, bits)
    total = ZERO_COEFF
    for cj in coeffs:
        diff = top - cj
        if diff == ZERO_COEFF:
            continue
        s = diff.eval(lam).sign()
        if s == 0:
            raise PrecisionError(f"observation sign indeterminate at k={k}")
        total = total + (diff if s > 0 else -diff)
    lhs = Fraction(4 * k * (k - 1)) * top.a
    exact_ok = (total.b == 0 and total.c == 0 and total.a == lhs)
    residual = (ZetaCoefficient.rational(lhs) - total).eval(lam)
    return exact_ok, residual


# ---------------------------------------------------------------------------
# oscillation method
# ---------------------------------------------------------------------------

def _alpha_j0(k: int, d_over: tuple[Fraction, str], bits: int = 128) -> int:
    """j0 = floor((k-1) alpha) + 1 with alpha certified from its arccos formula."""
    d, which = d_over
    b = bits
    for _ in range(6):
        pi = RealEnclosure.pi(b)
        if which == "w":
            denom = pi * pi * Fraction(1, 3) - 2
        else:
            denom = RealEnclosure.exact(2, b) - 16 / (pi * pi)
        alpha = ball_acos(RealEnclosure.exact(d, b) / denom) / pi
        x = alpha * (k - 1)
        lo, hi = x.lower, x.upper
        if int(mp.floor(lo)) == int(mp.floor(hi)):
            return int(mp.floor(lo)) + 1
        b *= 2
    raise PrecisionError(f"j0 indeterminate at k={k}")


def build_wk_samples(k: int) -> list[Fraction]:
    """The 2k+1 sample angles (as multiples of pi) for w_k, mirrored over 0."""
    if k <= 10:
        raise DomainError(f"w_k sample grid needs k > 10, got {k}")
    j0 = _alpha_j0(k, (Fraction(3, 10), "w"))
    eps = Fraction(1, 8 * k)
    pos = [Fraction(j, k - 1) for j in range(1, j0)]
    pos += [Fraction(2 * j - 1, 2 * (k - 1)) for j in range(j0, k - j0 + 1)]
    pos += [Fraction(j, k - 1) for j in range(k - j0, k - 1)]
    pos.append((k - 1 - eps) / (k - 1))
    return [-p for p in reversed(pos)] + [Fraction(0)] + pos


def build_qk_samples(k: int) -> list[Fraction]:
    """Sample angles for q_k: the mirrored grid minus the two positive
    half-integer boundary points (one point when they coincide)."""
    if k <= 5:
        raise DomainError(f"q_k sample grid needs k > 5, got {k}")
    j0 = _alpha_j0(k, (Fraction(3, 100), "q"))
    eps = Fraction(1, 8 * k)
    ints1 = [Fraction(j, k - 1) for j in range(1, j0)]
    halfs = [Fraction(2 * j - 1, 2 * (k - 1)) for j in range(j0, k - j0 + 1)]
    ints2 = [Fraction(j, k - 1) for j in range(k - j0, k - 1)]
    last = (k - 1 - eps) / (k - 1)
    neg = ints1 + halfs + ints2 + [last]
    drop = {halfs[0], halfs[-1]}
    pos = ints1 + [h for h in halfs if h not in drop] + ints2 + [last]
    return [-p for p in reversed(neg)] + [Fraction(0)] + pos


def _w_eval(k: int):
    rho = 2 / (1 - Fraction(2) ** (1 - 2 * k))

    def f(r: Fraction, bits: int) -> RealEnclosure:
        pi = RealEnclosure.pi(bits)
        if r == 0 or abs(r) == 1:
            # sin((k-3)theta)/sin(theta) -> (k-3) at 0, (k-3)(-1)^k at +-pi
            sgn = 1 if (r == 0 or k % 2 == 0) else -1
            base = RealEnclosure.exact(2, bits) + pi * pi * Fraction(1, 3) \
                + RealEnclosure.exact(rho * (k - 3), bits)
            return base * sgn
        theta = pi * r
        c_k = ball_cos(theta * k)
        c_k2 = ball_cos(theta * (k - 2))
        s_k3 = ball_sin(theta * (k - 3))
        s_1 = ball_sin(theta)
        return 2 * c_k + pi * pi * Fraction(1, 3) * c_k2 + rho * (s_k3 / s_1)

    return f


def _q_eval(k: int):
    rho = 8 * (1 - Fraction(2) ** (3 - 2 * k)) / (1 - Fraction(2) ** (2 - 2 * k))

    def f(r: Fraction, bits: int) -> RealEnclosure:
        pi = RealEnclosure.pi(bits)
        rho_ball = RealEnclosure.exact(rho, bits) / (pi * pi)
        if r == 0 or abs(r) == 1:
            sgn = 1 if (r == 0 or k % 2 == 0) else -1
            return (RealEnclosure.exact(2, bits) + rho_ball * (k - 3)) * sgn
        theta = pi * r
        c_k2 = ball_cos(theta * (k - 2))
        s_k1 = ball_sin(theta * (k - 1))
        s_k3 = ball_sin(theta * (k - 3))
        s_1 = ball_sin(theta)
        return 2 * c_k2 + (4 / pi) * s_k1 + rho_ball * (s_k3 / s_1)

    return f


def alternating_verify(f: Callable[[Fraction, int], RealEnclosure],
                       points: Sequence[Fraction], d: Fraction,
                       bits: int = 128, max_retries: int = 4) -> OscillationReport:
    """Certify signs and |f| > d at each sample angle; count alternations."""
    if any(points[i] >= points[i + 1] for i in range(len(points) - 1)):
        raise DomainError("sample points must be strictly increasing")
    signs: list[int] = []
    min_abs: RealEnclosure | None = None
    for r in points:
        b = bits
        sign = 0
        for _ in range(max_retries + 1):
            val = f(r, b)
            sign = val.sign()
            if sign != 0 and val.abs().gt(d):
                break
            if sign != 0 and val.abs().lt(d):
                sign = 0  # certified below the oscillation distance
                break
            b *= 2
        signs.append(sign)
        if sign != 0:
            a = val.abs()
            min_abs = a if min_abs is None or a.upper < min_abs.upper else min_abs
    certified = [s for s in signs if s != 0]
    order = sum(1 for i in range(len(certified) - 1) if certified[i] != certified[i + 1])
    k_guess = (len(points) - 1) // 2
    return OscillationReport(k_guess, list(points), signs, min_abs, order, d)


def _w_uniform_bound(k: int, bits: int) -> RealEnclosure:
    """2 |A_1/A_0 - pi^2/6| + sum_{j=2}^{k-2} |A_j/A_0 - 2/(1-2^(1-2k))|.

    A_j are the even coefficients of W_k(iz); the inner sum is exact rational.
    """
    w = build_W(k)
    ratios = []
    a0 = w.coeffs[0].a
    for j in range(k + 1):
        aj = w.coeffs[2 * j].a * (-1 if j % 2 else 1)
        ratios.append(aj / (a0))
    rho = 2 / (1 - Fraction(2) ** (1 - 2 * k))
    exact_sum = sum(abs(ratios[j] - rho) for j in range(2, k - 1))
    pi = RealEnclosure.pi(bits)
    term1 = (RealEnclosure.exact(ratios[1], bits) - pi * pi * Fraction(1, 6)).abs()
    return term1 + term1 + RealEnclosure.exact(exact_sum, bits)


def _q_uniform_bound(k: int, bits: int) -> RealEnclosure:
    """sum_{j=2}^{k-2} |A_j/A_1 - (8/pi^2) r| + 2 |(-1)^k zeta(2k-1)(2^(2k-1)-1)/A_1 - 2/pi|."""
    q = build_Q(k)
    a1 = -q.coeffs[2].a  # A_1 = (-1)^1 * coeff(z^2)
    ratios = {}
    for j in range(1, k):
        ratios[j] = (q.coeffs[2 * j].a * (-1 if j % 2 else 1)) / a1
    rq = 8 * (1 - Fraction(2) ** (3 - 2 * k)) / (1 - Fraction(2) ** (2 - 2 * k))
    pi = RealEnclosure.pi(bits)
    rho_ball = RealEnclosure.exact(rq, bits) / (pi * pi)
    acc = RealEnclosure.exact(0, bits)
    for j in range(2, k - 1):
        acc = acc + (RealEnclosure.exact(ratios[j], bits) - rho_ball).abs()
    # odd-term ratio: A_1 unnormalized is pi^(2k-1) * a1; zeta(2k-1) = lam pi^(2k-1)
    sign = -1 if k % 2 else 1
    lam = lambda_k(k, bits)
    tau = lam * Fraction(sign * ((1 << (2 * k - 1)) - 1)) / a1
    term = (tau - 2 / pi).abs()
    return acc + term + term


def oscillation_verify_W(k: int, bits: int = 128, config: PrecisionConfig | None = None) -> VerificationReport:
    """Certify all 2k zeros of W_k on the unit circle by the alternation of w_k."""
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    if config is not None:
        bits = max(bits, config.bits)
    if k <= 10:
        rep = verify_by_sign_count(build_W(k), bits)
        rep.detail["routed_from"] = "oscillation"
        return rep
    d = Fraction(3, 10)
    bound = _w_uniform_bound(k, bits)
    bound_ok = bound.lt(d)
    samples = build_wk_samples(k)
    retries = config.max_retries if config is not None else 4
    osc = alternating_verify(_w_eval(k), samples, d, bits, retries)
    osc.k = k
    osc.uniform_bound = bound
    certified = bool(bound_ok and osc.order_achieved >= 2 * k and all(s != 0 for s in osc.signs))
    return VerificationReport("W", k, "oscillation", 2 * k if certified else 0, 2 * k,
                              None, None, certified,
                              detail={"oscillation": osc.to_doc()})


def oscillation_verify_Q(k: int, bits: int = 128, config: PrecisionConfig | None = None) -> VerificationReport:
    """Certify the 2k-2 nontrivial zeros of Q_k on the unit circle."""
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    if config is not None:
        bits = max(bits, config.bits)
    if k <= 5:
        rep = verify_by_sign_count(build_Q(k), bits)
        rep.detail["routed_from"] = "oscillation"
        return rep
    d = Fraction(3, 100)
    bound = _q_uniform_bound(k, bits)
    bound_ok = bound.lt(d)
    samples = build_qk_samples(k)
    retries = config.max_retries if config is not None else 4
    osc = alternating_verify(_q_eval(k), samples, d, bits, retries)
    osc.k = k
    osc.uniform_bound = bound
    certified = bool(bound_ok and osc.order_achieved >= 2 * k - 2 and all(s != 0 for s in osc.signs))
    return VerificationReport("Q", k, "oscillation", 2 * k - 2 if certified else 0, 2 * k - 2,
                              None, None, certified, origin_zeros=1,
                              detail={"oscillation": osc.to_doc()})


# ---------------------------------------------------------------------------
# Chebyshev sign counting
# ---------------------------------------------------------------------------

def _fixed_from_ball(x: RealEnclosure, prec: int) -> tuple[int, int]:
    """(value, error) in units of 2^-prec; error covers rounding + radius."""
    v = libmp.to_fixed(x.mid, prec)
    e = libmp.to_fixed(x.rad, prec) + 2
    return v, e


class _FixedEvaluator:
    """Certified fixed-point evaluation of sum_m v_m T_m(cos(theta pi)).

    Coefficients are dyadically rescaled balls frozen into integers at scale
    2^prec; T_m(cos(theta pi)) = cos(m theta pi) comes either from a shared
    cosine table (uniform grids) or per-point certified cosines (probes).
    Signs are certified whenever |value| exceeds the accumulated error budget.
    """

    def __init__(self, cform: ChebyshevForm, bits: int):
        self.prec = bits + 32
        n = cform.degree
        self.n = n
        lam = cform.lam_ball(self.prec)
        vals = [c.eval(lam) for c in cform.coeffs[:n + 1]]
        emax = None
        for v in vals:
            if v.mid != libmp.fzero:
                e = v.mid[2] + v.mid[3]  # exponent + mantissa bits ~ log2 |mid|
                emax = e if emax is None or e > emax else e
        if emax is None:
            raise DomainError("zero polynomial")
        fixed = [_fixed_from_ball(v.shift(-emax), self.prec) for v in vals]
        self.terms = [(m, c) for m, (c, _) in enumerate(fixed) if c]
        self.sum_abs_c = sum(abs(c) for c, _ in fixed)
        self.sum_e = sum(e for _, e in fixed)
        self.pi_ball = RealEnclosure.pi(self.prec)
        self.evals = 0

    def _budget(self, tab_err: int) -> int:
        return tab_err * self.sum_abs_c + ((1 << self.prec) + tab_err) * self.sum_e

    def cos_table(self, M: int) -> tuple[list[int], int]:
        table = []
        tab_err = 2
        for r in range(M + 1):
            tv, te = _fixed_from_ball(ball_cos(self.pi_ball * Fraction(r, M)), self.prec)
            table.append(tv)
            tab_err = max(tab_err, te)
        return table, tab_err

    def eval_grid(self, table: list[int], tab_err: int, M: int, j: int) -> tuple[int, int]:
        two_m = 2 * M
        acc = 0
        for m, c in self.terms:
            x = (m * j) % two_m
            acc += c * table[x if x <= M else two_m - x]
        self.evals += 1
        return acc, self._budget(tab_err)

    def eval_theta(self, theta: Fraction) -> tuple[int, int]:
        """theta in units of pi, 0 < theta < 1."""
        acc = 0
        tab_err = 2
        for m, c in self.terms:
            xi = (m * theta) % 2
            tv, te = _fixed_from_ball(ball_cos(self.pi_ball * xi), self.prec)
            acc += c * tv
            tab_err = max(tab_err, te)
        self.evals += 1
        return acc, self._budget(tab_err)

    def sign_of(self, value: int, budget: int) -> int:
        if value > budget:
            return 1
        if value < -budget:
            return -1
        return 0


def _count_changes(points: dict[Fraction, tuple[int, int]],
                   end_signs: dict[int, int | None]) -> tuple[int, list[tuple[Fraction, int, int]]]:
    """Alternation count over certified points plus endpoint signs; returns
    (changes, ordered certified sequence as (theta, sign, |value|))."""
    seq: list[tuple[Fraction, int, int]] = []
    if end_signs[1] is not None:
        seq.append((Fraction(0), end_signs[1], 0))
    for theta in sorted(points):
        s, mag = points[theta]
        if s != 0:
            seq.append((theta, s, mag))
    if end_signs[-1] is not None:
        seq.append((Fraction(1), end_signs[-1], 0))
    changes = sum(1 for i in range(len(seq) - 1) if seq[i][1] != seq[i + 1][1])
    return changes, seq


def sign_change_count(cform: ChebyshevForm, target: int, bits: int = 128,
                      initial_grid: int | None = None,
                      probe_budget: int = 60000) -> VerificationReport:
    """Count certified sign alternations of p*(u) on [-1, 1].

    A uniform Chebyshev-angle base grid (shared certified cosine table, exact
    integer dot products) finds the well-separated alternations; remaining
    ones hide in same-sign gaps as near-pairs of zeros, which an adaptive
    probe resolves, deepest dips first.  Exact endpoint zeros at u = +-1 are
    detected in Q[lam] and credited to the count.
    """
    n = cform.degree
    if n == 0:
        if cform.coeffs[0].is_zero():
            raise DomainError("zero polynomial has no sign pattern")
        lam = cform.lam_ball(bits)
        certified = bool(target == 0 and cform.coeffs[0].eval(lam).sign() != 0)
        return VerificationReport(cform.family, cform.k, "sign-count", 0, 0, None, None,
                                  certified, detail={"grid": 0, "changes": 0})

    ev = _FixedEvaluator(cform, bits)

    boundary_zeros = 0
    end_signs: dict[int, int | None] = {}
    lam = cform.lam_ball(bits + 32)
    for sgn in (+1, -1):
        v = cform.eval_at_pm1(sgn)
        if v.is_zero():
            boundary_zeros += 1
            end_signs[sgn] = None
        else:
            s = v.eval(lam).sign()
            if s == 0:
                raise PrecisionError(f"endpoint sign indeterminate for {cform.family}_{cform.k}")
            end_signs[sgn] = s

    points: dict[Fraction, tuple[int, int]] = {}

    def fill_grid(M: int) -> None:
        table, tab_err = ev.cos_table(M)
        for j in range(1, M):
            th = Fraction(j, M)
            if th not in points:
                val, budget = ev.eval_grid(table, tab_err, M, j)
                points[th] = (ev.sign_of(val, budget), abs(val))

    M = initial_grid or max(4 * n, 16)
    fill_grid(M)
    while True:
        changes, seq = _count_changes(points, end_signs)
        if changes + boundary_zeros >= target:
            return VerificationReport(cform.family, cform.k, "sign-count",
                                      n, n, None, None, True,
                                      detail={"grid": M, "changes": changes,
                                              "boundary_zeros": boundary_zeros,
                                              "evaluations": ev.evals})
        if ev.evals >= probe_budget:
            break
        if M < 32 * n:
            # cheap region: shared-table refinement beats per-point probing
            M *= 2
            fill_grid(M)
            continue
        # near-pairs of zeros hide in same-sign gaps whose BOTH endpoints
        # already sit close to a zero: rank by the larger endpoint magnitude
        gaps = []
        for i in range(len(seq) - 1):
            (ta, sa, ma), (tb, sb, mb) = seq[i], seq[i + 1]
            if sa == sb and sa != 0:
                gaps.append((max(ma, mb), ta, tb, sa))
        if not gaps:
            break
        gaps.sort(key=lambda g: g[0])
        deficit_pairs = (target - changes - boundary_zeros + 1) // 2
        progressed = False
        for _, ta, tb, s in gaps[:deficit_pairs + 2]:
            if _probe_gap(ev, points, ta, tb, s,
                          per_gap_budget=min(224, probe_budget - ev.evals)):
                progressed = True
            if ev.evals >= probe_budget:
                break
        if progressed:
            continue
        if M < 512 * n and ev.evals < probe_budget:
            M *= 2
            fill_grid(M)
        else:
            break

    changes, _ = _count_changes(points, end_signs)
    return VerificationReport(cform.family, cform.k, "sign-count",
                              changes + boundary_zeros, n, None, None, False,
                              detail={"grid": M, "changes": changes,
                                      "boundary_zeros": boundary_zeros,
                                      "evaluations": ev.evals})


def _probe_gap(ev: _FixedEvaluator, points: dict[Fraction, tuple[int, int]],
               ta: Fraction, tb: Fraction, s: int, per_gap_budget: int,
               max_depth: int = 256) -> bool:
    """Search a same-sign gap for an opposite-sign window by iterative deepening."""
    start = ev.evals
    width = tb - ta
    depth = 2
    while depth <= max_depth:
        for i in range(1, depth, 2):
            theta = ta + width * Fraction(i, depth)
            if theta in points:
                continue
            val, budget = ev.eval_theta(theta)
            sign = ev.sign_of(val, budget)
            points[theta] = (sign, abs(val))
            if sign == -s:
                return True
            if ev.evals - start >= per_gap_budget:
                return False
        depth *= 2
    return False


class _TrigEvaluator:
    """Certified fixed-point evaluation of sum_r q_r trig(r theta) on theta grids."""

    def __init__(self, terms: list[tuple[int, RealEnclosure]], use_sin: bool, bits: int):
        self.prec = bits + 32
        emax = None
        for _, v in terms:
            if v.mid != libmp.fzero:
                e = v.mid[2] + v.mid[3]
                emax = e if emax is None or e > emax else e
        if emax is None:
            raise DomainError("zero trig polynomial")
        self.terms = []
        self.sum_abs_c = 0
        self.sum_e = 0
        for r, v in terms:
            c, e = _fixed_from_ball(v.shift(-emax), self.prec)
            if c or e:
                self.terms.append((r, c))
                self.sum_abs_c += abs(c)
                self.sum_e += e
        self.use_sin = use_sin
        self.pi_ball = RealEnclosure.pi(self.prec)
        self.evals = 0

    def tables(self, M: int) -> tuple[list[int], list[int], int]:
        cos_t, sin_t = [], []
        err = 2
        for r in range(M + 1):
            cb, sb = ball_cos_sin(self.pi_ball * Fraction(r, M))
            cv, ce = _fixed_from_ball(cb, self.prec)
            sv, se = _fixed_from_ball(sb, self.prec)
            cos_t.append(cv)
            sin_t.append(sv)
            err = max(err, ce, se)
        return cos_t, sin_t, err

    def eval_grid(self, cos_t: list[int], sin_t: list[int], err: int, M: int, j: int) -> tuple[int, int]:
        two_m = 2 * M
        acc = 0
        if self.use_sin:
            for r, c in self.terms:
                t = (r * j) % two_m
                acc += c * (sin_t[t] if t <= M else -sin_t[two_m - t])
        else:
            for r, c in self.terms:
                t = (r * j) % two_m
                acc += c * (cos_t[t] if t <= M else cos_t[two_m - t])
        self.evals += 1
        budget = err * self.sum_abs_c + ((1 << self.prec) + err) * self.sum_e
        return acc, budget


def _factor_sign_count(poly: FamilyPoly, bits: int) -> VerificationReport | None:
    """Sign counting through the exact factorization, for even nontrivial degree.

    With n = 2m and z = e^(i theta), (z^n + eps) p(z) = 2 z^n p*(u) splits as
    p*(cos theta) = cos(m theta) g(theta) (eps = +1) or -sin(m theta) g(theta)
    (eps = -1), where g is a real trig polynomial vanishing exactly at the
    circle-zero angles of p.  g's zeros have no near-pairs (those live between
    the two factors), so a uniform grid certifies them quickly.
    """
    p = poly.strip_origin()
    n = p.degree
    if n == 0 or n % 2:
        return None
    m = n // 2
    eps = p.epsilon
    prec = bits + 32
    lam = p.lam_ball(prec)

    boundary = 0
    for point in (Fraction(1), Fraction(-1)):
        v = p.eval_rational(point)
        if v.is_zero():
            boundary += 1
        elif v.eval(lam).sign() == 0:
            raise PrecisionError(f"boundary value indeterminate for {poly.family}_{poly.k}")
    # 2 * target + boundary must reach n even when boundary is odd
    target = (n - boundary + 1) // 2

    if eps > 0:
        terms = [(0, p.coeffs[m].eval(lam))]
        terms += [(r, (p.coeffs[m - r] * 2).eval(lam)) for r in range(1, m + 1)]
    else:
        if not p.coeffs[m].is_zero():
            return None
        terms = [(r, (p.coeffs[m - r] * -2).eval(lam)) for r in range(1, m + 1)]
    ev = _TrigEvaluator(terms, use_sin=(eps < 0), bits=bits)

    M = max(8 * m, 16)
    points: dict[Fraction, int] = {}
    for _ in range(6):
        cos_t, sin_t, err = ev.tables(M)
        for j in range(1, M):
            th = Fraction(j, M)
            if th not in points:
                val, budget = ev.eval_grid(cos_t, sin_t, err, M, j)
                points[th] = 1 if val > budget else (-1 if val < -budget else 0)
        seq = [s for _, s in sorted(points.items()) if s != 0]
        changes = sum(1 for i in range(len(seq) - 1) if seq[i] != seq[i + 1])
        if changes >= target:
            return VerificationReport(poly.family, poly.k, "sign-count", n, n, None, None,
                                      True, origin_zeros=poly.origin_multiplicity,
                                      detail={"grid": M, "changes": changes,
                                              "boundary_zeros": boundary,
                                              "factored": True, "evaluations": ev.evals})
        M *= 2
    return VerificationReport(poly.family, poly.k, "sign-count",
                              2 * changes + boundary, n, None, None, False,
                              origin_zeros=poly.origin_multiplicity,
                              detail={"grid": M // 2, "changes": changes,
                                      "boundary_zeros": boundary,
                                      "factored": True, "evaluations": ev.evals})


def verify_by_sign_count(poly: FamilyPoly, bits: int = 128) -> VerificationReport:
    """Route a family polynomial through the Chebyshev sign counter.

    Even nontrivial degrees go through the exact trig factorization of p*;
    odd degrees use the direct p* counter with adaptive gap probing.
    """
    stripped = poly.strip_origin()
    rep = _factor_sign_count(poly, bits)
    if rep is not None:
        return rep
    cform = chebyshev_form(poly)
    rep = sign_change_count(cform, stripped.degree, bits)
    rep.origin_zeros = poly.origin_multiplicity
    return rep


# ---------------------------------------------------------------------------
# root refinement and simplicity
# ---------------------------------------------------------------------------

def _poly_derivative(coeffs: Sequence[ZetaCoefficient]) -> list[ZetaCoefficient]:
    return [c * j for j, c in enumerate(coeffs)][1:]


def _eval_ball_coeffs(coeffs: Sequence[ZetaCoefficient], lam: RealEnclosure,
                      z: ComplexEnclosure, bits: int) -> ComplexEnclosure:
    acc = ComplexEnclosure.exact(0, 0, bits)
    for c in reversed(coeffs):
        acc = acc * z + ComplexEnclosure.from_real(c.eval(lam))
    return acc


def _aberth_float(coeffs: list[complex], n: int, budget: int = 200):
    import numpy as np

    c = np.array(coeffs, dtype=np.complex128)
    dc = c[1:] * np.arange(1, n + 1)
    ang = 2.0 * np.pi * np.arange(n) / n + 0.37
    z = 1.01 * np.exp(1j * ang)
    for _ in range(budget):
        pv = np.polyval(c[::-1], z)
        pdv = np.polyval(dc[::-1], z)
        with np.errstate(all="ignore"):
            w = pv / pdv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            corr = w / (1.0 - w * s)
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        if np.max(np.abs(corr)) < 1e-13:
            break
    return z


def find_roots(poly: FamilyPoly, bits: int = 128, polish_sweeps: int = 8,
               budget: int = 200) -> list[ComplexEnclosure]:
    """All roots of the origin-stripped polynomial, as certified complex balls.

    Float Aberth--Ehrlich (deterministic start: 1.01 * roots of unity rotated
    by 0.37 rad) seeds a high-precision Aberth polish; each refined root gets
    the residual radius n |p(x)| / |p'(x)|, certified in ball arithmetic.
    """
    p = poly.strip_origin()
    n = p.degree
    if n == 0:
        return []
    wp = bits + 48
    lam = p.lam_ball(wp)
    lam_mid = mp.make_mpf(lam.mid)
    with mp.workprec(wp):
        coeffs_mp = []
        for c in p.coeffs[:n + 1]:
            v = mp.mpf(c.a.numerator) / c.a.denominator
            if c.b:
                v += mp.mpf(c.b.numerator) / c.b.denominator * lam_mid
            if c.c:
                v += mp.mpf(c.c.numerator) / c.c.denominator * lam_mid ** 2
            coeffs_mp.append(v)
        scale = max(abs(v) for v in coeffs_mp)
        coeffs_mp = [v / scale for v in coeffs_mp]
        z = [mp.mpc(w) for w in _aberth_float([complex(v) for v in coeffs_mp], n, budget)]
        dcoeffs = [coeffs_mp[j] * j for j in range(1, n + 1)]

        def horner(cs, x):
            acc = mp.mpc(0)
            for cc in reversed(cs):
                acc = acc * x + cc
            return acc

        tol = mp.mpf(2) ** (-bits - 16)
        for _ in range(polish_sweeps):
            moved = mp.mpf(0)
            for i in range(n):
                pv = horner(coeffs_mp, z[i])
                pdv = horner(dcoeffs, z[i])
                if pdv == 0:
                    continue
                w = pv / pdv
                s = mp.mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (z[i] - z[j])
                corr = w / (1 - w * s)
                z[i] -= corr
                moved = max(moved, abs(corr))
            if moved < tol:
                break
        else:
            if moved >= mp.mpf(2) ** (-bits // 2):
                raise NumericError(f"Aberth did not converge for {poly.family}_{poly.k}",
                                   family=poly.family, k=poly.k, last_move=float(moved))
        z.sort(key=lambda w: (mp.atan2(w.imag, w.real), w.real))

    # certification pass in ball arithmetic
    dcoeffs_exact = _poly_derivative(p.coeffs[:n + 1])
    lam_ball = p.lam_ball(wp)
    roots = []
    for x in z:
        xb = ComplexEnclosure(
            RealEnclosure(x.real._mpf_, libmp.fzero, wp),
            RealEnclosure(x.imag._mpf_, libmp.fzero, wp))
        pv = _eval_ball_coeffs(p.coeffs[:n + 1], lam_ball, xb, wp)
        pdv = _eval_ball_coeffs(dcoeffs_exact, lam_ball, xb, wp)
        pd_abs = pdv.abs()
        if pd_abs.sign() <= 0:
            raise NumericError(f"derivative enclosure touches 0 for {poly.family}_{poly.k}",
                               family=poly.family, k=poly.k)
        rad_ball = pv.abs() * n / pd_abs
        rad_raw = rad_ball.upper_raw()
        roots.append(ComplexEnclosure(
            RealEnclosure(xb.re.mid, rad_raw, wp),
            RealEnclosure(xb.im.mid, rad_raw, wp)))
    return roots


def max_modulus_deviation(roots: Sequence[ComplexEnclosure]) -> RealEnclosure | None:
    """Enclosure of max over roots of | |z| - 1 |."""
    best = None
    for r in roots:
        dev = (r.abs() - 1).abs()
        if best is None or dev.upper > best.upper:
            best = dev
    return best


def simplicity_check(roots: Sequence[ComplexEnclosure]) -> RealEnclosure | None:
    """Lower-bounded enclosure of the minimum pairwise root distance."""
    best = None
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = (roots[i] - roots[j]).abs()
            if best is None or d.lower < best.lower:
                best = d
    return best


def verify_by_roots(poly: FamilyPoly, bits: int = 128,
                    tol: Fraction = Fraction(1, 10 ** 20)) -> VerificationReport:
    """Cross-validation report: every certified root ball within tol of |z| = 1."""
    roots = find_roots(poly, bits)
    dev = max_modulus_deviation(roots)
    sep = simplicity_check(roots)
    stripped = poly.strip_origin()
    on_circle = 0
    for r in roots:
        if (r.abs() - 1).abs().lt(tol):
            on_circle += 1
    refuted = any((r.abs() - 1).abs().gt(tol) for r in roots)
    certified = on_circle == stripped.degree and (sep is None or sep.sign() > 0)
    verdict = CERTIFIED_TRUE if certified else (CERTIFIED_FALSE if refuted else INDETERMINATE)
    return VerificationReport(poly.family, poly.k, "roots", on_circle, stripped.degree,
                              dev, sep, certified, origin_zeros=poly.origin_multiplicity,
                              detail={"n_roots": len(roots)}, verdict=verdict)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def verify_family(family: str, k: int, method: str, bits: int = 128) -> list[VerificationReport]:
    """Run one or all applicable verification methods on a family member."""
    if k < family_min_k(family):
        raise DomainError(f"family {family} needs k >= {family_min_k(family)}")
    poly = build_family(family, k)
    out: list[VerificationReport] = []
    methods = ("criteria", "oscillation", "sign-count", "roots") if method == "all" else (method,)
    for m in methods:
        if m == "criteria":
            if family == "S":
                crit = schinzel_check(poly, schinzel_constant_S(k), bits)
            elif family == "Y":
                crit = schinzel_check(poly.strip_origin(), schinzel_constant_Y(k), bits)
            elif method == "all":
                continue
            else:
                crit = lakatos_check(poly, bits)
            stripped = poly.strip_origin()
            certified = crit.holds == CERTIFIED_TRUE
            out.append(VerificationReport(
                family, k, "criteria", stripped.degree if certified else 0,
                stripped.degree, None, None, certified,
                origin_zeros=poly.origin_multiplicity,
                detail={"criteria": crit.to_doc()}, verdict=crit.holds))
        elif m == "oscillation":
            if family == "W":
                out.append(oscillation_verify_W(k, bits))
            elif family == "Q":
                out.append(oscillation_verify_Q(k, bits))
            elif method == "all":
                continue
            else:
                raise DomainError(f"oscillation method applies to W and Q, not {family}")
        elif m == "sign-count":
            out.append(verify_by_sign_count(poly, bits))
        elif m == "roots":
            out.append(verify_by_roots(poly, bits))
        else:
            raise DomainError(f"unknown method {m!r}")
    return out
