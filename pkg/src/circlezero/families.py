"""The six polynomial families R, P, Q, Y, W, S and their exact structure.

Every family polynomial is stored pi-normalized: coefficients live in the ring
Q[lam] where lam = zeta(2k-1)/pi^(2k-1) is a formal generator, and `pi_power`
records the power of pi divided out.  The generator is only bound to a
certified enclosure at evaluation time, so coefficient identities stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .enclosure import ComplexEnclosure, RealEnclosure, lambda_k
from .errors import DomainError
from .exact import bernoulli, binomial, euler

FAMILIES = ("R", "P", "Q", "Y", "W", "S")


@dataclass(frozen=True)
class ZetaCoefficient:
    """An element a + b*lam + c*lam^2 of Q[lam]/(lam^3 untracked).

    Products that would create a lam^3 (or higher) term raise, since no family
    construction needs them.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    @classmethod
    def rational(cls, a) -> "ZetaCoefficient":
        return cls(Fraction(a), Fraction(0), Fraction(0))

    @classmethod
    def lam(cls, b=1) -> "ZetaCoefficient":
        return cls(Fraction(0), Fraction(b), Fraction(0))

    def __add__(self, other: "ZetaCoefficient") -> "ZetaCoefficient":
        return ZetaCoefficient(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "ZetaCoefficient") -> "ZetaCoefficient":
        return ZetaCoefficient(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "ZetaCoefficient":
        return ZetaCoefficient(-self.a, -self.b, -self.c)

    def __mul__(self, other) -> "ZetaCoefficient":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return ZetaCoefficient(self.a * q, self.b * q, self.c * q)
        if self.b * other.c or self.c * other.b or self.c * other.c:
            raise DomainError("product exceeds degree 2 in the zeta generator")
        return ZetaCoefficient(
            self.a * other.a,
            self.a * other.b + self.b * other.a,
            self.a * other.c + self.c * other.a + self.b * other.b,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c)

    def is_rational(self) -> bool:
        return not (self.b or self.c)

    def eval(self, lam: RealEnclosure) -> RealEnclosure:
        prec = lam.prec
        out = RealEnclosure.exact(self.a, prec)
        if self.b:
            out = out + RealEnclosure.exact(self.b, prec) * lam
        if self.c:
            out = out + RealEnclosure.exact(self.c, prec) * (lam * lam)
        return out

    def triple(self) -> list[str]:
        return [f"{q.numerator}/{q.denominator}" for q in (self.a, self.b, self.c)]


ZERO_COEFF = ZetaCoefficient()


@dataclass(frozen=True)
class FamilyPoly:
    """A family polynomial: tag, index, pi normalization, coefficients, signature."""

    family: str
    k: int
    pi_power: int
    coeffs: tuple[ZetaCoefficient, ...]
    epsilon: int
    note: str = ""

    @property
    def degree(self) -> int:
        for j in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[j].is_zero():
                return j
        return 0

    @property
    def origin_multiplicity(self) -> int:
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                return j
        return 0

    @property
    def nontrivial_degree(self) -> int:
        return self.degree - self.origin_multiplicity

    def strip_origin(self) -> "FamilyPoly":
        m = self.origin_multiplicity
        if m == 0:
            return self
        return FamilyPoly(self.family, self.k, self.pi_power,
                          self.coeffs[m:self.degree + 1], self.epsilon,
                          note=(self.note + f" /z^{m}").strip())

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def self_inversive_ok(self) -> bool:
        """Exact coefficient symmetry coeffs[deg-j] = eps*coeffs[j], checked
        on the origin-stripped polynomial."""
        p = self.strip_origin()
        d = p.degree
        eps = Fraction(p.epsilon)
        return all(p.coeffs[d - j] - eps * p.coeffs[j] == ZERO_COEFF for j in range(d + 1))

    def lam_ball(self, bits: int) -> RealEnclosure:
        if all(c.is_rational() for c in self.coeffs):
            return RealEnclosure.exact(0, bits)
        return lambda_k(self.k, bits)

    def coefficient_balls(self, bits: int) -> list[RealEnclosure]:
        lam = self.lam_ball(bits)
        return [c.eval(lam) for c in self.coeffs]

    def eval_ball(self, z: ComplexEnclosure, bits: int) -> ComplexEnclosure:
        """Horner evaluation of the normalized polynomial (pi power NOT applied)."""
        lam = self.lam_ball(bits)
        acc = ComplexEnclosure.exact(0, 0, bits)
        for c in reversed(self.coeffs):
            acc = acc * z + ComplexEnclosure.from_real(c.eval(lam))
        return acc

    def eval_rational(self, z: Fraction) -> ZetaCoefficient:
        """Exact Horner evaluation at a rational point, in Q[lam]."""
        acc = ZERO_COEFF
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def to_doc(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "degree": self.degree,
            "pi_power": self.pi_power,
            "epsilon": self.epsilon,
            "coeffs": [c.triple() for c in self.coeffs],
            "note": self.note,
        }


def _p_even_rational(k: int, j: int) -> Fraction:
    """Normalized even coefficient of P_k at z^(2j)."""
    sign = -1 if j % 2 else 1
    return (Fraction(1 << (2 * k - 1), math.factorial(2 * k)) * sign
            * bernoulli(2 * j) * bernoulli(2 * k - 2 * j) * binomial(2 * k, 2 * j))


def build_R(k: int, convention: str = "symmetric") -> FamilyPoly:
    """Bernoulli-product polynomial of odd index 2k+1.

    convention="symmetric": full palindromic sum j = 0..k+1 (degree 2k+2);
    convention="printed": the truncated sum j = 0..k-1 (degree 2k-2), which is
    not palindromic.
    """
    if k < 1:
        raise DomainError(f"build_R needs k >= 1, got {k}")
    if convention not in ("symmetric", "printed"):
        raise DomainError(f"unknown R convention {convention!r}")
    top = k + 1 if convention == "symmetric" else k - 1
    coeffs = [ZERO_COEFF] * (2 * top + 1)
    for j in range(top + 1):
        num = bernoulli(2 * j) * bernoulli(2 * k + 2 - 2 * j)
        den = math.factorial(2 * j) * math.factorial(2 * k + 2 - 2 * j)
        coeffs[2 * j] = ZetaCoefficient.rational(num / den)
    return FamilyPoly("R", k, 0, tuple(coeffs), +1, note=f"convention={convention}")


def build_P(k: int) -> FamilyPoly:
    """P_k, pi-normalized by pi^(2k-1); degree 2k; epsilon = (-1)^k."""
    if k < 2:
        raise DomainError(f"build_P needs k >= 2, got {k}")
    coeffs = [ZERO_COEFF] * (2 * k + 1)
    for j in range(k + 1):
        coeffs[2 * j] = ZetaCoefficient.rational(_p_even_rational(k, j))
    eps = -1 if k % 2 else 1
    coeffs[1] = coeffs[1] + ZetaCoefficient.lam(eps)
    coeffs[2 * k - 1] = coeffs[2 * k - 1] + ZetaCoefficient.lam(1)
    return FamilyPoly("P", k, 2 * k - 1, tuple(coeffs), eps)


def _combine_P(k: int, scale_z1: Fraction) -> tuple[ZetaCoefficient, ...]:
    """c1*P(z) - 2^2k P(z/2) - P(2z) with c1 = scale_z1, coefficientwise."""
    p = build_P(k)
    out = []
    for j, c in enumerate(p.coeffs):
        factor = scale_z1 - Fraction(1 << (2 * k), 1 << j) - Fraction(1 << j)
        out.append(c * factor)
    return tuple(out)


def _coeffs_equal(a: tuple[ZetaCoefficient, ...], b: tuple[ZetaCoefficient, ...]) -> bool:
    n = max(len(a), len(b))
    pad_a = a + (ZERO_COEFF,) * (n - len(a))
    pad_b = b + (ZERO_COEFF,) * (n - len(b))
    return all((x - y) == ZERO_COEFF for x, y in zip(pad_a, pad_b))


def build_Q(k: int) -> FamilyPoly:
    """Q_k via its closed-form coefficients, cross-checked exactly against the
    linear combination (2^2k + 1) P(z) - 2^2k P(z/2) - P(2z)."""
    if k < 2:
        raise DomainError(f"build_Q needs k >= 2, got {k}")
    coeffs = [ZERO_COEFF] * (2 * k)
    for j in range(k + 1):
        sign = -1 if j % 2 else 1
        a = (Fraction(1 << (2 * k - 1), math.factorial(2 * k)) * sign
             * bernoulli(2 * j) * bernoulli(2 * k - 2 * j)
             * ((1 << (2 * j)) - 1) * ((1 << (2 * k - 2 * j)) - 1)
             * binomial(2 * k, 2 * j))
        if j < k:
            coeffs[2 * j] = ZetaCoefficient.rational(a)
        else:
            assert a == 0
    eps = -1 if k % 2 else 1
    odd = Fraction((1 << (2 * k - 1)) - 1)
    coeffs[1] = coeffs[1] + ZetaCoefficient.lam(eps * odd)
    coeffs[2 * k - 1] = coeffs[2 * k - 1] + ZetaCoefficient.lam(odd)
    closed = FamilyPoly("Q", k, 2 * k - 1, tuple(coeffs), eps)
    comb = _combine_P(k, Fraction((1 << (2 * k)) + 1))
    if not _coeffs_equal(closed.coeffs, comb):
        raise AssertionError(f"Q_{k}: closed form disagrees with the linear combination")
    return closed


def build_W(k: int) -> FamilyPoly:
    """W_k via its closed form, which equals exactly 2x the linear combination
    (2^(2k-1) + 2) P(z) - 2^2k P(z/2) - P(2z); the scalar is asserted."""
    if k < 2:
        raise DomainError(f"build_W needs k >= 2, got {k}")
    coeffs = [ZERO_COEFF] * (2 * k + 1)
    pref = Fraction(1 << (2 * k - 1), math.factorial(2 * k)) * (1 << (2 * k))
    for j in range(k + 1):
        sign = -1 if j % 2 else 1
        a = (pref * sign * bernoulli(2 * j) * bernoulli(2 * k - 2 * j)
             * (1 - Fraction(2) ** (1 - 2 * j)) * (1 - Fraction(2) ** (1 - 2 * k + 2 * j))
             * binomial(2 * k, 2 * j))
        coeffs[2 * j] = ZetaCoefficient.rational(a)
    eps = -1 if k % 2 else 1
    closed = FamilyPoly("W", k, 2 * k - 1, tuple(coeffs), eps,
                        note="closed form = 2 x combination")
    comb = _combine_P(k, Fraction((1 << (2 * k - 1)) + 2))
    if not _coeffs_equal(closed.coeffs, tuple(c * 2 for c in comb)):
        raise AssertionError(f"W_{k}: closed form is not exactly 2x the combination")
    return closed


def build_Y(k: int) -> FamilyPoly:
    """Y_k, pi-normalized by pi^(2k): purely rational, coefficient of z^j is
    B_2j B_(2k-2j) (2^2j - 1)(2^(2k-2j) - 1) C(2k,2j)/(2k)!; zero at z^0, z^k."""
    if k < 2:
        raise DomainError(f"build_Y needs k >= 2, got {k}")
    coeffs = [ZERO_COEFF] * (k + 1)
    for j in range(k + 1):
        a = (Fraction(1, math.factorial(2 * k)) * bernoulli(2 * j) * bernoulli(2 * k - 2 * j)
             * ((1 << (2 * j)) - 1) * ((1 << (2 * k - 2 * j)) - 1) * binomial(2 * k, 2 * j))
        coeffs[j] = ZetaCoefficient.rational(a)
    assert coeffs[0].is_zero() and coeffs[k].is_zero()
    return FamilyPoly("Y", k, 2 * k, tuple(coeffs), +1)


def build_S(k: int) -> FamilyPoly:
    """S_k: integer coefficients E_2j E_(2k-2j) C(2k,2j), all of sign (-1)^k."""
    if k < 1:
        raise DomainError(f"build_S needs k >= 1, got {k}")
    coeffs = []
    for j in range(k + 1):
        coeffs.append(ZetaCoefficient.rational(
            euler(2 * j) * euler(2 * k - 2 * j) * binomial(2 * k, 2 * j)))
    return FamilyPoly("S", k, 0, tuple(coeffs), +1)


def build_family(family: str, k: int) -> FamilyPoly:
    builders = {"R": build_R, "P": build_P, "Q": build_Q,
                "Y": build_Y, "W": build_W, "S": build_S}
    if family not in builders:
        raise DomainError(f"unknown family {family!r}")
    return builders[family](k)


def family_min_k(family: str) -> int:
    return 1 if family in ("R", "S") else 2


# ---------------------------------------------------------------------------
# Chebyshev reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChebyshevForm:
    """p*(u) = sum coeffs[m] T_m(u), satisfying (z^n + eps) p(z) = 2 z^n p*(u)
    with u = (z + 1/z)/2 for the source self-inversive polynomial p of degree n."""

    family: str
    k: int
    pi_power: int
    coeffs: tuple[ZetaCoefficient, ...]
    source_epsilon: int
    lam_index: int  # family index whose lambda binds the generator

    @property
    def degree(self) -> int:
        for j in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[j].is_zero():
                return j
        return 0

    def lam_ball(self, bits: int) -> RealEnclosure:
        if all(c.is_rational() for c in self.coeffs):
            return RealEnclosure.exact(0, bits)
        return lambda_k(self.lam_index, bits)

    def eval_ball(self, u: RealEnclosure, bits: int) -> RealEnclosure:
        """Clenshaw recurrence in ball arithmetic."""
        lam = self.lam_ball(bits)
        b1 = RealEnclosure.exact(0, bits)
        b2 = RealEnclosure.exact(0, bits)
        two_u = u + u
        for c in reversed(self.coeffs[1:]):
            b1, b2 = c.eval(lam) + two_u * b1 - b2, b1
        return self.coeffs[0].eval(lam) + u * b1 - b2

    def eval_at_pm1(self, sign: int) -> ZetaCoefficient:
        """Exact value at u = +1 or u = -1 in Q[lam] (T_m(+-1) = (+-1)^m)."""
        acc = ZERO_COEFF
        for m, c in enumerate(self.coeffs):
            acc = acc + (c if (sign > 0 or m % 2 == 0) else -c)
        return acc

    def to_power_basis(self) -> tuple[ZetaCoefficient, ...]:
        """Exact conversion to the power basis via the integer T-recurrence."""
        n = len(self.coeffs)
        out = [ZERO_COEFF] * n
        t_prev = [1]          # T_0
        t_cur = [0, 1]        # T_1
        for m, c in enumerate(self.coeffs):
            t_m = t_prev if m == 0 else t_cur
            if not c.is_zero():
                for i, ti in enumerate(t_m):
                    if ti:
                        out[i] = out[i] + c * ti
            if m >= 1:
                nxt = [0] * (m + 2)
                for i, ti in enumerate(t_cur):
                    nxt[i + 1] += 2 * ti
                for i, ti in enumerate(t_prev):
                    nxt[i] -= ti
                t_prev, t_cur = t_cur, nxt
        return tuple(out)


def chebyshev_form(poly: FamilyPoly) -> ChebyshevForm:
    """T-basis reduction of any (origin-stripped) self-inversive family member."""
    p = poly.strip_origin()
    d = p.degree
    return ChebyshevForm(poly.family, poly.k, poly.pi_power,
                         tuple(p.coeffs[:d + 1]), p.epsilon, poly.k)


def chebyshev_reduce(k: int) -> ChebyshevForm:
    """P*_k: T-coefficients of the unit-circle reduction of P_k."""
    return chebyshev_form(build_P(k))


# ---------------------------------------------------------------------------
# |P_k(iz)|^2 expansion
# ---------------------------------------------------------------------------

def abs_square_coeffs(k: int) -> tuple[ZetaCoefficient, ...]:
    """Coefficients A_0..A_4k of |P_k(iz)|^2, normalized by pi^(4k-2).

    The even part is the self-convolution of the rational vector g with
    g_j = (-1)^j t_2j (the z^2j coefficient of P_k(iz)); the odd part of P_k(iz)
    contributes lam^2 (z^(4k-2) - 2 z^2k + z^2).
    """
    if k < 2:
        raise DomainError(f"abs_square_coeffs needs k >= 2, got {k}")
    g = [(_p_even_rational(k, j) * (-1 if j % 2 else 1)) for j in range(k + 1)]
    out = [ZERO_COEFF] * (4 * k + 1)
    for i in range(k + 1):
        for j in range(k + 1):
            idx = 2 * (i + j)
            out[idx] = out[idx] + ZetaCoefficient.rational(g[i] * g[j])
    lam2 = ZetaCoefficient(Fraction(0), Fraction(0), Fraction(1))
    out[4 * k - 2] = out[4 * k - 2] + lam2
    out[2 * k] = out[2 * k] - (lam2 * 2)
    out[2] = out[2] + lam2
    return tuple(out)


# ---------------------------------------------------------------------------
# exact identities used by verification and the identity regression suite
# ---------------------------------------------------------------------------

def s_at_one(k: int) -> tuple[Fraction, Fraction]:
    """(|S_k(1)|, 2^(2k+1)(2^(2k+2)-1)|B_(2k+2)|/(k+1)) — equal for all k >= 1."""
    val = abs(sum((c.a for c in build_S(k).coeffs), Fraction(0)))
    closed = Fraction(1 << (2 * k + 1)) * ((1 << (2 * k + 2)) - 1) * abs(bernoulli(2 * k + 2)) / (k + 1)
    return val, closed


def y_coeff_sum(k: int) -> tuple[Fraction, Fraction]:
    """Sum of the normalized Y_k/z coefficients against its Bernoulli closed form.

    Both sides carry the pi^2k normalization: the closed form is
    -(2^2k/(2k)!) (2k-1)(1-2^(-2k)) B_2k.
    """
    ys = build_Y(k).strip_origin()
    total = sum((c.a for c in ys.coeffs), Fraction(0))
    closed = -(Fraction(1 << (2 * k), math.factorial(2 * k))
               * (2 * k - 1) * (1 - Fraction(2) ** (-2 * k)) * bernoulli(2 * k))
    return total, closed


def w_combination_scalar(k: int) -> Fraction:
    """Exact ratio closed-form / combination for W_k (always 2)."""
    closed = build_W(k)
    comb = _combine_P(k, Fraction((1 << (2 * k - 1)) + 2))
    for cc, cb in zip(closed.coeffs, comb):
        if not cb.is_zero():
            ratio_a = cc.a / cb.a if cb.a else None
            if ratio_a is not None:
                return ratio_a
    raise AssertionError("combination identically zero")
