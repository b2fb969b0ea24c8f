"""circlezero: Bernoulli/Euler/odd-zeta polynomial families with certified
unit-circle zero verification and zeta(3) approximation schemes."""

from .enclosure import (
    ComplexEnclosure,
    PrecisionConfig,
    RealEnclosure,
    ball_acos,
    ball_cos,
    ball_exp,
    ball_sin,
    exp_complex,
    lambda_k,
    zeta_int,
    zeta_odd,
)
from .errors import (
    CapacityError,
    CircleZeroError,
    DomainError,
    NumericError,
    PrecisionError,
)
from .exact import (
    bernoulli,
    bernoulli_half_value,
    binomial,
    check_bernoulli_bounds,
    check_euler_bounds,
    euler,
    zeta_even_rational,
)
from .families import (
    ChebyshevForm,
    FamilyPoly,
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
)
from .approx import (
    ApproxResult,
    SeriesEvaluation,
    approx1_zeta3,
    approx2_zeta3,
    auxiliary_zeros,
    ramanujan_identity_residual,
    sech_identity_residual,
)
from .verify import (
    CriteriaReport,
    OscillationReport,
    VerificationReport,
    alternating_verify,
    build_qk_samples,
    build_wk_samples,
    find_roots,
    lakatos_check,
    observation_identity,
    oscillation_verify_Q,
    oscillation_verify_W,
    schinzel_check,
    sign_change_count,
    simplicity_check,
    verify_family,
)

__version__ = "0.1.0"
