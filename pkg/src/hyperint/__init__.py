"""Closed-form evaluation of x**a * K(eta * x**b) integrals via 1F1/1F2 series,
identity residuals, and generalized gamma/Gaussian distributions."""

from .errors import (
    DomainError,
    HyperintError,
    InvalidSpec,
    MomentDoesNotExist,
    NoConvergence,
    PoleParameter,
)
from .specfun import (
    DEFAULT_CONFIG,
    SeriesConfig,
    SeriesValue,
    hyp1f1,
    hyp1f1_imag,
    hyp1f1_scaled,
    hyp1f2,
    log_gamma,
    pochhammer,
)
from .integrals import (
    AntiderivativeValue,
    IntegralSpec,
    Kind,
    antiderivative,
    definite_integral,
    full_line_integral,
    half_line_integral,
)
from .identities import IdentityId, IdentityResidual, check_identity, check_lemma1
from .distributions import (
    GenGammaParams,
    InvGammaParams,
    LocScaleParams,
    SymmetricParams,
    cdf,
    mean_variance,
    pdf,
    quantile,
    raw_moment,
    sample,
)
from .oracle import QuadratureResult, integrate, integrate_half_line, mc_moment

__version__ = "0.1.0"
