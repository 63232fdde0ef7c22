"""Closed-form antiderivatives of ``x**alpha * K(eta * x**beta)``.

``K`` is one of exp, cosh, sinh, cos, sin.  Every antiderivative has the form
``x**(alpha+1) / (alpha+1) * G(z)`` with ``z = eta * x**beta`` and a bracket
``G`` built from 1F1 (exp) or from two 1F2 values (the other four kinds).

With ``c = (alpha+beta+1) / (2*beta)`` and ``k = 1 / (2*c)``::

    Fa = 1F2(1; c, c+1/2; s)      Fb = 1F2(1; c+1/2, c+1; s)
    G_cosh = cosh(z) Fa - k z sinh(z) Fb        (s = +z**2/4)
    G_sinh = sinh(z) Fa - k z cosh(z) Fb        (s = +z**2/4)
    G_cos  = cos(z)  Fa + k z sin(z)  Fb        (s = -z**2/4)
    G_sin  = sin(z)  Fa - k z cos(z)  Fb        (s = -z**2/4)
    G_exp  = exp(z) 1F1(1; 2c; -z)

The hyperbolic brackets are evaluated as
``(e^z (Fa - k z Fb) +/- e^-z (Fa + k z Fb)) / 2`` with ``Fa``, ``Fb`` and
``k z`` held in double-double, so the ``e^{2|z|}``-sized products never
cancel in binary64.  The constant of integration is zero, which makes the
antiderivative vanish at ``0+`` whenever ``alpha + 1 > 0`` and ``beta > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import _dd
from .errors import DomainError, InvalidSpec
from .specfun import (
    DEFAULT_CONFIG,
    SeriesConfig,
    SeriesValue,
    _hyp1f2_dd,
    hyp1f1_scaled,
    log_gamma,
)

ELEMENTARY_TIE_TOL = 1e-12
_PARAM_TIE_TOL = 1e-12
# the brackets cancel e^{|z|}-sized terms, so the 1F2 tails are summed to
# double-double resolution rather than to cfg.rel_tol
_BRACKET_TAIL_TOL = 1e-32


class Kind(str, Enum):
    EXP = "exp"
    COSH = "cosh"
    SINH = "sinh"
    COS = "cos"
    SIN = "sin"


_KERNELS = {
    Kind.EXP: math.exp,
    Kind.COSH: math.cosh,
    Kind.SINH: math.sinh,
    Kind.COS: math.cos,
    Kind.SIN: math.sin,
}


@dataclass(frozen=True)
class IntegralSpec:
    kind: Kind
    alpha: float
    eta: float
    beta: float

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", Kind(self.kind))
        except ValueError:
            raise InvalidSpec(f"unknown integral kind {self.kind!r}") from None
        for name in ("alpha", "eta", "beta"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidSpec(f"{name} must be finite, got {v}")
        if self.eta == 0:
            raise InvalidSpec("eta must be nonzero")
        if self.beta == 0:
            raise InvalidSpec("beta must be nonzero")
        if abs(self.alpha + 1) <= _PARAM_TIE_TOL:
            raise InvalidSpec("alpha = -1 is excluded (logarithmic case)")
        if self.kind is not Kind.EXP and abs(self.alpha + self.beta + 1) <= _PARAM_TIE_TOL:
            raise InvalidSpec("alpha = -beta - 1 is excluded for the cosh/sinh/cos/sin kinds")

    @property
    def is_elementary(self) -> bool:
        return self.kind is Kind.EXP and abs(self.alpha - (self.beta - 1)) <= ELEMENTARY_TIE_TOL


@dataclass(frozen=True)
class AntiderivativeValue:
    value: float
    elementary_branch: bool
    series_report: tuple[SeriesValue, ...] = field(default_factory=tuple)

    @property
    def converged(self) -> bool:
        return all(sv.converged for sv in self.series_report)


def integrand(spec: IntegralSpec):
    """The elementary integrand ``x -> x**alpha * K(eta * x**beta)``."""
    kernel = _KERNELS[spec.kind]
    alpha, eta, beta = spec.alpha, spec.eta, spec.beta

    def f(x):
        return x**alpha * kernel(eta * x**beta)

    return f


def _bracket_params(alpha, beta):
    c = (alpha + beta + 1) / (2 * beta)
    c_dd = (c, 0.0)
    d_dd = _dd.add_d(c_dd, 0.5)
    e_dd = _dd.add_d(c_dd, 1.0)
    k_dd = _dd.div((1.0, 0.0), (2.0 * c, 0.0))
    return c_dd, d_dd, e_dd, k_dd


def _pair_1f2(alpha, beta, z, sign, cfg):
    """``Fa``, ``Fb`` and ``k z`` as double-doubles for argument ``sign*z**2/4``."""
    c_dd, d_dd, e_dd, k_dd = _bracket_params(alpha, beta)
    zz = _dd.two_prod(z, z)
    w = (sign * 0.25 * zz[0], sign * 0.25 * zz[1])
    fa, sva = _hyp1f2_dd(1.0, c_dd, d_dd, w, cfg, _BRACKET_TAIL_TOL)
    fb, svb = _hyp1f2_dd(1.0, d_dd, e_dd, w, cfg, _BRACKET_TAIL_TOL)
    return fa, fb, _dd.mul_d(k_dd, z), (sva, svb)


def hyperbolic_brackets(alpha, beta, z, cfg=DEFAULT_CONFIG):
    """``(G_cosh, G_sinh, reports)`` for the given ``z``."""
    fa, fb, kz, reports = _pair_1f2(alpha, beta, z, 1.0, cfg)
    kzfb = _dd.mul(kz, fb)
    lead = _dd.to_float(_dd.add(fa, _dd.neg(kzfb)))
    trail = _dd.to_float(_dd.add(fa, kzfb))
    up = math.exp(z) * lead
    down = math.exp(-z) * trail
    return 0.5 * (up + down), 0.5 * (up - down), reports


def trig_brackets(alpha, beta, z, cfg=DEFAULT_CONFIG):
    """``(G_cos, G_sin, reports)`` for the given ``z``."""
    fa, fb, kz, reports = _pair_1f2(alpha, beta, z, -1.0, cfg)
    fa, fb, kz = _dd.to_float(fa), _dd.to_float(fb), _dd.to_float(kz)
    cz, sz = math.cos(z), math.sin(z)
    return cz * fa + kz * sz * fb, sz * fa - kz * cz * fb, reports


def exp_bracket(alpha, beta, z, cfg=DEFAULT_CONFIG):
    """``G_exp = exp(z) 1F1(1; (alpha+beta+1)/beta; -z)`` and its report."""
    sv = hyp1f1_scaled(1.0, (alpha + beta + 1) / beta, -z, cfg)
    return sv.value, sv


def antiderivative(spec: IntegralSpec, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> AntiderivativeValue:
    """Evaluate the closed-form antiderivative of ``spec`` at ``x > 0``.

    For ``alpha = beta - 1`` the exponential kind reduces to
    ``expm1(eta x**beta) / (eta beta)``, which is used directly.
    """
    if not (x >= 0 and math.isfinite(x)):
        raise DomainError(f"antiderivative requires finite x >= 0, got {x}")
    alpha, eta, beta = spec.alpha, spec.eta, spec.beta
    if x == 0:
        if alpha + 1 > 0 and beta > 0:
            return AntiderivativeValue(0.0, spec.is_elementary)
        raise DomainError("antiderivative diverges at x = 0 for these parameters")

    z = eta * x**beta
    if spec.is_elementary:
        return AntiderivativeValue(math.expm1(z) / (eta * beta), True)

    prefactor = x ** (alpha + 1) / (alpha + 1)
    if spec.kind is Kind.EXP:
        g, sv = exp_bracket(alpha, beta, z, cfg)
        return AntiderivativeValue(prefactor * g, False, (sv,))
    if spec.kind in (Kind.COSH, Kind.SINH):
        g_cosh, g_sinh, reports = hyperbolic_brackets(alpha, beta, z, cfg)
        g = g_cosh if spec.kind is Kind.COSH else g_sinh
    else:
        g_cos, g_sin, reports = trig_brackets(alpha, beta, z, cfg)
        g = g_cos if spec.kind is Kind.COS else g_sin
    return AntiderivativeValue(prefactor * g, False, reports)


def definite_integral(spec: IntegralSpec, a: float, b: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """``F(b) - F(a)`` for the closed-form antiderivative ``F``."""
    if not a >= 0:
        raise DomainError(f"lower limit must be >= 0, got {a}")
    if not b > a:
        raise DomainError(f"upper limit must exceed lower limit, got a={a}, b={b}")
    return antiderivative(spec, b, cfg).value - antiderivative(spec, a, cfg).value


def _check_half_line(alpha, eta, beta):
    for name, v in (("alpha", alpha), ("eta", eta), ("beta", beta)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v}")
    if not eta > 0:
        raise DomainError(f"eta must be > 0, got {eta}")
    if beta == 0:
        raise DomainError("beta must be nonzero")
    if abs(alpha + 1) <= _PARAM_TIE_TOL:
        raise DomainError("alpha = -1 is excluded")
    # integrable at 0 and at infinity iff (alpha+1)/beta > 0
    if not (alpha + 1) / beta > 0:
        if beta > 0:
            raise DomainError(f"integral diverges at 0: need alpha > -1 for beta > 0, got alpha={alpha}")
        raise DomainError(f"integral diverges at infinity: need alpha < -1 for beta < 0, got alpha={alpha}")


def half_line_integral(alpha: float, eta: float, beta: float) -> float:
    """``int_0^inf x**alpha exp(-eta x**beta) dx``.

    Equal to ``Gamma((alpha+beta+1)/beta) / (|alpha+1| eta**((alpha+1)/beta))``;
    the absolute value only matters for ``beta < 0``.
    """
    _check_half_line(alpha, eta, beta)
    s = (alpha + 1) / beta
    return math.exp(log_gamma(s + 1) - s * math.log(eta)) / abs(alpha + 1)


def full_line_integral(alpha: float, eta: float, beta: float) -> float:
    """``int_R |x|**alpha exp(-eta |x|**beta) dx``, twice the half-line value."""
    return 2.0 * half_line_integral(alpha, eta, beta)
