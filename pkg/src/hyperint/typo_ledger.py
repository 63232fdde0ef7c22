"""Printed formulas that fail numerically, next to the forms used instead.

Each entry evaluates the printed expression and the corrected one at a fixed
point and scores both against an independent quadrature or brute-force
oracle.  ``evaluate_all`` is what the tests and the ``ledger`` CLI command use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import distributions as dist
from .integrals import IntegralSpec, antiderivative, half_line_integral, integrand
from .oracle import integrate, integrate_half_line
from .specfun import hyp1f1, hyp1f2, pochhammer

FAIL_THRESHOLD = 0.10


@dataclass(frozen=True)
class TypoEntry:
    key: str
    topic: str
    printed_form: str
    corrected_form: str
    point: dict
    printed: Callable[[], float]
    corrected: Callable[[], float]
    oracle: Callable[[], float]


@dataclass(frozen=True)
class TypoEvidence:
    key: str
    topic: str
    printed_value: float
    corrected_value: float
    oracle_value: float
    printed_rel_error: float
    corrected_rel_error: float

    @property
    def printed_fails(self) -> bool:
        return self.printed_rel_error >= FAIL_THRESHOLD


def _rel(v, ref):
    return abs(v - ref) / abs(ref) if ref != 0 else abs(v)


def _quad(f, a, b):
    return integrate(f, a, b, 1e-13, 1e-13).value


def _moment_oracle(params, n):
    if isinstance(params, dist.GenGammaParams) or isinstance(params, dist.InvGammaParams):
        return integrate_half_line(lambda x: x**n * params.pdf(x), 1e-14, 1e-13).value
    return 2 * integrate_half_line(lambda x: x**n * params.pdf(x), 1e-14, 1e-13).value


def _cdf_oracle(params, x):
    if isinstance(params, (dist.SymmetricParams, dist.LocScaleParams)):
        center = 0.0 if isinstance(params, dist.SymmetricParams) else params.theta
        return 0.5 + _quad(params.pdf, center, x) if x >= center else 0.5 - _quad(params.pdf, x, center)
    return _quad(params.pdf, 0.0, x)


def _printed_gamma_cdf_core(alpha, eta, beta, u):
    """``(a+1) eta^s / Gamma((a+b+1)/b) * u^(a+1) e^{-eta u^b} 1F1(1; (a+b+1)/b; eta u^b)``."""
    b = (alpha + beta + 1) / beta
    z = eta * u**beta
    return (alpha + 1) * eta ** ((alpha + 1) / beta) / math.gamma(b) * u ** (alpha + 1) * math.exp(-z) * hyp1f1(1.0, b, z).value


def _printed_bracket(kind, alpha, eta, beta, x):
    """Printed antiderivative: ``x^(a+1)/((a+1)(a+b+1)) [K1(z) Fa -/+ b z K2(z) Fb]``."""
    z = eta * x**beta
    c = (alpha + beta + 1) / (2 * beta)
    arg = z * z / 4 if kind in ("cosh", "sinh") else -z * z / 4
    fa = hyp1f2(1.0, c, c + 0.5, arg).value
    fb = hyp1f2(1.0, c + 0.5, c + 1.0, arg).value
    first, second, sign = {
        "cosh": (math.cosh(z), math.sinh(z), -1),
        "sinh": (math.sinh(z), math.cosh(z), -1),
        "cos": (math.cos(z), math.sin(z), +1),
        "sin": (math.sin(z), math.cos(z), -1),
    }[kind]
    bracket = first * fa + sign * beta * z * second * fb
    return x ** (alpha + 1) / ((alpha + 1) * (alpha + beta + 1)) * bracket


def _printed_identity_lhs(kind, alpha, eta, beta, x):
    """Printed left sides of the cos/sin exponential identities (inner signs flipped)."""
    z = eta * x**beta
    c = (alpha + beta + 1) / (2 * beta)
    fa = hyp1f2(1.0, c, c + 0.5, -z * z / 4).value
    fb = hyp1f2(1.0, c + 0.5, c + 1.0, -z * z / 4).value
    if kind == "cos":
        g = math.cos(z) * fa - beta * z * math.sin(z) * fb
    else:
        g = math.sin(z) * fa + beta * z * math.cos(z) * fb
    return x ** (alpha + 1) / ((alpha + 1) * (alpha + beta + 1)) * g


def _product(alpha, beta, top):
    return math.prod(alpha + m * beta + 1 for m in range(top + 1))


def _entries() -> list[TypoEntry]:
    out = []

    gg = dist.GenGammaParams(1.0, 2.0, 1.0)
    out.append(TypoEntry(
        "gengamma_moment_eta_power", "generalized gamma raw moment",
        "Gamma((a+n+1)/b) / (eta^(a/b) Gamma((a+1)/b))",
        "Gamma((a+n+1)/b) / (eta^(n/b) Gamma((a+1)/b))",
        {"alpha": 1.0, "eta": 2.0, "beta": 1.0, "n": 2},
        lambda: math.gamma(4.0) / (2.0 ** (1.0 / 1.0) * math.gamma(2.0)),
        lambda: gg.raw_moment(2),
        lambda: _moment_oracle(gg, 2),
    ))

    sym = dist.SymmetricParams(0.0, 0.5, 2.0)
    out.append(TypoEntry(
        "symmetric_moment_eta_power", "symmetric family even raw moment",
        "Gamma((a+n+1)/b) / (eta^(a/b) Gamma((a+1)/b))",
        "Gamma((a+n+1)/b) / (eta^(n/b) Gamma((a+1)/b))",
        {"alpha": 0.0, "eta": 0.5, "beta": 2.0, "n": 2},
        lambda: math.gamma(1.5) / (0.5 ** 0.0 * math.gamma(0.5)),
        lambda: sym.raw_moment(2),
        lambda: _moment_oracle(sym, 2),
    ))

    ig = dist.InvGammaParams(3.0, 2.0)
    out.append(TypoEntry(
        "invgamma_moment_denominator", "inverse gamma raw moment",
        "eta^n Gamma(theta-n) / Gamma(theta+1), for n > theta",
        "eta^n Gamma(theta-n) / Gamma(theta), for n < theta",
        {"theta": 3.0, "eta": 2.0, "n": 1},
        lambda: 2.0 * math.gamma(2.0) / math.gamma(4.0),
        lambda: ig.raw_moment(1),
        lambda: _moment_oracle(ig, 1),
    ))

    g11 = dist.GenGammaParams(1.0, 1.0, 1.0)
    out.append(TypoEntry(
        "gengamma_cdf_prefactor", "generalized gamma CDF",
        "(a+1) eta^s / Gamma(s+1) * x^(a+1) e^(-z) 1F1(1; s+1; z)",
        "eta^s / Gamma(s+1) * x^(a+1) e^(-z) 1F1(1; s+1; z)  (beta > 0)",
        {"alpha": 1.0, "eta": 1.0, "beta": 1.0, "x": 1.0},
        lambda: _printed_gamma_cdf_core(1.0, 1.0, 1.0, 1.0),
        lambda: g11.cdf(1.0),
        lambda: _cdf_oracle(g11, 1.0),
    ))

    out.append(TypoEntry(
        "invgamma_cdf_sign", "inverse gamma CDF",
        "-eta^theta / Gamma(theta+1) * x^-theta e^(-eta/x) 1F1(1; theta+1; eta/x)",
        "1 - eta^theta / Gamma(theta+1) * x^-theta e^(-eta/x) 1F1(1; theta+1; eta/x)",
        {"theta": 3.0, "eta": 2.0, "x": 1.0},
        lambda: -(2.0**3) / math.gamma(4.0) * math.exp(-2.0) * hyp1f1(1.0, 4.0, 2.0).value,
        lambda: ig.cdf(1.0),
        lambda: _cdf_oracle(ig, 1.0),
    ))

    sym2 = dist.SymmetricParams(1.0, 1.0, 2.0)
    out.append(TypoEntry(
        "symmetric_cdf_prefactor", "symmetric family CDF",
        "(1/2) [1 - (a+1) eta^s / Gamma(s+1) x^(a+1) e^(-z) 1F1(1; s+1; z)]",
        "1/2 + sign(x)/2 * eta^s / Gamma(s+1) |x|^(a+1) e^(-z) 1F1(1; s+1; z)",
        {"alpha": 1.0, "eta": 1.0, "beta": 2.0, "x": 1.0},
        lambda: 0.5 * (1.0 - _printed_gamma_cdf_core(1.0, 1.0, 2.0, 1.0)),
        lambda: sym2.cdf(1.0),
        lambda: _cdf_oracle(sym2, 1.0),
    ))

    ls = dist.LocScaleParams(dist.SymmetricParams(1.0, 1.0, 2.0), 1.0, 2.0)
    out.append(TypoEntry(
        "locscale_cdf_prefactor", "location-scale family CDF",
        "(1/2) [1 - (1/sigma) (a+1) eta^s / Gamma(s+1) u^(a+1) e^(-eta u^b) 1F1(1; s+1; eta u^b)]",
        "1/2 + sign(u)/2 * eta^s / Gamma(s+1) |u|^(a+1) e^(-eta |u|^b) 1F1(1; s+1; eta |u|^b)",
        {"alpha": 1.0, "eta": 1.0, "beta": 2.0, "theta": 1.0, "sigma": 2.0, "x": 3.0},
        lambda: 0.5 * (1.0 - _printed_gamma_cdf_core(1.0, 1.0, 2.0, 1.0) / 2.0),
        lambda: ls.cdf(3.0),
        lambda: _cdf_oracle(ls, 3.0),
    ))

    gauss = dist.LocScaleParams(dist.SymmetricParams(0.0, 0.5, 2.0), 0.0, 1.0)
    out.append(TypoEntry(
        "gaussian_cdf_missing_power", "generalized Gaussian CDF",
        "(1/2) [1 - (b/sigma) eta^(1/b) / Gamma(1/b) e^(-eta u^b) 1F1(1; (b+1)/b; eta u^b)]",
        "1/2 + sign(u)/2 * eta^(1/b) / Gamma(1/b + 1) |u| e^(-eta |u|^b) 1F1(1; (b+1)/b; eta |u|^b)",
        {"eta": 0.5, "beta": 2.0, "theta": 0.0, "sigma": 1.0, "x": 1.0},
        lambda: 0.5 * (1.0 - 2.0 * 0.5**0.5 / math.gamma(0.5) * math.exp(-0.5) * hyp1f1(1.0, 1.5, 0.5).value),
        lambda: gauss.cdf(1.0),
        lambda: _cdf_oracle(gauss, 1.0),
    ))

    out.append(TypoEntry(
        "gengamma_pdf_normalizer_negative_beta", "generalized gamma density normalizer",
        "(a+1) eta^s / Gamma(s+1)",
        "|a+1| eta^s / Gamma(s+1)",
        {"alpha": -4.0, "eta": 2.0, "beta": -1.0, "x": 1.0},
        lambda: -3.0 * 2.0**3 / math.gamma(4.0) * math.exp(-2.0),
        lambda: dist.InvGammaParams(3.0, 2.0).pdf(1.0),
        lambda: math.exp(-2.0) / integrate_half_line(lambda x: x**-4.0 * math.exp(-2.0 / x), 1e-14, 1e-13).value,
    ))

    for kind in ("cosh", "sinh", "cos", "sin"):
        a, e, b, x = 0.5, 1.0, 2.0, 1.0
        spec = IntegralSpec(kind, a, e, b)
        out.append(TypoEntry(
            f"{kind}_antiderivative_first_term", f"x^a {kind}(eta x^b) antiderivative",
            "x^(a+1)/((a+1)(a+b+1)) [K(z) Fa -/+ b z K'(z) Fb]",
            "x^(a+1)/((a+1)(a+b+1)) [(a+b+1) K(z) Fa -/+ b z K'(z) Fb]",
            {"alpha": a, "eta": e, "beta": b, "x": x},
            (lambda kind=kind: _printed_bracket(kind, a, e, b, x)),
            (lambda spec=spec: antiderivative(spec, x).value),
            (lambda spec=spec: _quad(integrand(spec), 0.0, x)),
        ))

    for kind in ("cos", "sin"):
        a, e, b, x = 0.5, 1.0, 2.0, 1.0
        spec = IntegralSpec(kind, a, e, b)
        out.append(TypoEntry(
            f"{kind}_identity_inner_sign", f"{kind} exponential identity left side",
            "cos: cos Fa - b z sin Fb;  sin: sin Fa + b z cos Fb",
            "cos: (a+b+1) cos Fa + b z sin Fb;  sin: (a+b+1) sin Fa - b z cos Fb",
            {"alpha": a, "eta": e, "beta": b, "x": x},
            (lambda kind=kind: _printed_identity_lhs(kind, a, e, b, x)),
            (lambda spec=spec: antiderivative(spec, x).value),
            (lambda spec=spec: _quad(integrand(spec), 0.0, x)),
        ))

    out.append(TypoEntry(
        "lemma_even_product", "product over m = 0..2j",
        "(a+1)(a+b+1)(2b)^(2j) ((a+b+1)/(2b)+1)_j ((a+2b+1)/(2b)+1)_j",
        "(a+1)(2b)^(2j) ((a+2b+1)/(2b))_j ((a+b+1)/(2b))_j",
        {"alpha": 0.0, "beta": 1.0, "j": 1},
        lambda: 1.0 * 2.0 * 4.0 * pochhammer(2.0, 1) * pochhammer(2.5, 1),
        lambda: 1.0 * 4.0 * pochhammer(1.5, 1) * pochhammer(1.0, 1),
        lambda: _product(0.0, 1.0, 2),
    ))
    out.append(TypoEntry(
        "lemma_odd_product", "product over m = 0..2j+1",
        "(a+1)(a+b+1)(2b)^(2j) ((a+2b+1)/(2b)+1)_j ((a+3b+1)/(2b)+1)_j",
        "(a+1)(a+b+1)(2b)^(2j) ((a+2b+1)/(2b))_j ((a+3b+1)/(2b))_j",
        {"alpha": 0.0, "beta": 1.0, "j": 1},
        lambda: 1.0 * 2.0 * 4.0 * pochhammer(2.5, 1) * pochhammer(3.0, 1),
        lambda: 1.0 * 2.0 * 4.0 * pochhammer(1.5, 1) * pochhammer(2.0, 1),
        lambda: _product(0.0, 1.0, 3),
    ))

    out.append(TypoEntry(
        "halfline_negative_beta_sign", "half-line integral with beta < 0",
        "Gamma((a+b+1)/b) / ((a+1) eta^((a+1)/b))",
        "Gamma((a+b+1)/b) / (|a+1| eta^((a+1)/b))",
        {"alpha": -3.0, "eta": 1.0, "beta": -1.0},
        lambda: math.gamma(3.0) / (-2.0 * 1.0),
        lambda: half_line_integral(-3.0, 1.0, -1.0),
        lambda: integrate_half_line(lambda x: x**-3.0 * math.exp(-1.0 / x), 1e-14, 1e-13).value,
    ))
    return out


ENTRIES: tuple[TypoEntry, ...] = tuple(_entries())


def evaluate(entry: TypoEntry) -> TypoEvidence:
    printed, corrected, oracle = entry.printed(), entry.corrected(), entry.oracle()
    return TypoEvidence(
        entry.key, entry.topic, printed, corrected, oracle, _rel(printed, oracle), _rel(corrected, oracle)
    )


def evaluate_all() -> list[TypoEvidence]:
    return [evaluate(e) for e in ENTRIES]
