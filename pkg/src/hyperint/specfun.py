"""Gamma-function helpers and convergence-controlled hypergeometric series.

``hyp1f1`` sums the confluent series in binary64 with Neumaier compensation,
switching to the Kummer-transformed form for negative arguments so that the
summed terms keep one sign.  ``hyp1f2`` has no such transformation, so its
terms are generated and accumulated in double-double arithmetic; the loss to
cancellation is still measured and folded into the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _dd
from .errors import DomainError, PoleParameter

_EPS = 2.0**-53
_DD_EPS = 2.0**-104
# above this argument the scaled 1F1 sum starts at its largest term;
# below it exp(-x) is a representable first term
_PEAK_START = 600.0


@dataclass(frozen=True)
class SeriesConfig:
    """Stopping rule for every series in the package.

    Summation stops once ``consecutive_small`` successive terms each satisfy
    ``|term| <= rel_tol * |partial_sum| + abs_tol``.  Arguments below
    ``kummer_threshold`` are routed through the Kummer transformation.
    """

    rel_tol: float = 1e-14
    abs_tol: float = 1e-300
    max_terms: int = 10_000
    consecutive_small: int = 3
    kummer_threshold: float = 0.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if not self.abs_tol >= 0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms}")
        if int(self.consecutive_small) != self.consecutive_small or self.consecutive_small < 1:
            raise DomainError(
                f"consecutive_small must be a positive integer, got {self.consecutive_small}"
            )


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class SeriesValue:
    """Outcome of one series evaluation.

    ``trunc_err_est`` is the magnitude of the last included term plus, for
    sums whose partial sums overshoot the result, a rounding-loss estimate
    proportional to the largest partial sum.  ``cancellation`` is that
    largest partial sum divided by ``|value|`` (1 for same-signed terms).
    """

    value: float
    terms_used: int
    trunc_err_est: float
    converged: bool
    cancellation: float = 1.0

    def scaled(self, factor: float) -> "SeriesValue":
        return SeriesValue(
            self.value * factor,
            self.terms_used,
            self.trunc_err_est * abs(factor),
            self.converged,
            self.cancellation,
        )


def pochhammer(theta: float, n: int) -> float:
    """Rising factorial ``theta (theta+1) ... (theta+n-1)``.

    A running product keeps exact zeros when ``theta`` is a non-positive
    integer, which a ratio of gamma functions would not.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"pochhammer order must be a non-negative integer, got {n}")
    result = 1.0
    for k in range(int(n)):
        result *= theta + k
    return result


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def is_pole(p: float) -> bool:
    return p <= 0 and p == math.floor(p)


def _check_poles(*params):
    for p in params:
        if is_pole(p):
            raise PoleParameter(f"denominator parameter {p} is zero or a negative integer")


class _Neumaier:
    __slots__ = ("s", "c", "peak")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0
        self.peak = 0.0

    def add(self, x):
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t
        self.peak = max(self.peak, abs(t))

    @property
    def value(self):
        return self.s + self.c


def _finish(value, last_term, terms, small_run, cfg, peak, unit):
    loss = unit * max(peak - abs(value), 0.0) * max(terms, 1)
    err = abs(last_term) + loss
    done = small_run >= cfg.consecutive_small
    converged = done and err <= cfg.rel_tol * abs(value) + cfg.abs_tol
    ratio = peak / abs(value) if value != 0 else (math.inf if peak > 0 else 1.0)
    return SeriesValue(value, terms, err, converged, max(ratio, 1.0))


def _is_small(term, partial, cfg):
    return abs(term) <= cfg.rel_tol * abs(partial) + cfg.abs_tol


def _direct_1f1(a, b, x, cfg, scale=1.0):
    """Plain term recurrence of the confluent series, times ``scale``."""
    acc = _Neumaier()
    term = scale
    acc.add(term)
    n = 0
    small = 0
    while n + 1 < cfg.max_terms and small < cfg.consecutive_small:
        term *= (a + n) * x / ((b + n) * (n + 1))
        n += 1
        if math.isinf(term):
            return SeriesValue(math.copysign(math.inf, term), n + 1, math.inf, False, math.inf)
        acc.add(term)
        small = small + 1 if _is_small(term, acc.value, cfg) else 0
    return _finish(acc.value, term, n + 1, small, cfg, acc.peak, _EPS)


def _peak_1f1_scaled(a, b, y, cfg):
    """``exp(-y) 1F1(a;b;y)`` for large ``y`` with ``a, b > 0``.

    The sum is started at its largest term, whose logarithm comes from
    ``lgamma``, and extended in both directions; no intermediate quantity
    overflows or underflows.  Rounding in the ``lgamma`` values limits the
    relative accuracy to roughly ``1e-16 * y``, which ``trunc_err_est``
    does not include.
    """
    q = y - b - 1.0
    disc = q * q - 4.0 * (b - a * y)
    n0 = max(0, int((q + math.sqrt(disc)) / 2.0)) if disc > 0 else 0
    log_t = (
        math.lgamma(a + n0) - math.lgamma(a) - math.lgamma(b + n0) + math.lgamma(b)
        + n0 * math.log(y) - math.lgamma(n0 + 1.0) - y
    )
    t0 = math.exp(log_t)
    acc = _Neumaier()
    acc.add(t0)
    used = 1

    term, n, small = t0, n0, 0
    while used < cfg.max_terms and small < cfg.consecutive_small:
        term *= (a + n) * y / ((b + n) * (n + 1))
        n += 1
        used += 1
        acc.add(term)
        small = small + 1 if _is_small(term, acc.value, cfg) else 0
    fwd_small, fwd_last = small, term

    term, n, small = t0, n0, 0
    back_last = 0.0
    while n > 0 and used < cfg.max_terms and small < cfg.consecutive_small:
        n -= 1
        term /= (a + n) * y / ((b + n) * (n + 1))
        used += 1
        acc.add(term)
        back_last = term
        small = small + 1 if _is_small(term, acc.value, cfg) else 0
    back_done = n == 0 or small >= cfg.consecutive_small

    last = max(abs(fwd_last), abs(back_last) if n > 0 else 0.0)
    sv = _finish(acc.value, last, used, fwd_small, cfg, acc.peak, _EPS)
    return SeriesValue(sv.value, used, sv.trunc_err_est, sv.converged and back_done, sv.cancellation)


def hyp1f1_scaled(a: float, b: float, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> SeriesValue:
    """``exp(-x) * 1F1(a; b; x)`` without intermediate overflow.

    For ``x < 0`` this is ``1F1(b-a; b; -x)`` by Kummer's transformation.
    """
    _check_poles(b)
    if x < 0:
        return _direct_1f1(b - a, b, -x, cfg)
    if x == 0:
        return SeriesValue(1.0, 1, 0.0, True)
    if x > _PEAK_START and a > 0 and b > 0:
        return _peak_1f1_scaled(a, b, x, cfg)
    return _direct_1f1(a, b, x, cfg, scale=math.exp(-x))


def hyp1f1(a: float, b: float, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> SeriesValue:
    """Confluent hypergeometric function ``1F1(a; b; x)``.

    Below ``cfg.kummer_threshold`` the identity
    ``1F1(a;b;x) = exp(x) 1F1(b-a;b;-x)`` is used; the product is formed
    inside the scaled kernel so large negative ``x`` does not overflow.
    """
    _check_poles(b)
    if x == 0:
        return SeriesValue(1.0, 1, 0.0, True)
    if x < cfg.kummer_threshold:
        return hyp1f1_scaled(b - a, b, -x, cfg)
    return _direct_1f1(a, b, x, cfg)


def _as_dd(v):
    return v if isinstance(v, tuple) else (float(v), 0.0)


def _dd_series(a, dens, x, cfg, imaginary=False, tail_tol=None):
    """Sum ``sum_n (a)_n / prod_k (dens_k)_n * x^n / n!`` in double-double.

    With ``imaginary`` the argument is ``i*x`` and the real and imaginary
    parts are accumulated separately.  ``tail_tol`` tightens the stopping
    rule for callers that cancel the result against a nearby quantity.
    Returns ``(re, im, n_terms, small_run, last_term, peak)`` with
    ``re``/``im`` as double-double pairs.
    """
    tol = cfg.rel_tol if tail_tol is None else min(cfg.rel_tol, tail_tol)
    a = _as_dd(a)
    dens = [_as_dd(d) for d in dens]
    x = _as_dd(x)
    unit_a = a == (1.0, 0.0)

    term = (1.0, 0.0)
    re = (1.0, 0.0)
    im = (0.0, 0.0)
    peak = 1.0
    n = 0
    small = 0
    while n + 1 < cfg.max_terms and small < cfg.consecutive_small:
        num = x if unit_a else _dd.mul(_dd.add_d(a, float(n)), x)
        den = (float(n + 1), 0.0) if not unit_a else (1.0, 0.0)
        for d in dens:
            den = _dd.mul(den, _dd.add_d(d, float(n)))
        term = _dd.mul(term, _dd.div(num, den))
        n += 1
        if imaginary:
            signed = term if (n // 2) % 2 == 0 else _dd.neg(term)
            if n % 2 == 0:
                re = _dd.add(re, signed)
            else:
                im = _dd.add(im, signed)
            partial = max(abs(re[0]), abs(im[0]))
        else:
            re = _dd.add(re, term)
            partial = abs(re[0])
        peak = max(peak, partial)
        small = small + 1 if abs(term[0]) <= tol * partial + cfg.abs_tol else 0
    return re, im, n + 1, small, term[0], peak


def _hyp1f2_dd(a, b, c, x, cfg=DEFAULT_CONFIG, tail_tol=None):
    """``1F2(a; b, c; x)`` as a double-double pair plus its diagnostics.

    Parameters and argument may themselves be double-double pairs, which
    lets callers keep related parameter sets (``c``, ``c + 1/2``, ...)
    exactly consistent.
    """
    _check_poles(_dd.to_float(_as_dd(b)), _dd.to_float(_as_dd(c)))
    if _as_dd(x) == (0.0, 0.0):
        return (1.0, 0.0), SeriesValue(1.0, 1, 0.0, True)
    re, _, n, small, last, peak = _dd_series(a, [b, c], x, cfg, tail_tol=tail_tol)
    return re, _finish(_dd.to_float(re), last, n, small, cfg, peak, _DD_EPS)


def hyp1f2(a: float, b: float, c: float, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> SeriesValue:
    """Hypergeometric function ``1F2(a; b, c; x)``.

    Terms and partial sums carry about 32 significant digits, so the
    alternating series for negative ``x`` stays accurate while
    ``exp(2*sqrt(-x))`` is well below 1e16.  Past that the returned
    ``trunc_err_est`` grows and ``converged`` turns false.
    """
    _, sv = _hyp1f2_dd(a, b, c, x, cfg)
    return sv


def _hyp1f1_imag_dd(a, b, y, cfg=DEFAULT_CONFIG, tail_tol=None):
    _check_poles(_dd.to_float(_as_dd(b)))
    re, im, n, small, last, peak = _dd_series(a, [b], y, cfg, imaginary=True, tail_tol=tail_tol)
    sv_re = _finish(_dd.to_float(re), last, n, small, cfg, peak, _DD_EPS)
    sv_im = _finish(_dd.to_float(im), last, n, small, cfg, peak, _DD_EPS)
    return re, im, sv_re, sv_im


def hyp1f1_imag(a: float, b: float, y: float, cfg: SeriesConfig = DEFAULT_CONFIG):
    """Real and imaginary parts of ``1F1(a; b; i*y)`` for real ``y``.

    Even-order terms feed the real part and odd-order terms the imaginary
    part, so only real arithmetic is involved.
    """
    _, _, sv_re, sv_im = _hyp1f1_imag_dd(a, b, y, cfg)
    return sv_re, sv_im
