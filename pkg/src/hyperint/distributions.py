"""Generalized gamma-type and Gaussian-type distributions.

Four families share one core, the density ``|beta| eta**s / Gamma(s) *
x**alpha * exp(-eta x**beta)`` on ``(0, inf)`` with ``s = (alpha+1)/beta``:

* ``GenGammaParams``: the core itself; ``beta < 0`` is allowed when ``alpha < -1``.
* ``InvGammaParams``: the core with ``alpha = -theta-1``, ``beta = -1``.
* ``SymmetricParams``: the core mirrored onto the real line via ``|x|``.
* ``LocScaleParams``: a symmetric base shifted by ``theta`` and scaled by ``sigma``.

With ``z = eta x**beta`` the core CDF is ``x**(alpha+1)/(alpha+1) * G(-z)``
normalized, where ``G`` is the bracket of the exponential antiderivative; this
reduces to the regularized incomplete gamma ``P(s, z)`` for ``beta > 0`` and
``Q(s, z)`` for ``beta < 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, InvalidSpec, MomentDoesNotExist, NoConvergence
from .integrals import exp_bracket
from .specfun import DEFAULT_CONFIG, SeriesConfig, log_gamma

QUANTILE_MAX_ITER = 200
_QUANTILE_TOL = 1e-12
_CDF_SLACK = 1e-9


def _finite(**kw):
    for name, v in kw.items():
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise InvalidSpec(f"{name} must be a finite real, got {v!r}")


def _saturated(s, z):
    # P(s, z) is 1 to double precision well before this point
    return z > s + 40.0 * math.sqrt(s + 1.0) + 50.0


@dataclass(frozen=True)
class GenGammaParams:
    alpha: float
    eta: float
    beta: float

    family = "gengamma"

    def __post_init__(self):
        _finite(alpha=self.alpha, eta=self.eta, beta=self.beta)
        if not self.eta > 0:
            raise InvalidSpec(f"eta must be > 0, got {self.eta}")
        if self.beta == 0:
            raise InvalidSpec("beta must be nonzero")
        if self.alpha == -1:
            raise InvalidSpec("alpha = -1 is excluded")
        if not (self.alpha + 1) / self.beta > 0:
            raise InvalidSpec(
                "density is not normalizable: need alpha > -1 for beta > 0, alpha < -1 for beta < 0"
            )

    @property
    def shape(self) -> float:
        return (self.alpha + 1) / self.beta

    def log_normalizer(self) -> float:
        s = self.shape
        return math.log(abs(self.beta)) + s * math.log(self.eta) - log_gamma(s)

    def pdf(self, x: float) -> float:
        if not x >= 0:
            raise DomainError(f"x must be >= 0, got {x}")
        if math.isinf(x):
            return 0.0
        if x == 0:
            if self.beta < 0 or self.alpha > 0:
                return 0.0
            return math.exp(self.log_normalizer()) if self.alpha == 0 else math.inf
        log_x = math.log(x)
        z = self.eta * math.exp(self.beta * log_x)
        return math.exp(self.log_normalizer() + self.alpha * log_x - z)

    def cdf(self, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
        if not x >= 0:
            raise DomainError(f"x must be >= 0, got {x}")
        lower = 1.0 if self.beta < 0 else 0.0
        if x == 0:
            return 0.0
        if math.isinf(x):
            return 1.0
        s = self.shape
        z = self.eta * math.exp(self.beta * math.log(x))
        if _saturated(s, z):
            return 1.0 - lower
        # norm * x^(alpha+1)/(alpha+1) == sign(beta) * z^s / Gamma(s+1)
        g, sv = exp_bracket(self.alpha, self.beta, -z, cfg)
        if not sv.converged:
            raise NoConvergence("CDF series did not converge", value=g)
        mass = math.exp(s * math.log(z) - log_gamma(s + 1)) * g if z > 0 else 0.0
        value = lower + math.copysign(mass, self.beta)
        return _clamp_probability(value)

    def raw_moment(self, n: int) -> float:
        n = _check_order(n)
        sn = (self.alpha + n + 1) / self.beta
        if not sn > 0:
            raise MomentDoesNotExist(f"moment of order {n} does not exist for {self}")
        return math.exp(log_gamma(sn) - log_gamma(self.shape) - (n / self.beta) * math.log(self.eta))


@dataclass(frozen=True)
class InvGammaParams:
    theta: float
    eta: float

    family = "invgamma"

    def __post_init__(self):
        _finite(theta=self.theta, eta=self.eta)
        if not self.theta > 0:
            raise InvalidSpec(f"theta must be > 0, got {self.theta}")
        if not self.eta > 0:
            raise InvalidSpec(f"eta must be > 0, got {self.eta}")

    @property
    def core(self) -> GenGammaParams:
        return GenGammaParams(-self.theta - 1.0, self.eta, -1.0)

    def pdf(self, x: float) -> float:
        return self.core.pdf(x)

    def cdf(self, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
        return self.core.cdf(x, cfg)

    def raw_moment(self, n: int) -> float:
        n = _check_order(n)
        if not n < self.theta:
            raise MomentDoesNotExist(f"moment of order {n} needs n < theta = {self.theta}")
        return math.exp(n * math.log(self.eta) + log_gamma(self.theta - n) - log_gamma(self.theta))


@dataclass(frozen=True)
class SymmetricParams:
    alpha: float
    eta: float
    beta: float

    family = "symmetric"

    def __post_init__(self):
        _finite(alpha=self.alpha, eta=self.eta, beta=self.beta)
        if not self.beta > 0:
            raise InvalidSpec(f"beta must be > 0, got {self.beta}")
        if not self.alpha > -1:
            raise InvalidSpec(f"alpha must be > -1, got {self.alpha}")
        if not self.eta > 0:
            raise InvalidSpec(f"eta must be > 0, got {self.eta}")

    @property
    def core(self) -> GenGammaParams:
        return GenGammaParams(self.alpha, self.eta, self.beta)

    def pdf(self, x: float) -> float:
        _finite_or_inf(x)
        return 0.5 * self.core.pdf(abs(x))

    def cdf(self, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
        _finite_or_inf(x)
        if x == 0:
            return 0.5
        half = 0.5 * self.core.cdf(abs(x), cfg)
        return 0.5 + half if x > 0 else 0.5 - half

    def raw_moment(self, n: int) -> float:
        n = _check_order(n)
        if n % 2:
            return 0.0
        return self.core.raw_moment(n)


@dataclass(frozen=True)
class LocScaleParams:
    base: SymmetricParams
    theta: float
    sigma: float

    family = "locscale"

    def __post_init__(self):
        if not isinstance(self.base, SymmetricParams):
            raise InvalidSpec("base must be SymmetricParams")
        _finite(theta=self.theta, sigma=self.sigma)
        if not self.sigma > 0:
            raise InvalidSpec(f"sigma must be > 0, got {self.sigma}")

    def pdf(self, x: float) -> float:
        _finite_or_inf(x)
        return self.base.pdf((x - self.theta) / self.sigma) / self.sigma

    def cdf(self, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
        _finite_or_inf(x)
        return self.base.cdf((x - self.theta) / self.sigma, cfg)

    def raw_moment(self, n: int) -> float:
        """Binomial expansion of ``(theta + sigma u)**n`` over even powers of ``u``."""
        n = _check_order(n)
        b = self.base
        terms = [
            self.theta ** (n - 2 * l) * math.comb(n, 2 * l) * self.sigma ** (2 * l) * b.raw_moment(2 * l)
            for l in range(n // 2 + 1)
        ]
        return math.fsum(terms)


Params = Union[GenGammaParams, InvGammaParams, SymmetricParams, LocScaleParams]


def _check_order(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"moment order must be a non-negative integer, got {n!r}")
    return int(n)


def _finite_or_inf(x):
    if math.isnan(x):
        raise DomainError("x must not be NaN")


def _clamp_probability(v):
    if not -_CDF_SLACK <= v <= 1 + _CDF_SLACK:
        raise NoConvergence(f"CDF value {v} is outside [0, 1]", value=v)
    return min(max(v, 0.0), 1.0)


def gaussian_moment(theta: float, sigma: float, n: int) -> float:
    """Raw moment of ``N(theta, sigma**2)``, arranged so ``theta = 0`` is safe."""
    n = _check_order(n)
    terms = [
        theta ** (n - 2 * l) * (2 * sigma**2) ** l * math.comb(n, 2 * l) * math.gamma(l + 0.5) / math.sqrt(math.pi)
        for l in range(n // 2 + 1)
    ]
    return math.fsum(terms)


def pdf(params: Params, x: float) -> float:
    return params.pdf(x)


def cdf(params: Params, x: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    return params.cdf(x, cfg)


def raw_moment(params: Params, n: int) -> float:
    return params.raw_moment(n)


def mean_variance(params: Params) -> tuple[float, float]:
    """Mean and variance; for location-scale families the mean is ``theta`` exactly."""
    if isinstance(params, LocScaleParams):
        return params.theta, params.sigma**2 * params.base.raw_moment(2)
    if isinstance(params, SymmetricParams):
        return 0.0, params.raw_moment(2)
    m1 = params.raw_moment(1)
    return m1, params.raw_moment(2) - m1 * m1


# ---------------------------------------------------------------- quantiles


def _core_quantile(core: GenGammaParams, p: float, cfg: SeriesConfig) -> float:
    """Solve ``core.cdf(x) = p`` by bracket expansion and Newton-bisection."""
    lo, hi = 0.0, 1.0
    for _ in range(2100):
        if core.cdf(hi, cfg) >= p:
            break
        lo, hi = hi, hi * 2.0
    else:
        raise NoConvergence("could not bracket the quantile", value=hi)
    if lo == 0.0:
        for _ in range(2100):
            if core.cdf(hi / 2.0, cfg) < p:
                lo = hi / 2.0
                break
            hi /= 2.0
            if hi == 0.0:
                return 0.0

    x = math.sqrt(lo * hi) if lo > 0 else 0.5 * hi
    for _ in range(QUANTILE_MAX_ITER):
        err = core.cdf(x, cfg) - p
        if abs(err) <= _QUANTILE_TOL:
            return x
        if err > 0:
            hi = x
        else:
            lo = x
        if hi - lo <= 4 * math.ulp(hi):
            return x
        density = core.pdf(x)
        step = x - err / density if density > 0 and math.isfinite(density) else math.nan
        if lo < step < hi:
            x = step
        else:
            # geometric midpoint copes with brackets spanning many decades
            x = math.sqrt(lo * hi) if lo > 0 and hi / lo > 4 else 0.5 * (lo + hi)
    raise NoConvergence(f"quantile did not converge in {QUANTILE_MAX_ITER} iterations", value=x)


def quantile(params: Params, p: float, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """``x`` with ``cdf(x) = p`` to within about 1e-12."""
    if not 0 < p < 1:
        raise DomainError(f"p must lie in (0, 1), got {p}")
    if isinstance(params, GenGammaParams):
        return _core_quantile(params, p, cfg)
    if isinstance(params, InvGammaParams):
        return _core_quantile(params.core, p, cfg)
    if isinstance(params, LocScaleParams):
        return params.theta + params.sigma * quantile(params.base, p, cfg)
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -quantile(params, 1.0 - p, cfg)
    return _core_quantile(params.core, 2.0 * p - 1.0, cfg)


# ---------------------------------------------------------------- sampling


def _reg_gamma(s: float, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Regularized incomplete gamma ``(P(s, y), Q(s, y))`` for an array ``y > 0``.

    Power series below ``s + 1``, Lentz continued fraction above.
    """
    y = np.asarray(y, dtype=float)
    p = np.empty_like(y)
    q = np.empty_like(y)
    lg = math.lgamma(s)
    use_series = y < s + 1.0

    ys = y[use_series]
    if ys.size:
        with np.errstate(divide="ignore"):
            t = np.exp(s * np.log(ys) - ys - math.lgamma(s + 1.0))
        total = t.copy()
        comp = np.zeros_like(total)
        for n in range(1, 20000):
            t = t * ys / (s + n)
            tmp = total + t
            comp += np.where(np.abs(total) >= np.abs(t), (total - tmp) + t, (t - tmp) + total)
            total = tmp
            if np.all(t <= 2e-17 * total):
                break
        ps = np.minimum(total + comp, 1.0)
        p[use_series] = ps
        q[use_series] = 1.0 - ps

    yc = y[~use_series]
    if yc.size:
        tiny = 1e-300
        b = yc + 1.0 - s
        c = np.full_like(yc, 1.0 / tiny)
        d = 1.0 / b
        h = d.copy()
        live = np.arange(yc.size)
        for i in range(1, 5000):
            an = -i * (i - s)
            b[live] += 2.0
            dl = an * d[live] + b[live]
            dl = 1.0 / np.where(np.abs(dl) < tiny, tiny, dl)
            cl = b[live] + an / c[live]
            cl = np.where(np.abs(cl) < tiny, tiny, cl)
            delta = dl * cl
            d[live], c[live] = dl, cl
            h[live] *= delta
            live = live[np.abs(delta - 1.0) > 1e-15]
            if live.size == 0:
                break
        qc = np.exp(s * np.log(yc) - yc - lg) * h
        q[~use_series] = qc
        p[~use_series] = 1.0 - qc
    return p, q


def _initial_gamma_guess(s: float, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Starting point for the inversion (the classical Wilson-Hilferty style guess)."""
    if s > 1.0:
        pp = np.minimum(lower, upper)
        t = np.sqrt(-2.0 * np.log(pp))
        x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t
        x = np.where(lower < 0.5, -x, x)
        return np.maximum(1e-3, s * (1.0 - 1.0 / (9.0 * s) - x / (3.0 * math.sqrt(s))) ** 3)
    t = 1.0 - s * (0.253 + s * 0.12)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = (lower / t) ** (1.0 / s)
        large = 1.0 - np.log(upper / (1.0 - t))
    return np.where(lower < t, small, large)


def _invert_reg_gamma(s: float, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """``y`` with ``P(s, y) = lower`` (equivalently ``Q(s, y) = upper``).

    Newton on the log of whichever tail is smaller, safeguarded by a bracket,
    so neither tail loses relative accuracy to ``1 - u`` cancellation.
    Converged entries drop out of the active set.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    use_q = upper < lower
    log_target = np.log(np.where(use_q, upper, lower))
    y = _initial_gamma_guess(s, lower, upper)
    y = np.where(np.isfinite(y) & (y > 0), y, s + 1.0)
    lo = np.zeros_like(y)
    hi = np.full_like(y, np.inf)
    lg = math.lgamma(s)
    active = np.arange(y.size)
    for _ in range(QUANTILE_MAX_ITER):
        if active.size == 0:
            return y
        ya, uq = y[active], use_q[active]
        p, q = _reg_gamma(s, ya)
        val = np.where(uq, q, p)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            resid = np.log(val) - log_target[active]
            # sign of the residual in the P direction
            above = np.where(uq, resid < 0, resid > 0)
            hi_a = np.where(above, ya, hi[active])
            lo_a = np.where(above, lo[active], ya)
            dens = np.exp((s - 1.0) * np.log(ya) - ya - lg)
            slope = np.where(uq, -dens / q, dens / p)
            step = ya - resid / slope
        hi[active], lo[active] = hi_a, lo_a
        done = (np.abs(resid) <= 1e-14) | (np.isfinite(hi_a) & (hi_a - lo_a <= 1e-15 * hi_a))
        ok = np.isfinite(step) & (step > lo_a) & (step < hi_a)
        fallback = np.where(
            np.isinf(hi_a),
            2.0 * ya,
            np.where((lo_a > 0) & (hi_a > 4 * lo_a), np.sqrt(lo_a * hi_a), 0.5 * (lo_a + hi_a)),
        )
        y[active] = np.where(done, ya, np.where(ok, step, fallback))
        active = active[~done]
    if active.size == 0:
        return y
    raise NoConvergence("vectorized gamma inversion did not converge")


def sample(params: Params, count: int, seed: int) -> list[float]:
    """``count`` inverse-CDF draws from ``numpy.random.default_rng(seed)``."""
    if isinstance(count, bool) or not isinstance(count, (int, np.integer)) or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    rng = np.random.default_rng(seed)
    u = rng.random(int(count))
    u = np.where(u == 0.0, 2.0**-60, u)
    if isinstance(params, LocScaleParams):
        base = _sample_symmetric(params.base, u)
        return (params.theta + params.sigma * base).tolist()
    if isinstance(params, SymmetricParams):
        return _sample_symmetric(params, u).tolist()
    core = params.core if isinstance(params, InvGammaParams) else params
    s = core.shape
    if core.beta > 0:
        y = _invert_reg_gamma(s, u, 1.0 - u)
    else:
        y = _invert_reg_gamma(s, 1.0 - u, u)
    with np.errstate(divide="ignore"):
        x = (y / core.eta) ** (1.0 / core.beta)
    return x.tolist()


def _sample_symmetric(params: SymmetricParams, u: np.ndarray) -> np.ndarray:
    upper = 2.0 * np.minimum(u, 1.0 - u)  # 1 - |2u - 1|, without cancellation
    y = _invert_reg_gamma(params.core.shape, 1.0 - upper, upper)
    mag = (y / params.eta) ** (1.0 / params.beta)
    return np.where(u >= 0.5, mag, -mag)
