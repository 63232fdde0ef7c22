"""Independent numerical ground truth: adaptive Gauss-Kronrod quadrature and
Monte-Carlo moments.

Nothing here touches the hypergeometric machinery, so agreement between a
closed form and this module is evidence rather than a tautology.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import NoConvergence

# Kronrod 15-point abscissae and weights with the embedded 7-point Gauss weights
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

MAX_DEPTH = 60
MAX_INTERVALS = 20000
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_err_est: float
    subdivisions: int
    converged: bool


def _gk15(f, a, b):
    """One 15-point Kronrod panel: (integral, error estimate)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    resabs = abs(resk)
    fv1 = [0.0] * 7
    fv2 = [0.0] * 7
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(center - dx)
        f2 = f(center + dx)
        fv1[j], fv2[j] = f1, f2
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    reskh = 0.5 * resk
    resasc = _WGK[7] * abs(fc - reskh)
    for j in range(7):
        resasc += _WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * half
    resabs *= abs(half)
    resasc *= abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0 and err != 0:
        err = resasc * min(1.0, (200 * err / resasc) ** 1.5)
    if resabs > 1e-290 / (50 * _EPS):
        err = max(50 * _EPS * resabs, err)
    return result, err


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-12,
    *,
    raise_on_failure: bool = False,
) -> QuadratureResult:
    """Globally adaptive GK 7/15 quadrature of ``f`` over ``[a, b]``.

    The panel with the largest error estimate is bisected until the total
    estimate meets ``max(abs_tol, rel_tol*|value|)``, a panel reaches depth 60,
    or the interval budget runs out.  On failure the best estimate is returned
    with ``converged=False``, or ``NoConvergence`` is raised if requested.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got a={a}, b={b}")
    value, err = _gk15(f, a, b)
    # heap of (-err, a, b, value, err, depth)
    heap = [(-err, a, b, value, err, 0)]
    total, total_err = value, err
    subdivisions = 1
    stuck = False
    while total_err > max(abs_tol, rel_tol * abs(total)):
        if subdivisions >= MAX_INTERVALS:
            stuck = True
            break
        _, lo, hi, v, e, depth = heapq.heappop(heap)
        if depth >= MAX_DEPTH:
            heapq.heappush(heap, (0.0, lo, hi, v, e, depth))
            stuck = True
            break
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1, e1, depth + 1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2, depth + 1))
        subdivisions += 1
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        if subdivisions % 64 == 0 or total_err <= max(abs_tol, rel_tol * abs(total)):
            # periodic resum cancels drift from the incremental updates
            total = math.fsum(item[3] for item in heap)
            total_err = math.fsum(item[4] for item in heap)
    converged = not stuck and total_err <= max(abs_tol, rel_tol * abs(total))
    result = QuadratureResult(total, total_err, subdivisions, converged)
    if not converged and raise_on_failure:
        raise NoConvergence(f"quadrature did not converge (err est {total_err:.3g})", value=total)
    return result


def integrate_half_line(
    f: Callable[[float], float],
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-12,
    *,
    scale: float = 1.0,
    raise_on_failure: bool = False,
) -> QuadratureResult:
    """``int_0^inf f(x) dx`` via ``x = scale * t / (1 - t)`` on ``t in (0, 1)``.

    GK nodes never hit the endpoints, so integrable endpoint singularities in
    ``t`` are tolerated.  ``scale`` should roughly match the decay length of
    ``f`` so that the mass is not squeezed into a corner of ``(0, 1)``.
    """
    if not scale > 0:
        raise ValueError("scale must be positive")

    def g(t):
        u = 1.0 - t
        if u == 0.0:
            return 0.0
        x = scale * t / u
        if not math.isfinite(x):
            return 0.0
        fx = f(x)
        return 0.0 if fx == 0 else fx * scale / (u * u)

    return integrate(g, 0.0, 1.0, abs_tol, rel_tol, raise_on_failure=raise_on_failure)


def integrate_real_line(
    f: Callable[[float], float],
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-12,
    *,
    center: float = 0.0,
    scale: float = 1.0,
    raise_on_failure: bool = False,
) -> QuadratureResult:
    """``int_R f(x) dx`` as two half-line integrals split at ``center``."""
    right = integrate_half_line(lambda u: f(center + u), abs_tol / 2, rel_tol, scale=scale,
                                raise_on_failure=raise_on_failure)
    left = integrate_half_line(lambda u: f(center - u), abs_tol / 2, rel_tol, scale=scale,
                               raise_on_failure=raise_on_failure)
    return QuadratureResult(
        right.value + left.value,
        right.abs_err_est + left.abs_err_est,
        right.subdivisions + left.subdivisions,
        right.converged and left.converged,
    )


def mc_moment(sampler: Callable[[int], "list[float]"], n: int, count: int) -> tuple[float, float]:
    """Sample mean of ``x**n`` over ``count`` draws and its standard error.

    ``sampler(count)`` must return ``count`` variates (a list or numpy array).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if count < 1000:
        raise ValueError("count must be at least 1000")
    xs = sampler(count)
    if len(xs) != count:
        raise ValueError(f"sampler returned {len(xs)} values, expected {count}")
    vals = [float(x) ** n for x in xs]
    mean = math.fsum(vals) / count
    var = math.fsum((v - mean) ** 2 for v in vals) / (count - 1)
    return mean, math.sqrt(var / count)
