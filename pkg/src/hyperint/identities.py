"""Pointwise residuals of the product lemma and the hypergeometric identities.

Each identity is evaluated as ``lhs - rhs`` with the two sides computed along
independent paths: the left sides use the 1F2 brackets of the antiderivatives,
the right sides use 1F1 only.  The complex-exponential identities are split
into their real and imaginary parts.

Sign and prefactor conventions follow the corrected antiderivative brackets
(see ``hyperint.integrals``); ``hyperint.typo_ledger`` records how the printed
forms differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import DomainError
from .integrals import hyperbolic_brackets, trig_brackets
from .specfun import DEFAULT_CONFIG, SeriesConfig, hyp1f1_imag, hyp1f1_scaled, pochhammer

_TIE_TOL = 1e-12


class IdentityId(str, Enum):
    L1A = "L1a"
    L1B = "L1b"
    L1C = "L1c"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"


LEMMA_IDS = (IdentityId.L1A, IdentityId.L1B, IdentityId.L1C)
HYPERGEOMETRIC_IDS = (IdentityId.T2, IdentityId.T3, IdentityId.T4, IdentityId.T5, IdentityId.T6, IdentityId.T7)


@dataclass(frozen=True)
class IdentityResidual:
    lhs: float
    rhs: float
    residual: float
    rel_residual: float
    component: Optional[str] = None

    @classmethod
    def of(cls, lhs: float, rhs: float, component: Optional[str] = None) -> "IdentityResidual":
        diff = lhs - rhs
        rel = abs(diff) / (1.0 + max(abs(lhs), abs(rhs)))
        return cls(lhs, rhs, diff, rel, component)


def _product(alpha, beta, top):
    p = 1.0
    for m in range(top + 1):
        p *= alpha + m * beta + 1
    return p


def check_lemma1(variant: str, alpha: float, beta: float, j: int) -> IdentityResidual:
    """Product of ``alpha + m*beta + 1`` against its Pochhammer form.

    ``a``: m = 0..j, ``b``: m = 0..2j, ``c``: m = 0..2j+1.  The Pochhammer
    forms used for ``b`` and ``c`` are the ones that hold for every ``j >= 0``.
    """
    variant = variant.lower().removeprefix("l1")
    if variant not in ("a", "b", "c"):
        raise DomainError(f"unknown lemma variant {variant!r}")
    if isinstance(j, bool) or not isinstance(j, int) or j < 0:
        raise DomainError(f"j must be a non-negative integer, got {j!r}")
    if beta == 0:
        raise DomainError("beta must be nonzero")
    if variant == "a":
        lhs = _product(alpha, beta, j)
        rhs = (alpha + 1) * beta**j * pochhammer((alpha + 1) / beta + 1, j)
    elif variant == "b":
        lhs = _product(alpha, beta, 2 * j)
        rhs = (
            (alpha + 1)
            * (2 * beta) ** (2 * j)
            * pochhammer((alpha + 2 * beta + 1) / (2 * beta), j)
            * pochhammer((alpha + beta + 1) / (2 * beta), j)
        )
    else:
        lhs = _product(alpha, beta, 2 * j + 1)
        rhs = (
            (alpha + 1)
            * (alpha + beta + 1)
            * (2 * beta) ** (2 * j)
            * pochhammer((alpha + 2 * beta + 1) / (2 * beta), j)
            * pochhammer((alpha + 3 * beta + 1) / (2 * beta), j)
        )
    return IdentityResidual.of(lhs, rhs)


def _check_params(alpha, beta, eta, x):
    for name, v in (("alpha", alpha), ("beta", beta), ("eta", eta), ("x", x)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v}")
    if beta == 0 or eta == 0:
        raise DomainError("beta and eta must be nonzero")
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x}")
    if abs(alpha + 1) <= _TIE_TOL or abs(alpha + beta + 1) <= _TIE_TOL:
        raise DomainError("alpha = -1 and alpha = -beta - 1 are excluded")


def check_identity(
    identity: "IdentityId | str",
    alpha: float,
    beta: float,
    eta: float,
    x: float,
    cfg: SeriesConfig = DEFAULT_CONFIG,
) -> list[IdentityResidual]:
    """Residuals of one of T2..T7 at a point.

    T2-T6 give a single residual.  T7 gives two, tagged ``re`` and ``im``.
    """
    identity = IdentityId(identity)
    if identity not in HYPERGEOMETRIC_IDS:
        raise DomainError(f"{identity.value} is a lemma identity; use check_lemma1")
    _check_params(alpha, beta, eta, x)
    z = eta * x**beta
    b = (alpha + beta + 1) / beta

    if identity in (IdentityId.T2, IdentityId.T3, IdentityId.T4):
        g_cosh, g_sinh, _ = hyperbolic_brackets(alpha, beta, z, cfg)
        up = hyp1f1_scaled(1.0, b, -z, cfg).value  # e^z 1F1(1; b; -z)
        down = hyp1f1_scaled(1.0, b, z, cfg).value  # e^-z 1F1(1; b; z)
        if identity is IdentityId.T2:
            return [IdentityResidual.of(g_cosh, 0.5 * (up + down))]
        if identity is IdentityId.T3:
            return [IdentityResidual.of(g_sinh, 0.5 * (up - down))]
        return [IdentityResidual.of(up, g_cosh + g_sinh)]

    g_cos, g_sin, _ = trig_brackets(alpha, beta, z, cfg)
    sv_re, sv_im = hyp1f1_imag(1.0, b, -z, cfg)
    cz, sz = math.cos(z), math.sin(z)
    # e^{iz} 1F1(1; b; -iz)
    w_re = cz * sv_re.value - sz * sv_im.value
    w_im = sz * sv_re.value + cz * sv_im.value
    if identity is IdentityId.T5:
        return [IdentityResidual.of(g_cos, w_re)]
    if identity is IdentityId.T6:
        return [IdentityResidual.of(g_sin, w_im)]
    return [IdentityResidual.of(w_re, g_cos, "re"), IdentityResidual.of(w_im, g_sin, "im")]


def worst(residuals: list[IdentityResidual]) -> IdentityResidual:
    """The component with the largest relative residual."""
    return max(residuals, key=lambda r: r.rel_residual)


def sweep(
    identity: "IdentityId | str",
    samples: int,
    seed: int,
    cfg: SeriesConfig = DEFAULT_CONFIG,
) -> list[tuple[dict, IdentityResidual]]:
    """Random points from the validated region and their worst residuals.

    Hypergeometric identities draw ``alpha`` in (-0.9, 3), ``beta`` in {1, 2, 3}, ``eta`` in
    (0.2, 2) and ``x`` in (0.1, 2).  Lemma variants draw ``alpha`` in (-0.9, 3),
    ``beta`` in (0.2, 3) and ``j`` in 1..12.
    """
    import numpy as np

    if samples < 1:
        raise DomainError("samples must be positive")
    identity = IdentityId(identity)
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(samples):
        alpha = float(rng.uniform(-0.9, 3.0))
        if identity in LEMMA_IDS:
            beta = float(rng.uniform(0.2, 3.0))
            j = int(rng.integers(1, 13))
            point = {"alpha": alpha, "beta": beta, "j": j}
            res = check_lemma1(identity.value, alpha, beta, j)
        else:
            beta = float(rng.choice([1.0, 2.0, 3.0]))
            eta = float(rng.uniform(0.2, 2.0))
            x = float(rng.uniform(0.1, 2.0))
            point = {"alpha": alpha, "beta": beta, "eta": eta, "x": x}
            res = worst(check_identity(identity, alpha, beta, eta, x, cfg))
        out.append((point, res))
    return out
