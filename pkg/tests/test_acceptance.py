"""Acceptance criteria 1-9, one check per criterion.

Each ``criterion_N`` returns ``(passed, detail)``.  Under pytest the results
are asserted and summarized at the end of the run; ``python3
tests/test_acceptance.py`` runs the same checks and prints one line each.
"""

from __future__ import annotations

import io
import itertools
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, oracle_mass, oracle_moment  # noqa: E402

from hyperint import (  # noqa: E402
    GenGammaParams,
    IntegralSpec,
    InvalidSpec,
    InvGammaParams,
    LocScaleParams,
    SymmetricParams,
    cdf,
    definite_integral,
    half_line_integral,
    mean_variance,
    pdf,
    quantile,
    raw_moment,
    sample,
)
from hyperint.cli import EXIT_DOMAIN, EXIT_NUMERIC, EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, main  # noqa: E402
from hyperint.distributions import gaussian_moment  # noqa: E402
from hyperint.identities import LEMMA_IDS, HYPERGEOMETRIC_IDS, check_lemma1, sweep  # noqa: E402
from hyperint.integrals import integrand  # noqa: E402
from hyperint.oracle import integrate, integrate_half_line, mc_moment  # noqa: E402
from hyperint.typo_ledger import evaluate_all  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
GAUSS = SymmetricParams(0.0, 0.5, 2.0)


def _rel(v, ref):
    return abs(v - ref) / abs(ref)


# ---------------------------------------------------------------- 1


def criterion_1():
    """Closed-form definite integrals vs adaptive quadrature on the full grid."""
    tol, limit = 1e-8, 60.0
    specs = []
    for kind, alpha, beta, eta in itertools.product(
        ["exp", "cosh", "sinh", "cos", "sin"], [-0.5, 0.0, 0.5, 1.0, 2.3], [0.5, 1.0, 2.0, 3.0], [0.5, 1.0, 2.0]
    ):
        try:
            specs.append(IntegralSpec(kind, alpha, eta, beta))
        except InvalidSpec:
            pass
    start = time.perf_counter()
    worst, worst_spec = 0.0, None
    for spec in specs:
        value = definite_integral(spec, 0.1, 2.5)
        ref = integrate(integrand(spec), 0.1, 2.5, 1e-14, 1e-13).value
        err = _rel(value, ref)
        if err > worst:
            worst, worst_spec = err, spec
    elapsed = time.perf_counter() - start
    ok = len(specs) >= 200 and worst <= tol and elapsed <= limit
    where = f"{worst_spec.kind.value} a={worst_spec.alpha} b={worst_spec.beta} e={worst_spec.eta}"
    return ok, (f"{len(specs)} specs, max rel discrepancy {worst:.2e} at {where} (tol {tol:g}), "
                f"{elapsed:.1f} s incl. oracle (limit {limit:g} s)")


# ---------------------------------------------------------------- 2


def criterion_2():
    """Half-line closed form vs half-line quadrature for 50 triples."""
    tol = 1e-8
    triples = [(a, e, b) for a, e, b in itertools.product([-0.5, 0.0, 1.0, 2.5], [0.5, 1.0, 2.0], [0.5, 1.0, 2.0, 3.0])]
    triples += [(-3.0, 1.0, -1.0), (-2.5, 2.0, -2.0)]
    worst = 0.0
    for a, e, b in triples:
        scale = (max((a + 1) / b, 0.5) / e) ** (1 / b)
        ref = integrate_half_line(lambda x: x**a * math.exp(-e * x**b), 1e-15, 1e-13, scale=scale).value
        worst = max(worst, _rel(half_line_integral(a, e, b), ref))
    gauss_err = abs(half_line_integral(0.0, 1.0, 2.0) - math.sqrt(math.pi) / 2)
    betas = {b for _, _, b in triples}
    ok = len(triples) == 50 and {0.5, 3.0} <= betas and worst <= tol and gauss_err <= 1e-10
    return ok, (f"{len(triples)} triples incl. beta=1/2, 3 and beta<0, max rel error {worst:.2e} (tol {tol:g}); "
                f"Gaussian |I - sqrt(pi)/2| = {gauss_err:.1e} (tol 1e-10)")


# ---------------------------------------------------------------- 3


def criterion_3():
    """Identity residual sweeps and exact lemma products."""
    thm_tol, lem_tol = 1e-9, 1e-12
    thm = {i.value: max(r.rel_residual for _, r in sweep(i, 200, seed=20240)) for i in HYPERGEOMETRIC_IDS}
    rng = np.random.default_rng(12)
    lem = 0.0
    for _ in range(50):
        alpha, beta = float(rng.uniform(-0.9, 3.0)), float(rng.uniform(0.2, 3.0))
        for ident in LEMMA_IDS:
            for j in range(1, 13):
                lem = max(lem, check_lemma1(ident.value, alpha, beta, j).rel_residual)
    worst_thm = max(thm.values())
    ok = worst_thm <= thm_tol and lem <= lem_tol
    per = ", ".join(f"{k} {v:.1e}" for k, v in thm.items())
    return ok, (f"200-point sweeps: {per} (tol {thm_tol:g}); "
                f"lemma a/b/c for j=1..12 over 50 (alpha, beta): max {lem:.1e} (tol {lem_tol:g})")


# ---------------------------------------------------------------- 4


def _family_grid():
    out = []
    for a, b, e in itertools.product([-0.5, 0.0, 1.0, 2.0], [0.5, 1.0, 2.0, 4.0], [0.5, 1.0, 2.0]):
        out.append(GenGammaParams(a, e, b))
        out.append(SymmetricParams(a, e, b))
        for theta, sigma in itertools.product([0.0, 1.0], [1.0, 2.0]):
            out.append(LocScaleParams(SymmetricParams(a, e, b), theta, sigma))
    for shape, e in itertools.product([0.5, 1.0, 2.0, 4.0], [0.5, 1.0, 2.0]):
        out.append(InvGammaParams(shape, e))
    return out


def criterion_4():
    """Every family's pdf integrates to one across the parameter grid."""
    tol = 1e-7
    grid = _family_grid()
    worst, where = 0.0, None
    for p in grid:
        dev = abs(oracle_mass(p) - 1.0)
        if dev > worst:
            worst, where = dev, p
    families = sorted({p.family for p in grid})
    return worst <= tol, f"{len(grid)} parameter sets over {', '.join(families)}: max |mass - 1| {worst:.1e} (tol {tol:g})"


# ---------------------------------------------------------------- 5


def criterion_5():
    """alpha=0, beta=2, eta=1/2 is the standard normal."""
    p0 = pdf(GAUSS, 0.0)
    pdf_err = _rel(p0, 1 / math.sqrt(2 * math.pi))
    mean, var = mean_variance(LocScaleParams(GAUSS, 0.0, 1.0))
    quad_var = oracle_moment(GAUSS, 2)
    quad_mean = oracle_moment(GAUSS, 1)
    ok = pdf_err <= 1e-12 and mean == 0.0 and abs(var - 1) <= 1e-9 and abs(quad_var - 1) <= 1e-9 and abs(quad_mean) <= 1e-12
    return ok, (f"pdf(0) rel error {pdf_err:.1e} (tol 1e-12), mean {mean:g}, variance {var:.17g} "
                f"(quadrature {quad_var:.12g}, tol 1e-9)")


# ---------------------------------------------------------------- 6


def _moment_cases():
    return [
        ("gengamma", GenGammaParams(0.5, 1.5, 2.0)),
        ("gengamma", GenGammaParams(2.0, 0.7, 0.5)),
        ("gengamma", GenGammaParams(-8.0, 1.0, -1.0)),
        ("invgamma", InvGammaParams(7.5, 2.0)),
        ("invgamma", InvGammaParams(9.0, 0.5)),
        ("symmetric", SymmetricParams(1.0, 0.7, 1.5)),
        ("locscale", LocScaleParams(SymmetricParams(0.5, 1.0, 3.0), 0.8, 1.5)),
        ("gen-gaussian", LocScaleParams(SymmetricParams(0.0, 2.0, 4.0), -1.0, 0.5)),
        ("gaussian", LocScaleParams(GAUSS, 1.2, 0.7)),
    ]


def criterion_6():
    """Moment formulas vs quadrature and Monte Carlo, printed forms vs the same oracle."""
    quad_tol = 1e-6
    worst = 0.0
    for _, p in _moment_cases():
        for n in range(1, 7):
            ref = oracle_moment(p, n)
            m = raw_moment(p, n)
            err = abs(m - ref) / abs(ref) if ref != 0 else abs(m)
            worst = max(worst, err)
    # Gaussian closed form against the location-scale sum and a Monte-Carlo oracle
    mc_z = 0.0
    for theta, sigma in [(0.0, 1.0), (1.2, 0.7)]:
        p = LocScaleParams(GAUSS, theta, sigma)
        for n in range(1, 7):
            g = gaussian_moment(theta, sigma, n)
            worst = max(worst, abs(g - raw_moment(p, n)) / max(abs(g), 1.0))
            rng = np.random.default_rng(1000 + n)
            est, se = mc_moment(lambda k: theta + sigma * rng.standard_normal(k), n, 100_000)
            mc_z = max(mc_z, abs(est - g) / se)
    ledger = {ev.key: ev for ev in evaluate_all()}
    printed = [ledger[k] for k in ("gengamma_moment_eta_power", "symmetric_moment_eta_power",
                                   "invgamma_moment_denominator")]
    printed_min = min(ev.printed_rel_error for ev in printed)
    ok = worst <= quad_tol and mc_z <= 4.0 and printed_min >= 0.10
    return ok, (f"n=1..6 over {len(_moment_cases())} parameter sets: max rel error {worst:.1e} (tol {quad_tol:g}); "
                f"MC max |z| {mc_z:.2f} (tol 4); printed eta^(alpha/beta) and Gamma(theta+1) forms "
                f"miss by >= {printed_min:.0%} (need 10%)")


# ---------------------------------------------------------------- 7


def criterion_7():
    """Generalized Gaussian variance never exceeds sigma**2 for eta >= 1/2, beta > 2."""
    worst_ratio = 0.0
    count = 0
    for eta, beta, sigma in itertools.product([0.5, 1.0, 2.0], [3.0, 4.0, 6.0], [0.5, 1.0, 3.0]):
        _, var = mean_variance(LocScaleParams(SymmetricParams(0.0, eta, beta), 0.0, sigma))
        if not var <= sigma**2:
            return False, f"variance {var!r} > sigma^2 {sigma**2!r} at eta={eta}, beta={beta}"
        worst_ratio = max(worst_ratio, var / sigma**2)
        count += 1
    return True, f"{count} cases: var <= sigma^2 holds exactly, largest var/sigma^2 {worst_ratio:.4f}"


# ---------------------------------------------------------------- 8


def criterion_8():
    """Quantile round trips and 1e5-sample means."""
    families = [
        GenGammaParams(1.0, 1.0, 1.0),
        GenGammaParams(-0.5, 2.0, 0.5),
        GenGammaParams(-3.0, 1.0, -2.0),
        InvGammaParams(3.0, 2.0),
        InvGammaParams(0.5, 1.0),
        GAUSS,
        SymmetricParams(1.5, 1.0, 4.0),
        LocScaleParams(SymmetricParams(0.5, 1.0, 1.0), 2.0, 3.0),
    ]
    worst_rt = 0.0
    for p in families:
        for prob in (0.01, 0.1, 0.5, 0.9, 0.99):
            worst_rt = max(worst_rt, abs(cdf(p, quantile(p, prob)) - prob))
    sampled = [GenGammaParams(1.0, 1.0, 1.0), InvGammaParams(3.0, 2.0), GAUSS,
               LocScaleParams(SymmetricParams(0.5, 1.0, 1.5), 2.0, 3.0)]
    worst_z = 0.0
    for i, p in enumerate(sampled):
        xs = np.asarray(sample(p, 100_000, seed=777 + i))
        se = xs.std(ddof=1) / math.sqrt(xs.size)
        worst_z = max(worst_z, abs(xs.mean() - raw_moment(p, 1)) / se)
    ok = worst_rt <= 1e-9 and worst_z <= 4.0
    return ok, (f"round trip max |cdf(q(p)) - p| {worst_rt:.1e} over {len(families)} families x 5 p (tol 1e-9); "
                f"{len(sampled)} families x 1e5 samples: max |mean - mu| / SE {worst_z:.2f} (tol 4)")


# ---------------------------------------------------------------- 9


_EXIT_CASES = [
    (["integral", "halfline", "--alpha", "0", "--eta", "1", "--beta", "2"], EXIT_OK),
    (["integral", "eval", "--kind", "exp"], EXIT_USAGE),
    (["integral", "halfline", "--alpha", "-1.5", "--eta", "1", "--beta", "2"], EXIT_DOMAIN),
    (["dist", "moment", "--family", "invgamma", "--theta", "3", "--eta", "2", "--n", "3"], EXIT_DOMAIN),
    (["identity", "sweep", "--id", "T2", "--samples", "10", "--seed", "1", "--tol", "1e-30"], EXIT_TOLERANCE),
]


def criterion_9():
    """Golden CLI outputs are byte-identical and exit codes follow the mapping."""
    import contextlib
    import os

    cases = json.loads((GOLDEN / "cases.json").read_text())
    mismatched = []
    for case in cases:
        for _ in range(2):  # determinism: two runs, both must match
            out, err = io.StringIO(), io.StringIO()
            code = main(case["argv"], out, err)
            expected = (GOLDEN / f"{case['name']}.out").read_bytes()
            if code != case.get("exit", 0) or out.getvalue().encode("utf-8") != expected:
                mismatched.append(case["name"])
                break
    wrong_codes = []
    with contextlib.redirect_stderr(io.StringIO()):
        for argv, code in _EXIT_CASES:
            got = main(argv, io.StringIO(), io.StringIO())
            if got != code:
                wrong_codes.append((argv[:2], got, code))
        os.environ["HYPERINT_MAX_TERMS"] = "2"
        try:
            got = main(["dist", "cdf", "--family", "gengamma", "--alpha", "1", "--eta", "1", "--beta", "1",
                        "--x", "20"], io.StringIO(), io.StringIO())
        finally:
            del os.environ["HYPERINT_MAX_TERMS"]
        if got != EXIT_NUMERIC:
            wrong_codes.append(("max_terms", got, EXIT_NUMERIC))
    ok = not mismatched and not wrong_codes
    detail = f"{len(cases) - len(mismatched)}/{len(cases)} golden invocations byte-identical over two runs; "
    detail += f"{len(_EXIT_CASES) + 1 - len(wrong_codes)}/{len(_EXIT_CASES) + 1} exit codes as mapped (0/2/3/4/5)"
    if mismatched:
        detail += f"; mismatched: {', '.join(mismatched)}"
    if wrong_codes:
        detail += f"; wrong codes: {wrong_codes}"
    return ok, detail


CRITERIA = {
    1: ("antiderivative vs quadrature oracle", criterion_1),
    2: ("half-line closed form", criterion_2),
    3: ("identity suites", criterion_3),
    4: ("distribution normalization", criterion_4),
    5: ("Gaussian reduction", criterion_5),
    6: ("moment formulas vs oracles", criterion_6),
    7: ("generalized Gaussian variance bound", criterion_7),
    8: ("quantile round trip and sampling", criterion_8),
    9: ("CLI contract", criterion_9),
}


def _line(n, ok, detail):
    return f"CRITERION {n} {'PASS' if ok else 'FAIL'} [{CRITERIA[n][0]}] {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n][1]()
    line = _line(n, ok, detail)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n][1]()
        print(_line(n, ok, detail), flush=True)
        failures += not ok
    sys.exit(1 if failures else 0)
