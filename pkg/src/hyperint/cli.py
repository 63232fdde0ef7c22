"""``hyperint`` command-line front end.

Every command emits a stream of flat records.  ``--json`` writes one JSON
object per line, ``--csv`` writes a header row followed by rows, and the
default human mode writes ``key=value`` pairs.  Each subcommand has a fixed
key set, with ``null`` for absent values.

Exit codes: 0 success, 2 usage error, 3 invalid parameters or domain error,
4 verification discrepancy above ``--tol * (1 + |oracle|)`` or identity
residual above ``--tol``,
5 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from typing import Iterable, Optional, Sequence

from . import distributions as dist
from .errors import DomainError, NoConvergence
from .identities import LEMMA_IDS, IdentityId, check_identity, check_lemma1, sweep, worst
from .integrals import IntegralSpec, Kind, antiderivative, full_line_integral, half_line_integral, integrand
from .oracle import integrate, integrate_half_line
from .specfun import DEFAULT_CONFIG, SeriesConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_TOLERANCE = 4
EXIT_NUMERIC = 5

_ORACLE_TOL = 1e-13


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- output


def _fmt_json(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else "null"
    return json.dumps(v)


def _fmt_text(v, digits: int) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, f".{digits}g")
    return str(v)


class Emitter:
    def __init__(self, mode: str, keys: Sequence[str], out=None):
        self.mode = mode
        self.keys = list(keys)
        self.out = out or sys.stdout
        self._csv = None

    def emit(self, record: dict):
        row = [record.get(k) for k in self.keys]
        if self.mode == "json":
            body = ", ".join(f"{json.dumps(k)}: {_fmt_json(v)}" for k, v in zip(self.keys, row))
            self.out.write("{" + body + "}\n")
        elif self.mode == "csv":
            if self._csv is None:
                self._csv = csv.writer(self.out, lineterminator="\n")
                self._csv.writerow(self.keys)
            self._csv.writerow([_fmt_text(v, 17) for v in row])
        else:
            shown = " ".join(f"{k}={_fmt_text(v, 10) or '-'}" for k, v in zip(self.keys, row))
            self.out.write(shown + "\n")


# ---------------------------------------------------------------- helpers


def _config_from_env() -> SeriesConfig:
    raw = os.environ.get("HYPERINT_MAX_TERMS")
    if raw is None or raw == "":
        return DEFAULT_CONFIG
    try:
        n = int(raw)
        return SeriesConfig(max_terms=n)
    except (ValueError, DomainError) as exc:
        raise _Failure(EXIT_USAGE, f"invalid HYPERINT_MAX_TERMS={raw!r}: {exc}") from None


def _verified(record: dict, oracle_value: Optional[float], tol: float) -> bool:
    if oracle_value is None:
        return True
    record["oracle_value"] = oracle_value
    record["discrepancy"] = abs(record["value"] - oracle_value)
    # scale-aware so large integrals are judged by their leading digits
    return record["discrepancy"] <= tol * (1.0 + abs(oracle_value))


def _series_summary(reports) -> tuple[Optional[int], Optional[float], bool]:
    if not reports:
        return None, None, True
    return (
        sum(sv.terms_used for sv in reports),
        max(sv.trunc_err_est for sv in reports),
        all(sv.converged for sv in reports),
    )


# ---------------------------------------------------------------- integral


_INTEGRAL_KEYS = {
    "eval": ["command", "kind", "alpha", "eta", "beta", "x", "value", "elementary_branch",
             "terms_used", "trunc_err_est", "converged", "oracle_value", "discrepancy"],
    "definite": ["command", "kind", "alpha", "eta", "beta", "a", "b", "value", "elementary_branch",
                 "terms_used", "trunc_err_est", "converged", "oracle_value", "discrepancy"],
    "halfline": ["command", "alpha", "eta", "beta", "full", "value", "oracle_value", "discrepancy"],
}


def _cmd_integral(args, cfg) -> tuple[list[dict], bool]:
    sub = args.integral_cmd
    ok = True
    if sub == "halfline":
        value = (full_line_integral if args.full else half_line_integral)(args.alpha, args.eta, args.beta)
        rec = {"command": "integral halfline", "alpha": args.alpha, "eta": args.eta, "beta": args.beta,
               "full": args.full, "value": value}
        if args.verify:
            a, e, b = args.alpha, args.eta, args.beta
            res = integrate_half_line(lambda x: x**a * math.exp(-e * x**b), _ORACLE_TOL, _ORACLE_TOL,
                                      scale=e ** (-1.0 / b))
            ok = _verified(rec, res.value * (2.0 if args.full else 1.0), args.tol)
        return [rec], ok

    spec = IntegralSpec(args.kind, args.alpha, args.eta, args.beta)
    if sub == "eval":
        ad = antiderivative(spec, args.x, cfg)
        reports = ad.series_report
        rec = {"command": "integral eval", "x": args.x, "value": ad.value,
               "elementary_branch": ad.elementary_branch}
        lo, hi = 0.0, args.x
        oracle_ok = args.alpha + 1 > 0 and args.beta > 0
    else:
        fa = antiderivative(spec, args.a, cfg)
        fb = antiderivative(spec, args.b, cfg)
        if not args.b > args.a:
            raise DomainError(f"upper limit must exceed lower limit, got a={args.a}, b={args.b}")
        reports = fa.series_report + fb.series_report
        rec = {"command": "integral definite", "a": args.a, "b": args.b, "value": fb.value - fa.value,
               "elementary_branch": fb.elementary_branch}
        lo, hi = args.a, args.b
        oracle_ok = True
    terms, err, converged = _series_summary(reports)
    rec.update({"kind": spec.kind.value, "alpha": args.alpha, "eta": args.eta, "beta": args.beta,
                "terms_used": terms, "trunc_err_est": err, "converged": converged})
    if args.verify and oracle_ok and hi > lo:
        res = integrate(integrand(spec), lo, hi, _ORACLE_TOL, _ORACLE_TOL)
        ok = _verified(rec, res.value, args.tol)
    return [rec], ok


# ---------------------------------------------------------------- identity


_IDENTITY_KEYS = {
    "check": ["command", "id", "alpha", "beta", "eta", "x", "j", "component",
              "lhs", "rhs", "residual", "rel_residual"],
    "sweep": ["command", "id", "samples", "seed", "max_rel_residual",
              "worst_alpha", "worst_beta", "worst_eta", "worst_x", "worst_j"],
}


def _cmd_identity(args, cfg, parser) -> tuple[list[dict], bool]:
    ident = IdentityId(args.id)
    if args.identity_cmd == "sweep":
        results = sweep(ident, args.samples, args.seed, cfg)
        point, res = max(results, key=lambda pr: pr[1].rel_residual)
        rec = {"command": "identity sweep", "id": ident.value, "samples": args.samples, "seed": args.seed,
               "max_rel_residual": res.rel_residual}
        rec.update({f"worst_{k}": v for k, v in point.items()})
        return [rec], res.rel_residual <= args.tol

    base = {"command": "identity check", "id": ident.value, "alpha": args.alpha, "beta": args.beta}
    if ident in LEMMA_IDS:
        if args.j is None:
            parser.error(f"identity check --id {ident.value} requires --j")
        residuals = [check_lemma1(ident.value, args.alpha, args.beta, args.j)]
        base["j"] = args.j
    else:
        if args.eta is None or args.x is None:
            parser.error(f"identity check --id {ident.value} requires --eta and --x")
        residuals = check_identity(ident, args.alpha, args.beta, args.eta, args.x, cfg)
        base.update({"eta": args.eta, "x": args.x})
    records = []
    for r in residuals:
        rec = dict(base)
        rec.update({"component": r.component, "lhs": r.lhs, "rhs": r.rhs,
                    "residual": r.residual, "rel_residual": r.rel_residual})
        records.append(rec)
    return records, worst(residuals).rel_residual <= args.tol


# ---------------------------------------------------------------- dist


_PARAM_KEYS = ["alpha", "eta", "beta", "theta", "sigma"]
_FAMILY_FLAGS = {
    "gengamma": ("alpha", "eta", "beta"),
    "invgamma": ("theta", "eta"),
    "symmetric": ("alpha", "eta", "beta"),
    "locscale": ("alpha", "eta", "beta", "theta", "sigma"),
}
_DIST_KEYS = {
    "pdf": ["x", "value"],
    "cdf": ["x", "value"],
    "quantile": ["p", "value"],
    "moment": ["n", "value"],
    "meanvar": ["mean", "variance"],
    "sample": ["index", "value"],
    "curve": ["x", "pdf", "cdf"],
}


def _build_params(args, parser):
    needed = _FAMILY_FLAGS[args.family]
    missing = [f"--{k}" for k in needed if getattr(args, k) is None]
    if missing:
        parser.error(f"--family {args.family} requires {', '.join(missing)}")
    extra = [f"--{k}" for k in _PARAM_KEYS if k not in needed and getattr(args, k) is not None]
    if extra:
        parser.error(f"--family {args.family} does not take {', '.join(extra)}")
    if args.family == "gengamma":
        return dist.GenGammaParams(args.alpha, args.eta, args.beta)
    if args.family == "invgamma":
        return dist.InvGammaParams(args.theta, args.eta)
    base = dist.SymmetricParams(args.alpha, args.eta, args.beta)
    if args.family == "symmetric":
        return base
    return dist.LocScaleParams(base, args.theta, args.sigma)


def _cmd_dist(args, cfg, parser) -> Iterable[dict]:
    params = _build_params(args, parser)
    head = {"command": f"dist {args.dist_cmd}", "family": args.family}
    head.update({k: getattr(args, k) for k in _PARAM_KEYS})
    sub = args.dist_cmd
    if sub == "pdf":
        yield {**head, "x": args.x, "value": params.pdf(args.x)}
    elif sub == "cdf":
        yield {**head, "x": args.x, "value": params.cdf(args.x, cfg)}
    elif sub == "quantile":
        yield {**head, "p": args.p, "value": dist.quantile(params, args.p, cfg)}
    elif sub == "moment":
        yield {**head, "n": args.n, "value": params.raw_moment(args.n)}
    elif sub == "meanvar":
        mean, var = dist.mean_variance(params)
        yield {**head, "mean": mean, "variance": var}
    elif sub == "sample":
        for i, v in enumerate(dist.sample(params, args.n, args.seed)):
            yield {**head, "index": i, "value": v}
    elif sub == "curve":
        if args.points < 2:
            raise DomainError("--points must be at least 2")
        if not args.to > args.from_:
            raise DomainError("--to must exceed --from")
        step = (args.to - args.from_) / (args.points - 1)
        for i in range(args.points):
            x = args.to if i == args.points - 1 else args.from_ + i * step
            yield {**head, "x": x, "pdf": params.pdf(x), "cdf": params.cdf(x, cfg)}


# ---------------------------------------------------------------- ledger


_LEDGER_KEYS = ["command", "key", "topic", "printed_value", "corrected_value", "oracle_value",
                "printed_rel_error", "corrected_rel_error", "printed_fails"]


def _cmd_ledger() -> list[dict]:
    from .typo_ledger import evaluate_all

    return [
        {"command": "ledger", "key": ev.key, "topic": ev.topic, "printed_value": ev.printed_value,
         "corrected_value": ev.corrected_value, "oracle_value": ev.oracle_value,
         "printed_rel_error": ev.printed_rel_error, "corrected_rel_error": ev.corrected_rel_error,
         "printed_fails": ev.printed_fails}
        for ev in evaluate_all()
    ]


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    out = argparse.ArgumentParser(add_help=False)
    mode = out.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_const", const="json", dest="mode", help="line-delimited JSON")
    mode.add_argument("--csv", action="store_const", const="csv", dest="mode", help="CSV with a header row")
    out.add_argument("--timing", action="store_true", help="append an elapsed-seconds field")

    parser = argparse.ArgumentParser(
        prog="hyperint",
        description="Closed-form non-elementary integrals, hypergeometric identities and "
        "generalized gamma/Gaussian distributions.",
    )
    cmds = parser.add_subparsers(dest="cmd", required=True)

    # integral
    integral = cmds.add_parser("integral", help="antiderivatives and definite integrals")
    isub = integral.add_subparsers(dest="integral_cmd", required=True)
    for name in ("eval", "definite", "halfline"):
        p = isub.add_parser(name, parents=[out])
        if name != "halfline":
            p.add_argument("--kind", required=True, choices=[k.value for k in Kind])
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--eta", type=float, required=True)
        p.add_argument("--beta", type=float, required=True)
        if name == "eval":
            p.add_argument("--x", type=float, required=True)
        elif name == "definite":
            p.add_argument("--a", type=float, required=True)
            p.add_argument("--b", type=float, required=True)
        else:
            p.add_argument("--full", action="store_true", help="integrate |x|^a exp(-eta |x|^b) over the real line")
        p.add_argument("--verify", action="store_true", help="attach a quadrature oracle value")
        p.add_argument("--tol", type=float, default=1e-6, help="max |value - oracle| / (1 + |oracle|) (default 1e-6)")

    # identity
    identity = cmds.add_parser("identity", help="identity residuals")
    dsub = identity.add_subparsers(dest="identity_cmd", required=True)
    ids = [i.value for i in IdentityId]
    check = dsub.add_parser("check", parents=[out])
    check.add_argument("--id", required=True, choices=ids)
    check.add_argument("--alpha", type=float, required=True)
    check.add_argument("--beta", type=float, required=True)
    check.add_argument("--eta", type=float)
    check.add_argument("--x", type=float)
    check.add_argument("--j", type=int)
    check.add_argument("--tol", type=float, default=1e-8, help="max rel_residual (default 1e-8)")
    sw = dsub.add_parser("sweep", parents=[out])
    sw.add_argument("--id", required=True, choices=ids)
    sw.add_argument("--samples", type=int, default=200)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--tol", type=float, default=1e-8, help="max rel_residual (default 1e-8)")

    # dist
    distp = cmds.add_parser("dist", help="distribution queries")
    ssub = distp.add_subparsers(dest="dist_cmd", required=True)
    for name in _DIST_KEYS:
        p = ssub.add_parser(name, parents=[out])
        p.add_argument("--family", required=True, choices=list(_FAMILY_FLAGS))
        for k in _PARAM_KEYS:
            p.add_argument(f"--{k}", type=float)
        if name in ("pdf", "cdf"):
            p.add_argument("--x", type=float, required=True)
        elif name == "quantile":
            p.add_argument("--p", type=float, required=True)
        elif name == "moment":
            p.add_argument("--n", type=int, required=True, help="moment order")
        elif name == "sample":
            p.add_argument("--n", type=int, required=True, help="number of draws")
            p.add_argument("--seed", type=int, required=True)
        elif name == "curve":
            p.add_argument("--from", dest="from_", type=float, required=True)
            p.add_argument("--to", type=float, required=True)
            p.add_argument("--points", type=int, default=101)

    cmds.add_parser("ledger", parents=[out], help="printed-vs-corrected formula evidence")
    return parser


def _dispatch(args, cfg, parser) -> tuple[list[str], Iterable[dict], bool]:
    if args.cmd == "integral":
        records, ok = _cmd_integral(args, cfg)
        return _INTEGRAL_KEYS[args.integral_cmd], records, ok
    if args.cmd == "identity":
        records, ok = _cmd_identity(args, cfg, parser)
        return _IDENTITY_KEYS[args.identity_cmd], records, ok
    if args.cmd == "dist":
        keys = ["command", "family", *_PARAM_KEYS, *_DIST_KEYS[args.dist_cmd]]
        return keys, _cmd_dist(args, cfg, parser), True
    return _LEDGER_KEYS, _cmd_ledger(), True


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        cfg = _config_from_env()
        keys, records, ok = _dispatch(args, cfg, parser)
        if args.timing:
            keys = [*keys, "elapsed"]
        # buffer so a mid-stream failure leaves no partial output
        buf = io.StringIO()
        emitter = Emitter(args.mode or "text", keys, buf)
        for rec in records:
            if args.timing:
                rec["elapsed"] = time.perf_counter() - start
            emitter.emit(rec)
        out.write(buf.getvalue())
    except SystemExit as exc:
        return int(exc.code or 0)
    except _Failure as exc:
        print(f"hyperint: {exc}", file=err)
        return exc.code
    except DomainError as exc:
        print(f"hyperint: error: {exc}", file=err)
        return EXIT_DOMAIN
    except NoConvergence as exc:
        print(f"hyperint: numerical failure: {exc}", file=err)
        return EXIT_NUMERIC
    if not ok:
        print(f"hyperint: result exceeds --tol {args.tol}", file=err)
        return EXIT_TOLERANCE
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())
