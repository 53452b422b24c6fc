"""Command-line interface.

Every subcommand writes one JSON report (or CSV with ``--format csv``) to
stdout or ``--out``. Exit codes: 0 success, 2 computation finished but the
requested certificate failed, 1 usage or input error (a JSON error object
is still written).

CSV headers, one row per k (or per t-design level):

    bound     k,sym_dim,welch_bound,cmax_bound,cmax_bound_sq,nontrivial
    analyze   k,sym_dim,lhs_sum,bound,relative_slack,nontrivial,tight,
              eigenvalue_spread,cmax_bound,cmax_sq_bound,cmax_equality
    analyze --general   k,ratio,bound,relative_slack
    certify   k,property,holds
    tdesign   k,sym_dim,max_deviation,exact_pass,potential,mc_consistent,mc_worst_z

Other subcommands emit a single row of their scalar fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from . import __version__
from .design import DesignConfig, minimize
from .errors import RankDeficiencyError, WelchkitError
from .fileio import (
    dumps,
    jsonable,
    read_gram_file,
    read_samples_file,
    read_vector_file,
    vector_file_dict,
)
from .frames import analyze, analyze_general, cmax_bound, cmax_sq_bound, gram, welch_bound
from .generalized import DiscreteMeasure, mc_coherence_integral, tdesign_check
from .gramfactor import frame_from_gram
from .polysample import reconstruct
from .symtensor import multi_indices, sym_dim

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILED = 2

BOUND_FIELDS = ["k", "sym_dim", "welch_bound", "cmax_bound", "cmax_bound_sq", "nontrivial"]
ANALYZE_FIELDS = [
    "k", "sym_dim", "lhs_sum", "bound", "relative_slack", "nontrivial", "tight",
    "eigenvalue_spread", "cmax_bound", "cmax_sq_bound", "cmax_equality",
]
GENERAL_FIELDS = ["k", "ratio", "bound", "relative_slack"]
CERTIFY_FIELDS = ["k", "property", "holds"]
TDESIGN_FIELDS = ["k", "sym_dim", "max_deviation", "exact_pass", "potential", "mc_consistent", "mc_worst_z"]


class UsageError(WelchkitError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _bound_row(m: int, n: int, k: int) -> dict:
    row = {"k": k, "sym_dim": sym_dim(n, k), "welch_bound": welch_bound(m, n, k)}
    row["cmax_bound"] = cmax_bound(m, n, k) if m > 1 else None
    row["cmax_bound_sq"] = cmax_sq_bound(m, n, k) if m > 1 else None
    row["nontrivial"] = m > row["sym_dim"]
    return row


def cmd_bound(args):
    if args.kmax is not None:
        rows = [_bound_row(args.m, args.n, k) for k in range(1, args.kmax + 1)]
        return {"m": args.m, "n": args.n, "per_k": rows}, EXIT_OK, (BOUND_FIELDS, rows)
    row = _bound_row(args.m, args.n, args.k)
    return {"m": args.m, "n": args.n, **row}, EXIT_OK, (BOUND_FIELDS, [row])


def cmd_analyze(args):
    X, _ = read_vector_file(args.input)
    if args.general:
        report = analyze_general(X, args.kmax).to_dict()
        return report, EXIT_OK, (GENERAL_FIELDS, report["per_k"])
    report = analyze(X, args.kmax, args.tol).to_dict()
    ok = all(r["relative_slack"] >= -1e-9 for r in report["per_k"])
    return report, EXIT_OK if ok else EXIT_FAILED, (ANALYZE_FIELDS, report["per_k"])


def cmd_certify(args):
    X, _ = read_vector_file(args.input)
    report = analyze(X, args.k, args.tol)
    if args.property == "tight":
        holds = report.tight(args.k)
    else:
        holds = report.equiangular
    payload = {"property": args.property, "k": args.k, "holds": holds, "report": report.to_dict()}
    row = {"k": args.k, "property": args.property, "holds": holds}
    return payload, EXIT_OK if holds else EXIT_FAILED, (CERTIFY_FIELDS, [row])


def cmd_construct(args):
    G = read_gram_file(args.gram)
    X = frame_from_gram(G)
    payload = vector_file_dict(X)
    payload["rank"] = X.d
    payload["unit_norm"] = X.unit_norm
    payload["max_gram_error"] = float(np.max(np.abs(gram(X) - G)))
    return payload, EXIT_OK, None


def cmd_design(args):
    config = DesignConfig(
        n=args.n, m=args.m, k=args.k, restarts=args.restarts, max_iters=args.max_iters,
        rel_slack_tol=args.slack_tol, seed=args.seed,
    )
    result = minimize(config, workers=args.workers)
    payload = {**result.to_dict(), "frame": vector_file_dict(result.frame)}
    return payload, EXIT_OK if result.converged else EXIT_FAILED, None


def cmd_tdesign(args):
    X, weights = read_vector_file(args.input)
    mu = DiscreteMeasure(X.vectors, np.ones(X.m) if weights is None else weights)
    report = tdesign_check(mu, args.t, tol=args.tol, mc_probes=args.mc_probes, mc_samples=args.mc_samples, seed=args.seed)
    payload = report.to_dict()
    payload["verdict"] = "pass" if report.verdict else "fail"
    return payload, EXIT_OK if report.verdict else EXIT_FAILED, (TDESIGN_FIELDS, payload["levels"])


def cmd_haar(args):
    est = mc_coherence_integral(args.n, args.k, args.samples, seed=args.seed, workers=args.workers)
    payload = {"n": args.n, "k": args.k, **est.to_dict(), "z_score": est.z_score()}
    return payload, EXIT_OK, None


def cmd_poly_recon(args):
    X, _ = read_vector_file(args.input)
    s = read_samples_file(args.samples)
    p = reconstruct(s, X, args.k)
    terms = [{"alpha": [int(a) for a in alpha], "coeff": c} for alpha, c in zip(multi_indices(p.n, p.k), p.coeffs)]
    return {"n": p.n, "k": p.k, "coeffs": p.coeffs, "terms": terms}, EXIT_OK, None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8, help="certification tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    parser = _Parser(prog="welchkit", description="Welch bounds, tight frames and projective t-designs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", parents=[common], help="closed-form Welch bounds")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--kmax", type=int, help="report k = 1..KMAX instead of a single k")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("analyze", parents=[common], help="Welch report for a vector file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--general", action="store_true", help="norm-free ratio form for non-unit vectors")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", parents=[common], help="check tightness or equiangularity")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--property", choices=["tight", "equiangular"], required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("construct", parents=[common], help="frame from a Gram file")
    p.add_argument("--gram", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("design", parents=[common], help="search for a Welch-bound-equality frame")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--slack-tol", type=float, default=1e-7)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("tdesign", parents=[common], help="projective t-design check")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mc-probes", type=int, default=4)
    p.add_argument("--mc-samples", type=int, default=20000)
    p.set_defaults(func=cmd_tdesign)

    p = sub.add_parser("haar", parents=[common], help="Monte-Carlo Haar coherence integral")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_haar)

    p = sub.add_parser("poly-recon", parents=[common], help="reconstruct a polynomial from samples")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", required=True)
    p.set_defaults(func=cmd_poly_recon)
    return parser


def _scalar_row(payload: dict) -> tuple[list[str], list[dict]]:
    row = {k: v for k, v in payload.items() if not isinstance(v, (dict, list, np.ndarray))}
    return list(row), [row]


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def render(payload, fmt: str, table=None) -> str:
    if fmt == "json":
        return dumps(payload) + "\n"
    header, rows = table if table is not None else _scalar_row(payload)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in jsonable(row).items()})
    return buf.getvalue()


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    fmt, out = "json", None
    try:
        args = parser.parse_args(argv)
        fmt, out = args.format, args.out
        payload, code, table = args.func(args)
    except RankDeficiencyError as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc), "kernel_dim": exc.kernel_dim}}
        _emit(dumps(error) + "\n", out)
        return EXIT_FAILED
    except (WelchkitError, OverflowError) as exc:
        _emit(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n", out)
        return EXIT_INPUT
    _emit(render(payload, fmt, table), out)
    return code


if __name__ == "__main__":
    sys.exit(main())
