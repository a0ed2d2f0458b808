"""Command-line interface.

Subcommands: fit, sample, gof, compare, curve.  Every run is reproducible:
the random seed defaults to DEFAULT_SEED and all output is a pure function
of the parsed configuration.  Reports are built in full before anything is
written, so a failing run never emits a partial document.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bs import BirnbaumSaunders
from .errors import BspsError, DomainError
from .families import parse_family
from .gof import compare, cvm_ad, gof_report, ks_statistic
from .mle import FitResult, confidence_intervals, fit
from .model import BSPowerSeries
from .datasets import read_dataset

DEFAULT_SEED = 1729

__all__ = ["main", "DEFAULT_SEED"]


def _fmt(value, structured: bool) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value) if structured else "%.6g" % value
    return str(value)


def _doc(pairs, structured: bool) -> str:
    return "".join("%s: %s\n" % (key, _fmt(value, structured)) for key, value in pairs)


def _family_of(spec: str):
    """CLI family name; `bs` selects the plain base law (no theta)."""
    if spec.strip().lower() == "bs":
        return None
    return parse_family(spec)


def _build_model(family, args):
    if args.alpha is None or args.beta is None:
        raise DomainError("--alpha and --beta are required")
    if family is None:
        if args.theta is not None:
            raise DomainError("--theta is meaningless for the plain bs family")
        return BirnbaumSaunders(args.alpha, args.beta)
    if args.theta is None:
        raise DomainError("--theta is required for family %r" % family.label())
    return BSPowerSeries.of(family, args.theta, args.alpha, args.beta)


def _fit_pairs(result: FitResult, structured: bool):
    pairs = []
    for name, value, se in zip(result.param_names, result.params, result.stderr):
        pairs.append((name, float(value)))
        pairs.append(("stderr.%s" % name, float(se)))
    pairs += [
        ("loglik", result.loglik),
        ("neg2loglik", result.neg2loglik),
        ("aic", result.aic),
        ("bic", result.bic),
        ("converged", result.converged),
        ("grad_norm", result.grad_norm),
        ("boundary", result.boundary_flag),
        ("n", result.n_obs),
    ]
    if np.all(np.isfinite(result.stderr)):
        ci = confidence_intervals(result, gamma=0.05)
        for name, (lo, hi) in zip(result.param_names, ci):
            pairs.append(("ci95.%s.low" % name, float(lo)))
            pairs.append(("ci95.%s.high" % name, float(hi)))
    else:
        pairs.append(("ci95", "unavailable (information matrix not invertible)"))
    if structured:
        k = len(result.params)
        for i in range(k):
            for j in range(k):
                pairs.append(("info.%d.%d" % (i, j), float(result.info_matrix[i, j])))
    return pairs


def _run_fit(args) -> str:
    family = _family_of(args.family)
    data = read_dataset(args.data)
    result = fit(family, data)
    head = [
        ("command", "fit"),
        ("model", result.label()),
        ("data", args.data),
        ("seed", args.seed),
    ]
    return _doc(head + _fit_pairs(result, args.format == "structured"), args.format == "structured")


def _run_gof(args) -> str:
    family = _family_of(args.family)
    data = read_dataset(args.data)
    result = fit(family, data)
    rng = np.random.default_rng(args.seed)
    report = gof_report(family, data, result, args.n_boot, rng)
    pairs = [
        ("command", "gof"),
        ("model", result.label()),
        ("data", args.data),
        ("seed", args.seed),
        ("ks", report.ks),
        ("cvm", report.cvm),
        ("ad", report.ad),
        ("p_cvm", report.p_cvm),
        ("p_ad", report.p_ad),
        ("p_method", report.p_method),
        ("n_boot", report.n_boot),
    ]
    for name, value in zip(result.param_names, result.params):
        pairs.append((name, float(value)))
    return _doc(pairs, args.format == "structured")


def _run_compare(args) -> str:
    data = read_dataset(args.data)
    families = [parse_family(tok) for tok in args.families.split(",") if tok.strip()]
    fits = [fit(fam, data) for fam in families]
    fits.append(fit(None, data))  # the plain base law is always in the table
    ranking = compare(fits)
    structured = args.format == "structured"
    pairs = [
        ("command", "compare"),
        ("data", args.data),
        ("seed", args.seed),
        ("n", data.n),
    ]
    if structured:
        for rank, result in enumerate(ranking.fits):
            prefix = "model.%d" % rank
            pairs.append((prefix + ".label", result.label()))
            for name, value in zip(result.param_names, result.params):
                pairs.append((prefix + "." + name, float(value)))
            pairs.append((prefix + ".ks", ks_statistic(result.model, data)))
            pairs.append((prefix + ".neg2loglik", result.neg2loglik))
            pairs.append((prefix + ".aic", result.aic))
            pairs.append((prefix + ".bic", result.bic))
        pairs.append(("best_aic", ranking.fits[ranking.best_aic].label()))
        pairs.append(("best_bic", ranking.fits[ranking.best_bic].label()))
        return _doc(pairs, structured)
    lines = [_doc(pairs, structured)]
    header = "%-16s %10s %10s %10s %8s %10s %9s %9s" % (
        "model", "alpha", "beta", "theta", "K-S", "-2loglik", "AIC", "BIC"
    )
    lines.append(header + "\n")
    for result in ranking.fits:
        values = dict(zip(result.param_names, result.params))
        lines.append(
            "%-16s %10.6g %10.6g %10s %8.4f %10.6g %9.6g %9.6g\n"
            % (
                result.label(),
                values["alpha"],
                values["beta"],
                "%.6g" % values["theta"] if "theta" in values else "-",
                ks_statistic(result.model, data),
                result.neg2loglik,
                result.aic,
                result.bic,
            )
        )
    lines.append("best_aic: %s\n" % ranking.fits[ranking.best_aic].label())
    lines.append("best_bic: %s\n" % ranking.fits[ranking.best_bic].label())
    return "".join(lines)


def _run_sample(args) -> str:
    family = _family_of(args.family)
    model = _build_model(family, args)
    if args.n < 0:
        raise DomainError("--n must be nonnegative")
    rng = np.random.default_rng(args.seed)
    if args.n == 0:
        return ""
    draws = (
        model.sample_inverse(rng, size=args.n)
        if isinstance(model, BSPowerSeries)
        else model.sample(rng, size=args.n)
    )
    structured = args.format == "structured"
    return "".join(_fmt(float(v), structured) + "\n" for v in np.atleast_1d(draws))


def _run_curve(args) -> str:
    family = _family_of(args.family)
    model = _build_model(family, args)
    n = args.n if args.n is not None else 200
    if n < 1:
        raise DomainError("--n must be >= 1 for curve output")
    structured = args.format == "structured"
    u = (np.arange(n) + 0.5) / n
    x = np.atleast_1d(model.quantile(u))
    lines = ["# x,pdf,cdf,hazard\n"]
    for xi in x:
        lines.append(
            "%s,%s,%s,%s\n"
            % (
                _fmt(float(xi), structured),
                _fmt(float(model.pdf(xi)), structured),
                _fmt(float(model.cdf(xi)), structured),
                _fmt(float(model.hazard(xi)), structured),
            )
        )
    return "".join(lines)


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED, help="rng seed (default %d)" % DEFAULT_SEED)
    sub.add_argument("--out", default=None, help="write the report here instead of stdout")
    sub.add_argument("--format", choices=("text", "structured"), default="text",
                     help="text: 6 significant digits; structured: full precision")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsps",
        description="Birnbaum-Saunders power series lifetime models: "
        "fitting, sampling, goodness-of-fit and model comparison.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_fit = subs.add_parser("fit", help="maximum-likelihood fit of one family")
    p_fit.add_argument("--family", required=True,
                       help="geometric | poisson | logarithmic | binomial:<m> | bs")
    p_fit.add_argument("--data", required=True)
    _add_common(p_fit)

    p_sample = subs.add_parser("sample", help="draw random variates")
    p_sample.add_argument("--family", required=True)
    p_sample.add_argument("--theta", type=float, default=None)
    p_sample.add_argument("--alpha", type=float, required=True)
    p_sample.add_argument("--beta", type=float, required=True)
    p_sample.add_argument("--n", type=int, required=True)
    _add_common(p_sample)

    p_gof = subs.add_parser("gof", help="goodness-of-fit statistics with bootstrap p-values")
    p_gof.add_argument("--family", required=True)
    p_gof.add_argument("--data", required=True)
    p_gof.add_argument("--n-boot", type=int, default=1000, dest="n_boot")
    _add_common(p_gof)

    p_cmp = subs.add_parser("compare", help="fit several families plus the base law and rank them")
    p_cmp.add_argument("--families", required=True,
                       help="comma-separated list, e.g. geometric,poisson,logarithmic")
    p_cmp.add_argument("--data", required=True)
    _add_common(p_cmp)

    p_curve = subs.add_parser("curve", help="pdf/cdf/hazard columns on a quantile-spaced grid")
    p_curve.add_argument("--family", required=True)
    p_curve.add_argument("--theta", type=float, default=None)
    p_curve.add_argument("--alpha", type=float, required=True)
    p_curve.add_argument("--beta", type=float, required=True)
    p_curve.add_argument("--n", type=int, default=None, help="grid size (default 200)")
    _add_common(p_curve)

    return parser


_RUNNERS = {
    "fit": _run_fit,
    "sample": _run_sample,
    "gof": _run_gof,
    "compare": _run_compare,
    "curve": _run_curve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = _RUNNERS[args.command](args)
    except BspsError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report)
    else:
        sys.stdout.write(report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
