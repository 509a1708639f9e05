"""Command line front end emitting plot-ready CSV and JSON."""

import argparse
import io
import json
import os
import sys
import tempfile

import numpy as np

from . import blips, combinatorics, densities, stats
from .ensembles import EnsembleSpec, dump_matrix, rng_stream, sample_ensemble
from .spectra import empirical_histogram, empirical_moments

MOMENT_METHODS = {
    "goe-goe": ("recurrence", "enumeration", "explicit", "series"),
    "pte-pte": ("closed_form", "enumeration"),
    "goe-pte": ("recurrence", "enumeration"),
    "goe-bce": ("genus",),
    "bce-bce": ("genus",),
    "goe-checker": ("bulk",),
    "checker-checker": ("bulk",),
    "anti-l": ("recurrence",),
}


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".antispectra-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text):
    """Write the primary artifact to --out atomically, or to stdout."""
    if getattr(args, "out", None):
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _print_json(payload):
    print(json.dumps(payload, indent=2))


def _check_trials(trials):
    if trials is not None and trials < 1:
        raise ValueError(f"invalid trials: {trials} must be >= 1")


def _pair_params(pair):
    """(name, parameter, second parameter) parsed from a pair string."""
    name, _, arg = pair.partition(":")
    try:
        if name in ("goe-bce", "bce-bce", "goe-checker", "anti-l") and arg:
            return name, int(arg), None
        if name == "checker-checker":
            k_text, j_text = arg.split(",")
            return name, int(k_text), int(j_text)
    except ValueError:
        raise ValueError(f"invalid pair spec {pair!r}") from None
    if name in ("goe-goe", "pte-pte", "goe-pte") and not arg:
        return name, None, None
    raise ValueError(f"unknown pair spec {pair!r}")


def _parse_sizes(text):
    try:
        sizes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"invalid size list {text!r}") from None
    if not sizes or any(n < 1 for n in sizes):
        raise ValueError(f"invalid size list {text!r}")
    return sizes


def _parse_orders(text):
    try:
        orders = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"invalid order list {text!r}") from None
    if any(m < 0 for m in orders):
        raise ValueError(f"invalid order list {text!r}")
    return orders


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"invalid grid {text!r}: want lo:hi:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"invalid grid {text!r}") from None
    if count < 2 or not hi > lo:
        raise ValueError(f"invalid grid {text!r}")
    return np.linspace(lo, hi, count)


def _cmd_sample(args):
    name, _, params = args.ensemble.partition(":")
    parts = params.split(":") if params else []
    kind = {"goe": "goe", "pte": "pte", "bce": "bce",
            "checker": "checkerboard", "hollow": "hollow-goe"}.get(name)
    if kind is None:
        raise ValueError(f"unknown ensemble {args.ensemble!r}")
    k = None
    w = 1.0
    if kind in ("bce", "checkerboard"):
        if not parts:
            raise ValueError(f"ensemble {args.ensemble!r} needs a parameter k")
        k = int(parts[0])
        if len(parts) > 1:
            w = float(parts[1])
    elif parts:
        raise ValueError(f"ensemble {args.ensemble!r} takes no parameter")
    spec = EnsembleSpec(kind, args.n, k, w, args.dist)
    matrix = sample_ensemble(spec, rng_stream(args.seed, 0))
    buffer = io.StringIO()
    dump_matrix(buffer, matrix, args.ensemble)
    _emit(args, buffer.getvalue())
    return 0


def _cmd_spectrum(args):
    _check_trials(args.trials)
    plan = stats.ExperimentPlan(
        args.pair, (args.n,), trials=args.trials, seed=args.seed,
        outputs=("spectra",), dist=args.dist,
    )
    spectra = stats.run_trials(plan, threads=args.threads).spectra[args.n]
    hist = empirical_histogram(spectra, p=args.norm_exp, bins=args.bins)
    buffer = io.StringIO()
    hist.write_csv(buffer)
    _emit(args, buffer.getvalue())
    report = empirical_moments(spectra, (1, 2, 3, 4), args.n, pair=args.pair)
    summary = report.as_dict()
    summary["clipped_mass"] = hist.clipped_mass
    summary["bins"] = args.bins
    summary["norm_exp"] = args.norm_exp
    if args.out:
        _print_json(summary)
    return 0


def _cmd_moments(args):
    name, k, j = _pair_params(args.pair)
    if name not in MOMENT_METHODS:
        raise ValueError(f"unknown pair spec {args.pair!r}")
    method = args.method or MOMENT_METHODS[name][0]
    if method not in MOMENT_METHODS[name]:
        raise ValueError(f"unknown method {method!r} for pair {args.pair!r}")
    m = args.m
    if name == "goe-goe":
        value = float(combinatorics.moment_goe_goe(m, method))
    elif name == "pte-pte":
        value = float(combinatorics.moment_pte_pte(m, method))
    elif name == "goe-pte":
        value = float(combinatorics.moment_goe_pte(m, method))
    elif name == "goe-bce":
        value = float(combinatorics.moment_goe_bce(m).at(k))
    elif name == "bce-bce":
        value = float(combinatorics.moment_bce_bce(m).at(k))
    elif name == "goe-checker":
        value = float(combinatorics.bulk_moment_checker(m, k))
    elif name == "checker-checker":
        value = float(combinatorics.bulk_moment_checker(m, k, j))
    else:
        value = float(combinatorics.moment_ell_anticommutator(m, k))
    payload = {"pair": args.pair, "m": m, "method": method, "value": value}
    _print_json(payload)
    if args.out:
        _atomic_write(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_genus(args):
    if args.pair == "goe-bce":
        laurent = combinatorics.moment_goe_bce(args.m)
    elif args.pair == "bce-bce":
        laurent = combinatorics.moment_bce_bce(args.m)
    else:
        raise ValueError(f"genus applies to goe-bce or bce-bce, got {args.pair!r}")
    payload = {"pair": args.pair, "m": args.m, "symbolic": str(laurent)}
    if args.k is not None:
        payload["k"] = args.k
        payload["value"] = float(laurent.at(args.k))
    _print_json(payload)
    if args.out:
        _atomic_write(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_density(args):
    grid = _parse_grid(args.grid)
    curve = densities.tabulate_density(args.which, grid)
    buffer = io.StringIO()
    curve.write_csv(buffer)
    _emit(args, buffer.getvalue())
    if args.out:
        _print_json({"which": args.which, "points": int(curve.x.size),
                     "out": args.out})
    return 0


def _cmd_blip(args):
    _check_trials(args.trials)
    orders = _parse_orders(args.m)
    plan = stats.ExperimentPlan(
        args.pair, (args.n,), trials=args.trials, seed=args.seed,
        outputs=("blips",), orders=orders, dist=args.dist,
        regime=args.regime, weight_order=args.weight_n,
    )
    report = stats.averaged_blip_measure(plan, threads=args.threads)
    payload = report.as_dict()
    payload["trials"] = plan.trials_for(args.n)
    _print_json(payload)
    if args.out:
        _atomic_write(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_regimes(args):
    _check_trials(args.trials)
    name, k, j = _pair_params(args.pair)
    if name not in ("goe-checker", "checker-checker"):
        raise ValueError(f"regimes needs a checkerboard pair, got {args.pair!r}")
    plan = stats.ExperimentPlan(
        args.pair, (args.n,), trials=args.trials, seed=args.seed,
        outputs=("spectra",), dist=args.dist,
    )
    spectra = stats.run_trials(plan, threads=args.threads).spectra[args.n]
    counts = [blips.regime_classify(eigs, args.n, k, j) for eigs in spectra]
    keys = list(counts[0])
    mean_counts = {key: float(np.mean([c[key] for c in counts])) for key in keys}
    tallies = {}
    for c in counts:
        signature = tuple(c[key] for key in keys)
        tallies[signature] = tallies.get(signature, 0) + 1
    modal_signature, modal_count = max(tallies.items(), key=lambda item: item[1])
    payload = {
        "pair": args.pair,
        "N": args.n,
        "trials": len(counts),
        "mean_counts": mean_counts,
        "modal_counts": dict(zip(keys, (int(v) for v in modal_signature))),
        "modal_fraction": modal_count / len(counts),
    }
    _print_json(payload)
    if args.out:
        _atomic_write(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_convergence(args):
    _check_trials(args.trials)
    sizes = _parse_sizes(args.n)
    report = stats.moment_variance_scan(
        args.pair, args.m, sizes, args.trials, seed=args.seed,
        dist=args.dist, threads=args.threads,
    )
    payload = report.as_dict()
    _print_json(payload)
    if args.out:
        _atomic_write(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _add_common(parser, trials=None, with_n=True):
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--dist", default="standard-normal")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out")
    if with_n:
        parser.add_argument("--n", type=int, required=True)
    if trials is not None:
        parser.add_argument("--trials", type=int, default=trials)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="antispectra",
        description="Spectra of anticommutators of structured random matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="emit one sampled matrix as CSV")
    p.add_argument("--ensemble", required=True,
                   help="goe | pte | bce:k | checker:k[:w] | hollow")
    _add_common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("spectrum", help="histogram of pooled eigenvalues")
    p.add_argument("--pair", required=True)
    p.add_argument("--bins", type=int, default=80)
    p.add_argument("--norm-exp", type=float, default=1.0)
    _add_common(p, trials=100)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("moments", help="exact limiting moments")
    p.add_argument("--pair", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method")
    _add_common(p, with_n=False)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("genus", help="genus-expansion moment as a polynomial in 1/k^2")
    p.add_argument("--pair", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int)
    _add_common(p, with_n=False)
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("density", help="tabulate a limiting density")
    p.add_argument("--which", required=True, choices=("goe-goe", "pte-pte"))
    p.add_argument("--grid", default="-4:4:201", help="lo:hi:count")
    _add_common(p, with_n=False)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("blip", help="averaged weighted blip measure")
    p.add_argument("--pair", required=True)
    p.add_argument("--regime", choices=("blip", "largest"))
    p.add_argument("--m", default="0,1,2", help="comma-separated orders")
    p.add_argument("--weight-n", type=int)
    _add_common(p, trials=None)
    p.add_argument("--trials", type=int)
    p.set_defaults(func=_cmd_blip)

    p = sub.add_parser("regimes", help="classify eigenvalues by regime")
    p.add_argument("--pair", required=True)
    _add_common(p, trials=10)
    p.set_defaults(func=_cmd_regimes)

    p = sub.add_parser("convergence", help="moment-variance scan across sizes")
    p.add_argument("--pair", required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", required=True, help="comma-separated sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", default="standard-normal")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=_cmd_convergence)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
