"""Command line entry points.

Subcommands mirror the pipeline stages: classify, construct, estimate,
liouville, and report (all of them composed).  Problems are described by
key=value files or flags; flags win.  Mathematical outcomes, including
Tension and NoApproximants, are data, not process failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .classify import classify
from .constructions import (EmptyLocalQuadric, NoQuadraticPointFound,
                            WrongRegime)
from .curves import ParamCurve, curve_alpha
from .forms import FormParseError
from .hypersurface import tangent_section
from .localfield import Place
from .report import (ProblemSpec, build_report, classification_to_dict,
                     construct_curves, envelope_tsv, estimate_to_dict,
                     liouville_to_dict, points_csv, report_to_json)
from .search import (NoApproximants, empirical_alpha, enumerate_points,
                     liouville_check)


def _read_problem_file(path: str) -> dict:
    data = {}
    with open(path, encoding="utf-8") as fh:
        for ln, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{ln}: expected key=value")
            key, _, val = line.partition("=")
            data[key.strip()] = val.strip()
    return data


def _spec_from_args(args) -> ProblemSpec:
    data = {}
    if args.problem:
        data.update(_read_problem_file(args.problem))
    for key in ("form", "point", "place", "height_bound", "seed",
                "attempts", "search_bound", "line", "gamma",
                "liouville_bounds"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    return ProblemSpec.from_mapping(data)


def _add_problem_args(p: argparse.ArgumentParser):
    p.add_argument("--problem", help="problem file of key=value lines")
    p.add_argument("--form", help="cubic form, e.g. 'x0^3 + x1^3 + x2^3 + x3^3'")
    p.add_argument("--point", help="rational point, e.g. '1:-1:0:0'")
    p.add_argument("--place", help="'real' or 'p=<prime>'")
    p.add_argument("--height-bound", dest="height_bound", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--attempts", type=int)
    p.add_argument("--search-bound", dest="search_bound", type=int)
    p.add_argument("--line", help="known rational line on X, e.g. 's; -s; t; -t'")
    p.add_argument("--gamma", help="Liouville exponent (default 2)")
    p.add_argument("--liouville-bounds", dest="liouville_bounds",
                   help="comma-separated height bounds (default 25,50,100)")
    p.add_argument("--out", help="output directory (default: stdout only)")


def _emit(args, name: str, text: str):
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, name), "w",
                  encoding="utf-8") as fh:
            fh.write(text)
    elif name.endswith(".json"):
        sys.stdout.write(text)


def _dump_json(args, payload: dict, name="report.json") -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(args, name, text)
    if args.out:
        print(f"wrote {os.path.join(args.out, name)}")


def cmd_classify(args) -> int:
    spec = _spec_from_args(args)
    X, P, v = spec.resolve()
    result = classify(X, P, v, search_bound=spec.options["search_bound"],
                      seed=spec.options["seed"],
                      attempts=spec.options["attempts"])
    _dump_json(args, {"problem": spec.as_dict(),
                      "classification": classification_to_dict(result)})
    return 0


def cmd_construct(args) -> int:
    spec = _spec_from_args(args)
    X, P, v = spec.resolve()
    result = classify(X, P, v, search_bound=spec.options["search_bound"],
                      seed=spec.options["seed"],
                      attempts=spec.options["attempts"])
    known_line = None
    if "line" in spec.options:
        known_line = ParamCurve.parse(spec.options["line"])
    curves = construct_curves(X, P, v, result, seed=spec.options["seed"],
                              attempts=spec.options["attempts"],
                              known_line=known_line)
    payload = {
        "problem": spec.as_dict(),
        "case": result.case,
        "curves": [{"kind": c.kind, "curve": str(c.curve),
                    "alpha": "inf" if c.alpha == float("inf")
                    else str(Fraction(c.alpha)), "note": c.note}
                   for c in curves],
    }
    _dump_json(args, payload)
    return 0


def cmd_estimate(args) -> int:
    spec = _spec_from_args(args)
    X, P, v = spec.resolve()
    stream = enumerate_points(X, spec.options["height_bound"])
    payload = {"problem": spec.as_dict()}
    try:
        est = empirical_alpha(stream, P, v)
        payload["estimate"] = estimate_to_dict(est)
        _emit(args, "envelope.tsv", envelope_tsv(est))
    except NoApproximants as exc:
        payload["estimate"] = None
        payload["no_approximants"] = str(exc)
    _emit(args, "points.csv", points_csv(stream, P, v))
    _dump_json(args, payload)
    return 0


def cmd_liouville(args) -> int:
    spec = _spec_from_args(args)
    X, P, v = spec.resolve()
    S = tangent_section(X, P)
    gamma = Fraction(spec.options.get("gamma", "2"))
    bounds = [int(b) for b in
              str(spec.options["liouville_bounds"]).split(",")]
    payload = {"problem": spec.as_dict()}
    try:
        rep = liouville_check(X, P, v, gamma, bounds=bounds,
                              excluded_forms=[S.tangent_form])
        payload["liouville"] = liouville_to_dict(rep)
        if gamma > 2:
            payload["warning"] = "gamma beyond certified range"
    except NoApproximants as exc:
        payload["liouville"] = None
        payload["no_points"] = str(exc)
    _dump_json(args, payload)
    return 0


def cmd_report(args) -> int:
    spec = _spec_from_args(args)
    report = build_report(spec)
    _emit(args, "report.json", report_to_json(report))
    X, P, v = spec.resolve()
    _emit(args, "points.csv", points_csv(report.stream, P, v))
    if report.estimate is not None:
        _emit(args, "envelope.tsv", envelope_tsv(report.estimate))
    if args.out:
        print(f"wrote report to {args.out} (verdict: {report.verdict})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cubapprox",
        description="Approximation constants of rational points on "
                    "cubic hypersurfaces")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (
            ("classify", cmd_classify,
             "predict alpha(P, L) with certificates"),
            ("construct", cmd_construct,
             "build the curve of best approximation for the case"),
            ("estimate", cmd_estimate,
             "empirical alpha from bounded-height enumeration"),
            ("liouville", cmd_liouville,
             "empirical height*dist^gamma floor off the tangent section"),
            ("report", cmd_report, "full pipeline with verdict")):
        p = sub.add_parser(name, help=help_)
        _add_problem_args(p)
        p.set_defaults(func=fn)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
