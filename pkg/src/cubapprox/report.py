"""Pipeline orchestration: classify, construct, estimate, verify.

A RunReport bundles the classifier verdict, whatever explicit curves
could be constructed for the case at hand, the empirical estimate from
bounded enumeration, and the Liouville floor check, then compares them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .classify import ClassificationResult, classify
from .constructions import (EmptyLocalQuadric, NoQuadraticPointFound,
                            PointOnLine, WrongRegime, projection_curve,
                            residual_conic)
from .curves import ParamCurve, curve_alpha
from .forms import HomForm, parse_form
from .hypersurface import CubicHypersurface, tangent_section
from .localfield import Place
from .points import ProjPoint, delta_exponent, dist, height
from .search import (AlphaEstimate, LiouvilleReport, NoApproximants,
                     PointStream, empirical_alpha, enumerate_points,
                     liouville_check)

DEFAULTS = {
    "height_bound": 1000,
    "seed": 0,
    "attempts": 64,
    "search_bound": 100,
    "gamma": "2",
    "liouville_bounds": "25,50,100",
}

CONSISTENCY_MARGIN = 0.25


@dataclass(frozen=True)
class ProblemSpec:
    form_text: str
    point_text: str
    place_text: str
    options: dict

    @staticmethod
    def from_mapping(data: dict) -> "ProblemSpec":
        opts = dict(DEFAULTS)
        known = {"form", "point", "place"}
        for k, val in data.items():
            if k in known:
                continue
            opts[k] = val
        for key in ("height_bound", "seed", "attempts", "search_bound"):
            opts[key] = int(opts[key])
        missing = [k for k in ("form", "point", "place") if k not in data]
        if missing:
            raise ValueError(f"missing problem keys: {', '.join(missing)}")
        return ProblemSpec(data["form"], data["point"], data["place"], opts)

    def resolve(self):
        X = CubicHypersurface(parse_form(self.form_text))
        P = ProjPoint.parse(self.point_text)
        v = Place.parse(self.place_text)
        if not X.contains(P):
            raise ValueError(f"point {P} is not on the hypersurface")
        return X, P, v

    def as_dict(self) -> dict:
        out = {"form": self.form_text, "point": self.point_text,
               "place": self.place_text}
        out.update({k: self.options[k] for k in sorted(self.options)})
        return out


@dataclass(frozen=True)
class ConstructedCurve:
    kind: str                  # "line" | "nodal-cubic" | "residual-conic"
    curve: ParamCurve
    alpha: object              # Fraction or math.inf
    note: str = ""


@dataclass(frozen=True)
class RunReport:
    spec: ProblemSpec
    classification: ClassificationResult
    constructed_curves: tuple
    estimate: Optional[AlphaEstimate]
    liouville: Optional[LiouvilleReport]
    verdict: str               # "Consistent" | "Tension(...)"
    stream: Optional[PointStream] = None


def construct_curves(X, P, v, classification, seed=0, attempts=64,
                     known_line: Optional[ParamCurve] = None) -> tuple:
    """Attempt the explicit construction matching the classified case."""
    out = []
    cert = classification.certificate("line")
    if cert is not None and cert.curve is not None:
        out.append(ConstructedCurve(
            "line", cert.curve, curve_alpha(cert.curve, P, v),
            "rational line through P"))
        return tuple(out)
    if classification.case == "Generic" or classification.case == "Unknown":
        nc = classification.certificate("nodal-cubic")
        if nc is not None and nc.curve is not None:
            out.append(ConstructedCurve(
                "nodal-cubic", nc.curve, curve_alpha(nc.curve, P, v),
                "projection of a conjugate-pair line"))
        else:
            try:
                S = tangent_section(X, P)
                pc = projection_curve(S, v, attempts=attempts, seed=seed)
                out.append(ConstructedCurve(
                    "nodal-cubic", pc.curve, curve_alpha(pc.curve, P, v),
                    "projection of a conjugate-pair line"))
            except (NoQuadraticPointFound, EmptyLocalQuadric,
                    WrongRegime):
                pass
    if known_line is not None:
        try:
            res = residual_conic(X, P, known_line)
            if res.kind == "conic":
                out.append(ConstructedCurve(
                    "residual-conic", res.conic,
                    curve_alpha(res.conic, P, v),
                    "plane section through P and the known line"))
            elif res.kind == "split" and res.lines:
                for ln in res.lines:
                    pre = ln.preimage_system(P)
                    if pre.degree > 0:
                        out.append(ConstructedCurve(
                            "line", ln, curve_alpha(ln, P, v),
                            "rational component of a split plane section"))
        except PointOnLine:
            pass
    return tuple(out)


def build_report(spec: ProblemSpec,
                 known_line: Optional[ParamCurve] = None,
                 stream: Optional[PointStream] = None) -> RunReport:
    X, P, v = spec.resolve()
    opts = spec.options
    classification = classify(X, P, v, search_bound=opts["search_bound"],
                              seed=opts["seed"], attempts=opts["attempts"])
    if known_line is None and "line" in opts:
        known_line = ParamCurve.parse(opts["line"])
    curves = construct_curves(X, P, v, classification,
                              seed=opts["seed"], attempts=opts["attempts"],
                              known_line=known_line)
    B = opts["height_bound"]
    if stream is None or stream.height_bound < B:
        stream = enumerate_points(X, B)
    estimate = None
    est_note = ""
    try:
        estimate = empirical_alpha(stream, P, v)
    except NoApproximants as exc:
        est_note = str(exc)
    S = tangent_section(X, P)
    gamma = Fraction(opts.get("gamma", "2"))
    lbounds = [int(b) for b in str(opts["liouville_bounds"]).split(",")]
    lbounds = [b for b in lbounds if b <= B] or [B]
    liouville = None
    try:
        liouville = liouville_check(X, P, v, gamma, bounds=lbounds,
                                    excluded_forms=[S.tangent_form],
                                    stream=stream)
    except NoApproximants:
        pass
    verdict = _verdict(classification, curves, estimate, est_note)
    return RunReport(spec, classification, curves, estimate, liouville,
                     verdict, stream)


def _verdict(classification, curves, estimate, est_note) -> str:
    pred = classification.predicted_alpha
    if pred is None:
        return ("Tension(no predicted value: "
                f"{classification.case})")
    upper_ok = True
    finite = [c for c in curves if c.alpha != float("inf")]
    if curves and finite:
        best = min(float(c.alpha) for c in finite)
        upper_ok = best <= float(pred) + 1e-9
    elif curves and not finite:
        upper_ok = False
    if estimate is None:
        if classification.case == "IsolatedInSection":
            return "Consistent"   # no nearby points is the point
        return f"Tension(no approximants: {est_note})"
    lower_ok = estimate.extrapolated >= float(pred) - CONSISTENCY_MARGIN
    if lower_ok and upper_ok:
        return "Consistent"
    reasons = []
    if not lower_ok:
        reasons.append(
            f"empirical {estimate.extrapolated:.3f} < predicted "
            f"{float(pred)} - {CONSISTENCY_MARGIN}")
    if not upper_ok:
        reasons.append("no constructed curve certifies the upper bound")
    return "Tension(" + "; ".join(reasons) + ")"


# -- serialization ---------------------------------------------------------


def _frac_str(x) -> str:
    if x == float("inf"):
        return "inf"
    return str(Fraction(x)) if not isinstance(x, float) else repr(x)


def classification_to_dict(r: ClassificationResult) -> dict:
    return {
        "case": r.case,
        "predicted_alpha": (None if r.predicted_alpha is None
                            else str(r.predicted_alpha)),
        "place": str(r.place),
        "confidence": r.confidence,
        "alpha_lower": str(r.alpha_lower),
        "alpha_upper": str(r.alpha_upper),
        "certificates": [
            {"kind": c.kind, "description": c.description,
             "curve": None if c.curve is None else str(c.curve),
             "form": None if c.form is None else str(c.form),
             "point": None if c.point is None else str(c.point)}
            for c in r.certificates],
    }


def estimate_to_dict(e: Optional[AlphaEstimate]) -> Optional[dict]:
    if e is None:
        return None
    return {
        "target": str(e.target),
        "place": str(e.place),
        "height_bound": e.height_bound_used,
        "extrapolated": e.extrapolated,
        "rows": [{"epsilon": str(eps), "alpha_hat": a, "witnesses": n,
                  "best_point": str(w)} for eps, a, n, w in e.rows],
    }


def liouville_to_dict(l: Optional[LiouvilleReport]) -> Optional[dict]:
    if l is None:
        return None
    return {
        "gamma": str(l.gamma),
        "excluded_locus": l.excluded,
        "min_product": l.min_product,
        "trend_slope": l.trend,
        "per_bound": [{"height_bound": b, "log_min_product": m}
                      for b, m in l.per_bound],
    }


def report_to_dict(r: RunReport) -> dict:
    return {
        "problem": r.spec.as_dict(),
        "classification": classification_to_dict(r.classification),
        "constructed_curves": [
            {"kind": c.kind, "curve": str(c.curve),
             "alpha": _frac_str(c.alpha), "note": c.note}
            for c in r.constructed_curves],
        "estimate": estimate_to_dict(r.estimate),
        "liouville": liouville_to_dict(r.liouville),
        "verdict": r.verdict,
    }


def report_to_json(r: RunReport) -> str:
    return json.dumps(report_to_dict(r), indent=2, sort_keys=True) + "\n"


def points_csv(stream: PointStream, P: ProjPoint, v: Place) -> str:
    lines = ["coords,height,dist,delta"]
    for x in stream:
        d = dist(x, P, v)
        if x == P or d == 0:
            delta = ""
            dstr = "0"
        else:
            delta = f"{delta_exponent(x, P, v):.12g}"
            dstr = f"{float(d):.12g}"
        lines.append(f"{x},{height(x)},{dstr},{delta}")
    return "\n".join(lines) + "\n"


def envelope_tsv(e: AlphaEstimate) -> str:
    import math
    lines = ["# log_epsilon\talpha_hat"]
    for eps, a, _, _ in e.rows:
        le = math.log(float(eps)) if eps > 0 else float("-inf")
        lines.append(f"{le:.12g}\t{a:.12g}")
    return "\n".join(lines) + "\n"
