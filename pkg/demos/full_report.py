"""Run the whole pipeline on one problem and print the JSON report.

Classification, curve construction, bounded enumeration, the empirical
envelope, and the Liouville floor are combined into a single verdict:
Consistent when the empirical exponent is within margin of the predicted
one and a constructed curve certifies the upper bound.
"""

from cubapprox.report import ProblemSpec, build_report, report_to_json


def main():
    spec = ProblemSpec.from_mapping({
        "form": "x2^2*x3 + x2*x0^2 - 2*x2*x1^2 + x0^3 + x0^2*x1 - 2*x1^3",
        "point": "0:0:1:0",
        "place": "real",
        "height_bound": 60,
        "liouville_bounds": "15,30,60",
        "gamma": "3/2",
        "line": "s; s; 0; t",
    })
    report = build_report(spec)
    print(report_to_json(report))
    print(f"verdict: {report.verdict}")


if __name__ == "__main__":
    main()
