"""Command line interface: subcommands, problem files, outputs."""

import json
import subprocess
import sys

import jsonschema
import pytest

from cubapprox.cli import main
from cubapprox.report import (ProblemSpec, build_report, report_to_dict,
                              report_to_json)

try:
    from importlib.resources import files
except ImportError:                       # pragma: no cover
    from importlib_resources import files

SCHEMA = json.loads(
    files("cubapprox").joinpath("schema/report.schema.json").read_text())

FERMAT_ARGS = ["--form", "x0^3 + x1^3 + x2^3 + x3^3",
               "--point", "1:-1:0:0", "--place", "real"]


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_problem(tmp_path, text):
    p = tmp_path / "problem.txt"
    p.write_text(text, encoding="utf-8")
    return str(p)


class TestClassify:
    def test_flags(self, capsys):
        code, out, _ = run_cli(["classify"] + FERMAT_ARGS, capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["classification"]["case"] == "OnRationalLine"
        assert payload["classification"]["predicted_alpha"] == "1"

    def test_problem_file(self, tmp_path, capsys):
        path = write_problem(tmp_path, """\
# a surface with a conjugate node at P
form = x2^2*x3 + x2*x0^2 + x2*x1^2 + x0^3 + x0^2*x1 - 2*x1^3
point = 0:0:1:0
place = p=5
""")
        code, out, _ = run_cli(["classify", "--problem", path], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["classification"]["case"] == "Generic"
        assert payload["classification"]["predicted_alpha"] == "3/2"

    def test_flag_overrides_file(self, tmp_path, capsys):
        path = write_problem(tmp_path, """\
form = x2^2*x3 + x2*x0^2 + x2*x1^2 + x0^3 + x0^2*x1 - 2*x1^3
point = 0:0:1:0
place = p=5
""")
        code, out, _ = run_cli(
            ["classify", "--problem", path, "--place", "real"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["problem"]["place"] == "real"
        assert payload["classification"]["case"] == "IsolatedInSection"


class TestConstruct:
    def test_line_case(self, capsys):
        code, out, _ = run_cli(["construct"] + FERMAT_ARGS, capsys)
        assert code == 0
        payload = json.loads(out)
        kinds = {c["kind"] for c in payload["curves"]}
        assert "line" in kinds
        assert any(c["alpha"] == "1" for c in payload["curves"])

    def test_residual_conic_with_line(self, capsys):
        code, out, _ = run_cli(
            ["construct", "--form", "x0^3 + x1^3 + x2^3 + x3^3",
             "--point", "3:4:5:-6", "--place", "real",
             "--line", "s; -s; t; -t"], capsys)
        assert code == 0
        payload = json.loads(out)
        kinds = {c["kind"] for c in payload["curves"]}
        assert "residual-conic" in kinds


class TestEstimate:
    def test_writes_outputs(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        code, _, _ = run_cli(
            ["estimate"] + FERMAT_ARGS +
            ["--height-bound", "20", "--out", str(out_dir)], capsys)
        assert code == 0
        csv = (out_dir / "points.csv").read_text()
        assert csv.splitlines()[0] == "coords,height,dist,delta"
        assert len(csv.splitlines()) > 1
        tsv = (out_dir / "envelope.tsv").read_text()
        assert tsv.splitlines()[0].startswith("#")
        payload = json.loads((out_dir / "report.json").read_text())
        assert payload["estimate"]["height_bound"] == 20


class TestLiouville:
    def test_runs(self, capsys):
        code, out, _ = run_cli(
            ["liouville"] + FERMAT_ARGS +
            ["--liouville-bounds", "5,10", "--gamma", "2"], capsys)
        assert code == 0
        payload = json.loads(out)
        liou = payload["liouville"]
        assert liou["gamma"] == "2"
        assert liou["min_product"] > 0
        assert [row["height_bound"] for row in liou["per_bound"]] == [5, 10]


class TestReport:
    def test_end_to_end_files(self, tmp_path, capsys):
        out_dir = tmp_path / "report"
        argv = (["report"] + FERMAT_ARGS +
                ["--height-bound", "20", "--liouville-bounds", "5,10,20",
                 "--out", str(out_dir)])
        code, _, _ = run_cli(argv, capsys)
        assert code == 0
        payload = json.loads((out_dir / "report.json").read_text())
        jsonschema.validate(payload, SCHEMA)
        assert payload["verdict"] == "Consistent"
        assert (out_dir / "points.csv").exists()
        assert (out_dir / "envelope.tsv").exists()

    def test_byte_identical_reruns(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        argv = (["report"] + FERMAT_ARGS +
                ["--height-bound", "15", "--liouville-bounds", "5,15"])
        assert run_cli(argv + ["--out", str(a)], capsys)[0] == 0
        assert run_cli(argv + ["--out", str(b)], capsys)[0] == 0
        for name in ("report.json", "points.csv", "envelope.tsv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_schema_validates_library_reports(self):
        spec = ProblemSpec.from_mapping({
            "form": "x0^3 + x1^3 + x2^3 + x3^3", "point": "3:4:5:-6",
            "place": "p=7", "height_bound": 15,
            "liouville_bounds": "5,15"})
        report = build_report(spec)
        jsonschema.validate(report_to_dict(report), SCHEMA)
        assert report_to_json(report).endswith("\n")


class TestErrors:
    def test_malformed_form_exits_2(self, capsys):
        code, _, err = run_cli(
            ["classify", "--form", "x0^3 +", "--point", "1:0:0:0",
             "--place", "real"], capsys)
        assert code == 2
        assert "error" in err

    def test_point_off_surface_exits_2(self, capsys):
        code, _, err = run_cli(
            ["classify", "--form", "x0^3 + x1^3 + x2^3 + x3^3",
             "--point", "1:1:1:1", "--place", "real"], capsys)
        assert code == 2

    def test_missing_keys_exit_2(self, capsys):
        code, _, err = run_cli(["classify", "--place", "real"], capsys)
        assert code == 2
        assert "missing" in err

    def test_bad_place_exits_2(self, capsys):
        code, _, _ = run_cli(
            ["classify"] + FERMAT_ARGS[:-2] + ["--place", "p=6"], capsys)
        assert code == 2


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "cubapprox.cli", "classify"] + FERMAT_ARGS,
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classification"]["case"] == \
        "OnRationalLine"
