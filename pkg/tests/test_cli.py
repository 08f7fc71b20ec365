import json
import subprocess
import sys

import numpy as np
import pytest

from circline_lab import curves as C
from circline_lab.cli import main
from circline_lab.specfile import dump_curve, parse_spec

PI = np.pi


def _spec(tmp_path, text, name="c.spec"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    data = json.loads(out.out.split("---\n", 1)[1]) if "---\n" in out.out else None
    return code, data, out


def test_analyze_ellipse(tmp_path, capsys):
    code, data, out = run(capsys, "analyze", "--spec", _spec(tmp_path, "preset = ellipse\nparams = 2, 1\n"))
    assert code == 0
    assert data["max_kappa"] == pytest.approx(2.0, abs=1e-9)
    assert data["min_kappa"] == pytest.approx(0.25, abs=1e-9)
    assert data["vertex_count"] == 4
    assert "vertex_count=4" in out.out


def test_analyze_circle(tmp_path, capsys):
    code, data, _ = run(capsys, "analyze", "--spec", _spec(tmp_path, "preset = circle\nparams = 1\n"))
    assert code == 0
    assert data["length"] == pytest.approx(2 * PI, rel=1e-12)
    assert data["area"] == pytest.approx(PI, rel=1e-12)


def test_analyze_malformed(tmp_path, capsys):
    code, _, out = run(capsys, "analyze", "--spec", _spec(tmp_path, "preset = ellipse\nparams = 2, x\n"))
    assert code == 2
    assert ":2:13:" in out.err


def test_missing_spec_file(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", "--spec", str(tmp_path / "absent.spec"))
    assert code == 2


def test_bad_tolerance_key(tmp_path, capsys):
    spec = _spec(tmp_path, "preset = circle\n")
    assert run(capsys, "analyze", "--spec", spec, "--tol", "bogus=1")[0] == 2
    assert run(capsys, "analyze", "--spec", spec, "--tol", "geo")[0] == 2
    assert run(capsys, "analyze", "--spec", spec, "--tol", "geo=abc")[0] == 2


def test_degenerate_spec_is_input_error(tmp_path, capsys):
    assert run(capsys, "analyze", "--spec", _spec(tmp_path, "x.const = 1\n"))[0] == 2


# ------------------------------------------------------------------- moon
def test_moon_ellipse_four_two(tmp_path, capsys):
    out_dir = tmp_path / "o"
    code, data, _ = run(capsys, "moon", "--spec", _spec(tmp_path, "preset = ellipse\nparams = 4, 2\n"),
                        "--svg", "--out", str(out_dir))
    assert code == 0
    assert data["radius"] == pytest.approx(1.0, abs=1e-9)
    assert abs(abs(data["center"][0]) - 3) < 1e-9 and abs(data["center"][1]) < 1e-9
    svg_text = (out_dir / "moon.svg").read_text()
    assert "<circle" in svg_text and (out_dir / "moon.txt").exists()


def test_moon_ellipse_two_one_precondition(tmp_path, capsys):
    code, data, _ = run(capsys, "moon", "--spec", _spec(tmp_path, "preset = ellipse\nparams = 2, 1\n"))
    assert code == 3
    assert data["error"] == "CurvatureTooLarge"
    assert data["max_kappa"] == pytest.approx(2.0)
    assert min(abs(data["t_argmax"]), abs(data["t_argmax"] - PI), abs(data["t_argmax"] - 2 * PI)) < 1e-8


def test_moon_circle_two(tmp_path, capsys):
    code, data, _ = run(capsys, "moon", "--spec", _spec(tmp_path, "preset = circle\nparams = 2\n"))
    assert code == 0 and data["radius"] == pytest.approx(2.0)


def test_no_convergence_exit_four(tmp_path, capsys):
    spec = _spec(tmp_path, dump_curve(C.fourier_random(5, 0.3, 11)))
    code, data, _ = run(capsys, "support", "--spec", spec, "--tol", "max_iter=1", "--tol", "sup=1e-300")
    assert code == 4 and data["error"] == "NoConvergence"


# ------------------------------------------------- vertices/support/invert
def test_vertices_circle_notice(tmp_path, capsys):
    code, data, out = run(capsys, "vertices", "--spec", _spec(tmp_path, "preset = circle\nparams = 1\n"))
    assert code == 0 and data["constant_curvature"]
    assert "constant curvature" in out.out


def test_vertices_ellipse(tmp_path, capsys):
    code, data, _ = run(capsys, "vertices", "--spec", _spec(tmp_path, "preset = ellipse\nparams = 2, 1\n"))
    assert code == 0
    assert np.allclose(data["vertices"], [0, PI / 2, PI, 3 * PI / 2], atol=1e-8)


def test_support_ellipse(tmp_path, capsys):
    code, data, _ = run(capsys, "support", "--spec", _spec(tmp_path, "preset = ellipse\nparams = 2, 1\n"),
                        "--t", "1.5707963267948966")
    assert code == 0
    assert data["verdicts"] == ["inside_support", "inside_support", "outside_support", "outside_support"]
    assert data["t_verdict"] == "outside_support"
    for t in data["inside"]:
        assert min(abs(t), abs(t - PI), abs(t - 2 * PI)) < 1e-4
    for t in data["outside"]:
        assert min(abs(t - PI / 2), abs(t - 3 * PI / 2)) < 1e-4


def test_invert_circle_about_unit_circle(tmp_path, capsys):
    out_dir = tmp_path / "inv"
    code, data, _ = run(capsys, "invert", "--spec", _spec(tmp_path, "preset = circle\nparams = 2\n"),
                        "--center", "0", "0", "--radius", "1", "--out", str(out_dir))
    assert code == 0
    c = data["coefficients"]
    assert c["x.cos"] == [0.5] and c["y.sin"] == [0.5]
    assert c["x.const"] == 0.0 and c["y.const"] == 0.0
    entries = parse_spec((out_dir / "inverted.spec").read_text())
    assert entries["x.cos"] == [0.5]
    assert (out_dir / "invert.txt").exists()


def test_invert_center_outside_is_precondition(tmp_path, capsys):
    code, data, _ = run(capsys, "invert", "--spec", _spec(tmp_path, "preset = circle\nparams = 1\n"),
                        "--center", "5", "0", "--radius", "1")
    assert code == 3


def test_invert_center_needs_radius(tmp_path, capsys):
    code, _, _ = run(capsys, "invert", "--spec", _spec(tmp_path, "preset = circle\n"), "--center", "0", "0")
    assert code == 2


def test_render_is_byte_stable(tmp_path, capsys):
    spec = _spec(tmp_path, "preset = ellipse\nparams = 2, 1\n")
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "render", "--spec", spec, "--out", str(a))[0] == 0
    assert run(capsys, "render", "--spec", spec, "--out", str(b))[0] == 0
    assert (a / "render.svg").read_bytes() == (b / "render.svg").read_bytes()
    assert (a / "render.txt").read_bytes() == (b / "render.txt").read_bytes()


def test_module_entry_point(tmp_path):
    spec = _spec(tmp_path, "preset = circle\n")
    res = subprocess.run([sys.executable, "-m", "circline_lab", "analyze", "--spec", spec],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "simple=true" in res.stdout


# ------------------------------------------------------------------- fuzz
def test_fuzz_single_case_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "fuzz", "--count", "1", "--seed", "5", "--out", str(a))[0] == 0
    assert run(capsys, "fuzz", "--count", "1", "--seed", "5", "--out", str(b))[0] == 0
    assert (a / "manifest.json").read_bytes() == (b / "manifest.json").read_bytes()
    assert (a / "run.log").exists()


def test_fuzz_high_amplitude_rejections(tmp_path, capsys):
    code, data, _ = run(capsys, "fuzz", "--count", "2", "--amplitude", "5", "--seed", "1", "--out", str(tmp_path))
    assert float(data["rejection_rate"]) > 0.5
    code, data, _ = run(capsys, "fuzz", "--count", "2", "--amplitude", "5", "--seed", "1",
                        "--max-draws", "3", "--out", str(tmp_path / "few"))
    assert code == 1 and data["rejected"] == 2
    manifest = json.loads((tmp_path / "few" / "manifest.json").read_text())
    assert all(c["status"] == "rejected" and "in 3 draws" in c["detail"] for c in manifest["cases"])
    assert (tmp_path / "few" / "failures" / "case_00000.json").exists()


def test_fuzz_count_must_be_positive(tmp_path, capsys):
    assert run(capsys, "fuzz", "--count", "0", "--out", str(tmp_path))[0] == 2


@pytest.fixture(scope="module")
def full_fuzz(tmp_path_factory):
    out = tmp_path_factory.mktemp("fuzz200")
    code = main(["fuzz", "--count", "200", "--degree", "4", "--amplitude", "0.2", "--seed", "1",
                 "--out", str(out)])
    return code, json.loads((out / "manifest.json").read_text())


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason=(
    "case 44 has a monotone arc of span 0.029 on which kappa varies by 7e-5; its osculating "
    "circles are nested by 1.12e-9, below eps_geo = 2.47e-9, so the strict nesting check fails"))
def test_fuzz_full_run_all_pass(full_fuzz):
    code, manifest = full_fuzz
    assert manifest["summary"]["fail"] == 0 and manifest["summary"]["rejected"] == 0
    assert code == 0


@pytest.mark.slow
def test_fuzz_full_run_only_nesting_margins_short(full_fuzz):
    _, manifest = full_fuzz
    assert manifest["summary"]["rejected"] == 0
    for case in manifest["cases"]:
        for name, check in case["checks"].items():
            if name == "tait_kneser" and not check["ok"]:
                margin = float(check["detail"].rsplit("min_margin=", 1)[1])
                assert 0 < margin
            else:
                assert check["ok"], (case["index"], name, check["detail"])
