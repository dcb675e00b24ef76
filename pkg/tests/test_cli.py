"""Command-line interface: JSON reports, files, determinism, errors."""

import json

import pytest

from tiletopo.cli import run


def _capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestShiftAnalyze:
    def test_report_fields(self, capsys):
        code, out, err = _capture(capsys, ["shift-analyze", "--p", "3", "--eps", "9"])
        assert code == 0 and err == ""
        payload = json.loads(out)
        assert payload["components"] == 9
        assert payload["n"] == 2
        assert payload["p"] == 3 and payload["eps"] == "9"
        assert payload["certified"] is True

    def test_fractional_eps(self, capsys):
        code, out, _ = _capture(capsys, ["shift-analyze", "--p", "3", "--eps", "7/2"])
        assert code == 0
        assert json.loads(out)["components"] == 3

    def test_decimal_eps_is_exact(self, capsys):
        code, out, _ = _capture(capsys, ["shift-analyze", "--p", "3", "--eps", "2.5"])
        assert code == 0
        assert json.loads(out)["eps"] == "5/2"

    def test_determinism(self, capsys):
        _, first, _ = _capture(capsys, ["shift-analyze", "--p", "3", "--eps", "10"])
        _, second, _ = _capture(capsys, ["shift-analyze", "--p", "3", "--eps", "10"])
        assert first == second

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        code, out, _ = _capture(
            capsys, ["shift-analyze", "--p", "3", "--eps", "4", "--out", str(out_file)]
        )
        assert code == 0
        assert out_file.read_text() == out

    def test_grid_csv(self, capsys):
        code, out, _ = _capture(
            capsys, ["shift-analyze", "--p", "3", "--eps", "0", "--grid", "0:4:5"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "eps,components"
        assert lines[1] == "0,1" and lines[-1] == "4,3"


class TestDiagAnalyze:
    def test_certificate_fields(self, capsys):
        code, out, _ = _capture(capsys, ["diag-analyze", "--p", "3", "--eps", "4"])
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "Connected"
        assert payload["case"] == "III"
        assert payload["witness"] == ["4/3", "5/3"]
        assert payload["line"] == "L3"
        assert payload["chain_length"] >= 9
        assert payload["separation"] is None

    def test_disconnected_fields(self, capsys):
        _, out, _ = _capture(capsys, ["diag-analyze", "--p", "3", "--eps", "5"])
        payload = json.loads(out)
        assert payload["verdict"] == "Disconnected"
        assert payload["separation"] == ["3/2", "5/3"]
        assert payload["witness"] is None


class TestRender:
    def test_shift_render_writes_ppm(self, capsys, tmp_path):
        out = tmp_path / "tile.ppm"
        code, _, _ = _capture(
            capsys,
            ["shift-render", "--p", "3", "--eps", "2", "--depth", "4", "--size", "81x27", "--out", str(out)],
        )
        assert code == 0
        payload = out.read_bytes()
        assert payload.startswith(b"P6\n81 27\n255\n")

    def test_diag_render_writes_ppm(self, capsys, tmp_path):
        out = tmp_path / "tile.ppm"
        code, _, _ = _capture(
            capsys,
            ["diag-render", "--p", "3", "--eps", "4", "--depth", "3", "--size", "27x27", "--out", str(out)],
        )
        assert code == 0
        assert out.read_bytes().startswith(b"P6\n27 27\n255\n")

    def test_render_deterministic_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
        args = ["shift-render", "--p", "3", "--eps", "9", "--depth", "4", "--size", "81x27"]
        _capture(capsys, args + ["--out", str(a)])
        _capture(capsys, args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestQp:
    def test_exact_check(self, capsys):
        code, out, _ = _capture(capsys, ["qp-check", "--p", "3", "--eps", "2/7"])
        assert code == 0
        payload = json.loads(out)
        assert payload["quasi_periodic"] is True and payload["certified"] is True

    def test_demo_float(self, capsys):
        code, out, _ = _capture(
            capsys, ["qp-check", "--p", "3", "--eps", "1.4142135623730951", "--demo-float"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["quasi_periodic"] is False and payload["certified"] is False
        assert payload["distinct_offset_classes"] >= 9

    def test_patch_file(self, capsys, tmp_path):
        out = tmp_path / "patch.txt"
        code, stdout, _ = _capture(
            capsys, ["qp-patch", "--p", "3", "--eps", "1/2", "--k", "1", "--out", str(out)]
        )
        assert code == 0
        assert json.loads(stdout)["points"] == 9
        lines = out.read_text().splitlines()
        assert len(lines) == 9
        assert all(" " in line and "/" in line for line in lines)
        assert lines[0] == "-1/1 0/1"
        assert lines[-1] == "3/2 1/1"


class TestErrors:
    def test_invalid_parameter_json_exit_1(self, capsys):
        code, out, err = _capture(capsys, ["shift-analyze", "--p", "4", "--eps", "1"])
        assert code == 1 and out == ""
        payload = json.loads(err)
        assert payload["error"] == "InvalidParameterError"
        assert "odd" in payload["message"]

    def test_float_eps_without_gate_fails(self, capsys):
        # bare floats do parse as exact decimals; garbage must not
        code, _, err = _capture(capsys, ["shift-analyze", "--p", "3", "--eps", "pi"])
        assert code == 1
        assert json.loads(err)["error"] == "InvalidParameterError"

    def test_argparse_exit_two(self):
        with pytest.raises(SystemExit) as info:
            run(["shift-analyze", "--p", "3"])  # missing --eps
        assert info.value.code == 2

    def test_bad_size_exit_two(self):
        with pytest.raises(SystemExit) as info:
            run(["shift-render", "--p", "3", "--eps", "2", "--size", "nope", "--out", "x.ppm"])
        assert info.value.code == 2


class TestOracleSuites:
    def test_census_suite_passes(self, capsys):
        code, out, _ = _capture(capsys, ["oracle", "--suite", "census"])
        assert code == 0
        assert all(line.startswith("ok census") for line in out.splitlines())

    def test_components_suite_passes(self, capsys):
        code, out, _ = _capture(capsys, ["oracle", "--suite", "components"])
        assert code == 0
        assert len(out.splitlines()) == 200


class TestFigures:
    def test_fig_written(self, capsys, tmp_path):
        fig = tmp_path / "fig.png"
        code, _, _ = _capture(
            capsys, ["shift-analyze", "--p", "3", "--eps", "4", "--fig", str(fig)]
        )
        assert code == 0
        assert fig.exists() and fig.stat().st_size > 0
