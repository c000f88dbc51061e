"""Tests for the conductor_cli entry point."""

import json

import pytest

import conductor_cli
from conductor_cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from errors import PreconditionError


def write_spec(tmp_path, p, mode, *components):
    quoted = ", ".join(f'"{c}"' for c in components)
    path = tmp_path / "character.txt"
    path.write_text(
        f"p = {p}\ns = {len(components)}\nmode = {mode}\ncomponents = [{quoted}]\n",
        encoding="utf-8",
    )
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestConductor:
    def test_exceptional_square(self, tmp_path, capsys):
        code, document = run_json(capsys, ["conductor", write_spec(tmp_path, 2, "local", "x/t^2")])
        assert code == EXIT_OK
        assert (document["sw"], document["dt"]) == (2, 2)
        assert document["rsw"] == {"alpha": "0", "beta": "1", "level": 2}
        assert document["cform"] == {"c_pi": "y", "c_x": "1", "level": 2, "radicial": True}

    def test_non_logarithmic_jump(self, tmp_path, capsys):
        code, document = run_json(capsys, ["conductor", write_spec(tmp_path, 3, "local", "1/t")])
        assert code == EXIT_OK
        assert (document["sw"], document["dt"]) == (1, 2)
        assert document["rsw"]["alpha"] == "1"
        assert document["cform"] == {"c_pi": "1", "c_x": "0", "level": 2, "radicial": False}

    def test_tame_character(self, tmp_path, capsys):
        code, document = run_json(capsys, ["conductor", write_spec(tmp_path, 2, "local", "x + t")])
        assert code == EXIT_OK
        assert document["rsw"] is None
        assert document["cform"] is None

    def test_text_format(self, tmp_path, capsys):
        code = main(["--format", "text", "conductor", write_spec(tmp_path, 2, "local", "x/t", "1/t^3")])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "sw: 3" in out
        assert "dt: 4" in out

    def test_wrong_mode(self, tmp_path, capsys):
        code = main(["conductor", write_spec(tmp_path, 2, "global", "x2/x1^3")])
        assert code == EXIT_USAGE
        assert "✗" in capsys.readouterr().err

    def test_syntax_error(self, tmp_path, capsys):
        code = main(["conductor", write_spec(tmp_path, 2, "local", "x/(t")])
        assert code == EXIT_USAGE
        assert "line 4" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["conductor", str(tmp_path / "missing.txt")]) == EXIT_USAGE


class TestDivisor:
    def test_wild_component(self, tmp_path, capsys):
        code, document = run_json(capsys, ["divisor", write_spec(tmp_path, 2, "global", "x2/x1^3")])
        assert code == EXIT_OK
        assert document["R_chi"] == {"D1": 3, "D2": 0}
        assert document["R_chi_prime"] == {"D1": 4, "D2": 1}
        assert document["forms"] == {
            "D1": {"c_pi": "x", "c_x": "0", "level": 4, "radicial": False}
        }
        assert document["germs"] == {"D1": "consistent"}

    def test_no_wild_component(self, tmp_path, capsys, monkeypatch):
        def unexpected(a):
            raise AssertionError("global form computed for a tame character")

        monkeypatch.setattr(conductor_cli, "global_cform", unexpected)
        code, document = run_json(capsys, ["divisor", write_spec(tmp_path, 3, "global", "x1*x2")])
        assert code == EXIT_OK
        assert document["R_chi_prime"] == {"D1": 1, "D2": 1}
        assert document["forms"] == {}

    def test_germ_check_errors_are_not_swallowed(self, tmp_path, capsys, monkeypatch):
        def broken(a):
            raise PreconditionError("germ check failed")

        monkeypatch.setattr(conductor_cli, "global_cform", broken)
        code = main(["divisor", write_spec(tmp_path, 2, "global", "x2/x1^3")])
        captured = capsys.readouterr()
        assert code == EXIT_FAILURE
        assert not captured.out
        assert "germ check failed" in captured.err

    def test_poles_outside_d(self, tmp_path, capsys):
        code = main(["divisor", write_spec(tmp_path, 2, "global", "1/(x1 + x2)")])
        assert code == EXIT_USAGE
        assert "poles outside D" in capsys.readouterr().err


class TestVerify:
    def test_small_run(self, capsys):
        code, document = run_json(capsys, ["verify", "--suite", "qpolys", "--cases", "1"])
        assert code == EXIT_OK
        assert document["passed"]
        assert document["suites"][0]["suite"] == "qpolys"

    def test_zero_cases_is_vacuous(self, capsys):
        code = main(["verify", "--suite", "lemmas", "--cases", "0"])
        captured = capsys.readouterr()
        assert code == EXIT_OK
        assert json.loads(captured.out)["suites"][0]["vacuous"]
        assert "⚠" in captured.err


@pytest.mark.parametrize(
    "argv",
    [[], ["integrate"], ["verify", "--suite", "everything"], ["--format", "xml", "verify"]],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
