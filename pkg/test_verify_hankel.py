"""Tests for the command-line front end."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

import optimize
import verify_hankel
from series import TruncatedSeries
from verify_hankel import EXIT_OK, EXIT_USAGE, parse_scalar, parse_schwarz, parse_values, run


@pytest.fixture(autouse=True)
def small_run(monkeypatch):
    monkeypatch.setenv("EXPHANKEL_GRID", "21")
    monkeypatch.setenv("EXPHANKEL_SAMPLES", "500")
    monkeypatch.setenv("EXPHANKEL_EXACT_SAMPLES", "5")
    monkeypatch.delenv("EXPHANKEL_OUT", raising=False)


class TestParsing:
    def test_rational(self) -> None:
        assert parse_scalar(" 1/3 ") == Fraction(1, 3)
        assert parse_scalar("0.5") == Fraction(1, 2)

    def test_complex(self) -> None:
        assert parse_scalar("0.3+0.4i") == complex(0.3, 0.4)

    def test_values_skip_blanks(self) -> None:
        assert parse_values("1, 2,,") == [1, 2]

    def test_monomial_schwarz(self) -> None:
        assert parse_schwarz("z3") == TruncatedSeries.monomial(3)

    def test_schwarz_coefficients(self) -> None:
        w = parse_schwarz("1/2,0,1/4")
        assert (w[0], w[1], w[2], w[3]) == (0, Fraction(1, 2), 0, Fraction(1, 4))


class TestCoeffs:
    """Oracle against closed forms for one input."""

    def test_witness_flags_a7(self, capsys) -> None:
        assert run(["coeffs", "--class", "starlike", "--p", "0,0,2,0,0,2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "5/36" in out and "-1/36" in out
        assert "flagged" in out

    def test_convex_witness(self, capsys) -> None:
        assert run(["coeffs", "--class", "convex", "--p", "0,0,2,0,0,2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "5/252" in out and "-1/252" in out

    def test_schwarz_input(self, capsys) -> None:
        assert run(["coeffs", "--w", "z3"]) == EXIT_OK
        assert "5/36" in capsys.readouterr().out

    def test_params_input(self, capsys) -> None:
        assert run(["coeffs", "--params", "2"]) == EXIT_OK
        assert "17/36" in capsys.readouterr().out

    def test_needs_exactly_one_input(self, capsys) -> None:
        assert run(["coeffs"]) == EXIT_USAGE
        assert "exactly one" in capsys.readouterr().err

    def test_out_of_range_sequence(self, capsys) -> None:
        assert run(["coeffs", "--p", "3"]) == EXIT_USAGE
        assert "exceeds 2" in capsys.readouterr().err


class TestMaximize:
    def test_face_alias(self, capsys) -> None:
        assert run(["maximize", "--class", "convex", "--target", "t4"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "convex face p=0,y=1" in out
        assert "max 0.00694444" in out

    def test_unknown_face(self, capsys) -> None:
        assert run(["maximize", "--target", "z=0"]) == EXIT_USAGE
        assert "unknown starlike face" in capsys.readouterr().err

    def test_majorant(self, capsys) -> None:
        assert run(["maximize", "--target", "M", "-q", "--no-timestamp"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "max M = 0.111111" in out
        assert "1 claims: 1 match" in out

    def test_majorant_maximized_once(self, monkeypatch, capsys) -> None:
        original = optimize.maximize_majorant
        calls = []

        def counting(*args, **kwargs):
            calls.append(args)
            return original(*args, **kwargs)

        monkeypatch.setattr(optimize, "maximize_majorant", counting)
        monkeypatch.setattr(verify_hankel, "maximize_majorant", counting)
        assert run(["maximize", "--target", "N", "-q", "--no-timestamp"]) == EXIT_OK
        assert len(calls) == 1
        assert "1 claims: 1 match" in capsys.readouterr().out


class TestReproduce:
    """Claim runs, exit codes and report files."""

    def test_single_claim_to_tree(self, tmp_path, capsys) -> None:
        target = tmp_path / "report.json"
        code = run(["reproduce", "--only", "F1-A4", "-q", "--no-timestamp",
                    "--out", str(target), "--format", "tree"])
        assert code == EXIT_OK
        tree = json.loads(target.read_text(encoding="utf-8"))
        assert [c["id"] for c in tree["claims"]] == ["F1-A4"]
        assert tree["config"]["grid"] == 21
        assert "timestamp" not in tree

    def test_flag_fails_only_when_strict(self) -> None:
        assert run(["reproduce", "--only", "A7-STAR-FORMULA", "-q"]) == EXIT_OK
        assert run(["reproduce", "--only", "A7-STAR-FORMULA", "-q", "--strict"]) == 1

    def test_class_filter_hides_other_class(self, capsys) -> None:
        assert run(["reproduce", "--class", "starlike", "--only", "F2-A4", "-q"]) == EXIT_USAGE
        assert "unknown claim" in capsys.readouterr().err

    def test_unwritable_report(self, tmp_path) -> None:
        target = tmp_path / "missing" / "report.txt"
        assert run(["reproduce", "--only", "F1-A4", "-q", "--out", str(target)]) == EXIT_USAGE

    def test_missing_command(self) -> None:
        assert run([]) == EXIT_USAGE

    def test_help(self) -> None:
        assert run(["--help"]) == EXIT_OK


class TestSampleAndBounds:
    def test_sample(self, capsys) -> None:
        assert run(["sample", "--class", "convex", "--n", "300", "-q", "--no-timestamp"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "300 sampled members" in out
        assert "H41" in out and "a7" in out
        assert "SAMPLED-BOUNDS-CONV" in out

    def test_starlike_bounds(self, capsys) -> None:
        assert run(["bounds", "--class", "starlike", "-q", "--no-timestamp"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "T3 (over 597196800)" in out
        assert "sharp" in out and "comparison" in out

    def test_convex_bounds_show_printed_constants(self, capsys) -> None:
        assert run(["bounds", "--class", "convex", "-q", "--no-timestamp"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "(printed 40320)" in out
        assert "sharp/a7-stated/U-printed" in out
        assert "flagged" in out

    def test_convex_bounds_strict(self) -> None:
        assert run(["bounds", "--class", "convex", "-q", "--strict"]) == 1
