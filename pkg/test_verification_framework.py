"""Tests for claim evaluation, summaries and report output."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from classes import ClassTag
from verification_framework import (
    FLAGGED,
    MATCH,
    MISMATCH,
    Claim,
    RunConfig,
    VerificationFramework,
    decimal_tolerance,
    evaluate_claim,
    parse_printed_value,
    render,
    save_results,
    to_tree,
)

S = ClassTag.STARLIKE


def claim(claim_id, printed, value, **kwargs):
    return Claim(claim_id, kwargs.pop("cls", S), printed, lambda cfg: value, "test anchor", **kwargs)


@pytest.fixture
def framework():
    fw = VerificationFramework(RunConfig())
    fw.add_claims([
        claim("A", "1/9", Fraction(1, 9)),
        claim("B", "0.0159535", 0.01595352),
        claim("C", "0.29059", 0.3, registered=True),
        claim("D", "0", 1, cls=None),
    ])
    return fw


class TestConfig:
    def test_defaults(self, monkeypatch) -> None:
        for name in ("GRID", "TOL", "SEED", "SAMPLES", "EXACT_SAMPLES", "OUT"):
            monkeypatch.delenv(f"EXPHANKEL_{name}", raising=False)
        assert RunConfig.from_env() == RunConfig()
        assert RunConfig().exact_samples == 1000

    def test_environment_overrides(self, monkeypatch) -> None:
        monkeypatch.setenv("EXPHANKEL_GRID", "33")
        monkeypatch.setenv("EXPHANKEL_EXACT_SAMPLES", "250")
        cfg = RunConfig.from_env()
        assert (cfg.grid, cfg.exact_samples) == (33, 250)


class TestTolerance:
    """Half a unit in the last printed place."""

    @pytest.mark.parametrize("value, expected", [
        ("0.29059", 5e-6), ("0.0403246", 5e-8), ("1.4367", 5e-5),
        ("1/9", 0.0), ("0", 0.0), ("-3", 0.0), (Fraction(1, 144), 0.0), (2, 0.0),
    ])
    def test_decimal_tolerance(self, value, expected) -> None:
        assert decimal_tolerance(value) == pytest.approx(expected)

    def test_float_needs_explicit_tolerance(self) -> None:
        with pytest.raises(ValueError, match="explicit tolerance"):
            decimal_tolerance(0.5)

    def test_parse(self) -> None:
        assert parse_printed_value("17/36") == Fraction(17, 36)
        assert parse_printed_value(" 0.5 ") == Fraction(1, 2)
        assert parse_printed_value(0.25) == 0.25


class TestEvaluateClaim:
    def test_exact_match(self) -> None:
        record = evaluate_claim(claim("X", "1/9", Fraction(1, 9)), RunConfig())
        assert record.status == MATCH
        assert record.abs_diff == 0.0
        assert record.computed_value == "1/9"

    def test_exact_mismatch(self) -> None:
        record = evaluate_claim(claim("X", "1/9", Fraction(1, 8)), RunConfig())
        assert record.status == MISMATCH
        assert record.abs_diff == pytest.approx(1 / 72)

    def test_decimal_within_half_unit(self) -> None:
        record = evaluate_claim(claim("X", "0.0398426", 0.03984264), RunConfig())
        assert record.status == MATCH

    def test_numpy_scalar(self) -> None:
        record = evaluate_claim(claim("X", "0", np.int64(0)), RunConfig())
        assert record.status == MATCH
        assert record.computed_value == "0"

    def test_registered_is_flagged_even_when_equal(self) -> None:
        record = evaluate_claim(claim("X", "0", 0, registered=True), RunConfig())
        assert record.status == FLAGGED

    def test_error_becomes_mismatch(self) -> None:
        def boom(cfg):
            raise ValueError("bad input")

        record = evaluate_claim(Claim("X", S, "1", boom, "anchor"), RunConfig())
        assert record.status == MISMATCH
        assert record.computed_value == "error"
        assert "bad input" in record.anchor

    def test_both_classes(self) -> None:
        assert evaluate_claim(claim("X", "0", 0, cls=None), RunConfig()).cls == "both"


class TestFramework:
    """Selection, summaries and exit codes."""

    def test_duplicate_id(self, framework) -> None:
        with pytest.raises(ValueError, match="duplicate"):
            framework.add_claim(claim("A", "0", 0))

    def test_summary(self, framework) -> None:
        report = framework.run(verbose=False)
        s = report.summary
        assert (s["total"], s[MATCH], s[MISMATCH], s[FLAGGED]) == (4, 2, 1, 1)
        assert s["by_class"]["both"] == {MATCH: 0, MISMATCH: 1, FLAGGED: 0}

    def test_only_keeps_registry_order(self, framework) -> None:
        report = framework.run(only=["C", "A"], verbose=False)
        assert [r.id for r in report.records] == ["A", "C"]

    def test_unknown_only(self, framework) -> None:
        with pytest.raises(KeyError, match="Z"):
            framework.run(only=["Z"], verbose=False)

    def test_exit_codes(self, framework) -> None:
        clean = framework.run(only=["A", "C"], verbose=False)
        assert VerificationFramework.exit_code(clean) == 0
        assert VerificationFramework.exit_code(clean, strict=True) == 1
        assert VerificationFramework.exit_code(framework.run(verbose=False)) == 1

    def test_verbose_progress(self, framework, capsys) -> None:
        framework.run(only=["A"])
        out = capsys.readouterr().out
        assert "Running A" in out
        assert "+ match" in out


class TestOutput:
    def test_text_is_deterministic_without_timestamp(self, framework) -> None:
        first = render(framework.run(verbose=False, timestamp=False))
        second = render(framework.run(verbose=False, timestamp=False))
        assert first == second
        assert "4 claims: 2 match, 1 mismatch, 1 flagged" in first
        assert "generated" not in first

    def test_tree(self, framework) -> None:
        tree = json.loads(render(framework.run(verbose=False), "tree"))
        assert [c["id"] for c in tree["claims"]] == ["A", "B", "C", "D"]
        assert tree["config"]["grid"] == 100
        assert "timestamp" in tree

    def test_tree_without_timestamp(self, framework) -> None:
        assert "timestamp" not in to_tree(framework.run(verbose=False, timestamp=False))

    def test_unknown_format(self, framework) -> None:
        with pytest.raises(ValueError, match="format"):
            render(framework.run(verbose=False), "xml")

    def test_save(self, framework, tmp_path, capsys) -> None:
        target = tmp_path / "report.txt"
        save_results(framework.run(verbose=False, timestamp=False), str(target))
        assert "CLAIM VERIFICATION REPORT" in target.read_text(encoding="utf-8")
        assert "Results saved" in capsys.readouterr().out

    def test_save_failure_propagates(self, framework, tmp_path, capsys) -> None:
        target = tmp_path / "missing" / "report.txt"
        with pytest.raises(OSError):
            save_results(framework.run(verbose=False), str(target))
        assert "Could not write" in capsys.readouterr().err
