"""
Verification framework: runs registered claims, compares each computed value
with the printed one, and writes the report.

A claim is `match` when |computed − printed| is within its tolerance,
`mismatch` otherwise, and `flagged` when its id is a registered discrepancy
(a documented gap between a printed value and its re-derivation).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Union

from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_exponential

from classes import ClassTag

MATCH = "match"
MISMATCH = "mismatch"
FLAGGED = "flagged"

PrintedValue = Union[str, float, int, Fraction]


# ──────────────────────────────────────────────────────────────────────────────
# 1. Configuration
# ──────────────────────────────────────────────────────────────────────────────

@dataclass
class RunConfig:
    grid: int = 100
    tol: float = 1e-10
    seed: int = 7
    samples: int = 100_000
    exact_samples: int = 1000
    out: str = ""

    @classmethod
    def from_env(cls) -> "RunConfig":
        """Read EXPHANKEL_* variables; unset ones keep their defaults."""
        return cls(
            grid=int(os.getenv("EXPHANKEL_GRID", "100")),
            tol=float(os.getenv("EXPHANKEL_TOL", "1e-10")),
            seed=int(os.getenv("EXPHANKEL_SEED", "7")),
            samples=int(os.getenv("EXPHANKEL_SAMPLES", "100000")),
            exact_samples=int(os.getenv("EXPHANKEL_EXACT_SAMPLES", "1000")),
            out=os.getenv("EXPHANKEL_OUT", ""),
        )


# ──────────────────────────────────────────────────────────────────────────────
# 2. Claims and records
# ──────────────────────────────────────────────────────────────────────────────

@dataclass
class Claim:
    """One printed value and the computation that reproduces it."""
    id: str
    cls: Optional[ClassTag]
    printed_value: PrintedValue
    compute: Callable[[RunConfig], Any]
    anchor: str
    tolerance: Optional[float] = None
    registered: bool = False


@dataclass
class ClaimRecord:
    """Outcome of one claim."""
    id: str
    cls: str
    printed_value: str
    computed_value: str
    abs_diff: float
    tolerance: float
    status: str
    anchor: str


def _is_exact_text(text: str) -> bool:
    return "/" in text or text.lstrip("-").isdigit()


def decimal_tolerance(value: PrintedValue) -> float:
    """Half a unit in the last printed place; 0 for exact values."""
    if isinstance(value, (int, Fraction)):
        return 0.0
    if isinstance(value, float):
        raise ValueError("float printed values need an explicit tolerance")
    text = value.strip()
    if _is_exact_text(text):
        return 0.0
    if "." not in text:
        raise ValueError(f"cannot read a printed precision from {value!r}")
    digits = len(text.split(".", 1)[1])
    return 0.5 * 10.0 ** (-digits)


def parse_printed_value(value: PrintedValue) -> Union[Fraction, float]:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return value
    return Fraction(value.strip())


def _display(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _is_exact(value: Any) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def evaluate_claim(claim: Claim, config: RunConfig) -> ClaimRecord:
    """Compute one claim; an exception becomes a mismatch carrying the error text."""
    tolerance = claim.tolerance if claim.tolerance is not None else decimal_tolerance(claim.printed_value)
    printed = parse_printed_value(claim.printed_value)
    cls_name = claim.cls.value if claim.cls is not None else "both"
    try:
        computed = claim.compute(config)
    except Exception as e:  # noqa: BLE001
        return ClaimRecord(claim.id, cls_name, _display(claim.printed_value), "error", float("inf"),
                           tolerance, MISMATCH, f"{claim.anchor} [error: {e}]")
    if hasattr(computed, "item") and not isinstance(computed, (Fraction, float)):
        computed = computed.item()
    if _is_exact(computed) and isinstance(printed, Fraction):
        diff = float(abs(Fraction(computed) - printed))
    else:
        diff = abs(float(computed) - float(printed))
    if claim.registered:
        status = FLAGGED
    else:
        status = MATCH if diff <= tolerance else MISMATCH
    return ClaimRecord(claim.id, cls_name, _display(claim.printed_value), _display(computed),
                       diff, tolerance, status, claim.anchor)


# ──────────────────────────────────────────────────────────────────────────────
# 3. Framework
# ──────────────────────────────────────────────────────────────────────────────

@dataclass
class VerificationReport:
    records: List[ClaimRecord]
    summary: Dict[str, Any]
    timestamp: Optional[str] = None
    config: Dict[str, Any] = field(default_factory=dict)


class VerificationFramework:
    """Runs claims in registry order and summarizes the outcome."""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig.from_env()
        self.claims: List[Claim] = []

    def add_claim(self, claim: Claim) -> None:
        if any(c.id == claim.id for c in self.claims):
            raise ValueError(f"duplicate claim id {claim.id}")
        self.claims.append(claim)

    def add_claims(self, claims: Iterable[Claim]) -> None:
        for claim in claims:
            self.add_claim(claim)

    def evaluate_single(self, claim: Claim) -> ClaimRecord:
        return evaluate_claim(claim, self.config)

    def run(self, only: Optional[Sequence[str]] = None, verbose: bool = True,
            timestamp: bool = True) -> VerificationReport:
        """Evaluate the selected claims (all by default)."""
        selected = self.claims
        if only:
            unknown = set(only) - {c.id for c in self.claims}
            if unknown:
                raise KeyError(f"unknown claim id(s): {', '.join(sorted(unknown))}")
            selected = [c for c in self.claims if c.id in set(only)]

        records = []
        for claim in selected:
            if verbose:
                print(f"  Running {claim.id}...")
            record = self.evaluate_single(claim)
            records.append(record)
            if verbose:
                mark = {MATCH: "+", MISMATCH: "-", FLAGGED: "~"}[record.status]
                print(f"    {mark} {record.status} ({record.computed_value})")

        return VerificationReport(
            records=records,
            summary=self._generate_summary(records),
            timestamp=datetime.now().isoformat(timespec="seconds") if timestamp else None,
            config=asdict(self.config),
        )

    def _generate_summary(self, records: List[ClaimRecord]) -> Dict[str, Any]:
        summary: Dict[str, Any] = {
            "total": len(records),
            MATCH: sum(r.status == MATCH for r in records),
            MISMATCH: sum(r.status == MISMATCH for r in records),
            FLAGGED: sum(r.status == FLAGGED for r in records),
        }
        by_class: Dict[str, Dict[str, int]] = {}
        for r in records:
            counts = by_class.setdefault(r.cls, {MATCH: 0, MISMATCH: 0, FLAGGED: 0})
            counts[r.status] += 1
        summary["by_class"] = by_class
        return summary

    @staticmethod
    def exit_code(report: VerificationReport, strict: bool = False) -> int:
        failing = {MISMATCH, FLAGGED} if strict else {MISMATCH}
        return 1 if any(r.status in failing for r in report.records) else 0


# ──────────────────────────────────────────────────────────────────────────────
# 4. Report output
# ──────────────────────────────────────────────────────────────────────────────

def format_table(report: VerificationReport) -> str:
    """One claim per line: id, printed, computed, diff, status."""
    lines = ["=" * 60, "CLAIM VERIFICATION REPORT", "=" * 60]
    if report.timestamp:
        lines.append(f"generated: {report.timestamp}")
    lines.append(f"{'id':<24} {'printed':>16} {'computed':>22} {'diff':>10}  status")
    for r in report.records:
        lines.append(f"{r.id:<24} {r.printed_value:>16} {r.computed_value[:22]:>22} "
                     f"{r.abs_diff:>10.2e}  {r.status}")
    s = report.summary
    lines += ["-" * 60,
              f"{s['total']} claims: {s[MATCH]} match, {s[MISMATCH]} mismatch, "
              f"{s[FLAGGED]} flagged",
              "=" * 60]
    return "\n".join(lines) + "\n"


def to_tree(report: VerificationReport) -> Dict[str, Any]:
    tree: Dict[str, Any] = {
        "summary": report.summary,
        "config": report.config,
        "claims": [asdict(r) for r in report.records],
    }
    if report.timestamp:
        tree["timestamp"] = report.timestamp
    return tree


def render(report: VerificationReport, fmt: str = "text") -> str:
    if fmt == "text":
        return format_table(report)
    if fmt == "tree":
        return json.dumps(to_tree(report), indent=2, default=str) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


@retry(
    wait=wait_exponential(multiplier=0.1, min=0.1, max=2),
    stop=stop_after_attempt(3),
    retry=retry_if_exception_type(OSError),
    reraise=True,
)
def _write(filename: str, text: str) -> None:
    with open(filename, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def save_results(report: VerificationReport, filename: str, fmt: str = "text") -> None:
    """Write the report; OSError propagates after the last retry."""
    try:
        _write(filename, render(report, fmt))
    except OSError as e:
        sys.stderr.write(f"[!] Could not write {filename}: {e}\n")
        raise
    print(f"Results saved to {filename}")
