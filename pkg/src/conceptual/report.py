"""Deterministic pass/fail records shared by the verification harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NO_COVERAGE = "no-coverage"


@dataclass(frozen=True)
class CheckRecord:
    check: str
    item: str
    verdict: str
    witness: str | None = None


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, check: str, item: str, ok: bool, witness: str | None = None):
        self.records.append(
            CheckRecord(check, item, PASS if ok else FAIL, None if ok else witness)
        )

    def flag_no_coverage(self, check: str):
        self.records.append(CheckRecord(check, "-", NO_COVERAGE))

    def extend(self, other: "VerificationReport"):
        self.records.extend(other.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.records:
            slot = out.setdefault(r.check, {PASS: 0, FAIL: 0, NO_COVERAGE: 0})
            slot[r.verdict] += 1
        return out

    def to_obj(self) -> dict:
        return {
            "checks": [
                {
                    "check": r.check,
                    "item": r.item,
                    "verdict": r.verdict,
                    "witness": r.witness,
                }
                for r in self.records
            ],
            "summary": {
                "total": len(self.records),
                "failed": len(self.failures),
                "families": self.counts(),
            },
        }

    def to_text(self) -> str:
        lines = []
        for check, slot in self.counts().items():
            mark = "FAIL" if slot[FAIL] else ("NO-COVERAGE" if not slot[PASS] else "ok")
            lines.append(
                f"[{mark}] {check}: {slot[PASS]} passed, {slot[FAIL]} failed"
            )
        for r in self.failures:
            lines.append(f"  FAIL {r.check} on {r.item}: {r.witness or 'no witness'}")
        lines.append(
            f"{len(self.records)} checks, {len(self.failures)} failures"
        )
        return "\n".join(lines)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1
