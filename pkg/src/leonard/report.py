"""Pass/fail bookkeeping for the identity-verification machinery."""

from __future__ import annotations

from dataclasses import dataclass


class VerificationError(AssertionError):
    """An exact identity that must hold for valid input failed."""


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check: pass/fail, a witness, elapsed time.

    The witness names the first failing site (an index, an entry
    coordinate, a sub-equation) and is None for passing checks.
    """

    key: str
    ok: bool
    witness: str | None = None
    elapsed_ms: float = 0.0

    def with_elapsed(self, elapsed_ms: float) -> "CheckResult":
        return CheckResult(self.key, self.ok, self.witness, elapsed_ms)

    def to_json(self, timing: bool = False) -> dict:
        out: dict = {"check": self.key, "ok": self.ok, "witness": self.witness}
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def passed(key: str) -> CheckResult:
    return CheckResult(key, True)


def failed(key: str, witness: str) -> CheckResult:
    return CheckResult(key, False, witness)


def check_all(key: str, labelled_facts) -> CheckResult:
    """Fold (label, bool) pairs into one result witnessing the first failure."""
    for label, ok in labelled_facts:
        if not ok:
            return failed(key, label)
    return passed(key)
