"""Structured outcomes of verification runs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
EXPECTED_FAILURE = "expected-failure-observed"

_VERDICTS = (PASS, FAIL, EXPECTED_FAILURE)


@dataclass
class CheckReport:
    """Outcome of one verification run.

    failures holds JSON-serializable witness payloads.  The verdict is
    'pass' exactly when there are no failures; 'expected-failure-observed'
    confirms a theorem about non-injectivity and requires a witness.
    """

    name: str
    ring: object
    parameters: dict
    cases_checked: int
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    verdict: str = PASS

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == PASS and self.failures:
            raise ValueError("verdict 'pass' with failure witnesses")
        if self.verdict != PASS and not self.failures:
            raise ValueError(f"verdict {self.verdict!r} needs at least one witness")

    @classmethod
    def build(cls, name, ring, parameters, cases_checked, failures, started,
              expect_failure=False) -> "CheckReport":
        """Derive the verdict from the witnesses and the expectation."""
        elapsed = time.perf_counter() - started
        failures = list(failures)
        if expect_failure:
            if failures:
                verdict = EXPECTED_FAILURE
            else:
                failures = [{"error": "expected violation was not observed"}]
                verdict = FAIL
        else:
            verdict = PASS if not failures else FAIL
        return cls(name, ring, dict(parameters), cases_checked, failures,
                   elapsed, verdict)

    @property
    def ok(self) -> bool:
        """True unless the verdict is an unexpected failure."""
        return self.verdict != FAIL

    def to_json(self) -> dict:
        ring = self.ring.to_json() if self.ring is not None else None
        return {
            "name": self.name,
            "ring": ring,
            "parameters": dict(self.parameters),
            "cases_checked": self.cases_checked,
            "failures": list(self.failures),
            "elapsed_seconds": self.elapsed,
            "verdict": self.verdict,
        }

    def summary_line(self) -> str:
        """One machine-readable line per check, for CI logs."""
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        ring = f"ring={self.ring} " if self.ring is not None else ""
        if params:
            params += " "
        return (
            f"check name={self.name} {ring}{params}"
            f"cases={self.cases_checked} failures={len(self.failures)} "
            f"verdict={self.verdict} elapsed_s={self.elapsed:.3f}"
        )
