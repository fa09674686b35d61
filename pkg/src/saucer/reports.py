"""Check results and suite reports for the command-line verifier.

Checks run concurrently but results are collected in submission order, so a
fixed seed gives byte-identical JSON output apart from the timestamp field.
"""
from __future__ import annotations

import dataclasses
import datetime
import json
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from .kernels import BACKEND


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float | None = None
    detail: str = ""
    threshold: float | None = None


Check = tuple[str, Callable[[], CheckResult]]


@dataclasses.dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def counts(self) -> tuple[int, int]:
        good = sum(1 for r in self.results if r.passed)
        return good, len(self.results)


def run_checks(checks: Sequence[Check], jobs: int = 4) -> tuple[CheckResult, ...]:
    """Run check thunks on a thread pool; collect in submission order."""

    def guarded(name: str, thunk: Callable[[], CheckResult]) -> CheckResult:
        try:
            return thunk()
        except Exception as exc:  # a crashed check is a failed check
            tb = traceback.format_exc(limit=2).strip().splitlines()[-1]
            return CheckResult(name, False, None, f"raised {exc!r} ({tb})")

    jobs = max(1, jobs)
    if jobs == 1:
        return tuple(guarded(name, thunk) for name, thunk in checks)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(guarded, name, thunk) for name, thunk in checks]
        return tuple(f.result() for f in futures)


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def report_payload(reports: Sequence[SuiteReport]) -> dict:
    """JSON-ready report: per check id, residual, threshold, pass.

    Checks may hand back numpy scalars; everything is coerced to builtins.
    """
    return {
        "backend": BACKEND,
        "suites": [
            {
                "suite": rep.suite,
                "seed": rep.seed,
                "pass": bool(rep.passed),
                "checks": [
                    {
                        "check": r.name,
                        "residual": None if r.value is None else float(r.value),
                        "threshold": None if r.threshold is None else float(r.threshold),
                        "pass": bool(r.passed),
                        "detail": r.detail,
                    }
                    for r in rep.results
                ],
            }
            for rep in reports
        ],
        "pass": all(bool(rep.passed) for rep in reports),
        "timestamp": _timestamp(),
    }


def format_pretty(reports: Sequence[SuiteReport]) -> str:
    return json.dumps(report_payload(reports), indent=2, sort_keys=True)


def format_compact(reports: Sequence[SuiteReport]) -> str:
    return json.dumps(report_payload(reports), separators=(",", ":"), sort_keys=True)
