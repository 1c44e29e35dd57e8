"""Check reports and their deterministic serialization."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    space_hash: str
    verdict: str  # pass | fail | skipped
    witnesses: tuple[str, ...] = ()
    bounds: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def __post_init__(self) -> None:
        if self.verdict not in ("pass", "fail", "skipped"):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and not self.witnesses:
            raise ValueError("a failing report needs at least one witness")

    def as_dict(self, with_runtime: bool = True) -> dict:
        out = {
            "check": self.check,
            "space_hash": self.space_hash,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "bounds": {k: self.bounds[k] for k in sorted(self.bounds)},
        }
        if with_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out


def sort_reports(reports: list[CheckReport]) -> list[CheckReport]:
    return sorted(reports, key=lambda r: (r.check, r.space_hash))


def emit_report(reports: list[CheckReport], fmt: str = "json") -> str:
    reports = sort_reports(reports)
    if fmt == "json":
        payload = [r.as_dict() for r in reports]
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "table":
        if not reports:
            return "(no reports)\n"
        width = max(len(r.check) for r in reports)
        lines = []
        for r in reports:
            extra = f" witnesses={len(r.witnesses)}" if r.witnesses else ""
            lines.append(
                f"{r.check:<{width}}  {r.space_hash}  {r.verdict:<7} {r.runtime_ms:>6} ms{extra}"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def report_digest(reports: list[CheckReport]) -> str:
    """Digest of the reports with wall-clock stripped; equal runs give equal
    digests."""
    payload = [r.as_dict(with_runtime=False) for r in sort_reports(reports)]
    blob = json.dumps(payload, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def strip_runtime(serialized: str) -> str:
    """Drop runtime fields from an emitted JSON report for byte comparison."""
    data = json.loads(serialized)
    for entry in data:
        entry.pop("runtime_ms", None)
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
