"""Campaign reports and their JSON form."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

SCHEMA = "pathkit-report/1"


@dataclass
class CheckReport:
    law: str
    samples: int
    seed: int
    depth: int
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    oracle_verdicts: dict[str, int] = field(default_factory=lambda: {"confirmed": 0, "unknown": 0})
    stats: dict[str, Any] = field(default_factory=dict)
    elapsed: float | None = None  # milliseconds

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def unknown(self) -> int:
        return self.oracle_verdicts.get("unknown", 0)

    def add_failure(self, inputs: str, expected: str, got: str) -> None:
        self.failures.append((inputs, expected, got))

    def note_oracle(self, verdict: str) -> None:
        self.oracle_verdicts[verdict] = self.oracle_verdicts.get(verdict, 0) + 1

    def finish(self, started: float) -> "CheckReport":
        self.failures.sort()
        self.elapsed = (time.perf_counter() - started) * 1000.0
        return self

    def merge(self, other: "CheckReport") -> "CheckReport":
        """Combine reports of the same law computed on disjoint sample ranges."""
        if (self.law, self.seed, self.depth) != (other.law, other.seed, other.depth):
            raise ValueError("can only merge reports of the same campaign")
        verdicts = dict(self.oracle_verdicts)
        for k, v in other.oracle_verdicts.items():
            verdicts[k] = verdicts.get(k, 0) + v
        stats: dict[str, Any] = {}
        for k in sorted(set(self.stats) | set(other.stats)):
            a, b = self.stats.get(k), other.stats.get(k)
            if a is None or b is None:
                stats[k] = a if b is None else b
            elif k.startswith("max"):
                stats[k] = max(a, b)
            else:
                stats[k] = a + b
        elapsed = None
        if self.elapsed is not None or other.elapsed is not None:
            elapsed = (self.elapsed or 0.0) + (other.elapsed or 0.0)
        return CheckReport(
            law=self.law,
            samples=self.samples + other.samples,
            seed=self.seed,
            depth=self.depth,
            failures=sorted(self.failures + other.failures),
            oracle_verdicts=verdicts,
            stats=stats,
            elapsed=elapsed,
        )

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "law": self.law,
            "pass": self.passed,
            "samples": self.samples,
            "seed": self.seed,
            "depth": self.depth,
            "failures": [
                {"inputs": i, "expected": e, "got": g} for i, e, g in self.failures
            ],
            "oracle_verdicts": dict(sorted(self.oracle_verdicts.items())),
            "stats": dict(sorted(self.stats.items())),
            "elapsed_ms": round(self.elapsed, 3) if timing and self.elapsed is not None else None,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CheckReport":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            law=d["law"],
            samples=d["samples"],
            seed=d["seed"],
            depth=d["depth"],
            failures=[(f["inputs"], f["expected"], f["got"]) for f in d["failures"]],
            oracle_verdicts=dict(d["oracle_verdicts"]),
            stats=dict(d["stats"]),
            elapsed=d.get("elapsed_ms"),
        )

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.law}: {status} samples={self.samples} failures={len(self.failures)}"
        if any(self.oracle_verdicts.values()):
            line += f" oracle confirmed={self.oracle_verdicts.get('confirmed', 0)} unknown={self.unknown}"
        return line
