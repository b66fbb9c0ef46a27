"""Pass/fail reports for verification sweeps."""
from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import format_scalar


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), "" if ok else detail))
        return bool(ok)

    def expect_equal(self, name: str, lhs, rhs) -> bool:
        """Compare matrices (or scalars) and record the first discrepancy."""
        if hasattr(lhs, "first_mismatch"):
            bad = lhs.first_mismatch(rhs)
            if bad is None:
                return self.add(name, True)
            if bad[0] == "shape":
                return self.add(name, False, f"shape {bad[1]} vs {bad[2]}")
            i, j, a, b = bad
            return self.add(name, False, f"entry ({i},{j}): {format_scalar(a)} != {format_scalar(b)}")
        ok = lhs == rhs
        detail = "" if ok else f"{_fmt(lhs)} != {_fmt(rhs)}"
        return self.add(name, ok, detail)

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            out.append(f"{tag} {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
        return out

    def summary(self) -> str:
        n_bad = len(self.failures())
        state = "PASS" if n_bad == 0 else "FAIL"
        return f"{state} {self.title}: {len(self.checks) - n_bad}/{len(self.checks)} checks"


def _fmt(x) -> str:
    try:
        return format_scalar(x)
    except Exception:
        return repr(x)
