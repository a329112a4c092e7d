# =============================================================================
# rope_algebra/validation/models.py - Validation Report Models
# =============================================================================

from typing import Iterable, List, Optional

from pydantic import BaseModel


class CheckResult(BaseModel):
    name: str
    residual: float
    threshold: float
    passed: bool
    detail: str = ""

    @classmethod
    def measure(
        cls, name: str, residual: float, threshold: float, detail: str = ""
    ) -> "CheckResult":
        """Pass iff residual <= threshold."""
        residual, threshold = float(residual), float(threshold)
        passed = residual <= threshold
        return cls(name=name, residual=residual, threshold=threshold, passed=passed, detail=detail)


class ValidationReport(BaseModel):
    verdict: bool
    seed: Optional[int] = None
    checks: List[CheckResult]

    @classmethod
    def from_checks(cls, checks: Iterable[CheckResult], seed: Optional[int] = None) -> "ValidationReport":
        ordered = sorted(checks, key=lambda c: c.name)
        return cls(verdict=all(c.passed for c in ordered), seed=seed, checks=ordered)

    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)
