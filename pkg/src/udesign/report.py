"""Verification report record shared by the character and moment checks."""

import json
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    mode: str                      # exact-enumerated | probe-factorized | sampled | character
    residuals: dict                # label -> residual (float)
    targets: dict = field(default_factory=dict)
    tolerance: float = 0.0
    passed: bool = False
    counts: dict = field(default_factory=dict)   # element/sample/probe counts
    detail: dict = field(default_factory=dict)

    @staticmethod
    def from_residuals(mode, residuals, tolerance, targets=None, counts=None, detail=None):
        return VerificationReport(
            mode=mode,
            residuals=dict(residuals),
            targets=dict(targets or {}),
            tolerance=tolerance,
            passed=all(v <= tolerance for v in residuals.values()),
            counts=dict(counts or {}),
            detail=dict(detail or {}),
        )

    def max_residual(self):
        return max(self.residuals.values()) if self.residuals else 0.0

    def to_json(self):
        return {
            "mode": self.mode,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "residuals": {str(k): v for k, v in self.residuals.items()},
            "targets": {str(k): v for k, v in self.targets.items()},
            "counts": self.counts,
            "detail": self.detail,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)
