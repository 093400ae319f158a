"""Structured verdicts for inequality and identity checks."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

__all__ = ["CheckReport", "digest_inputs", "make_report"]

#: float-noise tolerance: an inequality counts as violated only beyond this
NOISE_RTOL = 1e-12

#: slack below this fraction of scale is flagged near-tight
NEAR_TIGHT_RTOL = 1e-9


def digest_inputs(*objs) -> str:
    """Stable hex digest of the check inputs (arrays, scalars, strings)."""
    h = hashlib.sha1()
    for obj in objs:
        if isinstance(obj, np.ndarray):
            h.update(str(obj.shape).encode())
            h.update(np.ascontiguousarray(obj, dtype=float).tobytes())
        elif isinstance(obj, (list, tuple)):
            for sub in obj:
                h.update(digest_inputs(sub).encode())
        else:
            h.update(repr(obj).encode())
    return h.hexdigest()[:16]


@dataclass
class CheckReport:
    """Outcome of one inequality or identity check.

    ``slack`` is rhs - lhs; ``verdict`` is one of holds, near-tight, violated,
    not-applicable.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    verdict: str
    digest: str
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict != "violated"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "verdict": self.verdict,
            "digest": self.digest,
            "detail": {k: v for k, v in self.detail.items()},
        }


def make_report(name: str, lhs: float, rhs: float, *, identity: bool = False,
                inputs=(), detail: dict | None = None) -> CheckReport:
    """Build a CheckReport for lhs <= rhs (or lhs == rhs when identity)."""
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    scale = max(1.0, abs(lhs), abs(rhs))
    tol = NOISE_RTOL * max(1.0, abs(rhs))
    if identity:
        verdict = "holds" if abs(slack) <= tol else "violated"
    elif lhs > rhs + tol:
        verdict = "violated"
    elif slack < NEAR_TIGHT_RTOL * scale:
        verdict = "near-tight"
    else:
        verdict = "holds"
    return CheckReport(
        name=name, lhs=lhs, rhs=rhs, slack=slack, verdict=verdict,
        digest=digest_inputs(*inputs), detail=detail or {},
    )
