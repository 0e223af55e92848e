"""Three-valued verdicts carrying their evidence."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

__all__ = ["Status", "Outcome", "HOLDS", "FAILS", "UNKNOWN", "holds", "fails", "unknown"]


class Status(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    UNKNOWN = "UNKNOWN"


HOLDS, FAILS, UNKNOWN = Status.HOLDS, Status.FAILS, Status.UNKNOWN


@dataclass(frozen=True)
class Outcome:
    """A decided (or undecided) predicate.

    ``witness`` is whatever finite data backs the verdict: a bounding pair,
    a counterexample, a certificate.  ``reason`` is a short human label.
    Truth-testing an UNKNOWN outcome raises, so undecided answers cannot
    silently pass for ``False``.
    """

    status: Status
    witness: Any = None
    reason: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        if self.status is Status.UNKNOWN:
            raise ValueError(f"undecided outcome used as a boolean ({self.reason})")
        return self.status is Status.HOLDS

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN


def holds(witness=None, reason="", **extra) -> Outcome:
    return Outcome(Status.HOLDS, witness, reason, extra)


def fails(witness=None, reason="", **extra) -> Outcome:
    return Outcome(Status.FAILS, witness, reason, extra)


def unknown(reason="", witness=None, **extra) -> Outcome:
    return Outcome(Status.UNKNOWN, witness, reason, extra)
