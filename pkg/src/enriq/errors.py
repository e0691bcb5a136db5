"""Exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class EnriqError(Exception):
    pass


class DomainError(EnriqError, ValueError):
    """An element is not in the carrier of the quantale it is used with."""


class UsageError(EnriqError, ValueError):
    """Shape, base or quantale mismatch between arguments."""


class PreconditionError(EnriqError, ValueError):
    pass


class UnsupportedError(EnriqError):
    """The operation needs an enumerable carrier (or other capability) the input lacks."""


class ResourceLimitError(EnriqError):
    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what}: {needed} candidates exceeds cap {cap}")
        self.needed = needed
        self.cap = cap


class ParseError(EnriqError):
    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass(frozen=True)
class Violation:
    """A failed inequality ``lhs ⪯ rhs`` with the objects that witness it."""

    axiom: str
    witness: tuple
    lhs: Any
    rhs: Any

    def __str__(self) -> str:
        objs = ", ".join(map(str, self.witness))
        return f"{self.axiom} fails at ({objs}): {self.lhs!r} is not below {self.rhs!r}"


class AxiomViolation(EnriqError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation
