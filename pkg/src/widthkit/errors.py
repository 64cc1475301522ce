"""Exception types and the search-node budget shared by the exhaustive routines."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**7


class WidthkitError(Exception):
    pass


class InvalidArgument(WidthkitError, ValueError):
    pass


class ResourceLimit(WidthkitError, RuntimeError):
    """Raised when an exhaustive search would exceed its node budget or size limit."""


class ValidationError(WidthkitError, ValueError):
    """A decomposition violates one of its structural invariants."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ClassViolation(WidthkitError, ValueError):
    """The input is not in the graph class a bound applies to."""


class KExprError(WidthkitError, ValueError):
    """Syntax or semantic error in k-expression text.

    ``offset`` is the byte offset of the failure, ``expected`` the set of
    tokens that would have been accepted there (empty for semantic errors).
    """

    def __init__(self, message, offset=None, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        loc = f" at offset {offset}" if offset is not None else ""
        exp = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message}{loc}{exp}")


def default_budget() -> int:
    value = os.environ.get("WIDTHKIT_BUDGET")
    if value:
        try:
            return int(value)
        except ValueError:
            raise InvalidArgument(f"WIDTHKIT_BUDGET must be an integer, got {value!r}")
    return DEFAULT_BUDGET


class Budget:
    """Counts search nodes and raises :class:`ResourceLimit` past ``limit``."""

    __slots__ = ("limit", "used", "name")

    def __init__(self, limit: int | None = None, name: str = "search"):
        self.limit = default_budget() if limit is None else limit
        self.used = 0
        self.name = name

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise ResourceLimit(
                f"{self.name} exceeded the node budget of {self.limit} "
                "(set WIDTHKIT_BUDGET to raise it)"
            )

    @classmethod
    def coerce(cls, budget, name: str = "search") -> "Budget":
        if isinstance(budget, Budget):
            return budget
        return cls(budget, name)
