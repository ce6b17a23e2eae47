"""Exception hierarchy shared by every gscsp module."""

from __future__ import annotations


class GscspError(Exception):
    """Base class for all library errors."""


class NotRowConvex(GscspError, ValueError):
    def __init__(self, row: int, message: str | None = None):
        self.row = row
        super().__init__(message or f"row {row} is not row convex")


class DomainMismatch(GscspError, ValueError):
    pass


class MixedClasses(GscspError, ValueError):
    pass


class NotGS(GscspError, ValueError):
    """Operand is neither down staircase nor up staircase."""


class ClassMismatch(GscspError, ValueError):
    """An instance constraint does not belong to the class an engine requires."""

    def __init__(self, pair: tuple[int, int], expected: str):
        self.pair = pair
        self.expected = expected
        super().__init__(f"constraint on {pair} is not {expected.upper()}")


class NotDS(ClassMismatch):
    def __init__(self, pair: tuple[int, int]):
        super().__init__(pair, "ds")


class DuplicateConstraint(GscspError, ValueError):
    def __init__(self, pair: tuple[int, int], line: int | None = None):
        self.pair = pair
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"more than one constraint on pair {pair}{where}")


class NotApplicable(GscspError):
    pass


class AlreadyRemoved(GscspError, AssertionError):
    pass


class TooLarge(GscspError):
    pass


class InvalidSpec(GscspError, ValueError):
    pass


class InstanceSyntaxError(GscspError, ValueError):
    """Malformed instance file; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class UnknownValue(InstanceSyntaxError):
    pass
