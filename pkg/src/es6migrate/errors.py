"""Exception types shared across the toolchain."""

from __future__ import annotations


class Es6MigrateError(Exception):
    """Base class for all tool errors."""


class JsSyntaxError(Es6MigrateError):
    """Input outside the supported JavaScript subset, or malformed input."""

    def __init__(self, message: str, span: tuple[int, int] | None = None, path: str | None = None):
        self.span = span
        self.path = path
        loc = f" at {span[0]}..{span[1]}" if span else ""
        where = f" in {path}" if path else ""
        super().__init__(f"{message}{loc}{where}")


class PrintError(Es6MigrateError):
    """A synthesized node is missing children required for printing."""


class SchemaError(Es6MigrateError):
    """Malformed graph JSON."""


class UnknownModule(Es6MigrateError):
    """A module path was queried that is not part of the graph."""


class TransformError(Es6MigrateError):
    """A refactoring step could not be applied to a module."""


class RefactoringAbandoned(Es6MigrateError):
    """Project-wide abort: global-declaration preconditions failed."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(
            "refactoring abandoned: %d global precondition violation(s)" % len(self.violations)
        )


class MismatchedModuleSets(Es6MigrateError):
    """Two metric snapshots do not cover the same modules."""
