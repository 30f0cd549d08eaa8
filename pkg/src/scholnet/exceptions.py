"""Exception hierarchy shared by every scholnet module."""

from __future__ import annotations


class ScholnetError(Exception):
    """Base class for all errors raised by scholnet."""


class NotFoundError(ScholnetError, KeyError):
    """An author, paper or field id does not resolve."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class CorpusParseError(ScholnetError, ValueError):
    """A JSONL record could not be parsed or violates the record schema."""

    def __init__(self, message: str, path: str | None = None, lineno: int | None = None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where = f"{path}:{lineno}: " if lineno is not None else f"{path}: "
        elif lineno is not None:
            where = f"line {lineno}: "
        super().__init__(where + message)


class HierarchyError(ScholnetError, ValueError):
    """The field-of-study hierarchy is structurally invalid (cycle, dangling parent)."""


class DomainError(ScholnetError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConfigError(ScholnetError, ValueError):
    """Invalid configuration or generator parameters."""
