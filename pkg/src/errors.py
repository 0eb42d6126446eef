from typing import Optional


class ToolkitError(Exception):
    pass


class UsageError(ToolkitError):
    """Bad input: mismatched shapes, fields or variables, bad flags, unverified morphisms."""


class ParseError(UsageError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class DomainError(ToolkitError):
    """The mathematics cannot proceed: non-unit inversion, missing roots, non-adapted modules."""
