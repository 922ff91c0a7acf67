from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"

    @property
    def rank(self) -> int:
        return {"error": 2, "warning": 1, "info": 0}[self.value]


@dataclass(frozen=True)
class SourceSpan:
    """1-based span; ``end_col`` points one past the last character."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.start_line}:{self.start_col}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    message: str
    span: Optional[SourceSpan] = None
    related_ids: tuple[str, ...] = field(default_factory=tuple)

    def render(self, file_name: str = "<input>") -> str:
        where = str(self.span) if self.span else file_name
        return f"{where}: {self.severity.value}[{self.code}]: {self.message}"

    def to_dict(self) -> dict:
        span = None
        if self.span is not None:
            span = {
                "file": self.span.file,
                "start_line": self.span.start_line,
                "start_col": self.span.start_col,
                "end_line": self.span.end_line,
                "end_col": self.span.end_col,
            }
        return {
            "code": self.code,
            "severity": self.severity.value,
            "message": self.message,
            "span": span,
            "related_ids": list(self.related_ids),
        }


def has_errors(diagnostics) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)
