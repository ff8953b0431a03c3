"""Exception hierarchy shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class ParseDiagnostic:
    """A positioned message about some text input (1-based line and column)."""

    line: int
    column: int
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class HWError(Exception):
    """Base class of every error raised on purpose by this package."""


class DiagramError(HWError, ValueError):
    """Raw input violates the definition of a Heisenberg-Weyl diagram."""

    def __init__(self, message: str, diagnostic: Optional[ParseDiagnostic] = None):
        super().__init__(message)
        self.diagnostic = diagnostic

    def __str__(self) -> str:
        base = super().__str__()
        if self.diagnostic is not None:
            return f"line {self.diagnostic.line}: {base}"
        return base


class BothEndsFree(DiagramError):
    def __init__(self, edge: int, diagnostic: Optional[ParseDiagnostic] = None):
        super().__init__(f"edge {edge} has neither head nor tail attached", diagnostic)
        self.edge = edge


class CycleDetected(DiagramError):
    """``cycle`` lists edge indices e1..en with head(e_k) == tail(e_{k+1}) cyclically."""

    def __init__(self, cycle: Sequence[int], diagnostic: Optional[ParseDiagnostic] = None):
        super().__init__(f"edges {list(cycle)} form a directed cycle", diagnostic)
        self.cycle = tuple(cycle)


class IsolatedVertex(DiagramError):
    def __init__(self, vertex: int, diagnostic: Optional[ParseDiagnostic] = None):
        super().__init__(f"vertex {vertex} has no incident line", diagnostic)
        self.vertex = vertex


class IndexOutOfRange(DiagramError):
    def __init__(self, edge: int, index: int, vertex_count: int,
                 diagnostic: Optional[ParseDiagnostic] = None):
        super().__init__(
            f"edge {edge} refers to vertex {index}, but there are {vertex_count} vertices",
            diagnostic,
        )
        self.edge = edge
        self.index = index


class InvalidMatching(HWError, ValueError):
    """A matching pairs lines of the wrong class, or reuses a line."""


class SizeGuardExceeded(HWError, RuntimeError):
    """A computation would exceed one of the configured size limits."""


class ParseError(HWError, ValueError):
    """Syntax error in a text input; carries at least one diagnostic."""

    def __init__(self, diagnostics: Sequence[ParseDiagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))

    @property
    def line(self) -> int:
        return self.diagnostics[0].line

    @property
    def column(self) -> int:
        return self.diagnostics[0].column
