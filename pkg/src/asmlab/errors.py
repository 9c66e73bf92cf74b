"""Shared exception types.

Parameter/validation problems raise plain ValueError; everything here is a
runtime domain failure (exit code 1 at the CLI).
"""

from __future__ import annotations


class AssemblyError(Exception):
    """Base class for domain failures (bad graph shape, exceeded caps, bad input data)."""


class ResourceLimitError(AssemblyError):
    """An instance exceeds a documented solver cap."""

    def __init__(self, message: str, limit: int):
        super().__init__(message)
        self.limit = limit


class DisconnectedGraphError(AssemblyError):
    """Raised when a single covering walk cannot exist because the graph has
    several weakly-connected components. Carries the per-component subgraphs
    so callers can solve each one independently."""

    def __init__(self, components):
        super().__init__(
            f"graph has {len(components)} weakly-connected components; "
            "no single edge-covering walk exists (solve per component)"
        )
        self.components = list(components)


class NoCoveringWalkError(AssemblyError):
    """The graph is weakly connected but its imbalance pattern admits no
    edge-covering walk (some required duplication path does not exist)."""


class FastaParseError(AssemblyError):
    """Malformed FASTA/FASTQ input; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
