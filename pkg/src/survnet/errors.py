"""Diagnostics and exception types shared by every validator."""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from pydantic import BaseModel, ConfigDict


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Diagnostic(BaseModel):
    model_config = ConfigDict(frozen=True)

    severity: Severity
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value}: {self.path}: {self.message}"


def error(path: str, message: str) -> Diagnostic:
    return Diagnostic(severity=Severity.ERROR, path=path, message=message)


def warning(path: str, message: str) -> Diagnostic:
    return Diagnostic(severity=Severity.WARNING, path=path, message=message)


def errors_only(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.severity is Severity.ERROR]


class ModelValidationError(ValueError):
    """Raised when an operation is handed input that fails validation."""

    def __init__(self, diagnostics: list[Diagnostic], what: str = "model"):
        self.diagnostics = list(diagnostics)
        lines = "\n".join(f"  {d}" for d in self.diagnostics)
        super().__init__(f"invalid {what}:\n{lines}")


class UnknownElementError(LookupError):
    def __init__(self, kind: str, ident: object):
        self.kind = kind
        self.ident = ident
        super().__init__(f"unknown {kind}: {ident!r}")

    def __str__(self) -> str:
        return self.args[0]


class ScenarioKindError(ValueError):
    """A usage scenario was passed where an intrusion was expected, or vice versa."""


class ModificationError(ValueError):
    """A modification set is inconsistent with itself or with the target architecture."""


def raise_on_errors(diags: Iterable[Diagnostic], what: str = "model") -> None:
    errs = errors_only(diags)
    if errs:
        raise ModelValidationError(errs, what)


class ModelSyntaxError(ValueError):
    """The model file is not well-formed: bad JSON, wrong shape, unknown schema version."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))
