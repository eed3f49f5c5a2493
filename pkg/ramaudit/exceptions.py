from __future__ import annotations

import typing as t


class RamauditError(Exception): ...


class DomainError(RamauditError, ValueError): ...


class LabelConflictError(RamauditError): ...


class UnnormalizedLabelError(RamauditError): ...


class MissingResidueDataError(RamauditError): ...


class InvariantViolation(RamauditError, AssertionError): ...


class InconsistentDataError(RamauditError, ValueError): ...


class TableRegressionError(InvariantViolation): ...


class IncompleteEnumerationError(InvariantViolation): ...


class ThresholdExceeded(DomainError): ...


class SchemaIssue(t.NamedTuple):
    pointer: str
    message: str
    line: int | None = None

    def __str__(self) -> str:
        where = self.pointer or '/'
        if self.line is not None:
            where = f'line {self.line}: {where}'
        return f'{where}: {self.message}'


class ScenarioError(RamauditError):
    def __init__(self, issues: t.Sequence[SchemaIssue]) -> None:
        self.issues = list(issues)
        super().__init__('\n'.join(map(str, self.issues)))
