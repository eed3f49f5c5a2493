from __future__ import annotations

import typing as t
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from ..enums import Mode, ParamKind, Verdict
from ..exceptions import InconsistentDataError
from ..radical import FactoredRadical, radical_approx

if t.TYPE_CHECKING:
    from ..bounds import OdlyzkoTables
    from ..scenario import AuditScenario, CheckSpec


class Param(t.NamedTuple):
    kind: ParamKind
    required: bool = True


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    kind: str
    verdict: Verdict
    computed: str
    bound: str
    cite: str
    approx: str | None = None
    note: str | None = None
    value: t.Any = field(default=None, compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return self.verdict is not Verdict.FAIL


@dataclass
class AuditContext:
    scenario: AuditScenario
    tables: OdlyzkoTables
    unconditional_only: bool = False
    results: dict[str, CheckResult] = field(default_factory=dict)

    def value(self, check_id: str) -> t.Any:
        result = self.results[check_id]
        if result.value is None:
            raise InconsistentDataError(
                f'Check {check_id!r} produced no usable value'
            )
        return result.value

    def mode(self, declared: Mode) -> tuple[Mode, str | None]:
        if self.unconditional_only and declared is not Mode.UNCONDITIONAL:
            return Mode.UNCONDITIONAL, (
                f'{declared.value} bound evaluated against the unconditional '
                'table'
            )
        return declared, None


class Check(ABC):
    @property
    @abstractmethod
    def kind(self) -> str: ...

    @property
    @abstractmethod
    def params(self) -> dict[str, Param]: ...

    @property
    @abstractmethod
    def cite(self) -> str: ...

    @abstractmethod
    def evaluate(
        self, spec: CheckSpec, context: AuditContext
    ) -> CheckResult: ...

    def result(
        self,
        spec: CheckSpec,
        passed: bool,
        computed: t.Any,
        bound: t.Any,
        note: str | None = None,
        value: t.Any = None,
    ) -> CheckResult:
        approx = None
        if isinstance(computed, FactoredRadical) and computed.is_normalized:
            approx = radical_approx(computed).text
        return CheckResult(
            spec.id,
            self.kind,
            Verdict.PASS if passed else Verdict.FAIL,
            str(computed),
            str(bound),
            spec.cite or self.cite,
            approx,
            note,
            value,
        )
