from __future__ import annotations

import json
import logging
import typing as t
from dataclasses import replace

from ._typing import ReportRow
from .bounds import OdlyzkoTables
from .checks import AuditContext, CheckResult
from .enums import ReportFormat, Verdict
from .exceptions import RamauditError
from .scenario import AuditScenario, CheckSpec, ExternalFact, check_registry

logger = logging.getLogger(__name__)


def fact_result(fact: ExternalFact) -> CheckResult:
    payload = json.dumps(
        dict(fact.payload), sort_keys=True, separators=(',', ':')
    )
    return CheckResult(
        fact.id,
        fact.kind.value,
        Verdict.FACT_ASSUMED,
        payload,
        '-',
        fact.provenance,
    )


def _evaluate(spec: CheckSpec, context: AuditContext) -> CheckResult:
    check = check_registry()[spec.kind]
    missing = [d for d in spec.dependencies if d not in context.results]
    if missing:
        raise RamauditError(f'{spec.id}: unresolved dependencies {missing}')
    try:
        result = check.evaluate(spec, context)
    except (RamauditError, LookupError, TypeError, ValueError) as e:
        logger.debug('Check %s raised', spec.id, exc_info=True)
        return CheckResult(
            spec.id,
            spec.kind,
            Verdict.FAIL,
            'error',
            '-',
            spec.cite or check.cite,
            note=f'{type(e).__name__}: {e}',
        )
    logger.debug('%s computed %s', spec.id, result.computed)
    broken = [d for d in spec.dependencies if not context.results[d].passed]
    if broken and result.passed:
        return replace(
            result,
            verdict=Verdict.FAIL,
            note='; '.join(
                filter(None, [result.note, f'depends on failed {broken}'])
            ),
        )
    return result


def _waves(checks: t.Sequence[CheckSpec]) -> list[list[CheckSpec]]:
    """Groups checks so that each one follows the checks it depends on."""
    done: set[str] = set()
    pending = list(checks)
    waves = []
    while pending:
        wave = [s for s in pending if set(s.dependencies) <= done]
        if not wave:
            raise RamauditError(
                f'Dependency cycle among {[s.id for s in pending]}'
            )
        waves.append(wave)
        done.update(s.id for s in wave)
        pending = [s for s in pending if s.id not in done]
    return waves


def run_audit(
    scenario: AuditScenario,
    tables: OdlyzkoTables | None = None,
    unconditional_only: bool = False,
) -> list[CheckResult]:
    """Evaluates every check of a scenario; the result is ordered by id."""
    tables = tables if tables is not None else OdlyzkoTables.from_file()
    context = AuditContext(scenario, tables, unconditional_only)
    for fact in scenario.facts:
        context.results[fact.id] = fact_result(fact)
    for wave in _waves(scenario.checks):
        for spec in wave:
            result = _evaluate(spec, context)
            if result.verdict is Verdict.FAIL:
                logger.warning(
                    'Check %s failed: computed=%s bound=%s %s',
                    spec.id,
                    result.computed,
                    result.bound,
                    result.note or '',
                )
            context.results[spec.id] = result
    results = sorted(context.results.values(), key=lambda r: r.check_id)
    logger.info(
        '%s: %d passed, %d failed, %d facts assumed',
        scenario.name,
        *(
            sum(r.verdict is verdict for r in results)
            for verdict in (Verdict.PASS, Verdict.FAIL, Verdict.FACT_ASSUMED)
        ),
    )
    return results


def exit_status(results: t.Iterable[CheckResult]) -> int:
    return 0 if all(r.passed for r in results) else 1


def report_row(result: CheckResult) -> ReportRow:
    return {
        'id': result.check_id,
        'kind': result.kind,
        'verdict': result.verdict.value,
        'computed': result.computed,
        'bound': result.bound,
        'cite': result.cite,
        'approx': result.approx,
        'note': result.note,
    }


def render_report(
    results: t.Sequence[CheckResult],
    fmt: ReportFormat = ReportFormat.TEXT,
    scenario: str | None = None,
) -> str:
    match fmt:
        case ReportFormat.MACHINE:
            document = {
                'scenario': scenario,
                'status': 'pass' if exit_status(results) == 0 else 'fail',
                'results': [report_row(r) for r in results],
            }
            return json.dumps(document, indent=2, sort_keys=True) + '\n'
        case ReportFormat.TEXT:
            lines = []
            for r in results:
                line = (
                    f'CHECK {r.check_id} {r.verdict.value.upper()} '
                    f'computed={r.computed} bound={r.bound} cite={r.cite}'
                )
                if r.approx is not None:
                    line += f' approx={r.approx}'
                lines.append(line)
                if r.note:
                    lines.append(f'  note: {r.note}')
            return '\n'.join(lines) + '\n'
    raise ValueError(f'Unknown report format {fmt!r}')
