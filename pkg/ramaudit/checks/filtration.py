from __future__ import annotations

import typing as t

from ..enums import ParamKind
from ..filtration import (
    different_valuation,
    discriminant_valuation,
    level_bound_check,
    tower_level,
    u_max,
)
from ..radical import format_rational
from .abc import AuditContext, Check, CheckResult, Param

if t.TYPE_CHECKING:
    from ..scenario import CheckSpec, FiltrationStep


def _filtration_step(spec: CheckSpec, context: AuditContext) -> FiltrationStep:
    return t.cast(
        'FiltrationStep', context.scenario.steps[spec.params['step']]
    )


class LevelCheck(Check):
    """Whether a filtration is ramified of the given level.

    With ``base_tame_e`` the level is read over the bottom of a tower whose
    lower step is tame of that index.
    """

    @property
    def kind(self) -> str:
        return 'level_check'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'step': Param(ParamKind.FILTRATION),
            'level': Param(ParamKind.RATIONAL),
            'expect': Param(ParamKind.BOOL, required=False),
            'expect_u': Param(ParamKind.RATIONAL, required=False),
            'base_tame_e': Param(ParamKind.INT, required=False),
        }

    @property
    def cite(self) -> str:
        return 'ramification-level'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        F = _filtration_step(spec, context).filtration
        if 'base_tame_e' in params:
            u = tower_level(F, params['base_tame_e'])
        else:
            u = u_max(F)
        level = params['level']
        holds = u <= level
        expected = params.get('expect', True)
        passed = holds == expected
        bound = f'{"<=" if expected else ">"}{format_rational(level)}'
        expected_u = params.get('expect_u')
        if expected_u is not None:
            passed = passed and u == expected_u
            bound += f',u={format_rational(expected_u)}'
        return self.result(
            spec, passed, f'u={format_rational(u)}', bound, value=u
        )


class DiscriminantValuation(Check):
    @property
    def kind(self) -> str:
        return 'discriminant_valuation'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'step': Param(ParamKind.FILTRATION),
            'expect': Param(ParamKind.RATIONAL, required=False),
            'level': Param(ParamKind.RATIONAL, required=False),
        }

    @property
    def cite(self) -> str:
        return 'different-discriminant'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        step = _filtration_step(spec, context)
        F, f = step.filtration, step.residue_degree
        # raises when the two formulas for the different disagree
        different = different_valuation(F)
        valuation = discriminant_valuation(F, f)
        expected = params.get('expect')
        passed = expected is None or valuation == expected
        bounds = [] if expected is None else [f'={format_rational(expected)}']
        note = f'different {format_rational(different)}'
        level = params.get('level')
        if level is not None:
            bounds.append(f'<{format_rational(F.e * f * (level + 1))}')
            if not level_bound_check(F, f, level):
                passed = False
                note = f'filtration is not of level {format_rational(level)}'
        return self.result(
            spec,
            passed,
            f'v={format_rational(valuation)}',
            ','.join(bounds) or '-',
            note=note,
            value=valuation,
        )
