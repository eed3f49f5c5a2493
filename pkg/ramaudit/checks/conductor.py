from __future__ import annotations

import typing as t

from ..conductor import (
    CaseConstraints,
    ReductionData,
    conductor_exponent,
    enumerate_cases,
    mestre_check,
    wild_mass_level_bound,
)
from ..enums import ParamKind
from ..exceptions import InconsistentDataError
from ..modrep import FixedSpace
from ..newforms import load_newform_table, newform_level_of_ram
from ..radical import format_rational, parse_rational
from .abc import AuditContext, Check, CheckResult, Param

if t.TYPE_CHECKING:
    from ..scenario import CheckSpec, FiltrationStep


class ConductorExponent(Check):
    @property
    def kind(self) -> str:
        return 'conductor_exponent'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'u': Param(ParamKind.INT),
            't': Param(ParamKind.INT),
            'delta': Param(ParamKind.RATIONAL),
            'g': Param(ParamKind.INT),
            'expect': Param(ParamKind.RATIONAL),
        }

    @property
    def cite(self) -> str:
        return 'conductor-exponent'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        p = spec.params
        data = ReductionData(p['u'], p['t'], p['delta'], p['g'])
        exponent = conductor_exponent(data)
        return self.result(
            spec,
            exponent == p['expect'],
            f'c={format_rational(exponent)}',
            f'={format_rational(p["expect"])}',
            note=None if data.is_semistable else 'not semistable',
            value=exponent,
        )


class ConductorCases(Check):
    @property
    def kind(self) -> str:
        return 'conductor_cases'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'c': Param(ParamKind.INT),
            'g': Param(ParamKind.INT),
            'u_positive': Param(ParamKind.BOOL, required=False),
            'delta_zero': Param(ParamKind.BOOL, required=False),
            'bounded_by_dimension': Param(ParamKind.BOOL, required=False),
            'expect': Param(ParamKind.JSON),
        }

    @property
    def cite(self) -> str:
        return 'conductor-exponent'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        constraints = CaseConstraints(
            u_positive=params.get('u_positive', False),
            delta_zero=params.get('delta_zero', False),
            bounded_by_dimension=params.get('bounded_by_dimension', False),
        )
        enumeration = enumerate_cases(params['c'], params['g'], constraints)
        cases = [[d.u, d.t, int(d.delta)] for d in enumeration.cases]
        expected = [list(case) for case in params['expect']]

        def render(triples: list[list[int]]) -> str:
            return ';'.join(','.join(map(str, triple)) for triple in triples)

        return self.result(
            spec,
            cases == expected,
            render(cases) or 'none',
            f'={render(expected) or "none"}',
            value=enumeration,
        )


class WildMass(Check):
    """Bound delta / min codim on the level from the wild conductor."""

    @property
    def kind(self) -> str:
        return 'wild_mass'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'delta': Param(ParamKind.RATIONAL),
            'min_codim': Param(ParamKind.INT, required=False),
            'codim_from': Param(ParamKind.CHECK, required=False),
            'step': Param(ParamKind.FILTRATION, required=False),
            'expect': Param(ParamKind.RATIONAL, required=False),
        }

    @property
    def cite(self) -> str:
        return 'wild-conductor'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        note = None
        if 'codim_from' in params:
            space = context.value(params['codim_from'])
            if not isinstance(space, FixedSpace):
                raise InconsistentDataError(
                    f'Check {params["codim_from"]!r} computed no fixed space'
                )
            min_codim = space.codim
            note = f'codimension {min_codim} from {params["codim_from"]}'
        elif 'min_codim' in params:
            min_codim = params['min_codim']
        else:
            raise InconsistentDataError('Need min_codim or codim_from')
        filtration = None
        if 'step' in params:
            step = t.cast(
                'FiltrationStep', context.scenario.steps[params['step']]
            )
            filtration = step.filtration
        bound = wild_mass_level_bound(filtration, min_codim, params['delta'])
        expected = params.get('expect')
        return self.result(
            spec,
            expected is None or bound == expected,
            f'u<={format_rational(bound)}',
            '-' if expected is None else f'={format_rational(expected)}',
            note=note,
            value=bound,
        )


class Mestre(Check):
    @property
    def kind(self) -> str:
        return 'mestre'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'N': Param(ParamKind.INT),
            'g': Param(ParamKind.INT),
            'expect': Param(ParamKind.BOOL),
        }

    @property
    def cite(self) -> str:
        return 'conductor-lower-bound'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        N, g = spec.params['N'], spec.params['g']
        allowed = mestre_check(N, g)
        return self.result(
            spec,
            allowed == spec.params['expect'],
            f'{N}{">" if allowed else "<="}10^{g}',
            f'={str(spec.params["expect"]).lower()}',
            value=allowed,
        )


class NewformLevel(Check):
    """Levels of ramification recomputed from the shipped newform table."""

    @property
    def kind(self) -> str:
        return 'newform_level'

    @property
    def params(self) -> dict[str, Param]:
        return {'expect': Param(ParamKind.JSON)}

    @property
    def cite(self) -> str:
        return 'newform-table'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        records = {r.label: r for r in load_newform_table()}
        computed, expected, mismatches = [], [], []
        for label, value in spec.params['expect'].items():
            if label not in records:
                raise InconsistentDataError(f'Unknown newform {label!r}')
            u = newform_level_of_ram(records[label])
            target = parse_rational(value)
            computed.append(f'{label}:{format_rational(u)}')
            expected.append(f'{label}:{format_rational(target)}')
            if u != target:
                mismatches.append(label)
        return self.result(
            spec,
            not mismatches,
            ','.join(computed),
            '=' + ','.join(expected),
            note=f'mismatch at {mismatches}' if mismatches else None,
        )
