from __future__ import annotations

import math
import typing as t

from ..bounds import (
    Bound,
    character_root_disc,
    conductor_discriminant,
    fontaine_bound,
    local_root_disc_increment,
    odlyzko_max_degree,
    tame_root_disc_increment,
)
from ..enums import ParamKind
from ..exceptions import InconsistentDataError
from ..radical import FactoredRadical, format_rational
from .abc import AuditContext, Check, CheckResult, Param

if t.TYPE_CHECKING:
    from ..scenario import CharacterStep, CheckSpec, TameStep


def _expectation(expected: FactoredRadical | None) -> str:
    return '-' if expected is None else f'={expected}'


class FontaineBound(Check):
    @property
    def kind(self) -> str:
        return 'fontaine_bound'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'field': Param(ParamKind.FIELD),
            'p': Param(ParamKind.INT),
            'i': Param(ParamKind.RATIONAL),
            'ell': Param(ParamKind.INT),
            'expect': Param(ParamKind.RADICAL, required=False),
        }

    @property
    def cite(self) -> str:
        return 'root-disc-bound'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        field = context.scenario.fields[params['field']]
        bound = fontaine_bound(
            field.root_discriminant, params['p'], params['i'], params['ell']
        )
        expected = params.get('expect')
        return self.result(
            spec,
            expected is None or bound.value == expected,
            bound.value,
            _expectation(expected),
            value=bound,
        )


class OdlyzkoCap(Check):
    """Degree cap [L:Q] < claim from a root discriminant bound."""

    @property
    def kind(self) -> str:
        return 'odlyzko_cap'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'bound': Param(ParamKind.CHECK, required=False),
            'delta': Param(ParamKind.RADICAL, required=False),
            'field': Param(ParamKind.FIELD, required=False),
            'strict': Param(ParamKind.BOOL, required=False),
            'mode': Param(ParamKind.MODE),
            'claim': Param(ParamKind.INT),
            'base_degree': Param(ParamKind.INT, required=False),
            'claimed_relative': Param(ParamKind.INT, required=False),
        }

    @property
    def cite(self) -> str:
        return 'odlyzko-table'

    def source(self, spec: CheckSpec, context: AuditContext) -> Bound:
        params = spec.params
        given = [key for key in ('bound', 'delta', 'field') if key in params]
        if len(given) != 1:
            raise InconsistentDataError(
                f'Expected exactly one of bound, delta, field; got {given}'
            )
        if 'bound' in params:
            value = context.value(params['bound'])
            if isinstance(value, FactoredRadical):
                value = Bound(value, params.get('strict', True))
            if not isinstance(value, Bound):
                raise InconsistentDataError(
                    f'Check {params["bound"]!r} did not produce a bound'
                )
            return value
        if 'delta' in params:
            return Bound(params['delta'], params.get('strict', True))
        # the field's own root discriminant is attained, not bounded
        field = context.scenario.fields[params['field']]
        return Bound(field.root_discriminant, params.get('strict', False))

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        bound = self.source(spec, context)
        mode, note = context.mode(params['mode'])
        cap = odlyzko_max_degree(bound, mode, context.tables)
        claim = params['claim']
        expectation = f'{mode.value}:deg<{claim}'
        if cap is None:
            return self.result(
                spec,
                False,
                'no-tabulated-cap',
                expectation,
                note=note
                or f'{bound} exceeds every tabulated {mode.value} row',
            )
        passed = cap <= claim
        computed = f'deg<{cap}'
        if 'base_degree' in params:
            relative = math.ceil(cap / params['base_degree'])
            computed += f',rel<{relative}'
            claimed = params.get('claimed_relative')
            if claimed is not None:
                expectation += f',rel<{claimed}'
                passed = passed and relative <= claimed
        return self.result(
            spec, passed, computed, expectation, note=note, value=cap
        )


class RootDiscIncrement(Check):
    @property
    def kind(self) -> str:
        return 'root_disc_increment'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'step': Param(ParamKind.TAME),
            'base': Param(ParamKind.RADICAL, required=False),
            'expect': Param(ParamKind.RADICAL, required=False),
            'strict': Param(ParamKind.BOOL, required=False),
        }

    @property
    def cite(self) -> str:
        return 'root-disc-increment'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        step = t.cast('TameStep', context.scenario.steps[params['step']])
        field = context.scenario.fields[step.field]
        delta = params.get('base', field.root_discriminant)
        for entry in step.entries:
            if entry.disc_exponent is not None:
                assert entry.e is not None
                increment = local_root_disc_increment(
                    entry.f, entry.g, field.degree, entry.disc_exponent, entry.e
                )
            else:
                increment = tame_root_disc_increment(
                    entry.f, entry.g, field.degree, entry.e
                )
            delta *= FactoredRadical({entry.p: increment})
        expected = params.get('expect')
        return self.result(
            spec,
            expected is None or delta == expected,
            delta,
            _expectation(expected),
            value=Bound(delta, params.get('strict', True)),
        )


class ConductorDiscriminant(Check):
    """Relative discriminant and root discriminant from character conductors.

    ``violates`` maps a prime to the exponent the root discriminant must
    reach for the extension to contradict the local bound at that prime.
    """

    @property
    def kind(self) -> str:
        return 'conductor_discriminant'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'step': Param(ParamKind.CHARACTERS),
            'expect_discriminant': Param(ParamKind.RADICAL, required=False),
            'expect_root_disc': Param(ParamKind.RADICAL, required=False),
            'violates': Param(ParamKind.RADICAL, required=False),
        }

    @property
    def cite(self) -> str:
        return 'conductor-discriminant'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        step = t.cast('CharacterStep', context.scenario.steps[params['step']])
        field = context.scenario.fields[step.field]
        chars = step.characters
        disc = conductor_discriminant(chars)
        root_disc = character_root_disc(
            field.root_discriminant, chars, chars.count * field.degree
        )
        expectations, failures = [], []
        expected_disc = params.get('expect_discriminant')
        if expected_disc is not None:
            expectations.append(f'disc={expected_disc}')
            if disc != expected_disc:
                failures.append(f'relative discriminant is {disc}')
        expected_root = params.get('expect_root_disc')
        if expected_root is not None:
            expectations.append(f'delta={expected_root}')
            if root_disc != expected_root:
                failures.append(f'root discriminant is {root_disc}')
        for prime, limit in params.get('violates', FactoredRadical()).items():
            exponent = root_disc.exponent(prime)
            expectations.append(f'v{prime}>={format_rational(limit)}')
            if exponent < limit:
                failures.append(
                    f'exponent {format_rational(exponent)} at {prime} stays '
                    f'below {format_rational(limit)}'
                )
        note = '; '.join(failures) or f'relative discriminant {disc}'
        return self.result(
            spec,
            not failures,
            root_disc,
            ','.join(expectations) or '-',
            note=note,
            value=root_disc,
        )
