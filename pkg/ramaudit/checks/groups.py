from __future__ import annotations

import json
import typing as t

from ..enums import ParamKind
from ..exceptions import DomainError
from ..modrep import (
    conjugacy_data,
    degree_partition_check,
    embeddings_in_GL2,
    fixed_space_dim,
    has_normal_subgroup,
    normal_subgroup_orders,
    preset,
    solvable_subgroup_caps,
)
from ..modrep.groups import FiniteGroup
from .abc import AuditContext, Check, CheckResult, Param

if t.TYPE_CHECKING:
    from ..scenario import CheckSpec


def _compact(value: t.Any) -> str:
    return json.dumps(value, separators=(',', ':'))


def _group_property(G: FiniteGroup, name: str, char: int | None) -> t.Any:
    match name:
        case 'order':
            return G.order
        case 'conjugacy_data':
            return [list(cls) for cls in conjugacy_data(G)]
        case 'solvable_caps':
            return list(solvable_subgroup_caps(G))
        case 'normal_subgroup_orders':
            return normal_subgroup_orders(G)
        case 'degree_partition' | 'gl2_embeddings':
            if char is None:
                raise DomainError(f'Property {name!r} needs a characteristic')
            if name == 'degree_partition':
                return degree_partition_check(G, char)
            return len(embeddings_in_GL2(G, char))
    raise DomainError(f'Unknown group property {name!r}')


class GroupFact(Check):
    """A brute-force fact about a preset group compared with its claim."""

    @property
    def kind(self) -> str:
        return 'group_fact'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'group': Param(ParamKind.STRING),
            'property': Param(ParamKind.STRING),
            'char': Param(ParamKind.INT, required=False),
            'expect': Param(ParamKind.JSON),
        }

    @property
    def cite(self) -> str:
        return 'group-enumeration'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        G = preset(params['group'])
        value = _group_property(G, params['property'], params.get('char'))
        return self.result(
            spec,
            value == params['expect'],
            _compact(value),
            f'={_compact(params["expect"])}',
            note=f'{G.name} {params["property"]}',
            value=value,
        )


class NoNormalSubgroup(Check):
    """Passes when none of the listed groups has such a normal subgroup."""

    @property
    def kind(self) -> str:
        return 'no_normal_subgroup'

    @property
    def params(self) -> dict[str, Param]:
        return {'cases': Param(ParamKind.JSON)}

    @property
    def cite(self) -> str:
        return 'group-enumeration'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        found, computed, notes = [], [], []
        for case in spec.params['cases']:
            G = preset(case['group'])
            order, cyclic = case['order'], case.get('cyclic', False)
            has = has_normal_subgroup(G, order, cyclic=cyclic)
            tag = f'{G.name}:{"C" if cyclic else ""}{order}'
            computed.append(f'{tag}={"yes" if has else "no"}')
            notes.append(f'{G.name} normal orders {normal_subgroup_orders(G)}')
            if has:
                found.append(tag)
        return self.result(
            spec,
            not found,
            ','.join(computed),
            'none',
            note='; '.join(notes),
        )


class FixedSpaceDim(Check):
    @property
    def kind(self) -> str:
        return 'fixed_space'

    @property
    def params(self) -> dict[str, Param]:
        return {
            'generators': Param(ParamKind.JSON),
            'dim': Param(ParamKind.INT),
            'expect': Param(ParamKind.INT, required=False),
        }

    @property
    def cite(self) -> str:
        return 'orbit-count'

    def evaluate(self, spec: CheckSpec, context: AuditContext) -> CheckResult:
        params = spec.params
        space = fixed_space_dim(params['generators'], params['dim'])
        expected = params.get('expect')
        passed = not space.acts_trivially and (
            expected is None or space.dim == expected
        )
        note = f'{space.fixed_vectors} fixed vectors'
        if space.acts_trivially:
            note = 'the group acts trivially'
        return self.result(
            spec,
            passed,
            f'dim={space.dim}',
            '-' if expected is None else f'={expected}',
            note=note,
            value=space,
        )
