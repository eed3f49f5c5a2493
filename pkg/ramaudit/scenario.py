from __future__ import annotations

import collections.abc as c
import json
import logging
import typing as t
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from pathlib import Path

from sympy import isprime

from . import checks
from .bounds import CharacterConductorMultiset
from .enums import Asset, FactKind, Mode, ParamKind
from .exceptions import RamauditError, ScenarioError, SchemaIssue
from .filtration import RamFiltration
from .radical import (
    FactoredRadical,
    IdealLabel,
    Label,
    normalize_ideal_labels,
    parse_rational,
    resolve_label,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SUFFIX = '.audit.json'


@dataclass(frozen=True)
class FieldSpec:
    name: str
    degree: int
    disc: FactoredRadical
    labels: c.Mapping[str, IdealLabel] = field(default_factory=dict)

    @property
    def root_discriminant(self) -> FactoredRadical:
        return normalize_ideal_labels(self.disc).root(self.degree)


@dataclass(frozen=True)
class FiltrationStep:
    id: str
    field: str
    filtration: RamFiltration
    residue_degree: int = 1


class TameEntry(t.NamedTuple):
    """Ramification above p; e None stands for the supremum over all e."""

    p: int
    f: int
    g: int
    e: int | None
    disc_exponent: Fraction | None = None


@dataclass(frozen=True)
class TameStep:
    id: str
    field: str
    entries: tuple[TameEntry, ...]


@dataclass(frozen=True)
class CharacterStep:
    id: str
    field: str
    characters: CharacterConductorMultiset


@dataclass(frozen=True)
class ExternalFact:
    id: str
    kind: FactKind
    payload: c.Mapping[str, t.Any]
    provenance: str


Step = FiltrationStep | TameStep | CharacterStep | ExternalFact


@dataclass(frozen=True)
class CheckSpec:
    id: str
    kind: str
    params: c.Mapping[str, t.Any]
    cite: str | None = None

    @property
    def dependencies(self) -> list[str]:
        check = check_registry()[self.kind]
        return [
            self.params[name]
            for name, param in check.params.items()
            if param.kind is ParamKind.CHECK and name in self.params
        ]


@dataclass(frozen=True)
class AuditScenario:
    name: str
    fields: c.Mapping[str, FieldSpec]
    steps: c.Mapping[str, Step]
    checks: tuple[CheckSpec, ...]
    title: str = ''
    source: Path | None = None

    @property
    def facts(self) -> list[ExternalFact]:
        return [s for s in self.steps.values() if isinstance(s, ExternalFact)]

    @property
    def labels(self) -> dict[str, IdealLabel]:
        return {
            name: label
            for spec in self.fields.values()
            for name, label in spec.labels.items()
        }

    def check(self, check_id: str) -> CheckSpec:
        for spec in self.checks:
            if spec.id == check_id:
                return spec
        raise KeyError(check_id)


@cache
def check_registry() -> dict[str, checks.Check]:
    registry = {}
    for check in checks.__dict__.values():
        if (
            check is checks.Check
            or not isinstance(check, type)
            or not issubclass(check, checks.Check)
        ):
            continue
        instance = check()  # type: ignore
        registry[instance.kind] = instance
    return registry


def shipped_scenarios() -> list[str]:
    return sorted(
        path.name.removesuffix(SUFFIX)
        for path in Asset.SCENARIOS_DIR.value.glob(f'*{SUFFIX}')
    )


def scenario_path(name: str | Path) -> Path:
    """Accepts a path or the short name of a shipped scenario."""
    path = Path(name)
    if path.exists():
        return path
    shipped = Asset.SCENARIOS_DIR.value / f'{name}{SUFFIX}'
    if shipped.exists():
        return shipped
    raise ScenarioError(
        [SchemaIssue('', f'No scenario file or shipped scenario {str(name)!r}')]
    )


def load_scenario(path: str | Path) -> AuditScenario:
    path = scenario_path(path)
    scenario = parse_scenario(path.read_text(encoding='UTF-8'), source=path)
    logger.info(
        'Loaded scenario %s: %d fields, %d steps, %d checks',
        scenario.name,
        len(scenario.fields),
        len(scenario.steps),
        len(scenario.checks),
    )
    return scenario


def parse_scenario(text: str, source: Path | None = None) -> AuditScenario:
    return _Parser(text, source).parse()


class _Parser:
    def __init__(self, text: str, source: Path | None) -> None:
        self.text = text
        self.lines = text.splitlines()
        self.source = source
        self.issues: list[SchemaIssue] = []

    def locate(self, pointer: str, anchor: str | None) -> int | None:
        """Best-effort line of the key a pointer ends with."""
        start = 0
        if anchor is not None:
            needle = json.dumps(anchor)
            start = next(
                (i for i, line in enumerate(self.lines) if needle in line), 0
            )
        key = pointer.rsplit('/', 1)[-1]
        if key and not key.isdigit():
            needle = json.dumps(key)
            for i in range(start, len(self.lines)):
                if needle in self.lines[i]:
                    return i + 1
        return start + 1 if anchor is not None else None

    def issue(
        self, pointer: str, message: str, anchor: str | None = None
    ) -> None:
        self.issues.append(
            SchemaIssue(pointer, message, self.locate(pointer, anchor))
        )

    def fail(self) -> t.NoReturn:
        for issue in self.issues:
            logger.debug('Schema issue %s', issue)
        raise ScenarioError(self.issues)

    def parse(self) -> AuditScenario:
        if not self.text.strip():
            self.issue('', 'Scenario file is empty')
            self.fail()
        try:
            raw = json.loads(self.text)
        except json.JSONDecodeError as e:
            self.issues.append(SchemaIssue('', e.msg, e.lineno))
            self.fail()
        if not isinstance(raw, dict):
            self.issue('', 'Scenario must be a JSON object')
            self.fail()
        version = raw.get('schema_version')
        if version != SCHEMA_VERSION:
            self.issue(
                '/schema_version',
                f'Expected schema_version {SCHEMA_VERSION}, got {version!r}',
            )
        name = raw.get('name')
        if not isinstance(name, str) or not name:
            self.issue('/name', 'Scenario needs a non-empty name')
        for key in ('fields', 'steps', 'checks'):
            if not isinstance(raw.get(key), list):
                self.issue(f'/{key}', f'{key!r} must be a list')
        if self.issues:
            self.fail()
        fields = self.parse_fields(raw['fields'])
        ids: set[str] = set()
        steps = self.parse_steps(raw['steps'], fields, ids)
        check_specs = self.parse_checks(raw['checks'], fields, steps, ids)
        if self.issues:
            self.fail()
        return AuditScenario(
            name,
            fields,
            steps,
            check_specs,
            str(raw.get('title', '')),
            self.source,
        )

    def parse_fields(self, raw: list[t.Any]) -> dict[str, FieldSpec]:
        fields: dict[str, FieldSpec] = {}
        registered: dict[str, IdealLabel] = {}
        for n, item in enumerate(raw):
            pointer = f'/fields/{n}'
            if not isinstance(item, dict) or not isinstance(
                item.get('name'), str
            ):
                self.issue(pointer, 'A field needs a name')
                continue
            name = item['name']
            if name in fields:
                self.issue(f'{pointer}/name', f'Duplicate field {name!r}', name)
                continue
            degree = item.get('degree')
            if not _is_int(degree) or degree < 1:
                self.issue(
                    f'{pointer}/degree', f'Invalid degree {degree!r}', name
                )
                continue
            labels = {}
            for label_name, data in (item.get('labels') or {}).items():
                label_pointer = f'{pointer}/labels/{label_name}'
                try:
                    label = IdealLabel.from_value(
                        label_name, data['p'], data['f']
                    )
                except (RamauditError, KeyError, TypeError) as e:
                    self.issue(label_pointer, f'Invalid label: {e}', name)
                    continue
                if registered.setdefault(label_name, label) != label:
                    self.issue(
                        label_pointer,
                        f'Label {label_name!r} registered twice with '
                        'different residue data',
                        name,
                    )
                    continue
                labels[label_name] = label
            disc = self.radical(item.get('disc'), {}, f'{pointer}/disc', name)
            if disc is not None:
                fields[name] = FieldSpec(name, degree, disc, labels)
        return fields

    def radical(
        self,
        value: t.Any,
        labels: c.Mapping[str, IdealLabel],
        pointer: str,
        anchor: str | None,
    ) -> FactoredRadical | None:
        if not isinstance(value, dict):
            self.issue(pointer, 'Expected a {label: "num/den"} map', anchor)
            return None
        factors: dict[Label, Fraction] = {}
        ok = True
        for name, exponent in value.items():
            try:
                label = resolve_label(str(name), labels)
            except RamauditError as e:
                self.issue(f'{pointer}/{name}', str(e), anchor)
                ok = False
                continue
            try:
                factors[label] = parse_rational(exponent)
            except RamauditError as e:
                self.issue(f'{pointer}/{name}', str(e), anchor)
                ok = False
        if not ok:
            return None
        try:
            return FactoredRadical(factors)
        except RamauditError as e:
            self.issue(pointer, str(e), anchor)
            return None

    def claim_id(self, item: t.Any, pointer: str, ids: set[str]) -> str | None:
        step_id = item.get('id') if isinstance(item, dict) else None
        if not isinstance(step_id, str) or not step_id:
            self.issue(pointer, 'Missing id')
            return None
        if step_id in ids:
            self.issue(f'{pointer}/id', f'Duplicate id {step_id!r}', step_id)
            return None
        ids.add(step_id)
        return step_id

    def step_field(
        self,
        item: dict[str, t.Any],
        fields: c.Mapping[str, FieldSpec],
        pointer: str,
        anchor: str,
    ) -> FieldSpec | None:
        name = item.get('field')
        if name not in fields:
            self.issue(f'{pointer}/field', f'Unknown field {name!r}', anchor)
            return None
        return fields[name]

    def parse_steps(
        self,
        raw: list[t.Any],
        fields: c.Mapping[str, FieldSpec],
        ids: set[str],
    ) -> dict[str, Step]:
        steps: dict[str, Step] = {}
        for n, item in enumerate(raw):
            pointer = f'/steps/{n}'
            step_id = self.claim_id(item, pointer, ids)
            if step_id is None:
                continue
            step: Step | None
            match item.get('type'):
                case 'filtration':
                    step = self.filtration_step(item, fields, pointer, step_id)
                case 'tame':
                    step = self.tame_step(item, fields, pointer, step_id)
                case 'characters':
                    step = self.character_step(item, fields, pointer, step_id)
                case 'fact':
                    step = self.fact(item, fields, pointer, step_id)
                case other:
                    self.issue(
                        f'{pointer}/type',
                        f'Unknown step type {other!r}',
                        step_id,
                    )
                    continue
            if step is not None:
                steps[step_id] = step
        return steps

    def filtration_step(
        self,
        item: dict[str, t.Any],
        fields: c.Mapping[str, FieldSpec],
        pointer: str,
        step_id: str,
    ) -> FiltrationStep | None:
        spec = self.step_field(item, fields, pointer, step_id)
        orders = item.get('orders')
        residue_degree = item.get('residue_degree', 1)
        total_order = item.get('total_order')
        if not isinstance(orders, list) or not all(map(_is_int, orders)):
            self.issue(
                f'{pointer}/orders', 'Expected a list of orders', step_id
            )
            return None
        if total_order is not None and not _is_int(total_order):
            self.issue(
                f'{pointer}/total_order',
                f'Invalid group order {total_order!r}',
                step_id,
            )
            return None
        if not _is_int(residue_degree) or residue_degree < 1:
            self.issue(
                f'{pointer}/residue_degree',
                f'Invalid residue degree {residue_degree!r}',
                step_id,
            )
            return None
        try:
            filtration = RamFiltration(tuple(orders), total_order)
        except RamauditError as e:
            self.issue(f'{pointer}/orders', str(e), step_id)
            return None
        if spec is None:
            return None
        return FiltrationStep(step_id, spec.name, filtration, residue_degree)

    def tame_step(
        self,
        item: dict[str, t.Any],
        fields: c.Mapping[str, FieldSpec],
        pointer: str,
        step_id: str,
    ) -> TameStep | None:
        spec = self.step_field(item, fields, pointer, step_id)
        entries: list[TameEntry] = []
        for n, entry in enumerate(item.get('entries') or []):
            entry_pointer = f'{pointer}/entries/{n}'
            if not isinstance(entry, dict):
                self.issue(entry_pointer, 'Expected an object', step_id)
                continue
            values = [entry.get(key) for key in ('p', 'f', 'g')]
            if not all(map(_is_int, values)) or not isprime(values[0]):
                self.issue(
                    entry_pointer, f'Invalid p, f, g: {values!r}', step_id
                )
                continue
            e = entry.get('e')
            if e != 'sup' and (not _is_int(e) or e < 1):
                self.issue(
                    f'{entry_pointer}/e',
                    f'Expected a positive integer or "sup", got {e!r}',
                    step_id,
                )
                continue
            disc_exponent = None
            if 'disc_exponent' in entry:
                try:
                    disc_exponent = parse_rational(entry['disc_exponent'])
                except RamauditError as e:
                    self.issue(
                        f'{entry_pointer}/disc_exponent', str(e), step_id
                    )
                    continue
                if e == 'sup':
                    self.issue(
                        f'{entry_pointer}/e',
                        'A local discriminant exponent needs a finite e',
                        step_id,
                    )
                    continue
            entries.append(
                TameEntry(*values, None if e == 'sup' else e, disc_exponent)
            )
        if not entries:
            self.issue(f'{pointer}/entries', 'Expected entries', step_id)
            return None
        if spec is None:
            return None
        return TameStep(step_id, spec.name, tuple(entries))

    def character_step(
        self,
        item: dict[str, t.Any],
        fields: c.Mapping[str, FieldSpec],
        pointer: str,
        step_id: str,
    ) -> CharacterStep | None:
        spec = self.step_field(item, fields, pointer, step_id)
        if spec is None:
            return None
        entries: list[tuple[FactoredRadical, int]] = []
        for n, character in enumerate(item.get('characters') or []):
            character_pointer = f'{pointer}/characters/{n}'
            if not isinstance(character, dict):
                self.issue(character_pointer, 'Expected an object', step_id)
                continue
            conductor = self.radical(
                character.get('conductor'),
                spec.labels,
                f'{character_pointer}/conductor',
                step_id,
            )
            multiplicity = character.get('multiplicity', 1)
            if not _is_int(multiplicity):
                self.issue(
                    f'{character_pointer}/multiplicity',
                    f'Invalid multiplicity {multiplicity!r}',
                    step_id,
                )
                continue
            if conductor is not None:
                entries.append((conductor, multiplicity))
        try:
            characters = CharacterConductorMultiset(
                tuple(entries), item.get('degree')
            )
        except RamauditError as e:
            self.issue(f'{pointer}/characters', str(e), step_id)
            return None
        if not entries:
            self.issue(f'{pointer}/characters', 'Expected characters', step_id)
            return None
        return CharacterStep(step_id, spec.name, characters)

    def fact(
        self,
        item: dict[str, t.Any],
        fields: c.Mapping[str, FieldSpec],
        pointer: str,
        step_id: str,
    ) -> ExternalFact | None:
        try:
            kind = FactKind(item.get('kind'))
        except ValueError:
            self.issue(
                f'{pointer}/kind',
                f'Unknown fact kind {item.get("kind")!r}',
                step_id,
            )
            return None
        payload = item.get('payload')
        provenance = item.get('provenance')
        if not isinstance(payload, dict):
            self.issue(f'{pointer}/payload', 'Expected an object', step_id)
            return None
        if not isinstance(provenance, str) or not provenance:
            self.issue(
                f'{pointer}/provenance', 'Facts need a provenance', step_id
            )
            return None
        if 'conductor' in payload:
            spec = self.step_field(
                payload, fields, f'{pointer}/payload', step_id
            )
            if spec is not None:
                self.radical(
                    payload['conductor'],
                    spec.labels,
                    f'{pointer}/payload/conductor',
                    step_id,
                )
        return ExternalFact(step_id, kind, payload, provenance)

    def parse_checks(
        self,
        raw: list[t.Any],
        fields: c.Mapping[str, FieldSpec],
        steps: c.Mapping[str, Step],
        ids: set[str],
    ) -> tuple[CheckSpec, ...]:
        registry = check_registry()
        check_ids = {
            item['id']
            for item in raw
            if isinstance(item, dict) and isinstance(item.get('id'), str)
        }
        labels = {
            name: label
            for spec in fields.values()
            for name, label in spec.labels.items()
        }
        specs = []
        for n, item in enumerate(raw):
            pointer = f'/checks/{n}'
            check_id = self.claim_id(item, pointer, ids)
            if check_id is None:
                continue
            kind = item.get('type')
            if kind not in registry:
                self.issue(
                    f'{pointer}/type', f'Unknown check type {kind!r}', check_id
                )
                continue
            check = registry[kind]
            cite = item.get('cite')
            params: dict[str, t.Any] = {}
            for key in item.keys() - {'id', 'type', 'cite'}:
                if key not in check.params:
                    self.issue(
                        f'{pointer}/{key}',
                        f'Unexpected key for {kind}',
                        check_id,
                    )
            for key, param in check.params.items():
                if key not in item:
                    if param.required:
                        self.issue(
                            f'{pointer}/{key}',
                            f'Missing required key for {kind}',
                            check_id,
                        )
                    continue
                value = self.convert(
                    item[key],
                    param.kind,
                    f'{pointer}/{key}',
                    check_id,
                    fields,
                    steps,
                    check_ids,
                    labels,
                )
                if value is not None:
                    params[key] = value
            specs.append(CheckSpec(check_id, kind, params, cite))
        self.check_acyclic(specs)
        return tuple(specs)

    def convert(
        self,
        value: t.Any,
        kind: ParamKind,
        pointer: str,
        anchor: str,
        fields: c.Mapping[str, FieldSpec],
        steps: c.Mapping[str, Step],
        check_ids: set[str],
        labels: c.Mapping[str, IdealLabel],
    ) -> t.Any:
        step_types: dict[ParamKind, type] = {
            ParamKind.FILTRATION: FiltrationStep,
            ParamKind.TAME: TameStep,
            ParamKind.CHARACTERS: CharacterStep,
        }
        match kind:
            case ParamKind.INT if _is_int(value):
                return value
            case ParamKind.BOOL if isinstance(value, bool):
                return value
            case ParamKind.STRING if isinstance(value, str):
                return value
            case ParamKind.JSON:
                return value
            case ParamKind.RATIONAL:
                try:
                    return parse_rational(value)
                except RamauditError as e:
                    self.issue(pointer, str(e), anchor)
                    return None
            case ParamKind.RADICAL:
                return self.radical(value, labels, pointer, anchor)
            case ParamKind.MODE:
                try:
                    return Mode(value)
                except ValueError:
                    self.issue(pointer, f'Unknown mode {value!r}', anchor)
                    return None
            case ParamKind.FIELD if isinstance(value, str) and value in fields:
                return value
            case ParamKind.CHECK if (
                isinstance(value, str)
                and value in check_ids
                and value != anchor
            ):
                return value
            case _ if (
                kind in step_types
                and isinstance(value, str)
                and isinstance(steps.get(value), step_types[kind])
            ):
                return value
        self.issue(pointer, f'Expected {kind.value}, got {value!r}', anchor)
        return None

    def check_acyclic(self, specs: list[CheckSpec]) -> None:
        pending = {spec.id: set(spec.dependencies) for spec in specs}
        while pending:
            ready = [
                i for i, deps in pending.items() if not deps & pending.keys()
            ]
            if not ready:
                for check_id in sorted(pending):
                    self.issue(
                        '/checks',
                        f'Check {check_id!r} is part of a dependency cycle',
                        check_id,
                    )
                return
            for check_id in ready:
                del pending[check_id]


def _is_int(value: t.Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)
