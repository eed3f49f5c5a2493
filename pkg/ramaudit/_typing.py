from __future__ import annotations

import typing as t

RationalJSON = t.Union[str, int]
RadicalJSON = dict[str, RationalJSON]
StepType = t.Literal['filtration', 'tame', 'characters', 'fact']


class LabelData(t.TypedDict):
    p: int
    f: int


class Field(t.TypedDict):
    name: str
    degree: int
    disc: RadicalJSON
    labels: t.NotRequired[dict[str, LabelData]]


class Step:
    class Filtration(t.TypedDict):
        id: str
        type: t.Literal['filtration']
        field: str
        orders: list[int]
        total_order: t.NotRequired[int]
        residue_degree: t.NotRequired[int]

    class TameEntry(t.TypedDict):
        p: int
        f: int
        g: int
        e: int | t.Literal['sup']
        disc_exponent: t.NotRequired[RationalJSON]

    class Tame(t.TypedDict):
        id: str
        type: t.Literal['tame']
        field: str
        entries: list[Step.TameEntry]

    class Character(t.TypedDict):
        conductor: RadicalJSON
        multiplicity: int

    class Characters(t.TypedDict):
        id: str
        type: t.Literal['characters']
        field: str
        characters: list[Step.Character]
        degree: t.NotRequired[int]

    class Fact(t.TypedDict):
        id: str
        type: t.Literal['fact']
        kind: str
        payload: dict[str, t.Any]
        provenance: str


class Scenario(t.TypedDict):
    schema_version: int
    name: str
    title: t.NotRequired[str]
    fields: list[Field]
    steps: list[
        Step.Filtration | Step.Tame | Step.Characters | Step.Fact
    ]
    checks: list[dict[str, t.Any]]


class ReportRow(t.TypedDict):
    id: str
    kind: str
    verdict: str
    computed: str
    bound: str
    cite: str
    approx: str | None
    note: str | None
