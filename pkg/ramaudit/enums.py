from __future__ import annotations

from enum import Enum
from pathlib import Path

_ASSETS_DIR = Path(__file__).parent / 'assets'


class Asset(Enum):
    ODLYZKO_TABLE = _ASSETS_DIR / 'odlyzko.txt'
    NEWFORM_TABLE = _ASSETS_DIR / 'newforms.txt'
    SCENARIOS_DIR = _ASSETS_DIR / 'scenarios'


class Mode(Enum):
    UNCONDITIONAL = 'unconditional'
    GRH = 'grh'


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class RepCase(Enum):
    """Local automorphic type of a newform at p."""

    IRREDUCIBLE = 'irr'
    DECOMPOSABLE = 'dec'
    SPECIAL = 'sp'


class Verdict(Enum):
    PASS = 'pass'
    FAIL = 'fail'
    FACT_ASSUMED = 'fact-assumed'


class FactKind(Enum):
    RAY_CLASS_DEGREE = 'ray-class-degree'
    GALOIS_IMAGE = 'galois-image'
    REP_TYPE = 'rep-type'


class ReportFormat(Enum):
    TEXT = 'text'
    MACHINE = 'machine'


class ParamKind(Enum):
    """Value types a check parameter may declare in a scenario file."""

    INT = 'int'
    BOOL = 'bool'
    RATIONAL = 'rational'
    RADICAL = 'radical'
    STRING = 'string'
    MODE = 'mode'
    FIELD = 'field'
    FILTRATION = 'filtration'
    TAME = 'tame'
    CHARACTERS = 'characters'
    CHECK = 'check'
    JSON = 'json'
