from __future__ import annotations

import json
import random
import typing as t
from pathlib import Path

import pytest

from ramaudit.bounds import OdlyzkoTables
from ramaudit.enums import Asset
from ramaudit.scenario import SUFFIX


@pytest.fixture(scope='session')
def tables() -> OdlyzkoTables:
    return OdlyzkoTables.from_file()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def shipped() -> t.Callable[[str], dict[str, t.Any]]:
    """Fresh JSON document of a shipped scenario, safe to edit."""

    def load(name: str) -> dict[str, t.Any]:
        path = Asset.SCENARIOS_DIR.value / f'{name}{SUFFIX}'
        return json.loads(path.read_text(encoding='UTF-8'))

    return load


@pytest.fixture
def write_scenario(tmp_path: Path) -> t.Callable[[dict[str, t.Any]], Path]:
    def write(document: dict[str, t.Any]) -> Path:
        path = tmp_path / f'{document.get("name", "scenario")}{SUFFIX}'
        path.write_text(json.dumps(document, indent=2), encoding='UTF-8')
        return path

    return write
