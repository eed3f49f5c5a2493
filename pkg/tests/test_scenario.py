from __future__ import annotations

import json
from fractions import Fraction

import pytest

from ramaudit.exceptions import ScenarioError
from ramaudit.radical import FactoredRadical
from ramaudit.scenario import (
    CharacterStep,
    ExternalFact,
    FiltrationStep,
    TameStep,
    check_registry,
    load_scenario,
    parse_scenario,
    scenario_path,
    shipped_scenarios,
)


def minimal() -> dict:
    return {
        'schema_version': 1,
        'name': 'mini',
        'fields': [{'name': 'Q', 'degree': 1, 'disc': {}}],
        'steps': [],
        'checks': [
            {
                'id': 'c01',
                'type': 'fontaine_bound',
                'field': 'Q',
                'p': 2,
                'i': '3/2',
                'ell': 3,
                'expect': {'2': '5/2', '3': '3/2'},
            }
        ],
    }


def issues_of(document: dict) -> list:
    text = json.dumps(document, indent=2)
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text)
    return info.value.issues


def pointers(document: dict) -> list[str]:
    return [issue.pointer for issue in issues_of(document)]


def test_shipped_scenarios():
    assert shipped_scenarios() == ['conductors', 'j027', 'j032', 'j049']


def test_load_j032():
    scenario = load_scenario('j032')
    assert scenario.name == 'j032'
    assert len(scenario.fields) == 5
    assert len(scenario.checks) == 9
    assert [f.id for f in scenario.facts] == [
        'fact_rcg_small',
        'fact_rcg_pi2_8',
        'fact_image',
    ]
    assert scenario.fields['QE3'].root_discriminant == FactoredRadical.parse(
        '2:2,3:7/8'
    )
    claim = scenario.check('c08_r_over_m_violation')
    assert claim.params['expect_root_disc'].exponent(2) == Fraction(245, 96)
    assert claim.dependencies == []
    assert scenario.check('c04_k_prime_degree').dependencies == [
        'c03_k_prime_root_disc'
    ]


def test_step_types():
    scenario = load_scenario('j032')
    steps = scenario.steps
    assert isinstance(steps['cubic_over_e3'], FiltrationStep)
    assert steps['e3_tame_at_3'].residue_degree == 2
    assert isinstance(steps['k_prime_over_k'], TameStep)
    assert all(e.e is None for e in steps['k_prime_over_k'].entries)
    assert isinstance(steps['r_over_m'], CharacterStep)
    assert steps['r_over_m'].characters.count == 16
    assert isinstance(steps['fact_image'], ExternalFact)


@pytest.mark.parametrize('name', ['conductors', 'j027', 'j049'])
def test_shipped_scenarios_parse(name):
    scenario = load_scenario(name)
    assert scenario.checks
    assert scenario.source == scenario_path(name)


def test_load_from_path(write_scenario):
    path = write_scenario(minimal())
    scenario = load_scenario(path)
    assert scenario.name == 'mini'
    assert scenario.check('c01').params['i'] == Fraction(3, 2)


def test_unknown_scenario():
    with pytest.raises(ScenarioError, match='No scenario file'):
        load_scenario('j099')


def test_empty_file():
    with pytest.raises(ScenarioError, match='empty'):
        parse_scenario('  \n')


def test_invalid_json_reports_the_line():
    with pytest.raises(ScenarioError) as info:
        parse_scenario('{\n  "name": "x",\n}\n')
    (issue,) = info.value.issues
    assert issue.line == 3


def test_top_level_keys():
    document = minimal()
    document['schema_version'] = 2
    del document['steps']
    assert pointers(document) == ['/schema_version', '/steps']


def test_unknown_check_type():
    document = minimal()
    document['checks'][0]['type'] = 'nope'
    (issue,) = issues_of(document)
    assert issue.pointer == '/checks/0/type'
    assert 'nope' in issue.message
    text = json.dumps(document, indent=2).splitlines()
    assert '"type"' in text[issue.line - 1]


def test_malformed_rational():
    document = minimal()
    document['checks'][0]['i'] = '3/x'
    assert pointers(document) == ['/checks/0/i']


def test_missing_and_unexpected_keys():
    document = minimal()
    del document['checks'][0]['p']
    document['checks'][0]['q'] = 2
    assert sorted(pointers(document)) == ['/checks/0/p', '/checks/0/q']


def test_unregistered_label():
    document = minimal()
    document['steps'].append(
        {
            'id': 'chars',
            'type': 'characters',
            'field': 'Q',
            'characters': [
                {'conductor': {'P5': 1}, 'multiplicity': 2},
                {'conductor': {}, 'multiplicity': 1},
            ],
        }
    )
    (issue,) = issues_of(document)
    assert issue.pointer == '/steps/0/characters/0/conductor/P5'
    assert 'P5' in issue.message


def test_label_registered_twice():
    document = minimal()
    document['fields'] += [
        {
            'name': 'A',
            'degree': 2,
            'disc': {},
            'labels': {'P': {'p': 2, 'f': 1}},
        },
        {
            'name': 'B',
            'degree': 2,
            'disc': {},
            'labels': {'P': {'p': 3, 'f': 1}},
        },
    ]
    (issue,) = issues_of(document)
    assert issue.pointer == '/fields/2/labels/P'


def test_duplicate_ids():
    document = minimal()
    document['steps'].append(
        {'id': 'c01', 'type': 'filtration', 'field': 'Q', 'orders': [2]}
    )
    assert pointers(document) == ['/checks/0/id']


def test_wrong_step_kind():
    document = minimal()
    document['steps'].append(
        {'id': 'F', 'type': 'filtration', 'field': 'Q', 'orders': [2]}
    )
    document['checks'].append(
        {'id': 'c02', 'type': 'root_disc_increment', 'step': 'F'}
    )
    assert pointers(document) == ['/checks/1/step']


def test_dependency_cycle():
    document = minimal()
    document['checks'] = [
        {
            'id': name,
            'type': 'odlyzko_cap',
            'bound': other,
            'mode': 'grh',
            'claim': 10,
        }
        for name, other in (('a', 'b'), ('b', 'a'))
    ]
    messages = [issue.message for issue in issues_of(document)]
    assert len(messages) == 2
    assert all('dependency cycle' in m for m in messages)


def test_self_reference():
    document = minimal()
    document['checks'].append(
        {
            'id': 'c02',
            'type': 'odlyzko_cap',
            'bound': 'c02',
            'mode': 'grh',
            'claim': 10,
        }
    )
    assert pointers(document) == ['/checks/1/bound']


def test_every_issue_is_reported():
    document = minimal()
    document['fields'][0]['degree'] = 0
    document['checks'][0]['ell'] = 'three'
    assert len(issues_of(document)) >= 2


def test_registry_kinds():
    assert set(check_registry()) == {
        'conductor_cases',
        'conductor_discriminant',
        'conductor_exponent',
        'discriminant_valuation',
        'fixed_space',
        'fontaine_bound',
        'group_fact',
        'level_check',
        'mestre',
        'newform_level',
        'no_normal_subgroup',
        'odlyzko_cap',
        'root_disc_increment',
        'wild_mass',
    }
