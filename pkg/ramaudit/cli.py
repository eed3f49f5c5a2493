from __future__ import annotations

import argparse
import logging
import sys
import typing as t
from pathlib import Path

from . import __version__
from .audit import exit_status, render_report, run_audit
from .bounds import OdlyzkoTables, odlyzko_max_degree
from .conductor import CaseConstraints, enumerate_cases
from .enums import Mode, ReportFormat, RepCase
from .exceptions import RamauditError, ScenarioError
from .filtration import (
    RamFiltration,
    different_valuation,
    herbrand_phi,
    herbrand_psi,
    i_max,
    u_max,
)
from .modrep import PRESET_NAMES, fact_sheet
from .newforms import (
    NewformRecord,
    classify_table,
    excluded_newforms,
    load_newform_table,
    max_level_exponent,
    newform_bound,
    newform_level_of_ram,
    surviving_newforms,
)
from .radical import FactoredRadical, format_rational, radical_approx
from .scenario import load_scenario, shipped_scenarios

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _orders(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f'Expected comma separated integers, got {text!r}'
        ) from None


def _tables(args: argparse.Namespace) -> OdlyzkoTables:
    if args.odlyzko_table is not None:
        logger.warning('Using Odlyzko table override %s', args.odlyzko_table)
    return OdlyzkoTables.from_file(args.odlyzko_table)


def cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    results = run_audit(scenario, _tables(args), args.unconditional_only)
    sys.stdout.write(
        render_report(results, ReportFormat(args.format), scenario.name)
    )
    return exit_status(results)


def cmd_scenarios(args: argparse.Namespace) -> int:
    for name in shipped_scenarios():
        print(name)
    return EXIT_OK


def cmd_herbrand(args: argparse.Namespace) -> int:
    F = RamFiltration(args.orders, args.total_order)
    print(f'orders {",".join(map(str, F.orders))}')
    if args.at is not None:
        print(f'phi({args.at}) = {format_rational(herbrand_phi(F, args.at))}')
        print(f'psi({args.at}) = {format_rational(herbrand_psi(F, args.at))}')
    print(f'i_max = {i_max(F)}')
    print(f'u_max = {format_rational(u_max(F))}')
    print(f'different = {format_rational(different_valuation(F))}')
    return EXIT_OK


def cmd_odlyzko(args: argparse.Namespace) -> int:
    delta = FactoredRadical.parse(args.delta)
    mode = Mode(args.mode)
    cap = odlyzko_max_degree(delta, mode, _tables(args))
    print(f'delta = {delta} ~ {radical_approx(delta)}')
    if cap is None:
        print(f'{mode.value}: no tabulated degree cap')
        return EXIT_FAILED
    print(f'{mode.value}: degree < {cap}')
    return EXIT_OK


def cmd_newform_level(args: argparse.Namespace) -> int:
    record = NewformRecord(
        f'{args.p}^{args.n}',
        args.p,
        args.n,
        1,
        0,
        RepCase(args.case),
        args.a_chi,
        args.a_eps_chi,
    )
    print(format_rational(newform_level_of_ram(record)))
    return EXIT_OK


def cmd_newform_table(args: argparse.Namespace) -> int:
    mode = Mode(args.mode)
    tables = _tables(args)
    records = load_newform_table()
    for (label, u), record in zip(classify_table(records), records):
        print(f'{label:>4} level={record.level:<3} u={format_rational(u)}')
    for p in (2, 3, 5, 7):
        print(f'p={p}: {max_level_exponent(p)}')
    for exclusion in excluded_newforms(mode, records):
        if exclusion.below_threshold:
            print(f'excluded ({mode.value}) {exclusion}')
    survivors = surviving_newforms(mode, records)
    for record in records:
        if record.label in survivors:
            cap = odlyzko_max_degree(newform_bound(record), mode, tables)
            print(f'{record.label:>4} degree cap={cap}')
    print(f'surviving ({mode.value}): {" ".join(survivors)}')
    return EXIT_OK


def cmd_modrep_facts(args: argparse.Namespace) -> int:
    print('\n'.join(fact_sheet(args.preset)))
    return EXIT_OK


def cmd_conductor_cases(args: argparse.Namespace) -> int:
    constraints = CaseConstraints(
        u_positive=args.require_u_positive,
        delta_zero=args.require_delta_zero,
        bounded_by_dimension=args.bounded_by_dimension,
    )
    enumeration = enumerate_cases(args.c, args.g, constraints)
    for case in enumeration.cases:
        print(f'u={case.u} t={case.t} delta={format_rational(case.delta)}')
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ramaudit',
        description=(
            'Exact-arithmetic auditor for ramification, root discriminant '
            'and conductor bounds.'
        ),
    )
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument(
        '-v',
        '--verbose',
        action='count',
        default=0,
        help='-v for INFO, -vv for DEBUG logging on stderr',
    )
    tables = argparse.ArgumentParser(add_help=False)
    tables.add_argument(
        '--odlyzko-table',
        type=Path,
        default=None,
        help='replace the shipped Odlyzko table',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser(
        'run', parents=[tables], help='audit a scenario file'
    )
    run.add_argument('scenario', help='path or shipped scenario name')
    policy = run.add_mutually_exclusive_group()
    policy.add_argument(
        '--grh',
        dest='unconditional_only',
        action='store_false',
        help='accept GRH-conditional bounds (default)',
    )
    policy.add_argument(
        '--unconditional-only',
        dest='unconditional_only',
        action='store_true',
        help='evaluate every Odlyzko check against the unconditional table',
    )
    run.add_argument(
        '--format',
        choices=[f.value for f in ReportFormat],
        default=ReportFormat.TEXT.value,
    )
    run.set_defaults(func=cmd_run, unconditional_only=False)

    scenarios = commands.add_parser('scenarios', help='list shipped scenarios')
    scenarios.set_defaults(func=cmd_scenarios)

    herbrand = commands.add_parser(
        'herbrand', help='Herbrand functions of a filtration'
    )
    herbrand.add_argument('--orders', type=_orders, required=True)
    herbrand.add_argument('--total-order', type=int, default=None)
    herbrand.add_argument('--at', default=None, help='rational point')
    herbrand.set_defaults(func=cmd_herbrand)

    odlyzko = commands.add_parser(
        'odlyzko', parents=[tables], help='degree cap of a root discriminant'
    )
    odlyzko.add_argument('--delta', required=True, help='e.g. "2:5/2,3:3/2"')
    odlyzko.add_argument(
        '--mode', choices=[m.value for m in Mode], default=Mode.GRH.value
    )
    odlyzko.set_defaults(func=cmd_odlyzko)

    level = commands.add_parser(
        'newform-level', help='level of ramification of a newform'
    )
    level.add_argument('--p', type=int, required=True)
    level.add_argument('--n', type=int, required=True)
    level.add_argument(
        '--case', choices=[c.value for c in RepCase], required=True
    )
    level.add_argument('--a-chi', type=int, default=0)
    level.add_argument('--a-eps-chi', type=int, default=0)
    level.set_defaults(func=cmd_newform_level)

    table = commands.add_parser(
        'newform-table', parents=[tables], help='recompute the newform table'
    )
    table.add_argument(
        '--mode', choices=[m.value for m in Mode], default=Mode.GRH.value
    )
    table.set_defaults(func=cmd_newform_table)

    modrep = commands.add_parser('modrep', help='finite group facts')
    modrep_commands = modrep.add_subparsers(dest='modrep', required=True)
    facts = modrep_commands.add_parser('facts', help='fact sheet of a group')
    facts.add_argument('preset', choices=PRESET_NAMES)
    facts.set_defaults(func=cmd_modrep_facts)

    conductor = commands.add_parser('conductor', help='conductor exponents')
    conductor_commands = conductor.add_subparsers(
        dest='conductor', required=True
    )
    cases = conductor_commands.add_parser(
        'cases', help='enumerate (u, t, delta) for an exponent'
    )
    cases.add_argument('--c', type=int, required=True)
    cases.add_argument('--g', type=int, default=1)
    cases.add_argument('--require-u-positive', action='store_true')
    cases.add_argument('--require-delta-zero', action='store_true')
    cases.add_argument(
        '--bounded-by-dimension',
        action='store_true',
        help='only list cases with u + t <= g',
    )
    cases.set_defaults(func=cmd_conductor_cases)
    return parser


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )


def main(argv: t.Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except ScenarioError as e:
        print(f'Invalid scenario:\n{e}', file=sys.stderr)
        return EXIT_USAGE
    except (RamauditError, OSError) as e:
        print(f'ramaudit: {e}', file=sys.stderr)
        return EXIT_USAGE
