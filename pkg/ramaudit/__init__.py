from __future__ import annotations

__version__ = '0.1.0'

from .audit import render_report, run_audit
from .scenario import load_scenario, parse_scenario

__all__ = [
    '__version__',
    'load_scenario',
    'parse_scenario',
    'render_report',
    'run_audit',
]
