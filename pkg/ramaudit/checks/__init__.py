from __future__ import annotations

from .abc import AuditContext, Check, CheckResult, Param
from .bounds import (
    ConductorDiscriminant,
    FontaineBound,
    OdlyzkoCap,
    RootDiscIncrement,
)
from .conductor import (
    ConductorCases,
    ConductorExponent,
    Mestre,
    NewformLevel,
    WildMass,
)
from .filtration import DiscriminantValuation, LevelCheck
from .groups import FixedSpaceDim, GroupFact, NoNormalSubgroup

__all__ = [
    'AuditContext',
    'Check',
    'CheckResult',
    'Param',
    'ConductorDiscriminant',
    'FontaineBound',
    'OdlyzkoCap',
    'RootDiscIncrement',
    'ConductorCases',
    'ConductorExponent',
    'Mestre',
    'NewformLevel',
    'WildMass',
    'DiscriminantValuation',
    'LevelCheck',
    'FixedSpaceDim',
    'GroupFact',
    'NoNormalSubgroup',
]
