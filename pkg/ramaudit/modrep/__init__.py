from __future__ import annotations

from .facts import fact_sheet
from .groups import (
    PRESET_NAMES,
    ConjugacyClass,
    FiniteGroup,
    SolvableCaps,
    conjugacy_data,
    has_normal_subgroup,
    is_isomorphic,
    normal_subgroup_orders,
    preset,
    quotient_isomorphic,
    solvable_subgroup_caps,
)
from .modules import (
    S3_RELATIONS,
    SH16_RELATIONS,
    Embedding,
    FixedSpace,
    MatrixModule,
    degree_partition_check,
    embeddings_in_GL2,
    fixed_space_dim,
    is_semisimple,
    is_semisimple_f2s3,
    sigma_decomposition_holds,
)

__all__ = [
    'PRESET_NAMES',
    'S3_RELATIONS',
    'SH16_RELATIONS',
    'ConjugacyClass',
    'Embedding',
    'FiniteGroup',
    'FixedSpace',
    'MatrixModule',
    'SolvableCaps',
    'conjugacy_data',
    'degree_partition_check',
    'embeddings_in_GL2',
    'fact_sheet',
    'fixed_space_dim',
    'has_normal_subgroup',
    'is_isomorphic',
    'is_semisimple',
    'is_semisimple_f2s3',
    'normal_subgroup_orders',
    'preset',
    'quotient_isomorphic',
    'sigma_decomposition_holds',
    'solvable_subgroup_caps',
]
