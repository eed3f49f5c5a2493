from __future__ import annotations

import logging

from ..exceptions import DomainError, IncompleteEnumerationError
from .groups import (
    conjugacy_data,
    normal_subgroup_orders,
    preset,
    solvable_subgroup_caps,
)
from .modules import degree_partition_check, embeddings_in_GL2

logger = logging.getLogger(__name__)

FACT_CHARACTERISTICS = (2, 3)


def fact_sheet(name: str) -> list[str]:
    """Human readable summary of the brute-force facts about a preset group."""
    G = preset(name)
    lines = [f'group {G.name} order={G.order}']
    classes = ' '.join(f'{c.size}x{c.order}' for c in conjugacy_data(G))
    lines.append(f'classes (size x element order): {classes}')
    for p in FACT_CHARACTERISTICS:
        try:
            degrees = degree_partition_check(G, p)
        except IncompleteEnumerationError as e:
            logger.info('%s', e)
            lines.append(f'simple F_{p}-modules: some exceed dimension 2')
            continue
        lines.append(f'simple F_{p}-modules: degrees {degrees}')
    for q in FACT_CHARACTERISTICS:
        embeddings = embeddings_in_GL2(G, q)
        lines.append(
            f'embeddings into GL_2(F_{q}) up to conjugacy: {len(embeddings)}'
        )
        for embedding in embeddings:
            traces = ', '.join(
                f'order {order}: {sorted(values)}'
                for order, values in embedding.traces.items()
            )
            lines.append(f'  traces {traces}')
    try:
        caps = solvable_subgroup_caps(G)
    except DomainError as e:
        lines.append(f'subgroup caps: skipped ({e})')
    else:
        lines.append(
            f'largest solvable subgroup {caps.max_solvable_order}, largest '
            'cyclic normal subgroup of a solvable one '
            f'{caps.max_normal_cyclic_order}'
        )
        lines.append(f'normal subgroup orders: {normal_subgroup_orders(G)}')
    return lines
