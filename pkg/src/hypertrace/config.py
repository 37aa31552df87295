"""Resource budgets shared by the enumeration engines.

Every potentially explosive routine takes an optional :class:`Budget`
and refuses up front, with :class:`~hypertrace.errors.LimitExceeded`,
any request whose cost bound exceeds the configured limit.  The
environment variable ``HYPERTRACE_BUDGET`` overrides the default trace
cost limit for command-line runs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import ValidationError

ENV_BUDGET = "HYPERTRACE_BUDGET"


@dataclass(frozen=True)
class Budget:
    """Limits for one engine invocation.

    cost_limit bounds ``edge_count * d`` for a single trace evaluation,
    arc_limit bounds the exhaustive Euler-circuit oracle, and the two
    remaining fields bound hypertree enumeration and canonical labeling.
    """

    cost_limit: int = 128
    arc_limit: int = 16
    tree_edge_limit: int = 6
    canon_vertex_limit: int = 26


def default_budget() -> Budget:
    """Budget with defaults, honoring the ``HYPERTRACE_BUDGET`` override."""
    raw = os.environ.get(ENV_BUDGET)
    if raw is None:
        return Budget()
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{ENV_BUDGET} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValidationError(f"{ENV_BUDGET} must be positive, got {value}")
    return Budget(cost_limit=value)
