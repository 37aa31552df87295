"""Shared helpers for the test suite.

The expensive fixtures here are module-level functions with caches, not
pytest fixtures, so both the unit tests and the acceptance suite can
reuse them without re-deriving anything.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from hypertrace import (
    UniformHypergraph,
    canonical_form,
    is_connected,
    new_hypergraph,
)


@lru_cache(maxsize=None)
def connected_graph_classes(max_n: int) -> tuple[UniformHypergraph, ...]:
    """One representative per isomorphism class of connected simple
    graphs on at most ``max_n`` vertices (2-uniform hypergraphs)."""
    out: list[UniformHypergraph] = []
    for n in range(1, max_n + 1):
        if n == 1:
            out.append(new_hypergraph(2, 1, []))
            continue
        pairs = list(combinations(range(n), 2))
        seen: set[bytes] = set()
        for k in range(n - 1, len(pairs) + 1):
            for subset in combinations(pairs, k):
                h = new_hypergraph(2, n, subset)
                if not is_connected(h):
                    continue
                key = canonical_form(h)
                if key not in seen:
                    seen.add(key)
                    out.append(h)
    return tuple(out)


def brute_force_isomorphic(h1: UniformHypergraph, h2: UniformHypergraph) -> bool:
    """Ground-truth isomorphism test by trying every vertex bijection.

    Only usable for tiny instances; the canonical-form tests compare
    against this.
    """
    if (h1.m, h1.n, h1.edge_count) != (h2.m, h2.n, h2.edge_count):
        return False
    target = set(h2.edges)
    for perm in permutations(range(h1.n)):
        if all(tuple(sorted(perm[v] for v in e)) in target for e in h1.edges):
            return True
    return False
