"""Uniform hypergraphs: validation, constructors, hypertrees, canonical forms.

Vertices are the integers ``0..n-1``.  Every edge is stored as a sorted
tuple of ``m`` distinct vertices and the edge list itself is sorted, so
structurally equal hypergraphs compare equal.  Instances are immutable;
all constructors and surgeries return fresh values.

Vertex id conventions for the generators:

* ``hyperpath(m, z)``: edge ``i`` occupies the consecutive block
  ``[i*(m-1), (i+1)*(m-1)]``; consecutive edges overlap in the single
  vertex ``(i+1)*(m-1)``.  The path ends are ``0`` and ``z*(m-1)``.
* ``hyperstar(m, z)``: vertex ``0`` is the center; edge ``i`` adds the
  fresh block ``1 + i*(m-1) .. (i+1)*(m-1)``.
* ``coalesce(h1, u, h2, v)``: ``h1`` keeps its ids, ``v`` maps onto
  ``u``, and the remaining ``h2`` vertices shift to ``n1..n1+n2-2``
  preserving their relative order.
* ``power(g, m)``: edge ``i`` of the graph gains the fresh vertices
  ``n + i*(m-2) .. n + (i+1)*(m-2) - 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .config import Budget, default_budget
from .errors import (
    DuplicateEdge,
    LimitExceeded,
    MixedUniformity,
    NonUniformEdge,
    NotAGraph,
    TrivialOperand,
    ValidationError,
    VertexOutOfRange,
)

VertexId = int
Edge = tuple[int, ...]


@dataclass(frozen=True)
class UniformHypergraph:
    """An m-uniform hypergraph on the vertex set 0..n-1.

    Invariants: m >= 2, n >= 1, every edge is a sorted tuple of m
    distinct in-range vertices, the edge tuple is sorted and free of
    duplicates.
    """

    m: int
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 2:
            raise ValidationError(f"uniformity m must be an integer >= 2, got {self.m!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"vertex count n must be an integer >= 1, got {self.n!r}")
        canon = []
        for edge in self.edges:
            vs = tuple(sorted(set(edge)))
            if len(vs) != self.m:
                raise NonUniformEdge(
                    f"edge {tuple(edge)} does not have exactly {self.m} distinct vertices"
                )
            if vs[0] < 0 or vs[-1] >= self.n:
                raise VertexOutOfRange(f"edge {vs} is not contained in 0..{self.n - 1}")
            canon.append(vs)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise DuplicateEdge(f"edge {a} appears more than once")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        degs = [0] * self.n
        for edge in self.edges:
            for v in edge:
                degs[v] += 1
        return tuple(degs)

    def degree(self, v: VertexId) -> int:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} is not in 0..{self.n - 1}")
        return self.degrees[v]

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the sorted tuple of incident edge indices."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, edge in enumerate(self.edges):
            for v in edge:
                inc[v].append(i)
        return tuple(tuple(ix) for ix in inc)

    @property
    def vertices(self) -> range:
        return range(self.n)


def new_hypergraph(m: int, n: int, edges: Iterable[Iterable[int]]) -> UniformHypergraph:
    """Validate and canonicalize an edge list into a hypergraph."""
    return UniformHypergraph(m, n, tuple(tuple(e) for e in edges))


def hyperpath(m: int, z: int) -> UniformHypergraph:
    """The m-uniform loose path with z edges on z*(m-1)+1 vertices."""
    _check_generator_args(m, z)
    edges = [tuple(range(i * (m - 1), i * (m - 1) + m)) for i in range(z)]
    return new_hypergraph(m, z * (m - 1) + 1, edges)


def hyperstar(m: int, z: int) -> UniformHypergraph:
    """The m-uniform star with z edges through the center vertex 0."""
    _check_generator_args(m, z)
    edges = [(0,) + tuple(range(1 + i * (m - 1), 1 + (i + 1) * (m - 1))) for i in range(z)]
    return new_hypergraph(m, z * (m - 1) + 1, edges)


def _check_generator_args(m: int, z: int) -> None:
    if m < 2:
        raise ValidationError(f"uniformity m must be >= 2, got {m}")
    if z < 1:
        raise ValidationError(f"edge count z must be >= 1, got {z}")


def power(graph: UniformHypergraph, m: int) -> UniformHypergraph:
    """Blow a 2-uniform host up to uniformity m by padding each edge
    with m-2 fresh vertices."""
    if graph.m != 2:
        raise NotAGraph(f"power expects a 2-uniform host, got m={graph.m}")
    if m < 3:
        raise ValidationError(f"target uniformity must be >= 3, got {m}")
    pad = m - 2
    edges = []
    for i, (a, b) in enumerate(graph.edges):
        fresh = tuple(range(graph.n + i * pad, graph.n + (i + 1) * pad))
        edges.append((a, b) + fresh)
    return new_hypergraph(m, graph.n + pad * graph.edge_count, edges)


def coalesce(
    h1: UniformHypergraph, u: VertexId, h2: UniformHypergraph, v: VertexId
) -> UniformHypergraph:
    """Glue h2 onto h1 by identifying vertex v of h2 with vertex u of h1.

    No other vertex is shared, so the identified vertex separates the
    two operands in the result.
    """
    if h1.m != h2.m:
        raise MixedUniformity(f"cannot coalesce m={h1.m} with m={h2.m}")
    for h, w in ((h1, u), (h2, v)):
        if not 0 <= w < h.n:
            raise VertexOutOfRange(f"vertex {w} is not in 0..{h.n - 1}")
        if h.n < 2 or h.edge_count < 1:
            raise TrivialOperand("coalescence operands must have an edge and >= 2 vertices")
        if not is_connected(h):
            raise ValidationError("coalescence operands must be connected")

    def relabel(j: int) -> int:
        if j == v:
            return u
        return h1.n + j - (1 if j > v else 0)

    edges = list(h1.edges) + [tuple(relabel(j) for j in e) for e in h2.edges]
    return new_hypergraph(h1.m, h1.n + h2.n - 1, edges)


@dataclass(frozen=True)
class AttachSpec:
    """One pendant attachment: glue ``sub`` onto the host by identifying
    ``sub_vertex`` with ``host_vertex``."""

    host_vertex: VertexId
    sub: UniformHypergraph
    sub_vertex: VertexId


def attach(host: UniformHypergraph, specs: Sequence[AttachSpec]) -> UniformHypergraph:
    """Iterated coalescence; host vertex ids remain valid throughout."""
    for spec in specs:
        if not 0 <= spec.host_vertex < host.n:
            raise VertexOutOfRange(
                f"host vertex {spec.host_vertex} is not in 0..{host.n - 1}"
            )
    result = host
    for spec in specs:
        result = coalesce(result, spec.host_vertex, spec.sub, spec.sub_vertex)
    return result


def is_connected(h: UniformHypergraph) -> bool:
    if h.n == 1:
        return True
    parent = list(range(h.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge in h.edges:
        r = find(edge[0])
        for w in edge[1:]:
            rw = find(w)
            if rw != r:
                parent[rw] = r
    return len({find(v) for v in range(h.n)}) == 1


def is_hypertree(h: UniformHypergraph) -> bool:
    """Connected and acyclic: exactly z*(m-1)+1 vertices for z edges."""
    return h.edge_count >= 1 and h.n == h.edge_count * (h.m - 1) + 1 and is_connected(h)


def permute_vertices(h: UniformHypergraph, perm: Sequence[int]) -> UniformHypergraph:
    """Relabel vertices: new id of vertex v is perm[v]."""
    if sorted(perm) != list(range(h.n)):
        raise ValidationError("perm must be a permutation of 0..n-1")
    return new_hypergraph(h.m, h.n, [tuple(perm[v] for v in e) for e in h.edges])


def enumerate_hypertrees(
    m: int, z: int, budget: Budget | None = None
) -> list[UniformHypergraph]:
    """One representative per isomorphism class of m-uniform hypertrees
    with z edges, generated by attaching a pendant edge at every vertex
    of every smaller hypertree and deduplicating by canonical form."""
    budget = budget or default_budget()
    _check_generator_args(m, z)
    if z > budget.tree_edge_limit:
        raise LimitExceeded(
            f"hypertree enumeration with z={z} exceeds the configured limit "
            f"of {budget.tree_edge_limit} edges"
        )
    level: dict[bytes, UniformHypergraph] = {}
    seed = hyperpath(m, 1)
    level[canonical_form(seed, budget)] = seed
    for _ in range(z - 1):
        grown: dict[bytes, UniformHypergraph] = {}
        for h in level.values():
            for v in range(h.n):
                g = _attach_pendant_edge(h, v)
                grown.setdefault(canonical_form(g, budget), g)
        level = grown
    return [level[key] for key in sorted(level)]


def _attach_pendant_edge(h: UniformHypergraph, v: VertexId) -> UniformHypergraph:
    fresh = tuple(range(h.n, h.n + h.m - 1))
    return new_hypergraph(h.m, h.n + h.m - 1, list(h.edges) + [(v,) + fresh])


# --- canonical form -------------------------------------------------------
#
# The canonical form is the minimum, over vertex relabelings compatible
# with an iterated degree refinement, of a block encoding of the edge
# list: block k holds the edges whose largest new label is k.  Blocks
# compare elementwise with "more edges earlier is smaller", which makes
# the partial block sequence a sound prefix for branch-and-bound.


def canonical_form(h: UniformHypergraph, budget: Budget | None = None) -> bytes:
    """A byte string equal for exactly the isomorphic hypergraphs."""
    budget = budget or default_budget()
    if h.n > budget.canon_vertex_limit:
        raise LimitExceeded(
            f"canonical labeling of {h.n} vertices exceeds the configured "
            f"limit of {budget.canon_vertex_limit}"
        )
    colors = _refined_colors(h)
    target = sorted(colors)
    n = h.n

    label = [-1] * n  # original vertex -> new label
    unlabeled_in_edge = [h.m] * h.edge_count
    blocks: list[list[Edge]] = []
    best: list[list[Edge]] | None = None

    def block_cmp(a: list[Edge], b: list[Edge]) -> int:
        for ea, eb in zip(a, b):
            if ea != eb:
                return -1 if ea < eb else 1
        if len(a) != len(b):
            return -1 if len(a) > len(b) else 1
        return 0

    def prefix_cmp(current: list[list[Edge]], other: list[list[Edge]]) -> int:
        for blk, oblk in zip(current, other):
            r = block_cmp(blk, oblk)
            if r:
                return r
        return 0

    def candidates(depth: int) -> list[int]:
        want = target[depth]
        cands = [v for v in range(n) if label[v] < 0 and colors[v] == want]
        if len(cands) > 1:
            def keenness(v: int) -> tuple[int, int, int]:
                completes = sum(1 for i in h.incidence[v] if unlabeled_in_edge[i] == 1)
                touched = sum(1 for i in h.incidence[v] if unlabeled_in_edge[i] < h.m)
                return (-completes, -touched, v)

            cands.sort(key=keenness)
        return cands

    def descend(depth: int) -> None:
        nonlocal best
        if depth == n:
            if best is None or prefix_cmp(blocks, best) < 0:
                best = [list(blk) for blk in blocks]
            return
        for v in candidates(depth):
            label[v] = depth
            completed = []
            for i in h.incidence[v]:
                unlabeled_in_edge[i] -= 1
                if unlabeled_in_edge[i] == 0:
                    completed.append(tuple(sorted(label[w] for w in h.edges[i])))
            completed.sort()
            blocks.append(completed)
            if best is None or prefix_cmp(blocks, best) <= 0:
                descend(depth + 1)
            blocks.pop()
            for i in h.incidence[v]:
                unlabeled_in_edge[i] += 1
            label[v] = -1

    descend(0)
    assert best is not None
    flat = [e for blk in best for e in blk]
    body = ";".join(",".join(map(str, e)) for e in flat)
    return f"{h.m}|{h.n}|{body}".encode("ascii")


def _refined_colors(h: UniformHypergraph) -> list[int]:
    """Iterated neighborhood refinement of the degree coloring."""
    colors = _ranked([(d,) for d in h.degrees])
    for _ in range(h.n):
        sigs = []
        for v in range(h.n):
            around = sorted(
                tuple(sorted(colors[w] for w in h.edges[i] if w != v))
                for i in h.incidence[v]
            )
            sigs.append((colors[v], tuple(around)))
        refined = _ranked(sigs)
        if refined == colors:
            break
        colors = refined
    return colors


def _ranked(signatures: list) -> list[int]:
    order = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def are_isomorphic(h1: UniformHypergraph, h2: UniformHypergraph,
                   budget: Budget | None = None) -> bool:
    if (h1.m, h1.n, h1.edge_count) != (h2.m, h2.n, h2.edge_count):
        return False
    return canonical_form(h1, budget) == canonical_form(h2, budget)


# --- JSON interchange -----------------------------------------------------


def to_json_dict(h: UniformHypergraph) -> dict:
    return {"m": h.m, "n": h.n, "edges": [list(e) for e in h.edges]}


def from_json_dict(payload: dict) -> UniformHypergraph:
    try:
        m = payload["m"]
        n = payload["n"]
        edges = payload["edges"]
    except (TypeError, KeyError) as exc:
        raise ValidationError(f"hypergraph JSON needs m, n and edges: {exc}") from None
    if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
        raise ValidationError("edges must be a list of vertex lists")
    return new_hypergraph(m, n, edges)


def dumps_json(h: UniformHypergraph) -> str:
    return json.dumps(to_json_dict(h), indent=2) + "\n"


def loads_json(text: str) -> UniformHypergraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from None
    return from_json_dict(payload)


def load_json(path: str) -> UniformHypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_json(fh.read())


def save_json(h: UniformHypergraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(h))
