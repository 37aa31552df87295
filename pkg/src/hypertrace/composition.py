"""Trace composition across cut vertices and monotonicity audits.

When two hypergraphs are glued at a single vertex, every Euler rooting
of the whole splits into Eulerian restrictions on the two sides, and the
localized trace at the cut vertex factors through per-side profiles:

    Tr_d(H1 (.) H2; [u]) =
        sum over d1 + d2 = d, t1 <= d1, t2 <= d2, t1 + t2 > 0 of
        d / (t1 + t2) * C(t1 + t2, t1)
        * (t1 / d1) * Tr_{d1;t1}(H1; [u])
        * (t2 / d2) * Tr_{d2;t2}(H2; [u])

with the conventions t/d := 1 when t = d = 0 and the order-zero profile
entry (m-1)^(n-1).  A :class:`LocalTraceProfile` stores the pinned
localized traces Tr_{d;t} of one operand at its anchor vertex, in the
operand's own ambient vertex count; the formula is self-normalizing for
the glued ambient n1 + n2 - 1.

``relocation_difference`` compares moving an attachment from vertex u to
vertex v of the same operand.  The rootings supported wholly inside one
side cancel in the difference, leaving only the mixed terms

    sum over d1 + d2 = d, d1, d2 > 0, t2 > 0 of
    d * t2 / (d1 * d2) * Tr_{d2;t2}(H2; [w])
    * sum over t1 > 0 of C(t1 + t2 - 1, t2) * Tr_{d1;t1}(H1; [u or v]).

The audit functions build the two hypergraphs named by a perturbation
law, compare their exact traces order by order, and report equality,
strictness or violations together with the first strict order observed
versus the onset the law claims.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .config import Budget, default_budget
from .errors import MissingProfileEntry, ValidationError, VertexOutOfRange
from .hypergraph import (
    AttachSpec,
    UniformHypergraph,
    attach,
    coalesce,
    hyperpath,
    new_hypergraph,
)
from .euler import contribution_parts, enumerate_rootings
from .traces import _BucketSum, _check_cost, trace


@dataclass(frozen=True)
class LocalTraceProfile:
    """Pinned localized traces of one operand at an anchor vertex.

    ``entries[(d, t)]`` is Tr_{d;t}(host; [anchor]) for 1 <= t <= d <=
    d_max, stored only when non-zero; the conventional order-zero entry
    (m-1)^(n-1) is present under (0, 0).  Values use the host's own
    ambient vertex count.
    """

    host: UniformHypergraph
    anchor: int
    d_max: int
    entries: dict[tuple[int, int], Fraction] = field(repr=False)

    def value(self, d: int, t: int) -> Fraction:
        if d < 0 or t < 0 or t > d:
            raise ValidationError(f"profile entry ({d}, {t}) is malformed")
        if d > self.d_max:
            raise MissingProfileEntry(
                f"profile of vertex {self.anchor} stops at order {self.d_max}, "
                f"order {d} was requested"
            )
        if d == 0:
            return self.entries[(0, 0)]
        return self.entries.get((d, t), Fraction(0))


def local_trace_profile(
    h: UniformHypergraph,
    anchor: int,
    d_max: int,
    budget: Budget | None = None,
) -> LocalTraceProfile:
    """Compute all pinned localized traces at the anchor up to d_max."""
    if not 0 <= anchor < h.n:
        raise VertexOutOfRange(f"anchor {anchor} is not in 0..{h.n - 1}")
    if d_max < 0:
        raise ValidationError(f"d_max must be non-negative, got {d_max}")
    budget = budget or default_budget()
    _check_cost(h, d_max, budget)
    sums: dict[tuple[int, int], _BucketSum] = {}
    for d in range(1, d_max + 1):
        for mat in enumerate_rootings(h, d):
            t = mat.root_counts.get(anchor, 0)
            if t:
                sums.setdefault((d, t), _BucketSum()).add(
                    *contribution_parts(mat, h.n)
                )
    entries = {key: acc.value() for key, acc in sums.items()}
    entries = {key: val for key, val in entries.items() if val}
    entries[(0, 0)] = Fraction((h.m - 1) ** (h.n - 1))
    return LocalTraceProfile(host=h, anchor=anchor, d_max=d_max, entries=entries)


def embed_scale(value: Fraction, m: int, ambient_n: int, sub_n: int) -> Fraction:
    """Rescale a trace computed on sub_n vertices to an ambient host:
    every extra vertex multiplies the weight by (m-1)."""
    if ambient_n < sub_n:
        raise ValidationError(
            f"ambient vertex count {ambient_n} is below the operand's {sub_n}"
        )
    return value * Fraction((m - 1) ** (ambient_n - sub_n))


def coalescence_local_trace(
    p1: LocalTraceProfile, p2: LocalTraceProfile, d: int
) -> Fraction:
    """Localized trace of the glued hypergraph at the identified vertex,
    assembled from the two operand profiles."""
    if p1.host.m != p2.host.m:
        raise ValidationError("profiles have different uniformity")
    if d < 1:
        raise ValidationError(f"composition needs d >= 1, got {d}")
    if p1.d_max < d or p2.d_max < d:
        raise MissingProfileEntry(
            f"composition at order {d} needs both profiles computed to that depth"
        )
    total = Fraction(0)
    for d1 in range(d + 1):
        d2 = d - d1
        t1_range = range(1, d1 + 1) if d1 else (0,)
        t2_range = range(1, d2 + 1) if d2 else (0,)
        for t1 in t1_range:
            v1 = p1.value(d1, t1)
            if not v1:
                continue
            left = v1 if d1 == 0 else Fraction(t1, d1) * v1
            for t2 in t2_range:
                if t1 + t2 == 0:
                    continue
                v2 = p2.value(d2, t2)
                if not v2:
                    continue
                right = v2 if d2 == 0 else Fraction(t2, d2) * v2
                total += (
                    Fraction(d, t1 + t2) * comb(t1 + t2, t1) * left * right
                )
    return total


def _mixed_cross_sum(
    p1: LocalTraceProfile, p2: LocalTraceProfile, d: int
) -> Fraction:
    """Sum of weights of rootings spanning both sides of the glue."""
    total = Fraction(0)
    for d1 in range(1, d):
        d2 = d - d1
        for t2 in range(1, d2 + 1):
            v2 = p2.value(d2, t2)
            if not v2:
                continue
            inner = Fraction(0)
            for t1 in range(1, d1 + 1):
                v1 = p1.value(d1, t1)
                if v1:
                    inner += comb(t1 + t2 - 1, t2) * v1
            if inner:
                total += Fraction(d * t2, d1 * d2) * v2 * inner
    return total


def relocation_difference(
    profile_u: LocalTraceProfile,
    profile_v: LocalTraceProfile,
    profile_w: LocalTraceProfile,
    d: int,
) -> Fraction:
    """Exact value of Tr_d(H1(u) (.) H2(w)) - Tr_d(H1(v) (.) H2(w)).

    profile_u and profile_v anchor the same operand at the two candidate
    attachment vertices; profile_w anchors the relocated operand.
    """
    if d < 1:
        raise ValidationError(f"relocation needs d >= 1, got {d}")
    needed = d - 1
    for p in (profile_u, profile_v, profile_w):
        if p.d_max < needed:
            raise MissingProfileEntry(
                f"relocation at order {d} needs profiles to depth {needed}"
            )
    return _mixed_cross_sum(profile_u, profile_w, d) - _mixed_cross_sum(
        profile_v, profile_w, d
    )


# --- inequality audits ----------------------------------------------------


@dataclass(frozen=True)
class AuditRow:
    d: int
    left: Fraction
    right: Fraction

    @property
    def verdict(self) -> str:
        if self.left == self.right:
            return "equal"
        return "strict" if self.left > self.right else "violates"


@dataclass(frozen=True)
class InequalityAuditReport:
    """Order-by-order comparison of two traces under a perturbation law.

    ``left`` holds the trace the law predicts to be the larger one.
    ``claimed_strict_onset`` is the order from which the law claims
    strict inequality; ``observed_strict_onset`` is the first strict
    order actually seen (None when every order compared equal).
    """

    law: str
    params: dict
    rows: tuple[AuditRow, ...]
    claimed_strict_onset: int

    @property
    def observed_strict_onset(self) -> int | None:
        for row in self.rows:
            if row.verdict == "strict":
                return row.d
        return None

    @property
    def violations(self) -> tuple[int, ...]:
        return tuple(row.d for row in self.rows if row.verdict == "violates")

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "law": self.law,
            "params": self.params,
            "claimed_strict_onset": self.claimed_strict_onset,
            "observed_strict_onset": self.observed_strict_onset,
            "violations": list(self.violations),
            "rows": [
                {
                    "d": row.d,
                    "left": _fraction_str(row.left),
                    "right": _fraction_str(row.right),
                    "verdict": row.verdict,
                }
                for row in self.rows
            ],
        }


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _compare_traces(
    law: str,
    params: dict,
    larger: UniformHypergraph,
    smaller: UniformHypergraph,
    d_max: int,
    claimed_strict_onset: int,
    budget: Budget | None,
) -> InequalityAuditReport:
    rows = []
    for d in range(1, d_max + 1):
        rows.append(
            AuditRow(d=d, left=trace(larger, d, budget), right=trace(smaller, d, budget))
        )
    return InequalityAuditReport(
        law=law,
        params=params,
        rows=tuple(rows),
        claimed_strict_onset=claimed_strict_onset,
    )


def _path_end(m: int, z: int) -> int:
    """The far end vertex of hyperpath(m, z); any degree-one vertex of
    the last edge is equivalent up to isomorphism."""
    return z * (m - 1)


def audit_path_shift(
    h: UniformHypergraph,
    w: int,
    r: int,
    s: int,
    d_max: int,
    budget: Budget | None = None,
) -> InequalityAuditReport:
    """Two pendant paths at one vertex: lengths (r, s) versus (r+1, s-1).

    With r >= s >= 1 the balanced split should dominate order by order;
    the law claims strictness from d = s * m on.
    """
    if not (r >= s >= 1):
        raise ValidationError(f"path shift needs r >= s >= 1, got r={r}, s={s}")
    if d_max < 1:
        raise ValidationError(f"d_max must be >= 1, got {d_max}")
    if not 0 <= w < h.n:
        raise VertexOutOfRange(f"vertex {w} is not in 0..{h.n - 1}")
    m = h.m

    def with_paths(a: int, b: int) -> UniformHypergraph:
        specs = [AttachSpec(w, hyperpath(m, a), _path_end(m, a))]
        if b:
            specs.append(AttachSpec(w, hyperpath(m, b), _path_end(m, b)))
        return attach(h, specs)

    return _compare_traces(
        law="path-shift",
        params={"m": m, "host_n": h.n, "host_edges": h.edge_count, "w": w,
                "r": r, "s": s, "d_max": d_max},
        larger=with_paths(r, s),
        smaller=with_paths(r + 1, s - 1),
        d_max=d_max,
        claimed_strict_onset=s * m,
        budget=budget,
    )


def audit_edge_shift(
    m: int,
    p: int,
    r: int,
    s: int,
    d_max: int,
    branches: Sequence[UniformHypergraph] | None = None,
    budget: Budget | None = None,
) -> InequalityAuditReport:
    """Pendant paths at two vertices of one edge carrying p branches.

    The base edge {0, .., m-1} gets a branch at each of the vertices
    2..p+1, a pendant path of length r at vertex 0 and one of length s
    at vertex 1; the comparison is against lengths (r+1, s-1).  The law
    claims strictness from d = (s+1) * m on.
    """
    if m < 3:
        raise ValidationError(f"edge shift needs m >= 3, got {m}")
    if not 1 <= p <= m - 2:
        raise ValidationError(f"edge shift needs 1 <= p <= m-2, got p={p}")
    if not (r >= s >= 1):
        raise ValidationError(f"edge shift needs r >= s >= 1, got r={r}, s={s}")
    if d_max < 1:
        raise ValidationError(f"d_max must be >= 1, got {d_max}")
    if branches is None:
        branches = [hyperpath(m, 1)] * p
    if len(branches) != p:
        raise ValidationError(f"expected {p} branches, got {len(branches)}")
    base = new_hypergraph(m, m, [tuple(range(m))])
    host = attach(
        base, [AttachSpec(2 + i, br, 0) for i, br in enumerate(branches)]
    )

    def with_paths(a: int, b: int) -> UniformHypergraph:
        specs = [AttachSpec(0, hyperpath(m, a), _path_end(m, a))]
        if b:
            specs.append(AttachSpec(1, hyperpath(m, b), _path_end(m, b)))
        return attach(host, specs)

    return _compare_traces(
        law="edge-shift",
        params={"m": m, "p": p, "r": r, "s": s, "d_max": d_max},
        larger=with_paths(r, s),
        smaller=with_paths(r + 1, s - 1),
        d_max=d_max,
        claimed_strict_onset=(s + 1) * m,
        budget=budget,
    )


def audit_cored_shift(
    m: int,
    d_max: int,
    p: int = 1,
    branches: Sequence[UniformHypergraph] | None = None,
    other: UniformHypergraph | None = None,
    other_vertex: int = 0,
    budget: Budget | None = None,
) -> InequalityAuditReport:
    """Attachment at a branch vertex versus at a degree-one vertex.

    The host is the edge {0, .., m-1} with a branch at each of the
    vertices 1..p, so vertex 0 keeps degree one.  Gluing the other
    operand at vertex 1 should dominate gluing it at vertex 0; the law
    claims strictness at every order divisible by m.
    """
    if m < 2:
        raise ValidationError(f"uniformity m must be >= 2, got {m}")
    if not 1 <= p <= m - 1:
        raise ValidationError(f"cored shift needs 1 <= p <= m-1, got p={p}")
    if d_max < 1:
        raise ValidationError(f"d_max must be >= 1, got {d_max}")
    if branches is None:
        branches = [hyperpath(m, 1)] * p
    if len(branches) != p:
        raise ValidationError(f"expected {p} branches, got {len(branches)}")
    if other is None:
        other = hyperpath(m, 1)
    base = new_hypergraph(m, m, [tuple(range(m))])
    host = attach(base, [AttachSpec(1 + i, br, 0) for i, br in enumerate(branches)])
    return _compare_traces(
        law="cored-shift",
        params={"m": m, "p": p, "d_max": d_max,
                "other_n": other.n, "other_edges": other.edge_count},
        larger=coalesce(host, 1, other, other_vertex),
        smaller=coalesce(host, 0, other, other_vertex),
        d_max=d_max,
        claimed_strict_onset=m,
        budget=budget,
    )
