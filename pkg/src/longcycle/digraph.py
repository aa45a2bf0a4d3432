"""Simple digraphs on vertices ``0..n-1``: construction, degrees, Eulerian test
and cut counting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import (
    DuplicateArc,
    InputError,
    InternalInvariantViolation,
    LoopArc,
    NotEulerian,
    VertexOutOfRange,
)

Arc = Tuple[int, int]


class Digraph:
    """Immutable simple digraph (no loops, no parallel arcs).

    Adjacency sequences are sorted ascending, so every traversal built on
    them is deterministic.
    """

    __slots__ = ("n", "m", "arcs", "arc_list", "out_adj", "in_adj", "_out_sets")

    def __init__(self, n: int, arc_list: Sequence[Arc]):
        if not isinstance(n, int) or n < 1:
            raise InputError(f"vertex count must be a positive integer, got {n!r}")
        seen = set()
        out_adj = [[] for _ in range(n)]
        in_adj = [[] for _ in range(n)]
        for arc in arc_list:
            u, v = arc
            for x in (u, v):
                if not isinstance(x, int) or not 0 <= x < n:
                    raise VertexOutOfRange(x, n)
            if u == v:
                raise LoopArc(u)
            if (u, v) in seen:
                raise DuplicateArc(u, v)
            seen.add((u, v))
            out_adj[u].append(v)
            in_adj[v].append(u)
        self.n = n
        self.m = len(seen)
        self.arcs = frozenset(seen)
        self.arc_list = tuple(sorted(seen))
        self.out_adj = tuple(tuple(sorted(a)) for a in out_adj)
        self.in_adj = tuple(tuple(sorted(a)) for a in in_adj)
        self._out_sets = tuple(frozenset(a) for a in out_adj)

    def __setattr__(self, name, value):
        if hasattr(self, name):
            raise AttributeError("Digraph is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def has_arc(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._out_sets[u]

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def check_vertex(self, v) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise VertexOutOfRange(v, self.n)


def build_digraph(n: int, arc_list: Iterable[Arc]) -> Digraph:
    """Build a digraph, rejecting loops, duplicates and out-of-range ids."""
    return Digraph(n, [tuple(a) for a in arc_list])


def degrees(D: Digraph, v: int) -> Tuple[int, int]:
    D.check_vertex(v)
    return D.out_degree(v), D.in_degree(v)


def _reaches_all(adj: Sequence[Sequence[int]], start: int) -> bool:
    seen = [False] * len(adj)
    seen[start] = True
    stack = [start]
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == len(adj)


def is_strongly_connected(D: Digraph) -> bool:
    # vertex 0 reaches everything forwards and backwards
    return _reaches_all(D.out_adj, 0) and _reaches_all(D.in_adj, 0)


def eulerian_defect(D: Digraph) -> Optional[str]:
    """Return a human-readable reason why ``D`` is not Eulerian, or None."""
    for v in range(D.n):
        if D.out_degree(v) != D.in_degree(v):
            return f"degree imbalance at {v}"
    if not is_strongly_connected(D):
        return "not strongly connected"
    return None


def is_eulerian(D: Digraph) -> bool:
    return eulerian_defect(D) is None


def require_eulerian(D: Digraph) -> None:
    reason = eulerian_defect(D)
    if reason is not None:
        raise NotEulerian(f"not Eulerian: {reason}")


def average_out_degree(D: Digraph) -> Fraction:
    return Fraction(D.m, D.n)


def _as_members(D: Digraph, W: Iterable[int]) -> frozenset:
    members = frozenset(W)
    for v in members:
        D.check_vertex(v)
    return members


def cut_counts(D: Digraph, W: Iterable[int]) -> Tuple[int, int, int]:
    """Return ``(d_plus, d_minus, internal)`` for the vertex subset ``W``:
    arcs leaving W, arcs entering W, and arcs with both ends in W."""
    members = _as_members(D, W)
    d_plus = d_minus = internal = 0
    for u in members:
        for v in D.out_adj[u]:
            if v in members:
                internal += 1
            else:
                d_plus += 1
        for v in D.in_adj[u]:
            if v not in members:
                d_minus += 1
    return d_plus, d_minus, internal


@dataclass(frozen=True)
class CutBalanceWitness:
    members: frozenset
    d_plus: int
    d_minus: int
    internal: int
    out_degree_sum: int
    in_degree_sum: int

    @property
    def out_identity(self) -> bool:
        return self.d_plus == self.out_degree_sum - self.internal

    @property
    def in_identity(self) -> bool:
        return self.d_minus == self.in_degree_sum - self.internal

    @property
    def balanced(self) -> bool:
        return self.d_plus == self.d_minus and self.out_identity and self.in_identity


def check_cut_balance(D: Digraph, W: Iterable[int]) -> CutBalanceWitness:
    """Count both sides of the cut around ``W`` and confirm they agree.

    On an Eulerian digraph this can only fail through a bug, so an
    unbalanced result raises rather than returning a false witness.
    """
    require_eulerian(D)
    members = _as_members(D, W)
    d_plus, d_minus, internal = cut_counts(D, members)
    witness = CutBalanceWitness(
        members=members,
        d_plus=d_plus,
        d_minus=d_minus,
        internal=internal,
        out_degree_sum=sum(D.out_degree(v) for v in members),
        in_degree_sum=sum(D.in_degree(v) for v in members),
    )
    if not witness.balanced:
        raise InternalInvariantViolation(
            f"cut around {sorted(members)} unbalanced: out={d_plus} in={d_minus}"
        )
    return witness
