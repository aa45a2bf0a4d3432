"""Out-branchings, arc classification and the final out-branching fixpoint.

An out-branching is stored as a parent array plus per-vertex levels (distance
from the root in the tree). An *elementary operation* takes a violating arc
``uv`` (not a back arc, ``level(u) >= level(v)``) and makes ``u`` the parent
of ``v``; ``v``'s whole subtree moves down by the same positive amount, so the
sum of levels strictly grows and repeated application must stop. A branching
with no violating arc is *final*: every arc pointing to a lower-or-equal level
then goes to an ancestor, and no arc joins two vertices of one level.
"""

from __future__ import annotations

import enum
import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .digraph import Arc, Digraph
from .errors import (
    ArcNotInGraph,
    InternalInvariantViolation,
    NotAncestor,
    NotViolating,
    TerminationBudgetExceeded,
    Unreachable,
)


class ArcClass(enum.Enum):
    TREE = "tree"
    FORWARD = "forward"  # non-tree, strictly lower level to upper level
    BACK = "back"
    VIOLATING = "violating"


class OutBranching:
    """Spanning out-tree of ``graph`` rooted at ``root``.

    ``parent[v]`` is the tail of the tree arc entering ``v`` (None at the
    root). Instances are only mutated by :func:`finalize` on its private copy;
    the public :func:`elementary_operation` returns a new object.
    """

    __slots__ = ("graph", "root", "parent", "level", "children")

    def __init__(self, graph: Digraph, root: int, parent: List[Optional[int]], level: List[int]):
        self.graph = graph
        self.root = root
        self.parent = parent
        self.level = level
        self.children = [set() for _ in range(graph.n)]
        for v, p in enumerate(parent):
            if p is not None:
                self.children[p].add(v)

    def copy(self) -> "OutBranching":
        return OutBranching(self.graph, self.root, list(self.parent), list(self.level))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OutBranching)
            and self.graph == other.graph
            and self.root == other.root
            and self.parent == other.parent
        )

    def __repr__(self) -> str:
        return f"OutBranching(root={self.root}, tree={self.tree_arcs()})"

    @property
    def level_sum(self) -> int:
        return sum(self.level)

    @property
    def depth(self) -> int:
        return max(self.level)

    def tree_arcs(self) -> List[Arc]:
        return sorted((p, v) for v, p in enumerate(self.parent) if p is not None)

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if ``a`` lies on the tree path from the root to ``b`` (a == b allowed)."""
        gap = self.level[b] - self.level[a]
        if gap < 0:
            return False
        for _ in range(gap):
            b = self.parent[b]
        return a == b

    def subtree(self, v: int) -> List[int]:
        out = [v]
        i = 0
        while i < len(out):
            out.extend(self.children[out[i]])
            i += 1
        return out

    def validate(self) -> None:
        """Raise InternalInvariantViolation unless this is a valid out-branching."""
        g = self.graph
        if self.parent[self.root] is not None or self.level[self.root] != 0:
            raise InternalInvariantViolation("root must have no parent and level 0")
        for v, p in enumerate(self.parent):
            if v == self.root:
                continue
            if p is None:
                raise InternalInvariantViolation(f"non-root vertex {v} has no parent")
            if not g.has_arc(p, v):
                raise InternalInvariantViolation(f"tree arc ({p}, {v}) is not in the digraph")
            if self.level[v] != self.level[p] + 1:
                raise InternalInvariantViolation(f"level of {v} is not parent level + 1")
        # levels strictly decrease along parent links, so every parent chain
        # ends at the root: the tree is spanning and acyclic
        reached = self.subtree(self.root)
        if len(reached) != g.n:
            raise InternalInvariantViolation("tree does not span the digraph")

    def _reparent(self, u: int, v: int) -> Tuple[int, List[int]]:
        old = self.parent[v]
        self.children[old].discard(v)
        self.children[u].add(v)
        self.parent[v] = u
        delta = self.level[u] + 1 - self.level[v]
        moved = self.subtree(v)
        for w in moved:
            self.level[w] += delta
        return delta, moved


def initial_out_branching(D: Digraph, root: int = 0) -> OutBranching:
    """Breadth-first out-branching; neighbours visited in ascending id order."""
    D.check_vertex(root)
    parent: List[Optional[int]] = [None] * D.n
    level = [-1] * D.n
    level[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in D.out_adj[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                parent[v] = u
                queue.append(v)
    for v in range(D.n):
        if level[v] < 0:
            raise Unreachable(v, root)
    return OutBranching(D, root, parent, level)


def _classify(F: OutBranching, u: int, v: int) -> ArcClass:
    if F.parent[v] == u:
        return ArcClass.TREE
    lu, lv = F.level[u], F.level[v]
    if lu < lv:
        return ArcClass.FORWARD
    if lu > lv and F.is_ancestor(v, u):
        return ArcClass.BACK
    return ArcClass.VIOLATING


def classify_arc(F: OutBranching, arc: Arc) -> ArcClass:
    u, v = arc
    if not F.graph.has_arc(u, v):
        raise ArcNotInGraph(arc)
    return _classify(F, u, v)


def find_violating_arc(F: OutBranching) -> Optional[Arc]:
    """First violating arc in ascending (tail, head) order, or None if final."""
    for u, v in F.graph.arc_list:
        if _classify(F, u, v) is ArcClass.VIOLATING:
            return (u, v)
    return None


def elementary_operation(F: OutBranching, arc: Arc) -> OutBranching:
    if classify_arc(F, arc) is not ArcClass.VIOLATING:
        raise NotViolating(f"arc {tuple(arc)} is {classify_arc(F, arc).value}, not violating")
    G = F.copy()
    G._reparent(*arc)
    return G


@dataclass(frozen=True)
class TraceEvent:
    tail: int
    head: int
    delta: int
    level_sum: int

    def __str__(self) -> str:
        return f"op {self.tail} {self.head} delta={self.delta} level_sum={self.level_sum}"


def finalize(
    F: OutBranching,
    *,
    trace: Optional[Callable[[TraceEvent], None]] = None,
    check: bool = False,
) -> Tuple[OutBranching, int]:
    """Apply elementary operations until none applies.

    Always resolves the smallest violating arc in (tail, head) order, which
    is the same sequence :func:`find_violating_arc` would produce, but only
    re-examines arcs touching the subtree that moved. ``check=True`` validates
    the branching and the level-sum increase after every operation.

    Returns the final branching (a new object) and the number of operations.
    """
    F = F.copy()
    D = F.graph
    budget = D.n * (D.n - 1)
    violating = {a for a in D.arc_list if _classify(F, *a) is ArcClass.VIOLATING}
    heap = sorted(violating)
    stamp = [0] * D.n
    ops = 0
    while True:
        while heap and heap[0] not in violating:
            heapq.heappop(heap)
        if not heap:
            break
        u, v = heapq.heappop(heap)
        violating.discard((u, v))
        if ops >= budget:
            raise TerminationBudgetExceeded(f"more than n(n-1)={budget} elementary operations")
        before = F.level_sum if check else 0
        delta, moved = F._reparent(u, v)
        ops += 1
        if check:
            F.validate()
            if F.level_sum <= before or delta < 1:
                raise InternalInvariantViolation(f"level sum did not increase on arc ({u}, {v})")
        if trace is not None:
            trace(TraceEvent(u, v, delta, F.level_sum))
        # Only arcs crossing the boundary of the moved subtree can change
        # class: inside it levels shift uniformly and ancestry is unchanged.
        for w in moved:
            stamp[w] = ops
        for w in moved:
            for x in D.out_adj[w]:
                if stamp[x] != ops:
                    _update(F, violating, heap, w, x)
            for x in D.in_adj[w]:
                if stamp[x] != ops:
                    _update(F, violating, heap, x, w)
    return F, ops


def _update(F: OutBranching, violating: set, heap: list, u: int, v: int) -> None:
    # same decision as _classify; tree arcs always go one level up
    lu, lv = F.level[u], F.level[v]
    if lu < lv or (lu > lv and F.is_ancestor(v, u)):
        violating.discard((u, v))
    elif (u, v) not in violating:
        violating.add((u, v))
        heapq.heappush(heap, (u, v))


@dataclass
class FinalityWitness:
    classes: Dict[Arc, ArcClass]
    violating: List[Arc] = field(default_factory=list)
    same_level: List[Arc] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violating and not self.same_level

    def count(self, cls: ArcClass) -> int:
        return sum(1 for c in self.classes.values() if c is cls)


def verify_final(F: OutBranching) -> FinalityWitness:
    """Classify every arc; the witness passes iff no arc is violating and no
    arc joins two vertices of the same level."""
    classes = {}
    witness = FinalityWitness(classes)
    for u, v in F.graph.arc_list:
        cls = _classify(F, u, v)
        classes[(u, v)] = cls
        if cls is ArcClass.VIOLATING:
            witness.violating.append((u, v))
        if F.level[u] == F.level[v]:
            witness.same_level.append((u, v))
    return witness


@dataclass(frozen=True)
class LevelProfile:
    sets: Tuple[frozenset, ...]
    level_sum: int

    def prefix(self, i: int) -> frozenset:
        """Vertices at level ``<= i``."""
        return frozenset().union(*self.sets[: i + 1])


def level_profile(F: OutBranching) -> LevelProfile:
    buckets: List[set] = [set() for _ in range(F.depth + 1)]
    for v, lv in enumerate(F.level):
        buckets[lv].add(v)
    return LevelProfile(tuple(frozenset(b) for b in buckets), F.level_sum)


def tree_path(F: OutBranching, ancestor: int, descendant: int) -> List[int]:
    F.graph.check_vertex(ancestor)
    F.graph.check_vertex(descendant)
    if not F.is_ancestor(ancestor, descendant):
        raise NotAncestor(f"{ancestor} is not an ancestor of {descendant}")
    path = [descendant]
    while path[-1] != ancestor:
        path.append(F.parent[path[-1]])
    path.reverse()
    return path


def final_out_branching(D: Digraph, root: int = 0, **kwargs) -> Tuple[OutBranching, int]:
    """BFS out-branching from ``root`` driven to a final out-branching."""
    return finalize(initial_out_branching(D, root), **kwargs)
