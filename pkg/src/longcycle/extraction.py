"""Certified long cycles and paths from final out-branchings.

In a final out-branching every arc is either forward (to a strictly deeper
level) or back (to an ancestor). If the longest back-arc cycle found has
length ``t``, each vertex sends at most ``t - 1`` back arcs and, via cut
balance on the level prefixes, the forward arcs number at most
``n t (t + 1) / 2``. Since ``m = n d`` this forces ``(2t + 3)^2 >= 8d``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .branching import ArcClass, OutBranching, classify_arc, final_out_branching, level_profile, tree_path, verify_final
from .digraph import Digraph, average_out_degree, cut_counts, require_eulerian
from .errors import BoundViolation, InputError, InternalInvariantViolation, NoBackArc, NotBackArc, NotFinal


def bound_value(d) -> float:
    """sqrt(2d) - 3/2 as a float. Use :func:`satisfies_bound` for decisions."""
    return math.sqrt(2 * Fraction(d)) - 1.5


def satisfies_bound(t: int, d) -> bool:
    """Exact test of ``t >= sqrt(2d) - 3/2`` for ``t >= 0``, as ``(2t+3)^2 >= 8d``."""
    d = Fraction(d)
    return (2 * t + 3) ** 2 * d.denominator >= 8 * d.numerator


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DirectedCycle:
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class DirectedPath:
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    d: Fraction
    t_found: int
    bound: float
    back_arc_count: int
    forward_arc_count: int
    back_bound: int
    forward_bound: int
    inequality_holds: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["d"] = format_rational(self.d)
        return out


@dataclass(frozen=True)
class DepthReport:
    n: int
    m: int
    d: Fraction
    start: int
    depth: int
    bound: float
    max_back_span: int
    inequality_holds: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["d"] = format_rational(self.d)
        return out


def validate_cycle(D: Digraph, cycle) -> bool:
    vs = list(cycle.vertices if isinstance(cycle, DirectedCycle) else cycle)
    if len(vs) < 2 or len(set(vs)) != len(vs):
        return False
    if any(not isinstance(v, int) or not 0 <= v < D.n for v in vs):
        return False
    return all(D.has_arc(a, b) for a, b in zip(vs, vs[1:] + vs[:1]))


def validate_path(D: Digraph, path) -> bool:
    vs = list(path.vertices if isinstance(path, DirectedPath) else path)
    if not vs or len(set(vs)) != len(vs):
        return False
    if any(not isinstance(v, int) or not 0 <= v < D.n for v in vs):
        return False
    return all(D.has_arc(a, b) for a, b in zip(vs, vs[1:]))


def cycle_from_back_arc(D: Digraph, F: OutBranching, arc) -> DirectedCycle:
    """Close the tree path from ``v`` down to ``u`` with the back arc ``uv``."""
    if classify_arc(F, arc) is not ArcClass.BACK:
        raise NotBackArc(f"arc {tuple(arc)} is not a back arc")
    u, v = arc
    return DirectedCycle(tuple(tree_path(F, v, u)))


def back_arcs(F: OutBranching) -> List[Tuple[int, int]]:
    return [a for a, cls in verify_final(F).classes.items() if cls is ArcClass.BACK]


def longest_back_arc(F: OutBranching) -> Optional[Tuple[int, int]]:
    """Back arc of maximum span; ties go to the smallest (tail, head)."""
    best, best_span = None, -1
    for u, v in back_arcs(F):
        span = F.level[u] - F.level[v]
        if span > best_span:
            best, best_span = (u, v), span
    return best


def level_cut_chain(D: Digraph, F: OutBranching, t: int) -> Tuple[int, int, int]:
    """Return ``(forward weighted by level jump, sum of level-prefix out-cuts,
    sum over prefixes of the back-arc capacity bound)``.

    The first two are equal on a final out-branching; the third dominates the
    second whenever ``t`` is at least the longest back-arc cycle.
    """
    profile = level_profile(F)
    sizes = [len(s) for s in profile.sets]
    weighted = sum(
        F.level[v] - F.level[u]
        for u, v in D.arc_list
        if F.level[u] < F.level[v]
    )
    cut_sum = 0
    capacity = 0
    for i in range(len(sizes)):
        cut_sum += cut_counts(D, profile.prefix(i))[0]
        capacity += sum((t + 1 - j) * sizes[i + j] for j in range(1, t + 1) if i + j < len(sizes))
    return weighted, cut_sum, capacity


def counting_report(D: Digraph, F: OutBranching, t: int) -> BoundReport:
    """Count back and forward arcs of a final out-branching against ``t``.

    ``t`` must be at least the longest back-arc cycle of ``F`` (for example
    the extracted length, or the true circumference). All counting bounds
    are then checked exactly; a failure raises InternalInvariantViolation.
    """
    require_eulerian(D)
    witness = verify_final(F)
    if not witness.passed:
        raise NotFinal(f"out-branching has {len(witness.violating)} violating arcs")
    best = longest_back_arc(F)
    min_t = 1 if best is None else F.level[best[0]] - F.level[best[1]] + 1
    if t < min_t:
        raise InputError(f"t={t} is below the longest back-arc cycle length {min_t}")
    n, m = D.n, D.m
    back = witness.count(ArcClass.BACK)
    forward = witness.count(ArcClass.FORWARD) + witness.count(ArcClass.TREE)
    if back + forward != m:
        raise InternalInvariantViolation("final out-branching arcs are not all back or forward")
    back_bound = n * (t - 1)
    forward_bound = n * t * (t + 1) // 2
    weighted, cut_sum, capacity = level_cut_chain(D, F, t)
    if weighted != cut_sum or not forward <= cut_sum <= capacity <= forward_bound:
        raise InternalInvariantViolation(
            f"level-cut chain broken: forward={forward} weighted={weighted} "
            f"cuts={cut_sum} capacity={capacity} bound={forward_bound}"
        )
    if back > back_bound:
        raise InternalInvariantViolation(f"{back} back arcs exceed n(t-1)={back_bound}")
    d = average_out_degree(D)
    return BoundReport(
        n=n,
        m=m,
        d=d,
        t_found=t,
        bound=bound_value(d),
        back_arc_count=back,
        forward_arc_count=forward,
        back_bound=back_bound,
        forward_bound=forward_bound,
        inequality_holds=m <= back_bound + forward_bound,
    )


def certified_long_cycle(D: Digraph, root: int = 0) -> Tuple[DirectedCycle, BoundReport]:
    """Longest back-arc cycle of the final out-branching grown from ``root``.

    The returned length always satisfies ``(2t+3)^2 >= 8d``; anything else
    raises BoundViolation.
    """
    require_eulerian(D)
    if D.n < 2:
        raise InputError("cycle extraction needs at least 2 vertices")
    D.check_vertex(root)
    F, _ = final_out_branching(D, root)
    return cycle_from_final(D, F)


def cycle_from_final(D: Digraph, F: OutBranching) -> Tuple[DirectedCycle, BoundReport]:
    """Certified cycle and report from an already final out-branching."""
    best = longest_back_arc(F)
    if best is None:
        raise NoBackArc(f"final out-branching rooted at {F.root} has no back arc")
    cycle = cycle_from_back_arc(D, F, best)
    if not validate_cycle(D, cycle):
        raise InternalInvariantViolation(f"extracted cycle {cycle.vertices} is invalid")
    report = counting_report(D, F, cycle.length)
    if not report.inequality_holds or not satisfies_bound(cycle.length, report.d):
        raise BoundViolation(f"cycle length {cycle.length} below sqrt(2d)-3/2 for d={report.d}")
    return cycle, report


def certified_long_path(D: Digraph, start: int = 0) -> Tuple[DirectedPath, DepthReport]:
    """Root-to-deepest-vertex path of the final out-branching grown from ``start``.

    Back-arc spans and ancestor counts are both bounded by the depth ``h``,
    so ``nd <= n h + n h (h + 1) / 2`` and ``h >= sqrt(2d) - 3/2``. A path
    shorter than that is reported as a BoundViolation, never truncated.
    """
    require_eulerian(D)
    D.check_vertex(start)
    F, _ = final_out_branching(D, start)
    return path_from_final(D, F)


def path_from_final(D: Digraph, F: OutBranching) -> Tuple[DirectedPath, DepthReport]:
    depth = F.depth
    deepest = F.level.index(depth)
    path = DirectedPath(tuple(tree_path(F, F.root, deepest)))
    if not validate_path(D, path):
        raise InternalInvariantViolation(f"extracted path {path.vertices} is invalid")
    best = longest_back_arc(F)
    span = 0 if best is None else F.level[best[0]] - F.level[best[1]]
    d = average_out_degree(D)
    report = DepthReport(
        n=D.n,
        m=D.m,
        d=d,
        start=F.root,
        depth=depth,
        bound=bound_value(d),
        max_back_span=span,
        inequality_holds=2 * D.m <= D.n * depth * (depth + 3),
    )
    if not report.inequality_holds or not satisfies_bound(path.length, d):
        raise BoundViolation(
            f"path from {F.root} has length {path.length}, below sqrt(2d)-3/2 for d={d}"
        )
    return path, report


def best_over_roots(
    D: Digraph, roots: Optional[Iterable[int]] = None
) -> Tuple[DirectedCycle, Dict[int, int]]:
    """Run :func:`certified_long_cycle` from each root and keep the longest;
    ties go to the lowest root. Returns the cycle and the per-root lengths."""
    require_eulerian(D)
    roots = sorted(set(range(D.n) if roots is None else roots))
    if not roots:
        raise InputError("need at least one root")
    best: Optional[DirectedCycle] = None
    lengths = {}
    for r in roots:
        cycle, _ = certified_long_cycle(D, r)
        lengths[r] = cycle.length
        if best is None or cycle.length > best.length:
            best = cycle
    return best, lengths
