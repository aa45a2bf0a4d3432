"""Exponential-time ground truth for small digraphs.

Nothing here uses out-branchings; the searches are plain depth-first
enumeration over simple cycles and paths, so they can referee the certified
extraction.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from .branching import final_out_branching, finalize, level_profile, verify_final
from .digraph import Digraph, check_cut_balance, eulerian_defect
from .errors import BudgetExceeded, InputError, LongCycleError
from .extraction import (
    counting_report,
    cycle_from_final,
    path_from_final,
    satisfies_bound,
    validate_cycle,
    validate_path,
)

MAX_BRUTE_N = 14
MAX_SWEEP_N = 5


class _Search:
    def __init__(self, D: Digraph, node_budget: Optional[int]):
        if D.n > MAX_BRUTE_N:
            raise BudgetExceeded(f"brute force limited to n <= {MAX_BRUTE_N}, got n={D.n}")
        self.out_masks = [sum(1 << v for v in D.out_adj[u]) for u in range(D.n)]
        self.out = D.out_adj
        self.n = D.n
        self.budget = node_budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"search expanded more than {self.budget} nodes")

    def circumference(self) -> int:
        best = 0
        n = self.n
        for s in range(n):
            # cycles whose smallest vertex is s; at most n - s vertices remain
            if n - s <= best:
                break
            allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
            best = self._cycle_from(s, s, 1, allowed, best)
            if best == n:
                break
        return best

    def _cycle_from(self, s: int, u: int, length: int, free: int, best: int) -> int:
        self.tick()
        if length > best and (self.out_masks[u] >> s) & 1:
            best = length
        if length + bin(free).count("1") <= best:
            return best
        for v in self.out[u]:
            if (free >> v) & 1:
                best = self._cycle_from(s, v, length + 1, free & ~(1 << v), best)
                if best == self.n:
                    break
        return best

    def longest_path_from(self, start: int) -> int:
        full = (1 << self.n) - 1
        return self._path_from(start, 0, full & ~(1 << start), 0)

    def _path_from(self, u: int, length: int, free: int, best: int) -> int:
        self.tick()
        best = max(best, length)
        if length + bin(free).count("1") <= best:
            return best
        for v in self.out[u]:
            if (free >> v) & 1:
                best = self._path_from(v, length + 1, free & ~(1 << v), best)
                if best == self.n - 1:
                    break
        return best


def brute_circumference(D: Digraph, node_budget: Optional[int] = None) -> int:
    """Length of the longest directed cycle, 0 if acyclic."""
    return _Search(D, node_budget).circumference()


def brute_longest_path_from(D: Digraph, v: int, node_budget: Optional[int] = None) -> int:
    """Arc count of the longest simple directed path starting at ``v``."""
    D.check_vertex(v)
    return _Search(D, node_budget).longest_path_from(v)


@dataclass(frozen=True)
class OracleResult:
    circumference: int
    longest_path_from: List[int]
    node_budget: int

    def to_dict(self) -> dict:
        return asdict(self)


def run_oracle(D: Digraph, node_budget: Optional[int] = None) -> OracleResult:
    """Circumference plus the longest path from every vertex.

    ``node_budget`` caps the combined number of search nodes; the result
    records how many were actually expanded.
    """
    search = _Search(D, node_budget)
    t = search.circumference()
    paths = [search.longest_path_from(v) for v in range(D.n)]
    return OracleResult(t, paths, search.nodes)


def check_instance(D: Digraph) -> List[str]:
    """Run every certified extraction on an Eulerian ``D`` against the oracle.

    Returns a list of failure descriptions (empty when everything holds).
    Checks: both guarantees from every root, finality and level
    independence, cut balance on each level prefix, finalize termination,
    idempotence, the counting bounds against the true circumference, oracle
    dominance and validity of every cycle and path.
    """
    failures = []
    tag = f"n={D.n} arcs={list(D.arc_list)}"
    if D.n < 2:
        return failures
    truth = run_oracle(D)
    t_true = truth.circumference
    for r in range(D.n):
        try:
            F, ops = final_out_branching(D, r, check=True)
            if ops > D.n * (D.n - 1):
                failures.append(f"{tag} root={r}: {ops} operations exceed n(n-1)")
            if finalize(F)[1] != 0:
                failures.append(f"{tag} root={r}: finalize not idempotent")
            if final_out_branching(D, r)[0] != F:
                failures.append(f"{tag} root={r}: finalize not deterministic")
            if not verify_final(F).passed:
                failures.append(f"{tag} root={r}: final branching has violating arcs")
            profile = level_profile(F)
            for i in range(len(profile.sets)):
                check_cut_balance(D, profile.prefix(i))
            cycle, report = cycle_from_final(D, F)
            path, depth_report = path_from_final(D, F)
            if not validate_cycle(D, cycle) or not validate_path(D, path):
                failures.append(f"{tag} root={r}: invalid cycle or path")
            if not satisfies_bound(cycle.length, report.d):
                failures.append(f"{tag} root={r}: cycle {cycle.length} below bound")
            if not satisfies_bound(path.length, report.d):
                failures.append(f"{tag} root={r}: path {path.length} below bound")
            if cycle.length > t_true:
                failures.append(f"{tag} root={r}: cycle {cycle.length} beats circumference {t_true}")
            if path.length > truth.longest_path_from[r]:
                failures.append(f"{tag} root={r}: path {path.length} beats oracle")
            against_truth = counting_report(D, F, t_true)
            if not against_truth.inequality_holds:
                failures.append(f"{tag} root={r}: nd exceeds n(t-1)+nt(t+1)/2")
            if (
                against_truth.back_arc_count > against_truth.back_bound
                or against_truth.forward_arc_count > against_truth.forward_bound
            ):
                failures.append(f"{tag} root={r}: counting bounds fail at t={t_true}")
        except LongCycleError as exc:
            failures.append(f"{tag} root={r}: {type(exc).__name__}: {exc}")
    return failures


@dataclass
class SweepSummary:
    n: int
    digraphs_enumerated: int = 0
    degree_balanced: int = 0
    eulerian: int = 0
    instances_checked: int = 0
    failures: List[str] = field(default_factory=list)

    def merge(self, other: "SweepSummary") -> None:
        self.eulerian += other.eulerian
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "digraphs_enumerated": self.digraphs_enumerated,
            "degree_balanced": self.degree_balanced,
            "eulerian": self.eulerian,
            "instances_checked": self.instances_checked,
            "failures": len(self.failures),
            "failure_details": list(self.failures),
        }


def all_ordered_pairs(n: int) -> List[tuple]:
    return [(u, v) for u, v in itertools.product(range(n), repeat=2) if u != v]


def balanced_masks(n: int) -> np.ndarray:
    """Bitmasks (over :func:`all_ordered_pairs`) of every degree-balanced digraph."""
    pairs = all_ordered_pairs(n)
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    imbalance = np.zeros((n, masks.size), dtype=np.int8)
    for bit, (u, v) in enumerate(pairs):
        present = ((masks >> bit) & 1).astype(np.int8)
        imbalance[u] += present
        imbalance[v] -= present
    return masks[~imbalance.any(axis=0)]


def _sweep_chunk(n: int, masks: List[int]) -> SweepSummary:
    pairs = all_ordered_pairs(n)
    summary = SweepSummary(n)
    for mask in masks:
        D = Digraph(n, [pairs[b] for b in range(len(pairs)) if (mask >> b) & 1])
        if eulerian_defect(D) is not None:
            continue
        summary.eulerian += 1
        if n < 2:
            continue
        summary.instances_checked += 1
        summary.failures.extend(check_instance(D))
    return summary


def exhaustive_small_sweep(n: int, workers: int = 1) -> SweepSummary:
    """Check every labeled Eulerian digraph on ``n <= 5`` vertices.

    All ``2^(n(n-1))`` arc subsets are filtered for degree balance, then
    strong connectivity; each survivor goes through :func:`check_instance`.
    Single-vertex digraphs are counted but have no cycle to extract.
    """
    if not 1 <= n <= MAX_SWEEP_N:
        raise InputError(f"exhaustive sweep supports 1 <= n <= {MAX_SWEEP_N}, got {n}")
    masks = [int(x) for x in balanced_masks(n)]
    summary = SweepSummary(n, digraphs_enumerated=1 << (n * (n - 1)), degree_balanced=len(masks))
    if workers <= 1:
        summary.merge(_sweep_chunk(n, masks))
        return summary
    chunks = [masks[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sweep_chunk, [n] * workers, chunks):
            summary.merge(part)
    # chunk order interleaves instances; keep the report deterministic
    summary.failures.sort()
    return summary
