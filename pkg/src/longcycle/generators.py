"""Eulerian digraph families used by the tests and the benchmark harness.

Randomized families draw from :class:`random.Random` (Mersenne Twister) seeded
with the caller's integer seed, so outputs are reproducible across runs and
platforms for a given Python ``random`` implementation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .digraph import Digraph, eulerian_defect, is_strongly_connected
from .errors import InputError, InternalInvariantViolation, NotStronglyConnected, RetryBudgetExceeded

FAMILIES = ("complete", "circulant", "cycle_union")
RESAMPLE_BUDGET = 1000


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    steps: Optional[Tuple[int, ...]] = None
    k: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family == "circulant" and not self.steps:
            raise InputError("circulant family needs a nonempty step set")
        if self.family == "cycle_union" and self.k is None:
            raise InputError("cycle_union family needs k")
        if self.steps is not None:
            object.__setattr__(self, "steps", tuple(sorted(set(self.steps))))

    def to_header(self) -> str:
        parts = [f"gen family={self.family}", f"n={self.n}"]
        if self.steps is not None:
            parts.append("steps=" + ",".join(map(str, self.steps)))
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        return " ".join(parts)

    @classmethod
    def from_header(cls, text: str) -> "GenSpec":
        """Parse ``gen family=<f> n=<n> [steps=a,b] [k=<k>] [seed=<s>]``."""
        tokens = text.split()
        if not tokens or tokens[0] != "gen":
            raise InputError(f"not a gen header: {text!r}")
        fields = {}
        for token in tokens[1:]:
            key, sep, value = token.partition("=")
            if not sep or key in fields:
                raise InputError(f"malformed gen field {token!r}")
            fields[key] = value
        unknown = set(fields) - {"family", "n", "steps", "k", "seed"}
        if unknown:
            raise InputError(f"unknown gen fields: {', '.join(sorted(unknown))}")
        if "family" not in fields or "n" not in fields:
            raise InputError("gen header needs family= and n=")
        try:
            return cls(
                family=fields["family"],
                n=int(fields["n"]),
                steps=tuple(int(s) for s in fields["steps"].split(",")) if "steps" in fields else None,
                k=int(fields["k"]) if "k" in fields else None,
                seed=int(fields["seed"]) if "seed" in fields else None,
            )
        except ValueError as exc:
            raise InputError(f"malformed gen header: {exc}") from None


def _checked(D: Digraph) -> Digraph:
    reason = eulerian_defect(D)
    if reason is not None:
        raise InternalInvariantViolation(f"generator produced a non-Eulerian digraph: {reason}")
    return D


def gen_complete(n: int) -> Digraph:
    if n < 2:
        raise InputError("complete family needs n >= 2")
    return _checked(Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v]))


def gen_circulant(n: int, steps: Sequence[int]) -> Digraph:
    """Arcs ``i -> (i + s) mod n`` for every step ``s``; d-regular with d = |steps|."""
    steps = sorted(set(steps))
    if not steps:
        raise InputError("circulant step set must be nonempty")
    bad = [s for s in steps if not 1 <= s <= n - 1]
    if bad:
        raise InputError(f"circulant steps must lie in 1..{n - 1}, got {bad}")
    D = Digraph(n, [(i, (i + s) % n) for i in range(n) for s in steps])
    if not is_strongly_connected(D):
        raise NotStronglyConnected(f"circulant n={n} steps={steps} is not strongly connected")
    return _checked(D)


def _arc_avoiding_cycle(n: int, used: set, rng: random.Random) -> Optional[list]:
    # Random walk over unvisited vertices avoiding used arcs; None if it gets stuck.
    # With nothing used this is exactly a uniform random Hamiltonian cycle.
    order = list(range(n))
    rng.shuffle(order)
    cycle = [order[0]]
    remaining = order[1:]
    while remaining:
        here = cycle[-1]
        allowed = [i for i, w in enumerate(remaining) if (here, w) not in used]
        if not allowed:
            return None
        cycle.append(remaining.pop(rng.choice(allowed)))
    if (cycle[-1], cycle[0]) in used:
        return None
    return cycle


def gen_cycle_union(n: int, k: int, seed: int = 0) -> Digraph:
    """Union of ``k`` pairwise arc-disjoint Hamiltonian cycles.

    Each cycle is drawn as a whole; a draw that cannot avoid existing arcs is
    discarded and redrawn, at most ``RESAMPLE_BUDGET`` times per cycle.
    """
    if n < 2:
        raise InputError("cycle_union family needs n >= 2")
    if not 1 <= k <= n - 1:
        raise InputError(f"cycle_union needs 1 <= k <= n-1, got k={k}")
    rng = random.Random(seed)
    used: set = set()
    for index in range(k):
        for _ in range(RESAMPLE_BUDGET):
            cycle = _arc_avoiding_cycle(n, used, rng)
            if cycle is not None:
                break
        else:
            raise RetryBudgetExceeded(
                f"could not place cycle {index + 1} of {k} on n={n} after {RESAMPLE_BUDGET} draws"
            )
        used.update(zip(cycle, cycle[1:] + cycle[:1]))
    return _checked(Digraph(n, sorted(used)))


def generate(spec: GenSpec) -> Digraph:
    if spec.family == "complete":
        return gen_complete(spec.n)
    if spec.family == "circulant":
        return gen_circulant(spec.n, spec.steps)
    return gen_cycle_union(spec.n, spec.k, 0 if spec.seed is None else spec.seed)
