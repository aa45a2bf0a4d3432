import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from longcycle import (
    ArcClass,
    build_digraph,
    classify_arc,
    elementary_operation,
    final_out_branching,
    finalize,
    find_violating_arc,
    gen_complete,
    initial_out_branching,
    level_profile,
    tree_path,
    verify_final,
)
from longcycle.branching import OutBranching
from longcycle.errors import (
    ArcNotInGraph,
    InternalInvariantViolation,
    NotAncestor,
    NotViolating,
    TerminationBudgetExceeded,
    Unreachable,
)

from .strategies import eulerian_digraphs


def reference_finalize(F):
    """Rescan from scratch after every operation."""
    ops = []
    while True:
        arc = find_violating_arc(F)
        if arc is None:
            return F, ops
        F = elementary_operation(F, arc)
        F.validate()
        ops.append(arc)


def test_initial_bfs_triangle(c3):
    F = initial_out_branching(c3, 0)
    assert F.tree_arcs() == [(0, 1), (1, 2)]
    assert F.level == [0, 1, 2]


def test_initial_bfs_four(four):
    F = initial_out_branching(four, 0)
    assert F.tree_arcs() == [(0, 1), (0, 2), (2, 3)]
    assert F.level == [0, 1, 1, 2]
    F.validate()


def test_initial_unreachable():
    with pytest.raises(Unreachable) as info:
        initial_out_branching(build_digraph(3, [(0, 1), (1, 2)]), 2)
    assert info.value.vertex == 0


def test_classify_examples(c3, four):
    assert classify_arc(initial_out_branching(c3, 0), (2, 0)) is ArcClass.BACK
    F = initial_out_branching(four, 0)
    assert classify_arc(F, (1, 2)) is ArcClass.VIOLATING
    assert classify_arc(F, (0, 2)) is ArcClass.TREE
    G = elementary_operation(F, (1, 2))
    assert classify_arc(G, (0, 2)) is ArcClass.FORWARD
    with pytest.raises(ArcNotInGraph):
        classify_arc(F, (1, 3))


def test_find_violating_examples(c3, four):
    assert find_violating_arc(initial_out_branching(c3, 0)) is None
    assert find_violating_arc(initial_out_branching(four, 0)) == (1, 2)
    assert find_violating_arc(initial_out_branching(gen_complete(3), 0)) == (1, 2)


def test_elementary_operation_four(four):
    F = initial_out_branching(four, 0)
    assert F.level_sum == 4
    G = elementary_operation(F, (1, 2))
    assert G.tree_arcs() == [(0, 1), (1, 2), (2, 3)]
    assert G.level == [0, 1, 2, 3]
    assert G.level_sum == 6
    # the input is untouched
    assert F.level == [0, 1, 1, 2]


def test_elementary_operation_k3():
    G = elementary_operation(initial_out_branching(gen_complete(3), 0), (1, 2))
    assert G.tree_arcs() == [(0, 1), (1, 2)]
    assert G.level == [0, 1, 2]


def test_elementary_operation_rejects_back_arc(c3):
    with pytest.raises(NotViolating):
        elementary_operation(initial_out_branching(c3, 0), (2, 0))


def test_finalize_examples(c3, four, k4):
    F, ops = finalize(initial_out_branching(c3, 0))
    assert ops == 0 and F.tree_arcs() == [(0, 1), (1, 2)]
    F, ops = finalize(initial_out_branching(four, 0))
    assert ops == 1 and F.tree_arcs() == [(0, 1), (1, 2), (2, 3)]
    F, ops = finalize(initial_out_branching(k4, 0))
    assert ops == 3 and F.tree_arcs() == [(0, 1), (1, 2), (2, 3)]


def test_finalize_trace_format(k4):
    events = []
    finalize(initial_out_branching(k4, 0), trace=events.append, check=True)
    assert [str(e) for e in events] == [
        "op 1 2 delta=1 level_sum=4",
        "op 1 3 delta=1 level_sum=5",
        "op 2 3 delta=1 level_sum=6",
    ]


def test_finalize_budget_guard(monkeypatch, k4):
    import longcycle.branching as mod

    # a reparent that never changes anything would loop forever without the guard
    monkeypatch.setattr(mod.OutBranching, "_reparent", lambda self, u, v: (0, [v]))
    with pytest.raises(TerminationBudgetExceeded):
        mod.finalize(initial_out_branching(k4, 0))


def test_verify_final_examples(c3, four):
    F, _ = finalize(initial_out_branching(four, 0))
    w = verify_final(F)
    assert w.passed
    assert w.classes[(2, 0)] is ArcClass.BACK
    assert w.classes[(3, 0)] is ArcClass.BACK
    assert w.classes[(0, 2)] is ArcClass.FORWARD
    assert w.count(ArcClass.TREE) == 3
    w = verify_final(finalize(initial_out_branching(c3, 0))[0])
    assert w.passed and w.count(ArcClass.BACK) == 1
    w = verify_final(initial_out_branching(four, 0))
    assert not w.passed
    assert w.violating == [(1, 2)] and w.same_level == [(1, 2)]


def test_level_profile_examples(c3, four, k4):
    p = level_profile(finalize(initial_out_branching(c3, 0))[0])
    assert p.sets == ({0}, {1}, {2}) and p.level_sum == 3
    p = level_profile(finalize(initial_out_branching(four, 0))[0])
    assert p.sets == ({0}, {1}, {2}, {3}) and p.level_sum == 6
    p = level_profile(initial_out_branching(k4, 0))
    assert p.sets == ({0}, {1, 2, 3}) and p.level_sum == 3
    assert p.prefix(1) == {0, 1, 2, 3}


def test_tree_path_examples(c3, four):
    F = finalize(initial_out_branching(c3, 0))[0]
    assert tree_path(F, 0, 2) == [0, 1, 2]
    assert tree_path(F, 1, 1) == [1]
    G = finalize(initial_out_branching(four, 0))[0]
    assert tree_path(G, 1, 3) == [1, 2, 3]
    with pytest.raises(NotAncestor):
        tree_path(G, 3, 1)


def test_validate_catches_broken_tree(four):
    F = initial_out_branching(four, 0)
    broken = OutBranching(four, 0, [None, 0, 0, 2], [0, 1, 1, 3])
    with pytest.raises(InternalInvariantViolation):
        broken.validate()
    cyclic = OutBranching(four, 0, [None, 2, 1, 2], [0, 2, 1, 2])
    with pytest.raises(InternalInvariantViolation):
        cyclic.validate()
    F.validate()


@settings(max_examples=150, deadline=None)
@given(eulerian_digraphs(max_n=9), st.data())
def test_incremental_finalize_matches_reference(D, data):
    root = data.draw(st.integers(0, D.n - 1))
    start = initial_out_branching(D, root)
    events = []
    F, ops = finalize(start, trace=events.append, check=True)
    G, ref_ops = reference_finalize(start)
    assert F == G
    assert F.level == G.level
    assert [(e.tail, e.head) for e in events] == ref_ops
    assert ops == len(ref_ops)


@settings(max_examples=150, deadline=None)
@given(eulerian_digraphs(max_n=12), st.data())
def test_final_branching_properties(D, data):
    root = data.draw(st.integers(0, D.n - 1))
    events = []
    F, ops = final_out_branching(D, root, trace=events.append, check=True)
    F.validate()
    assert ops <= D.n * (D.n - 1)
    sums = [initial_out_branching(D, root).level_sum] + [e.level_sum for e in events]
    assert all(b > a for a, b in zip(sums, sums[1:]))
    # finality: each arc is forward (tree arcs included) xor to a proper ancestor
    for u, v in D.arc_list:
        forward = F.level[u] < F.level[v]
        back = F.level[u] > F.level[v] and F.is_ancestor(v, u)
        assert forward != back
    assert verify_final(F).passed
    # idempotent and deterministic
    assert finalize(F)[1] == 0
    assert final_out_branching(D, root)[0] == F


@pytest.mark.parametrize("seed", range(3))
def test_incremental_finalize_matches_reference_larger(seed):
    from longcycle import gen_cycle_union

    D = gen_cycle_union(24, 5, seed)
    for root in (0, 7, 23):
        start = initial_out_branching(D, root)
        assert finalize(start)[0] == reference_finalize(start)[0]
