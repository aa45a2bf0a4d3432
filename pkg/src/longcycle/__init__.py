"""Certified long cycles and paths in Eulerian digraphs via final out-branchings."""

from .branching import (
    ArcClass,
    FinalityWitness,
    LevelProfile,
    OutBranching,
    TraceEvent,
    classify_arc,
    elementary_operation,
    final_out_branching,
    finalize,
    find_violating_arc,
    initial_out_branching,
    level_profile,
    tree_path,
    verify_final,
)
from .digraph import (
    CutBalanceWitness,
    Digraph,
    average_out_degree,
    build_digraph,
    check_cut_balance,
    cut_counts,
    degrees,
    eulerian_defect,
    is_eulerian,
)
from .extraction import (
    BoundReport,
    DepthReport,
    DirectedCycle,
    DirectedPath,
    best_over_roots,
    bound_value,
    certified_long_cycle,
    certified_long_path,
    counting_report,
    cycle_from_back_arc,
    cycle_from_final,
    path_from_final,
    satisfies_bound,
    validate_cycle,
    validate_path,
)
from .generators import GenSpec, gen_circulant, gen_complete, gen_cycle_union, generate
from .graphio import format_graph, parse_graph, read_graph, write_graph
from .oracle import (
    OracleResult,
    SweepSummary,
    brute_circumference,
    brute_longest_path_from,
    exhaustive_small_sweep,
    run_oracle,
)

__version__ = "0.1.0"
