"""permweaver: sparse amplitude-permutation synthesis and sparse state
preparation for qubit registers.

The package decomposes a sparsely specified basis-state permutation into
multi-controlled X blocks (greedy sub-hypercube swaps), lowers those blocks
to the {x, cx, h, t, tdg} gate set with one shared work wire, and builds on
that machinery three sparse state-preparation pipelines (cluster, pairwise,
dense) plus a clustering benchmark.
"""

from .bench import (
    CSV_COLUMNS,
    BenchRow,
    DatasetConfig,
    csv_text,
    gen_clustered_state,
    run_benchmark,
    write_csv,
)
from .circuit import (
    Circuit,
    Gate,
    cx_count,
    depth,
    export_qasm,
    peephole_simplify,
    stats,
)
from .clusterperm import (
    CoverNode,
    SplitTree,
    cluster_permutation,
    cover_with_subcubes,
    find_initial_subcube,
    recover_permutation,
)
from .core import (
    PermutationSpec,
    SparseState,
    capacity,
    conforms,
    dump_spec,
    dump_state,
    enumerate_conforming,
    fixed_dims,
    hamming,
    load_spec,
    load_state,
    spanned_dims,
)
from .diffmatrix import DifferenceMatrix
from .mcx import lower_circuit, mcx_cx_cost, mcx_to_cx
from .sim import (
    fidelity,
    simulate_permutation,
    state_of_label,
    statevector,
    unitary,
)
from .stateprep import (
    cluster_swaps_prepare,
    dense_all_prepare,
    dense_prepare,
    pairwise_decompose,
    pairwise_prepare,
    prepare,
)
from .synth import (
    Block,
    GraphEdge,
    SubcubeGraph,
    SynthStats,
    best_edge,
    block_cx_cost,
    decompose_permutation,
    decompose_with_stats,
    emit_swap_block,
    form_subcube_graph,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRow",
    "Block",
    "CSV_COLUMNS",
    "Circuit",
    "CoverNode",
    "DatasetConfig",
    "DifferenceMatrix",
    "Gate",
    "GraphEdge",
    "PermutationSpec",
    "SparseState",
    "SplitTree",
    "SubcubeGraph",
    "SynthStats",
    "best_edge",
    "block_cx_cost",
    "capacity",
    "cluster_permutation",
    "cluster_swaps_prepare",
    "conforms",
    "cover_with_subcubes",
    "csv_text",
    "cx_count",
    "decompose_permutation",
    "decompose_with_stats",
    "dense_all_prepare",
    "dense_prepare",
    "depth",
    "dump_spec",
    "dump_state",
    "emit_swap_block",
    "enumerate_conforming",
    "export_qasm",
    "fidelity",
    "find_initial_subcube",
    "fixed_dims",
    "form_subcube_graph",
    "gen_clustered_state",
    "hamming",
    "load_spec",
    "load_state",
    "lower_circuit",
    "mcx_cx_cost",
    "mcx_to_cx",
    "pairwise_decompose",
    "pairwise_prepare",
    "peephole_simplify",
    "prepare",
    "recover_permutation",
    "run_benchmark",
    "simulate_permutation",
    "spanned_dims",
    "state_of_label",
    "statevector",
    "stats",
    "unitary",
    "write_csv",
    "__version__",
]
