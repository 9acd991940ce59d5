"""Greedy decomposition of sparse basis-state permutations into sub-hypercube
swap blocks.

A *swap block* exchanges two parallel sub-hypercubes (patterns with identical
wildcard positions) by flipping every differing position, and acts as the
identity elsewhere.  It costs one multi-controlled X conjugated by CX gates.
Synthesis walks a difference matrix: repeatedly pick the most profitable swap
— judged by errors fixed per CX spent — apply it to the matrix, and emit the
block, until every row has reached its destination.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate
from .core import PermutationSpec, validate_pattern
from .diffmatrix import DifferenceMatrix
from .mcx import mcx_cx_cost

__all__ = [
    "Block",
    "GraphEdge",
    "GraphNode",
    "SubcubeGraph",
    "SynthStats",
    "best_edge",
    "block_cx_cost",
    "decompose_permutation",
    "decompose_with_stats",
    "emit_swap_block",
    "form_subcube_graph",
]

logger = logging.getLogger(__name__)


# --- swap blocks ------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One sub-hypercube swap: flip every position in ``flip_set`` for labels
    conforming to either pattern.  Realized as a multi-controlled X on
    ``target_dim`` conjugated by CX fan-out onto the other flipped positions;
    ``controls`` sit on every remaining fixed position, with polarities taken
    from ``shc1`` as seen through the conjugation."""

    shc1: str
    shc2: str
    flip_set: tuple[int, ...]
    target_dim: int
    controls: tuple[tuple[int, int], ...]


def emit_swap_block(
    shc1: str, shc2: str, target_dim: int | None = None
) -> tuple[Block, Circuit]:
    """Build the swap block exchanging the labels of ``shc1`` with the
    corresponding labels of ``shc2`` (matching wildcard bits) and fixing all
    other labels.

    The circuit is a CX fan-out from ``target_dim`` (default: the first
    flipped position) onto the remaining flipped positions, one
    multi-controlled X, and the fan-out undone.  A control on a flipped
    position takes its polarity relative to the target's bit (the conjugation
    XORs the target's value into those positions); other fixed positions keep
    their pattern value.
    """
    n = len(shc1)
    validate_pattern(shc1, n)
    validate_pattern(shc2, len(shc2))
    if len(shc2) != n:
        raise ValueError("patterns must have equal length")
    flips: list[int] = []
    fixed: list[int] = []
    for j, (a, b) in enumerate(zip(shc1, shc2)):
        if (a == "*") != (b == "*"):
            raise ValueError(f"patterns {shc1!r} and {shc2!r} span different positions")
        if a == "*":
            continue
        fixed.append(j)
        if a != b:
            flips.append(j)
    if not flips:
        raise ValueError("patterns are identical; nothing to swap")
    if target_dim is None:
        target_dim = flips[0]
    elif target_dim not in flips:
        raise ValueError(f"target position {target_dim} is not one of the flipped positions")
    t_bit = int(shc1[target_dim])
    fan = [j for j in flips if j != target_dim]
    controls = tuple(
        (q, int(shc1[q]) ^ t_bit if q in fan else int(shc1[q]))
        for q in fixed
        if q != target_dim
    )
    block = Block(
        shc1=shc1,
        shc2=shc2,
        flip_set=tuple(flips),
        target_dim=target_dim,
        controls=controls,
    )
    circ = Circuit(n)
    circ.extend(Gate.cx(target_dim, j) for j in fan)
    circ.append(Gate.mcx(controls, target_dim))
    circ.extend(Gate.cx(target_dim, j) for j in reversed(fan))
    return block, circ


def _swap_cost(n_fixed: int, n_flip: int) -> int:
    """CX cost of a lowered swap block: the CX conjugation plus the expanded
    multi-controlled X (one control per non-target fixed position)."""
    return 2 * (n_flip - 1) + mcx_cx_cost(n_fixed - 1)


def block_cx_cost(block: Block) -> int:
    return 2 * (len(block.flip_set) - 1) + mcx_cx_cost(len(block.controls))


# --- sub-hypercube graphs ---------------------------------------------------


@dataclass(eq=False)
class GraphNode:
    """Rows of the difference matrix sharing one bit pattern on the graph's
    fixed positions.  ``dim_sums[d]`` counts errors minus agreements at fixed
    position d over the node's rows."""

    pattern: str
    rows: np.ndarray
    dim_sums: dict[int, int]
    labels_packed: np.ndarray
    _adjacency: float | None = None

    @property
    def adjacency(self) -> float:
        # Mean number of Hamming-distance-1 partners among the node's current
        # labels; computed lazily, only tiebreaks need it.
        if self._adjacency is None:
            packed = self.labels_packed
            m = len(packed)
            hits = 0
            for i in range(m):
                d = packed[i] ^ packed[i + 1:]
                hits += int(np.count_nonzero((d & (d - 1)) == 0))
            self._adjacency = 2.0 * hits / m if m else 0.0
        return self._adjacency


@dataclass(eq=False)
class GraphEdge:
    """A candidate swap: flip ``flip_dims`` of the source node's pattern.

    ``forward`` is the net error reduction over the source rows, ``backward``
    the same over the destination node's rows (zero when empty).  The score is
    reduction per CX of the realizing block.
    """

    fixed_dims: tuple[int, ...]
    src: GraphNode
    dst: GraphNode | None
    flip_dims: tuple[int, ...]
    forward: int
    backward: int
    cost: int

    @property
    def raw(self) -> int:
        return self.forward + self.backward

    @property
    def weight(self) -> float:
        return self.raw / max(self.cost, 1)

    @property
    def source_pattern(self) -> str:
        return self.src.pattern

    @property
    def dest_pattern(self) -> str:
        chars = list(self.src.pattern)
        for j in self.flip_dims:
            chars[j] = "01"[1 - int(chars[j])]
        return "".join(chars)


@dataclass(eq=False)
class SubcubeGraph:
    fixed_dims: tuple[int, ...]
    nodes: dict[str, GraphNode]
    edges: list[GraphEdge]


def form_subcube_graph(dm: DifferenceMatrix, fixed_dims: tuple[int, ...]) -> SubcubeGraph:
    """Project current labels onto ``fixed_dims``; one node per occupied
    projection, with outgoing edges for each profitable prefix of its
    error-ordered positions."""
    fd = tuple(sorted(set(fixed_dims)))
    if not fd:
        raise ValueError("need at least one fixed position")
    if fd[0] < 0 or fd[-1] >= dm.n:
        raise ValueError(f"fixed positions {fd} out of range for n={dm.n}")
    cols = np.array(fd, dtype=np.intp)
    k = len(fd)
    # Bits at the fixed positions packed into one integer per row, most
    # significant first, so unique()'s sort order matches lexicographic order
    # over the columns.
    key_powers = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    keys = dm.cur[:, cols].astype(np.int64) @ key_powers
    uniq, inverse = np.unique(keys, return_inverse=True)
    signs = np.where(dm.err[:, cols], 1, -1).astype(np.int64)
    sums = np.empty((len(uniq), k), dtype=np.int64)
    for j in range(k):
        sums[:, j] = np.bincount(inverse, weights=signs[:, j], minlength=len(uniq))
    order = np.argsort(inverse, kind="stable")
    group_ends = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    packed_all = dm.packed_current()

    nodes: dict[str, GraphNode] = {}
    for g, key in enumerate(uniq):
        chars = ["*"] * dm.n
        for j, d in enumerate(fd):
            chars[d] = "01"[(int(key) >> (k - 1 - j)) & 1]
        pattern = "".join(chars)
        rows = order[group_ends[g] : group_ends[g + 1]]
        nodes[pattern] = GraphNode(
            pattern=pattern,
            rows=rows,
            dim_sums={d: int(sums[g, j]) for j, d in enumerate(fd)},
            labels_packed=packed_all[rows],
        )

    edges: list[GraphEdge] = []
    for pattern, node in nodes.items():
        # Positions ordered by how many errors flipping each would fix; a
        # prefix of this order defines each candidate flip set.  Edges keep
        # appearing while the cumulative gain strictly grows, and the first
        # edge is always added even at zero or negative gain.
        by_gain = sorted(fd, key=lambda d: (-node.dim_sums[d], d))
        flips: list[int] = []
        cum = 0
        for rank, d in enumerate(by_gain):
            gain = node.dim_sums[d]
            if rank > 0 and gain <= 0:
                break
            flips.append(d)
            cum += gain
            flip_dims = tuple(sorted(flips))
            chars = list(pattern)
            for j in flip_dims:
                chars[j] = "01"[1 - int(chars[j])]
            dst = nodes.get("".join(chars))
            backward = sum(dst.dim_sums[j] for j in flip_dims) if dst is not None else 0
            edges.append(
                GraphEdge(
                    fixed_dims=fd,
                    src=node,
                    dst=dst,
                    flip_dims=flip_dims,
                    forward=cum,
                    backward=backward,
                    cost=_swap_cost(len(fd), len(flip_dims)),
                )
            )
    return SubcubeGraph(fixed_dims=fd, nodes=nodes, edges=edges)


def _pick(edges: list[GraphEdge]) -> GraphEdge | None:
    """Best edge: highest reduction-per-CX, then highest forward reduction,
    then densest source neighborhood, then lexicographically first."""
    if not edges:
        return None
    top = max((e.weight, e.forward) for e in edges)
    cand = [e for e in edges if (e.weight, e.forward) == top]
    if len(cand) > 1:
        best_adj = max(e.src.adjacency for e in cand)
        cand = [e for e in cand if e.src.adjacency == best_adj]
    return min(cand, key=lambda e: (e.fixed_dims, e.source_pattern, e.flip_dims))


def best_edge(graph: SubcubeGraph) -> GraphEdge:
    if not graph.nodes:
        raise RuntimeError("cannot pick an edge from an empty graph")
    edge = _pick(graph.edges)
    assert edge is not None  # every node contributes at least one edge
    return edge


# --- the greedy decomposition loop ------------------------------------------


@dataclass
class SynthStats:
    swaps: int = 0
    fallbacks: int = 0
    blocks: list[Block] = field(default_factory=list)
    errors_trace: list[int] = field(default_factory=list)


def _select_swap(dm: DifferenceMatrix) -> GraphEdge:
    """One full greedy pass: grow the fixed-position set one position at a
    time (each step keeping the position whose graph offers the best edge),
    remember the champion edge at every size, and return the overall winner."""
    chosen: list[int] = []
    champions: list[GraphEdge] = []
    for _ in range(dm.n):
        if champions:
            # No edge at this size or beyond can beat the champion: raw gain
            # is capped by twice the remaining errors while the block cost
            # only grows with the fixed-set size, so the weight bound below
            # shrinks monotonically from here on.
            bound = 2 * dm.total_errors() / max(mcx_cx_cost(len(chosen)), 1)
            if bound < max(e.weight for e in champions):
                break
        stage: list[GraphEdge] = []
        for d in range(dm.n):
            if d in chosen:
                continue
            graph = form_subcube_graph(dm, tuple(chosen) + (d,))
            edge = _pick(graph.edges)
            if edge is not None:
                stage.append(edge)
        winner = _pick(stage)
        if winner is None:
            break
        chosen = list(winner.fixed_dims)
        champions.append(winner)
    overall = _pick(champions)
    if overall is None:
        raise RuntimeError("no candidate swap found on a matrix with errors")
    return overall


def _net_home_gain(dm: DifferenceMatrix, edge: GraphEdge) -> int:
    """Change in the number of rows sitting at their destination if the edge's
    swap were applied."""
    rows = edge.src.rows if edge.dst is None else np.concatenate([edge.src.rows, edge.dst.rows])
    cols = np.array(edge.flip_dims, dtype=np.intp)
    cur = dm.cur[rows]
    dst = dm.dst[rows]
    before = (cur == dst).all(axis=1)
    flipped = cur.copy()
    flipped[:, cols] ^= 1
    after = (flipped == dst).all(axis=1)
    return int(after.sum()) - int(before.sum())


def _fallback_transposition(dm: DifferenceMatrix) -> tuple[str, str]:
    """Direct transposition of the first row not yet at its destination: swap
    its current label with its destination label (both zero-wildcard
    patterns).  By the triangle inequality this never increases the total
    error count, and it always increases the number of rows at home."""
    misplaced = np.nonzero(dm.err.any(axis=1))[0]
    r = int(misplaced[0])
    cur = "".join("01"[int(b)] for b in dm.cur[r])
    dst = "".join("01"[int(b)] for b in dm.dst[r])
    return cur, dst


def decompose_with_stats(spec: PermutationSpec) -> tuple[Circuit, SynthStats]:
    """Synthesize a permutation-level circuit realizing ``spec`` and report
    how the greedy loop behaved.  Raises RuntimeError if the swap count
    exceeds the 4*(n+m) watchdog or an applied swap increases the error
    count (neither occurs on well-formed inputs)."""
    dm = DifferenceMatrix.from_spec(spec)
    circ = Circuit(spec.n)
    stats = SynthStats()
    stats.errors_trace.append(dm.total_errors())
    watchdog = 4 * (spec.n + dm.m)
    while dm.total_errors() > 0:
        if stats.swaps >= watchdog:
            raise RuntimeError(f"synthesis exceeded {watchdog} swaps; aborting")
        edge = _select_swap(dm)
        if edge.raw > 0 or (edge.raw == 0 and _net_home_gain(dm, edge) > 0):
            shc1, shc2 = edge.source_pattern, edge.dest_pattern
        else:
            # The best swap fixes no errors and strands every row; greedy
            # selection has stalled, so move one row straight home instead.
            shc1, shc2 = _fallback_transposition(dm)
            stats.fallbacks += 1
            logger.info("greedy swap stalled; direct transposition %s <-> %s", shc1, shc2)
        before = dm.total_errors()
        dm.apply_block(shc1, shc2)
        after = dm.total_errors()
        if after > before:
            raise RuntimeError(f"swap {shc1} <-> {shc2} raised errors {before} -> {after}")
        block, gates = emit_swap_block(shc1, shc2)
        circ.extend(gates)
        stats.swaps += 1
        stats.blocks.append(block)
        stats.errors_trace.append(after)
    return circ, stats


def decompose_permutation(spec: PermutationSpec) -> Circuit:
    """Permutation-level circuit sending every source label of ``spec`` to its
    destination (arbitrary but consistent on unspecified labels)."""
    circ, _ = decompose_with_stats(spec)
    return circ
