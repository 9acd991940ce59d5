"""Sparse state preparation pipelines.

All three methods emit a lowered, peephole-simplified circuit whose
statevector matches the requested sparse state up to global phase:

* ``cluster`` — dense preparation inside a root sub-hypercube, then a greedy
  sub-hypercube-swap permutation moving amplitudes to their labels.
* ``pairwise`` — same scaffold, but the permutation is realized as one
  transposition block per mapping cycle step (the natural baseline).
* ``dense`` — plain dense preparation over the full register, ignoring
  sparsity.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, Gate, inverse, peephole_simplify
from .clusterperm import cover_with_subcubes, find_initial_subcube, recover_permutation
from .core import NORM_TOL, PermutationSpec, SparseState, spanned_dims
from .mcx import lower_circuit
from .synth import decompose_permutation, emit_swap_block

__all__ = [
    "METHODS",
    "cluster_swaps_prepare",
    "dense_all_prepare",
    "dense_prepare",
    "pairwise_decompose",
    "pairwise_prepare",
    "prepare",
]

_ANGLE_EPS = 1e-12


def _ucr(kind: str, controls: list[int], target: int, angles: np.ndarray) -> list[Gate]:
    """Uniformly controlled rotation: apply R(angles[j]) to ``target`` for
    control pattern j (controls listed most-significant first).  Recursive
    multiplexor lowering; sub-trees whose angles all vanish emit nothing."""
    if np.all(np.abs(angles) <= _ANGLE_EPS):
        return []
    if not controls:
        return [Gate(kind, target, angle=float(angles[0]))]
    # Strip the least-significant control: R(a) splits into R(u) and a
    # CX-conjugated R(v), using X R(t) X = R(-t) for both ry and rz.
    u = (angles[0::2] + angles[1::2]) / 2.0
    v = (angles[0::2] - angles[1::2]) / 2.0
    low = controls[-1]
    inner_u = _ucr(kind, controls[:-1], target, u)
    inner_v = _ucr(kind, controls[:-1], target, v)
    if not inner_v:
        return inner_u
    return inner_u + [Gate.cx(low, target)] + inner_v + [Gate.cx(low, target)]


def dense_prepare(amplitudes: np.ndarray, wires: list[int], n_main: int | None = None) -> Circuit:
    """Circuit preparing the dense vector ``amplitudes`` on ``wires``
    (starting from all-zeros there); the first listed wire is the most
    significant bit of the vector index.  Magnitudes via a binary tree of
    uniformly controlled ry layers, phases via uniformly controlled rz
    layers."""
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    k = len(wires)
    if v.shape != (1 << k,):
        raise ValueError(f"amplitude vector must have length {1 << k} for {k} wires")
    norm_sq = float(np.sum(np.abs(v) ** 2))
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise ValueError(f"amplitude vector norm**2 = {norm_sq!r} deviates from 1")
    gates: list[Gate] = []
    # Magnitude tree: level L rotates wires[L], controlled by wires[:L]; the
    # angle of block j splits that block's probability between its halves.
    mags = np.abs(v) ** 2
    for level in range(k):
        block = 1 << (k - level)
        angles = np.empty(1 << level)
        for j in range(1 << level):
            seg = mags[j * block: (j + 1) * block]
            left = math.sqrt(float(np.sum(seg[: block // 2])))
            right = math.sqrt(float(np.sum(seg[block // 2:])))
            angles[j] = 2.0 * math.atan2(right, left)
        gates.extend(_ucr("ry", wires[:level], wires[level], angles))
    # Phase layers: peel the difference of each adjacent phase pair onto the
    # last wire, recurse on the pair means; the residue is global phase.
    level_phases = np.angle(v)
    for level in range(k - 1, -1, -1):
        diffs = level_phases[1::2] - level_phases[0::2]
        gates.extend(_ucr("rz", wires[:level], wires[level], diffs))
        level_phases = (level_phases[0::2] + level_phases[1::2]) / 2.0
    if n_main is None:
        n_main = (max(wires) + 1) if wires else 1
    circ = Circuit(n_main)
    circ.extend(gates)
    return circ


def pairwise_decompose(spec: PermutationSpec) -> Circuit:
    """Permutation-level circuit for ``spec`` built from transpositions: close
    each mapping chain or cycle and swap adjacent elements back to front."""
    mapping = {src: dst for src, dst in spec.pairs if src != dst}
    circ = Circuit(spec.n)
    if not mapping:
        return circ
    dests = set(mapping.values())
    sequences: list[list[str]] = []
    seen: set[str] = set()
    for head in sorted(src for src in mapping if src not in dests):
        seq = [head]
        while seq[-1] in mapping:
            seq.append(mapping[seq[-1]])
        seen.update(seq)
        sequences.append(seq)
    for src in sorted(mapping):
        if src in seen:
            continue
        seq = [src]
        while mapping[seq[-1]] != src:
            seq.append(mapping[seq[-1]])
        seen.update(seq)
        sequences.append(seq)
    for seq in sequences:
        for i in range(len(seq) - 1, 0, -1):
            _, gates = emit_swap_block(seq[i - 1], seq[i])
            circ.extend(gates)
    return circ


def _scaffold(state: SparseState, permute) -> Circuit:
    """Shared pipeline: X gates onto the root's fixed ones, dense preparation
    of the permuted amplitudes on the root's wildcard wires, then the lowered
    permutation circuit produced by ``permute``."""
    root = find_initial_subcube(state)
    tree = cover_with_subcubes(state, root)
    spec = recover_permutation(tree, state)
    span = list(spanned_dims(root))
    v = np.zeros(1 << len(span), dtype=complex)
    for src, dst in spec.pairs:
        idx = int("".join(src[p] for p in span), 2) if span else 0
        v[idx] = state.entries[dst]
    perm = lower_circuit(permute(spec))
    circ = Circuit(state.n, has_ancilla=perm.has_ancilla)
    circ.extend(Gate.x(j) for j, ch in enumerate(root) if ch == "1")
    circ.extend(dense_prepare(v, span, n_main=state.n))
    circ.extend(perm.gates)
    return peephole_simplify(circ)


def _gather_decompose(spec: PermutationSpec) -> Circuit:
    """Circuit for ``spec`` built by decomposing the reverse mapping — gather
    the scattered labels into the dense region, which the greedy swap search
    handles with fewer, wider blocks the more clustered the labels are — and
    taking the adjoint."""
    gather = PermutationSpec(n=spec.n, pairs=tuple((dst, src) for src, dst in spec.pairs))
    return inverse(decompose_permutation(gather))


def cluster_swaps_prepare(state: SparseState) -> Circuit:
    """Sparse preparation via a cluster-preserving permutation realized with
    greedy sub-hypercube swaps."""
    return _scaffold(state, _gather_decompose)


def pairwise_prepare(state: SparseState) -> Circuit:
    """Sparse preparation with the permutation realized pairwise, one
    transposition block per step; the comparison baseline."""
    return _scaffold(state, pairwise_decompose)


def dense_all_prepare(state: SparseState) -> Circuit:
    """Dense preparation over the whole register, ignoring sparsity."""
    v = np.zeros(1 << state.n, dtype=complex)
    for label, amp in state.entries.items():
        v[int(label, 2)] = amp
    circ = Circuit(state.n)
    circ.extend(dense_prepare(v, list(range(state.n)), n_main=state.n))
    return peephole_simplify(circ)


METHODS = {
    "cluster": cluster_swaps_prepare,
    "pairwise": pairwise_prepare,
    "dense": dense_all_prepare,
}


def prepare(state: SparseState, method: str = "cluster") -> Circuit:
    """Prepare ``state`` with the named method: cluster, pairwise, or dense."""
    try:
        fn = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(METHODS)}") from None
    return fn(state)
