"""Covering a sparse state's labels with translated sub-hypercubes.

Preparation by permutation needs a map from a small dense region onto the
occupied labels.  The cover algorithm pins a root region of capacity >= m,
then repeatedly splits the sparsest leaf in two; a split whose second half
would be empty instead *relocates* that half — keeping its wildcard
positions, changing only its fixed bit values — to wherever it covers the
most still-uncovered labels.  Every leaf's recovery map is therefore a plain
XOR translation.
"""

import numpy as np

from permweaver.clusterperm import (
    cover_with_subcubes,
    find_initial_subcube,
    recover_permutation,
)
from permweaver.core import SparseState, avg_adjacent_nonzero, conforms

rng = np.random.default_rng(31)
# Two Hamming-compact clumps of labels on 6 wires.
labels = ["000000", "000001", "000011", "000010", "110100", "110101", "110111"]
amps = rng.standard_normal(len(labels)) + 1j * rng.standard_normal(len(labels))
state = SparseState(6, dict(zip(labels, amps / np.linalg.norm(amps))))
print(f"occupied labels ({state.m} of 64): {sorted(state.labels)}")
print(f"average occupied neighbors: {avg_adjacent_nonzero(state.labels):.2f}")

print()
root = find_initial_subcube(state)
print(f"== Root region {root} (capacity {2 ** root.count('*')}) ==")

tree = cover_with_subcubes(state, root)
print(f"cover took {tree.n_splits} splits; leaves:")
for leaf in sorted(tree.leaves, key=lambda nd: nd.birth):
    moved = " (relocated)" if leaf.current != leaf.home else ""
    print(f"  current {leaf.current}  home {leaf.home}{moved}  covers {leaf.covered}")

print()
spec = recover_permutation(tree, state)
print("== Recovered permutation: dense sources -> occupied labels ==")
for src, dst in spec.pairs:
    print(f"  {src} -> {dst}")
print(f"all sources conform to the root: {all(conforms(s, root) for s, _ in spec.pairs)}")
