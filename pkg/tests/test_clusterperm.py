"""Tests for the cluster-preserving permutation search (dense-subcube cover
and recovery)."""

import math

import numpy as np
import pytest

from permweaver.core import SparseState, conforms, hamming
from permweaver.clusterperm import (
    cluster_permutation,
    cover_with_subcubes,
    find_initial_subcube,
    recover_permutation,
)


def uniform_state(labels):
    amp = 1.0 / math.sqrt(len(labels))
    return SparseState(len(labels[0]), {l: amp for l in labels})


def random_state(rng, n, m):
    values = rng.choice(2**n, size=m, replace=False)
    labels = [format(int(v), f"0{n}b") for v in values]
    amps = rng.normal(size=m) + 1j * rng.normal(size=m)
    amps /= np.linalg.norm(amps)
    return SparseState(n, dict(zip(labels, amps)))


def test_initial_subcube_full_region():
    labels = [format(v, "04b") for v in range(8)]  # exactly the 0*** region
    state = uniform_state(labels)
    root = find_initial_subcube(state)
    assert root == "0***"
    assert all(conforms(l, root) for l in labels)


def test_initial_subcube_dense_state():
    labels = [format(v, "03b") for v in range(8)]
    assert find_initial_subcube(uniform_state(labels)) == "***"


def test_initial_subcube_single_label():
    state = uniform_state(["1011"])
    assert find_initial_subcube(state) == "1011"


def test_initial_subcube_wildcard_count():
    rng = np.random.default_rng(5150)
    for _ in range(30):
        n = int(rng.integers(2, 10))
        m = int(rng.integers(1, min(2**n, 24) + 1))
        state = random_state(rng, n, m)
        root = find_initial_subcube(state)
        assert root.count("*") == (m - 1).bit_length()


def test_initial_subcube_last_step_local_optimality():
    # Rebuild the greedy prefix one step short of the root, then check that the
    # root retains at least as many labels as every alternative final fixing.
    from permweaver.clusterperm import _greedy_fix

    rng = np.random.default_rng(888)
    for _ in range(20):
        n, m = 8, 16
        state = random_state(rng, n, m)
        root = find_initial_subcube(state)
        n_prime = (m - 1).bit_length()
        prefix = _greedy_fix(list(state.labels), n, n_prime + 1)
        chosen = sum(conforms(l, root) for l in state.labels)
        open_dims = [i for i, c in enumerate(prefix) if c == "*"]
        for d in open_dims:
            for v in "01":
                alt = "".join(v if i == d else prefix[i] for i in range(n))
                count = sum(conforms(l, alt) for l in state.labels)
                assert chosen >= count


def test_cover_no_splits_when_root_covers_all():
    labels = ["0000", "0001", "0010", "0011"]
    state = uniform_state(labels)
    tree = cover_with_subcubes(state, "00**")
    assert tree.n_splits == 0
    assert len(tree.leaves) == 1
    assert tree.leaves[0].current == "00**"
    assert tree.leaves[0].home == "00**"
    assert sorted(tree.leaves[0].covered) == sorted(labels)


def test_cover_relocation_scenario():
    # The labels inside the root cluster in its left half; the first split's
    # empty right half relocates onto the far cluster outside the root.
    state = uniform_state(["0000", "0001", "1100", "1101"])
    tree = cover_with_subcubes(state, "00**")
    assert tree.n_splits == 1
    homes = {leaf.home for leaf in tree.leaves}
    currents = {leaf.current for leaf in tree.leaves}
    assert homes == {"000*", "001*"}
    assert currents == {"000*", "110*"}
    relocated = next(l for l in tree.leaves if l.current == "110*")
    assert relocated.home == "001*"
    assert sorted(relocated.covered) == ["1100", "1101"]


def test_recover_identity_when_no_relocation():
    labels = ["0100", "0101", "0110"]
    state = uniform_state(labels)
    tree = cover_with_subcubes(state, "01**")
    spec = recover_permutation(tree, state)
    for src, dst in spec.pairs:
        assert src == dst


def test_recover_relocated_leaf_mapping():
    state = uniform_state(["0000", "0001", "1100", "1101"])
    tree = cover_with_subcubes(state, "00**")
    spec = recover_permutation(tree, state)
    mapping = spec.mapping
    # The relocated leaf 110* has home 001*: its labels map back onto 001*.
    assert mapping["0010"] == "1100"
    assert mapping["0011"] == "1101"
    assert mapping["0000"] == "0000"
    assert mapping["0001"] == "0001"


def test_full_pipeline_on_two_clusters():
    state = uniform_state(["0000", "0001", "1100", "1101"])
    spec = cluster_permutation(state)
    root = find_initial_subcube(state)
    sources = [s for s, _ in spec.pairs]
    assert sorted(d for _, d in spec.pairs) == sorted(state.labels)
    assert all(conforms(s, root) for s in sources)
    assert len(set(sources)) == 4


def test_cluster_permutation_properties_fuzz():
    rng = np.random.default_rng(60)
    for _ in range(120):
        n = int(rng.integers(2, 11))
        m = int(rng.integers(1, min(2**n, 32) + 1))
        state = random_state(rng, n, m)
        root = find_initial_subcube(state)
        tree = cover_with_subcubes(state, root)
        spec = recover_permutation(tree, state)

        sources = [s for s, _ in spec.pairs]
        dests = [d for _, d in spec.pairs]
        assert len(set(sources)) == len(sources)  # injective
        assert all(conforms(s, root) for s in sources)
        assert sorted(dests) == sorted(state.labels)
        assert tree.n_splits <= 2 * m

        # Every label is covered by exactly one leaf.
        for label in state.labels:
            owners = [leaf for leaf in tree.leaves if label in leaf.covered]
            assert len(owners) == 1

        # Leaf home regions are pairwise disjoint and sit inside the root.
        for leaf in tree.leaves:
            assert all(
                root[i] == "*" or root[i] == c
                for i, c in enumerate(leaf.home)
                if c != "*"
            )
        for i, a in enumerate(tree.leaves):
            for b in tree.leaves[i + 1 :]:
                assert _regions_disjoint(a.home, b.home)

        # Intra-leaf adjacency is preserved by the mapping.
        inverse = {d: s for s, d in spec.pairs}
        for leaf in tree.leaves:
            covered = sorted(leaf.covered)
            for i, a in enumerate(covered):
                for b in covered[i + 1 :]:
                    if hamming(a, b) == 1:
                        assert hamming(inverse[a], inverse[b]) == 1


def _regions_disjoint(p1, p2):
    return any(
        c1 != "*" and c2 != "*" and c1 != c2 for c1, c2 in zip(p1, p2)
    )


def test_cluster_permutation_single_label():
    state = SparseState(3, {"101": 1.0})
    spec = cluster_permutation(state)
    assert spec.pairs == (("101", "101"),)
