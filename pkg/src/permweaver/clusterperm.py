"""Construction of cluster-preserving permutations for sparse state
preparation.

Given the set of occupied labels, pick a *root* sub-hypercube of capacity at
least the label count, then build a permutation that sends labels inside the
root to the occupied labels.  The permutation is assembled from a tree of
regions: the root region is repeatedly split in two, and halves that hold no
occupied labels are relocated onto the not-yet-covered labels.  A relocation
changes only the values of a region's fixed positions — its wildcard
positions stay put — so every leaf's recovery map is a plain XOR translation.
Labels that are Hamming neighbors inside one leaf therefore come from
Hamming-neighbor sources, and translations of nearby leaves share flip
dimensions, which keeps the swap blocks realizing the permutation cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import PermutationSpec, SparseState, avg_adjacent_nonzero, conforms, spanned_dims

__all__ = [
    "CoverNode",
    "SplitTree",
    "cluster_permutation",
    "cover_with_subcubes",
    "find_initial_subcube",
    "recover_permutation",
]


def _greedy_fix(labels: list[str], n: int, target_wildcards: int) -> str:
    """Fix positions one at a time, keeping the (position, value) that retains
    the most labels, until ``target_wildcards`` wildcards remain.  Ties prefer
    the retained subset with denser Hamming-1 adjacency, then the smallest
    position and value 0."""
    if not labels:
        raise ValueError("cannot fit a region around an empty label set")
    pattern = ["*"] * n
    retained = list(labels)
    for _ in range(n - target_wildcards):
        open_dims = [d for d in range(n) if pattern[d] == "*"]
        counts = {
            (d, v): [l for l in retained if l[d] == "01"[v]] for d in open_dims for v in (0, 1)
        }
        best_count = max(len(sub) for sub in counts.values())
        cand = [key for key, sub in counts.items() if len(sub) == best_count]
        if len(cand) > 1:
            adj = {key: avg_adjacent_nonzero(counts[key]) for key in cand}
            best_adj = max(adj.values())
            cand = [key for key in cand if adj[key] == best_adj]
        d, v = min(cand)
        pattern[d] = "01"[v]
        retained = counts[(d, v)]
    return "".join(pattern)


def _best_refit(labels: list[str], pattern: str, reference: str) -> tuple[int, int, str]:
    """Best assignment of values to the fixed positions of ``pattern`` —
    wildcard positions stay put — covering as many of ``labels`` as possible.
    The best region necessarily contains one of the labels, so trying the
    region through each label is an exact search.  Returns a sort key
    ``(-covered, moved, values)``: coverage ties are broken by the smallest
    move (fewest value changes relative to ``reference``, normally the
    region's home, so the full recovery translation stays short and parallel
    moves share flip dimensions), then lexicographically."""
    if not labels:
        raise ValueError("cannot fit a region around an empty label set")
    fixed = [d for d, c in enumerate(pattern) if c != "*"]
    best: tuple[int, int, str] | None = None
    seen: set[str] = set()
    for label in labels:
        values = "".join(label[d] for d in fixed)
        if values in seen:
            continue
        seen.add(values)
        covered = sum(1 for l in labels if all(l[d] == label[d] for d in fixed))
        moved = sum(1 for d in fixed if reference[d] != label[d])
        key = (-covered, moved, values)
        if best is None or key < best:
            best = key
    return best


def _refit_values(labels: list[str], pattern: str, reference: str) -> str:
    """Apply the best refit found by :func:`_best_refit` to ``pattern``."""
    _, _, values = _best_refit(labels, pattern, reference)
    fixed = [d for d, c in enumerate(pattern) if c != "*"]
    out = list(pattern)
    for d, value in zip(fixed, values):
        out[d] = value
    return "".join(out)


def find_initial_subcube(state: SparseState) -> str:
    """Root pattern: ceil(log2(m)) wildcards placed to retain as many occupied
    labels as possible under greedy position fixing."""
    n_prime = (state.m - 1).bit_length()  # ceil(log2(m)), 0 for m == 1
    return _greedy_fix(list(state.labels), state.n, n_prime)


@dataclass(eq=False)
class CoverNode:
    """One region of the cover tree.

    ``current`` is where the node's region sits in label space; ``home`` is
    its preimage inside the root region.  Both always have the same number of
    wildcards, and bits correspond by wildcard ordinal.  ``covered`` holds the
    occupied labels assigned to this node — each label is assigned to exactly
    one leaf."""

    current: str
    home: str
    covered: list[str]
    birth: int
    parent: "CoverNode | None" = None
    children: list["CoverNode"] = field(default_factory=list)

    @property
    def capacity(self) -> int:
        return 1 << self.current.count("*")


@dataclass
class SplitTree:
    """Cover of the occupied labels: a binary split tree rooted at the initial
    region.  Active leaves carry disjoint home regions inside the root and
    between them cover every occupied label."""

    root: CoverNode
    leaves: list[CoverNode] = field(default_factory=list)
    n_splits: int = 0


def _stamp(pattern: str, pos: int, value: int) -> str:
    chars = list(pattern)
    chars[pos] = "01"[value]
    return "".join(chars)


def _split_node(
    node: CoverNode, birth: int, uncovered: list[str]
) -> tuple[CoverNode, CoverNode]:
    """Split a node's region in half along the wildcard that keeps the most
    covered labels on one side; the fuller half comes first.  The home region
    splits along its wildcard of the same ordinal, same value.

    When several dimensions tie and the emptier half would come out empty,
    the tie goes to the dimension whose empty half — about to be moved onto
    the still-uncovered labels — can grab the most of them with the smallest
    move, so grabs line up with the shape of what is left; other ties go to
    the lowest dimension index."""
    cur_span = spanned_dims(node.current)
    home_span = spanned_dims(node.home)
    cands: list[tuple[int, int, int]] = []  # (count, position, value)
    for d in cur_span:
        c1 = sum(1 for l in node.covered if l[d] == "1")
        c0 = len(node.covered) - c1
        v = 0 if c0 >= c1 else 1
        cands.append((max(c0, c1), d, v))
    assert cands, "cannot split a zero-wildcard region"
    top = max(count for count, _, _ in cands)
    tied = [(d, v) for count, d, v in cands if count == top]
    d, v = tied[0]
    if len(tied) > 1 and top == len(node.covered) and uncovered:
        d, v = min(
            tied,
            key=lambda dv: (
                _best_refit(
                    uncovered,
                    _stamp(node.current, dv[0], 1 - dv[1]),
                    _stamp(node.home, home_span[cur_span.index(dv[0])], 1 - dv[1]),
                ),
                dv[0],
            ),
        )
    h = home_span[cur_span.index(d)]
    first = CoverNode(
        current=_stamp(node.current, d, v),
        home=_stamp(node.home, h, v),
        covered=[l for l in node.covered if l[d] == "01"[v]],
        birth=birth,
        parent=node,
    )
    second = CoverNode(
        current=_stamp(node.current, d, 1 - v),
        home=_stamp(node.home, h, 1 - v),
        covered=[l for l in node.covered if l[d] != "01"[v]],
        birth=birth + 1,
        parent=node,
    )
    node.children = [first, second]
    return first, second


def cover_with_subcubes(state: SparseState, root: str) -> SplitTree:
    """Cover every occupied label: start from the root region, repeatedly
    split the leaf with the most free capacity, and whenever a split half
    holds nothing relocate it onto the labels not covered yet (keeping its
    home).  Terminates within 2 * m splits."""
    if len(root) != state.n:
        raise ValueError("root pattern length does not match the state")
    inside = sorted(l for l in state.labels if conforms(l, root))
    root_node = CoverNode(current=root, home=root, covered=inside, birth=0)
    tree = SplitTree(root=root_node, leaves=[root_node])
    uncovered = sorted(set(state.labels) - set(inside))
    birth = 1
    while uncovered:
        # Most free capacity; earliest-created wins ties.
        leaf = max(tree.leaves, key=lambda nd: (nd.capacity - len(nd.covered), -nd.birth))
        tree.leaves.remove(leaf)
        first, second = _split_node(leaf, birth, uncovered)
        birth += 2
        tree.n_splits += 1
        tree.leaves.append(first)
        if not second.covered:
            # Move the empty half onto the uncovered labels; its home (and
            # hence its preimage inside the root) stays where it was, and its
            # wildcard positions are kept so the move is a pure translation.
            second.current = _refit_values(uncovered, second.current, second.home)
            second.covered = [l for l in uncovered if conforms(l, second.current)]
            grabbed = set(second.covered)
            uncovered = [l for l in uncovered if l not in grabbed]
        if second.covered:
            tree.leaves.append(second)
    return tree


def recover_permutation(tree: SplitTree, state: SparseState) -> PermutationSpec:
    """Read the permutation off the tree: each covered label maps from the
    source inside the root found by writing the label's bits at its leaf's
    current wildcards onto the leaf's home wildcards (both in ascending
    position order)."""
    pairs: list[tuple[str, str]] = []
    for leaf in sorted(tree.leaves, key=lambda nd: nd.birth):
        cur_span = spanned_dims(leaf.current)
        home_span = spanned_dims(leaf.home)
        for label in leaf.covered:
            chars = list(leaf.home)
            for hp, cp in zip(home_span, cur_span):
                chars[hp] = label[cp]
            pairs.append(("".join(chars), label))
    return PermutationSpec(n=state.n, pairs=tuple(pairs))


def cluster_permutation(state: SparseState) -> PermutationSpec:
    """Full pipeline: root region, cover, and the recovered permutation whose
    sources all conform to the root."""
    root = find_initial_subcube(state)
    tree = cover_with_subcubes(state, root)
    return recover_permutation(tree, state)
