"""Shared value types and bit-pattern utilities.

Conventions used throughout the package:

* A *label* is a length-``n`` string over ``{0, 1}``.  Position 0 is the
  leftmost character, names qubit 0, and is the most significant bit of the
  corresponding basis-state index.
* A *pattern* is a length-``n`` string over ``{0, 1, *}``; ``*`` positions are
  wildcards ("spanned" dimensions), the rest are fixed.  A pattern denotes the
  sub-hypercube of all labels that agree with it on the fixed positions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

NORM_TOL = 1e-10

__all__ = [
    "NORM_TOL",
    "PermutationSpec",
    "SparseState",
    "avg_adjacent_nonzero",
    "capacity",
    "conforms",
    "enumerate_conforming",
    "fixed_dims",
    "hamming",
    "load_spec",
    "load_state",
    "dump_spec",
    "dump_state",
    "spanned_dims",
    "validate_label",
    "validate_pattern",
]


def validate_label(label: str, n: int) -> str:
    if not isinstance(label, str) or len(label) != n:
        raise ValueError(f"label {label!r} is not a string of length {n}")
    if any(ch not in "01" for ch in label):
        raise ValueError(f"label {label!r} contains characters outside '01'")
    return label


def validate_pattern(pattern: str, n: int) -> str:
    if not isinstance(pattern, str) or len(pattern) != n:
        raise ValueError(f"pattern {pattern!r} is not a string of length {n}")
    if any(ch not in "01*" for ch in pattern):
        raise ValueError(f"pattern {pattern!r} contains characters outside '01*'")
    return pattern


def hamming(a: str, b: str) -> int:
    """Number of positions at which two equal-length labels differ."""
    if len(a) != len(b):
        raise ValueError(f"labels {a!r} and {b!r} have different lengths")
    return sum(x != y for x, y in zip(a, b))


def conforms(label: str, pattern: str) -> bool:
    """True when ``label`` agrees with ``pattern`` on every fixed position."""
    if len(label) != len(pattern):
        raise ValueError(f"label {label!r} and pattern {pattern!r} have different lengths")
    return all(p == "*" or p == c for c, p in zip(label, pattern))


def spanned_dims(pattern: str) -> tuple[int, ...]:
    """Positions of the wildcards, ascending."""
    return tuple(i for i, ch in enumerate(pattern) if ch == "*")


def fixed_dims(pattern: str) -> tuple[int, ...]:
    """Positions of the non-wildcard characters, ascending."""
    return tuple(i for i, ch in enumerate(pattern) if ch != "*")


def capacity(pattern: str) -> int:
    """Number of labels conforming to ``pattern`` (2 ** wildcard count)."""
    return 1 << pattern.count("*")


def enumerate_conforming(pattern: str) -> list[str]:
    """All labels conforming to ``pattern``, ascending as binary integers."""
    span = spanned_dims(pattern)
    out = []
    for bits in range(1 << len(span)):
        chars = list(pattern)
        for j, pos in enumerate(span):
            chars[pos] = "1" if (bits >> (len(span) - 1 - j)) & 1 else "0"
        out.append("".join(chars))
    return out


def avg_adjacent_nonzero(labels: Iterable[str]) -> float:
    """Mean, over the given labels, of how many of the others sit at Hamming
    distance exactly 1."""
    packed = [int(lab, 2) for lab in labels]
    m = len(packed)
    if m == 0:
        raise ValueError("avg_adjacent_nonzero needs at least one label")
    pair_hits = 0
    for i in range(m):
        for j in range(i + 1, m):
            d = packed[i] ^ packed[j]
            if d and (d & (d - 1)) == 0:
                pair_hits += 1
    return 2.0 * pair_hits / m


@dataclass(frozen=True)
class PermutationSpec:
    """A partial injection on basis labels: each source maps to its destination.

    Sources are pairwise distinct and so are destinations; the circuit realizing
    the spec is free to act arbitrarily on unspecified labels as long as the
    overall action is a permutation of the basis.
    """

    n: int
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        srcs = []
        dsts = []
        for src, dst in self.pairs:
            validate_label(src, self.n)
            validate_label(dst, self.n)
            srcs.append(src)
            dsts.append(dst)
        if len(set(srcs)) != len(srcs):
            raise ValueError("duplicate source labels in permutation spec")
        if len(set(dsts)) != len(dsts):
            raise ValueError("duplicate destination labels in permutation spec")

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)


@dataclass(frozen=True)
class SparseState:
    """A normalized sparse quantum state on ``n`` qubits.

    ``entries`` maps occupied basis labels to their (nonzero) complex
    amplitudes.  States whose squared norm strays from 1 by more than
    ``NORM_TOL`` are rejected rather than renormalized.
    """

    n: int
    entries: dict[str, complex]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not self.entries:
            raise ValueError("sparse state must have at least one nonzero amplitude")
        norm_sq = 0.0
        for label, amp in self.entries.items():
            validate_label(label, self.n)
            amp = complex(amp)
            if amp == 0:
                raise ValueError(f"amplitude for {label} is zero; omit the entry instead")
            norm_sq += abs(amp) ** 2
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state norm**2 = {norm_sq!r} deviates from 1 beyond {NORM_TOL}")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries)


# --- JSON interchange -------------------------------------------------------
#
# Sparse state:      {"n": 5, "amplitudes": {"00101": [0.6, 0.0], ...}}
# Permutation spec:  {"n": 5, "map": [["00000", "00011"], ...]}


def _as_obj(source: str | Mapping) -> Mapping:
    if isinstance(source, Mapping):
        return source
    try:
        obj = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, Mapping):
        raise ValueError("top-level JSON value must be an object")
    return obj


def load_state(source: str | Mapping) -> SparseState:
    """Parse a sparse state from a JSON string or an already-decoded object."""
    obj = _as_obj(source)
    try:
        n = obj["n"]
        amps = obj["amplitudes"]
    except KeyError as exc:
        raise ValueError(f"sparse state JSON missing key {exc}") from exc
    if not isinstance(n, int):
        raise ValueError("'n' must be an integer")
    if not isinstance(amps, Mapping) or not amps:
        raise ValueError("'amplitudes' must be a non-empty object")
    entries: dict[str, complex] = {}
    for label, pair in amps.items():
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ValueError(f"amplitude for {label!r} must be a [re, im] pair")
        re, im = pair
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise ValueError(f"amplitude for {label!r} must hold two numbers")
        if math.isnan(re) or math.isnan(im):
            raise ValueError(f"amplitude for {label!r} is NaN")
        entries[label] = complex(re, im)
    return SparseState(n=n, entries=entries)


def dump_state(state: SparseState) -> str:
    amps = {lab: [amp.real, amp.imag] for lab, amp in state.entries.items()}
    return json.dumps({"n": state.n, "amplitudes": amps}, indent=2)


def load_spec(source: str | Mapping) -> PermutationSpec:
    """Parse a permutation spec from a JSON string or an already-decoded object."""
    obj = _as_obj(source)
    try:
        n = obj["n"]
        pairs = obj["map"]
    except KeyError as exc:
        raise ValueError(f"permutation spec JSON missing key {exc}") from exc
    if not isinstance(n, int):
        raise ValueError("'n' must be an integer")
    if not isinstance(pairs, list):
        raise ValueError("'map' must be a list of [source, destination] pairs")
    clean: list[tuple[str, str]] = []
    for item in pairs:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise ValueError(f"map entry {item!r} must be a [source, destination] pair")
        clean.append((item[0], item[1]))
    return PermutationSpec(n=n, pairs=tuple(clean))


def dump_spec(spec: PermutationSpec) -> str:
    return json.dumps({"n": spec.n, "map": [list(p) for p in spec.pairs]}, indent=2)
