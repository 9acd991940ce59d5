"""Difference matrix: the working state of permutation synthesis.

Each row tracks one mapped label: its current position, its destination, and
the per-position disagreement between the two.  Position j of a row is an
*error* (+1) when current and destination disagree there, and agreement is
written -1; synthesis drives every row's error count to zero by applying
sub-hypercube swaps.
"""

from __future__ import annotations

import numpy as np

from .core import PermutationSpec, validate_pattern

__all__ = ["DifferenceMatrix"]


def _labels_to_array(labels: list[str], n: int) -> np.ndarray:
    if not labels:
        return np.zeros((0, n), dtype=np.uint8)
    return np.array([[1 if ch == "1" else 0 for ch in lab] for lab in labels], dtype=np.uint8)


def _array_to_label(row: np.ndarray) -> str:
    return "".join("01"[int(b)] for b in row)


class DifferenceMatrix:
    """Mutable m x n working matrix for one synthesis run.

    Attributes ``cur`` and ``dst`` are (m, n) uint8 bit arrays; ``err`` is the
    boolean elementwise disagreement, kept in sync by ``apply_block``.
    """

    def __init__(self, cur: np.ndarray, dst: np.ndarray) -> None:
        cur = np.asarray(cur, dtype=np.uint8)
        dst = np.asarray(dst, dtype=np.uint8)
        if cur.ndim != 2 or cur.shape != dst.shape:
            raise ValueError("current and destination arrays must share an (m, n) shape")
        self.m, self.n = cur.shape
        self.cur = cur
        self.dst = dst
        self.err = cur != dst
        self._packed: np.ndarray | None = None

    @classmethod
    def from_spec(cls, spec: PermutationSpec) -> "DifferenceMatrix":
        srcs = [src for src, _ in spec.pairs]
        dsts = [dst for _, dst in spec.pairs]
        return cls(_labels_to_array(srcs, spec.n), _labels_to_array(dsts, spec.n))

    def copy(self) -> "DifferenceMatrix":
        return DifferenceMatrix(self.cur.copy(), self.dst.copy())

    def total_errors(self) -> int:
        return int(self.err.sum())

    def misplaced_rows(self) -> int:
        return int((self.err.any(axis=1)).sum())

    def signs(self) -> np.ndarray:
        """The matrix in +1/-1 form: +1 where current and destination differ."""
        return np.where(self.err, 1, -1).astype(np.int64)

    def current_labels(self) -> list[str]:
        return [_array_to_label(row) for row in self.cur]

    def destination_labels(self) -> list[str]:
        return [_array_to_label(row) for row in self.dst]

    def conforming_rows(self, pattern: str) -> np.ndarray:
        """Boolean mask of rows whose current label conforms to ``pattern``."""
        validate_pattern(pattern, self.n)
        mask = np.ones(self.m, dtype=bool)
        for j, ch in enumerate(pattern):
            if ch != "*":
                mask &= self.cur[:, j] == (1 if ch == "1" else 0)
        return mask

    def apply_block(self, shc1: str, shc2: str) -> "DifferenceMatrix":
        """Record the action of the swap block exchanging the two given
        sub-hypercubes: rows currently inside either one flip at every position
        where the patterns differ.  Returns self."""
        validate_pattern(shc1, self.n)
        validate_pattern(shc2, self.n)
        diff = [j for j in range(self.n) if shc1[j] != shc2[j]]
        if not diff:
            raise ValueError("the two patterns are identical; nothing to swap")
        if any(shc1[j] == "*" or shc2[j] == "*" for j in diff):
            raise ValueError(
                f"patterns {shc1!r} and {shc2!r} must differ only at mutually fixed positions"
            )
        touched = self.conforming_rows(shc1) | self.conforming_rows(shc2)
        cols = np.fromiter(diff, dtype=np.int64)
        sub = self.cur[np.ix_(touched, cols)]
        self.cur[np.ix_(touched, cols)] = 1 - sub
        self.err[np.ix_(touched, cols)] = self.cur[np.ix_(touched, cols)] != self.dst[
            np.ix_(touched, cols)
        ]
        self._packed = None
        return self

    def packed_current(self) -> np.ndarray:
        """Current labels packed into integers, most significant bit first;
        cached until the next block application."""
        if self._packed is None:
            powers = 1 << np.arange(self.n - 1, -1, -1, dtype=np.int64)
            self._packed = self.cur.astype(np.int64) @ powers
        return self._packed
