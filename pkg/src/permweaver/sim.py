"""Reference simulation: basis-label tracking for permutation-level circuits,
dense statevectors, and full unitaries for small widths.

Wire 0 is the most significant bit of the basis index, so the statevector of
label ``"10"`` on two wires is ``[0, 0, 1, 0]``.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, Gate

__all__ = [
    "MAX_STATEVECTOR_WIRES",
    "MAX_UNITARY_WIRES",
    "fidelity",
    "simulate_permutation",
    "statevector",
    "state_of_label",
    "unitary",
]

MAX_STATEVECTOR_WIRES = 16
MAX_UNITARY_WIRES = 10

_SQ2 = 1.0 / math.sqrt(2.0)
_H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
_T_PHASE = complex(np.exp(0.25j * math.pi))
_T = np.array([[1.0, 0.0], [0.0, _T_PHASE]], dtype=complex)
_TDG = _T.conj()


def _1q_matrix(gate: Gate) -> np.ndarray:
    if gate.kind == "h":
        return _H
    if gate.kind == "t":
        return _T
    if gate.kind == "tdg":
        return _TDG
    half = gate.angle / 2.0
    c, s = math.cos(half), math.sin(half)
    if gate.kind == "ry":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if gate.kind == "rz":
        return np.array([[c - 1j * s, 0.0], [0.0, c + 1j * s]], dtype=complex)
    raise ValueError(f"no matrix for gate kind {gate.kind!r}")


def simulate_permutation(circuit: Circuit, label: str) -> str:
    """Propagate one basis label through a permutation-level circuit.  The
    label covers the main register only; the work wire (if any) starts at 0
    and must return to 0."""
    if not circuit.is_permutation_level():
        raise ValueError("circuit contains non-X gates; use statevector() instead")
    if len(label) != circuit.n_main:
        raise ValueError(f"label {label!r} does not cover {circuit.n_main} wires")
    bits = [1 if ch == "1" else 0 for ch in label] + ([0] if circuit.has_ancilla else [])
    for gate in circuit.gates:
        if all(bits[w] == pol for w, pol in gate.controls):
            bits[gate.target] ^= 1
    if circuit.has_ancilla and bits[-1] != 0:
        raise RuntimeError("work wire not restored to 0")
    return "".join("01"[b] for b in bits[: circuit.n_main])


def _apply(state: np.ndarray, gate: Gate, n_wires: int) -> np.ndarray:
    """Apply one gate to a tensor whose first ``n_wires`` axes are wires; any
    trailing axes are carried along (used to batch unitary columns)."""
    if gate.kind == "x":
        sel0: list = [slice(None)] * state.ndim
        for wire, pol in gate.controls:
            sel0[wire] = pol
        sel1 = list(sel0)
        sel0[gate.target] = 0
        sel1[gate.target] = 1
        t0, t1 = tuple(sel0), tuple(sel1)
        tmp = state[t0].copy()
        state[t0] = state[t1]
        state[t1] = tmp
        return state
    half0: list = [slice(None)] * state.ndim
    half0[gate.target] = 0
    half1 = list(half0)
    half1[gate.target] = 1
    t0, t1 = tuple(half0), tuple(half1)
    # Diagonal gates touch amplitudes in place; anything else is a generic
    # two-by-two combination of the target wire's halves.
    if gate.kind == "t":
        state[t1] *= _T_PHASE
        return state
    if gate.kind == "tdg":
        state[t1] *= _T_PHASE.conjugate()
        return state
    if gate.kind == "rz":
        state[t0] *= np.exp(-0.5j * gate.angle)
        state[t1] *= np.exp(0.5j * gate.angle)
        return state
    mat = _1q_matrix(gate)
    a = state[t0].copy()
    b = state[t1]
    state[t0] = mat[0, 0] * a + mat[0, 1] * b
    state[t1] = mat[1, 0] * a + mat[1, 1] * b
    return state


def state_of_label(label: str, n_wires: int) -> np.ndarray:
    """Dense statevector of a basis label, zero-padded to ``n_wires`` wires."""
    vec = np.zeros(1 << n_wires, dtype=complex)
    vec[int(label, 2) << (n_wires - len(label))] = 1.0
    return vec


def statevector(
    circuit: Circuit, start: np.ndarray | None = None, n_wires: int | None = None
) -> np.ndarray:
    """Dense statevector after the circuit, starting from ``start`` (default
    all-zeros).  The vector covers every wire including the work wire;
    ``n_wires`` pads with untouched wires below."""
    n = circuit.width if n_wires is None else n_wires
    if n < circuit.width:
        raise ValueError(f"circuit touches {circuit.width} wires, asked to simulate {n}")
    if n > MAX_STATEVECTOR_WIRES:
        raise ValueError(f"{n} wires exceeds the {MAX_STATEVECTOR_WIRES}-wire statevector limit")
    dim = 1 << n
    if start is None:
        state = np.zeros(dim, dtype=complex)
        state[0] = 1.0
    else:
        state = np.asarray(start, dtype=complex).copy()
        if state.shape != (dim,):
            raise ValueError(f"start vector must have shape ({dim},)")
    state = state.reshape([2] * n)
    for gate in circuit.gates:
        state = _apply(state, gate, n)
    return state.reshape(dim)


def unitary(circuit: Circuit, n_wires: int | None = None) -> np.ndarray:
    """Full unitary of the circuit over all its wires (work wire last);
    ``n_wires`` pads with untouched wires below."""
    n = circuit.width if n_wires is None else n_wires
    if n < circuit.width:
        raise ValueError(f"circuit touches {circuit.width} wires, asked to simulate {n}")
    if n > MAX_UNITARY_WIRES:
        raise ValueError(f"{n} wires exceeds the {MAX_UNITARY_WIRES}-wire unitary limit")
    dim = 1 << n
    # Batch all basis columns through the tensor simulator at once: axes
    # 0..n-1 are wires, the trailing axis indexes the starting basis state.
    state = np.eye(dim, dtype=complex).reshape([2] * n + [dim])
    for gate in circuit.gates:
        state = _apply(state, gate, n)
    return state.reshape(dim, dim)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Overlap magnitude |<a|b>|, insensitive to global phase."""
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        raise ValueError("states have different dimensions")
    return float(abs(np.vdot(a, b)))
