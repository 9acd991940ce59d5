"""Gate-list circuit representation, gate-count statistics, OpenQASM export,
and a small peephole simplifier.

Two levels of circuit are used.  *Permutation-level* circuits contain only
X gates with any number of (possibly negated) controls and map basis states to
basis states.  *Lowered* circuits are restricted to the gate set
{x, cx, h, t, tdg, ry, rz} — multi-controlled X gates have been expanded — and
may use one extra borrowed work qubit beyond the main register.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

__all__ = [
    "Circuit",
    "Gate",
    "cx_count",
    "depth",
    "export_qasm",
    "inverse",
    "peephole_simplify",
    "stats",
]

_ROTATIONS = ("ry", "rz")
_PLAIN_1Q = ("h", "t", "tdg")


@dataclass(frozen=True)
class Gate:
    """One gate.  ``controls`` holds ``(wire, polarity)`` pairs, where polarity
    1 triggers on |1> and 0 on |0>; only ``x`` gates carry controls."""

    kind: str
    target: int
    controls: tuple[tuple[int, int], ...] = ()
    angle: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("x", *_PLAIN_1Q, *_ROTATIONS):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.controls and self.kind != "x":
            raise ValueError(f"{self.kind} gate cannot carry controls")
        if self.target < 0:
            raise ValueError("negative target wire")
        seen = {self.target}
        for wire, pol in self.controls:
            if wire < 0:
                raise ValueError("negative control wire")
            if pol not in (0, 1):
                raise ValueError(f"control polarity must be 0 or 1, got {pol!r}")
            if wire in seen:
                raise ValueError(f"wire {wire} used twice in one gate")
            seen.add(wire)

    @property
    def wires(self) -> tuple[int, ...]:
        return (*(w for w, _ in self.controls), self.target)

    # Constructors for the common shapes.
    @staticmethod
    def x(target: int) -> "Gate":
        return Gate("x", target)

    @staticmethod
    def cx(control: int, target: int) -> "Gate":
        return Gate("x", target, ((control, 1),))

    @staticmethod
    def mcx(controls: Iterable[tuple[int, int]], target: int) -> "Gate":
        return Gate("x", target, tuple(controls))

    @staticmethod
    def h(target: int) -> "Gate":
        return Gate("h", target)

    @staticmethod
    def t(target: int) -> "Gate":
        return Gate("t", target)

    @staticmethod
    def tdg(target: int) -> "Gate":
        return Gate("tdg", target)

    @staticmethod
    def ry(angle: float, target: int) -> "Gate":
        return Gate("ry", target, angle=float(angle))

    @staticmethod
    def rz(angle: float, target: int) -> "Gate":
        return Gate("rz", target, angle=float(angle))


@dataclass
class Circuit:
    """An ordered gate list over ``n_main`` register wires, plus one borrowed
    work wire (index ``n_main``) when ``has_ancilla`` is set."""

    n_main: int
    has_ancilla: bool = False
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n_main < 1:
            raise ValueError("circuit needs at least one main wire")
        for gate in self.gates:
            self._check(gate)

    @property
    def width(self) -> int:
        return self.n_main + (1 if self.has_ancilla else 0)

    def _check(self, gate: Gate) -> None:
        hi = max(gate.wires)
        if hi >= self.width:
            raise ValueError(f"gate {gate} touches wire {hi}, width is {self.width}")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for gate in gates:
            self.append(gate)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def is_permutation_level(self) -> bool:
        return all(g.kind == "x" for g in self.gates)

    def is_lowered(self) -> bool:
        return all(len(g.controls) <= 1 for g in self.gates)


def cx_count(circuit: Circuit) -> int:
    """Number of singly-controlled X gates.  Multi-controlled X gates are not
    counted: count after lowering to get a two-qubit cost."""
    return sum(1 for g in circuit.gates if g.kind == "x" and len(g.controls) == 1)


def depth(circuit: Circuit) -> int:
    """Circuit depth: length of the longest wire-disjoint layering."""
    level: dict[int, int] = {}
    deepest = 0
    for gate in circuit.gates:
        at = 1 + max((level.get(w, 0) for w in gate.wires), default=0)
        for w in gate.wires:
            level[w] = at
        deepest = max(deepest, at)
    return deepest


def stats(circuit: Circuit) -> dict[str, int]:
    return {"cx": cx_count(circuit), "depth": depth(circuit), "qubits": circuit.width}


_INVERSE_KIND = {"x": "x", "h": "h", "t": "tdg", "tdg": "t", "ry": "ry", "rz": "rz"}


def inverse(circuit: Circuit) -> Circuit:
    """The adjoint circuit: gates reversed and individually inverted."""
    out = Circuit(circuit.n_main, circuit.has_ancilla)
    for gate in reversed(circuit.gates):
        kind = _INVERSE_KIND[gate.kind]
        angle = -gate.angle if kind in _ROTATIONS else 0.0
        out.append(Gate(kind, gate.target, gate.controls, angle))
    return out


# --- peephole simplification ------------------------------------------------

_TWO_PI = 2.0 * math.pi
_ANGLE_EPS = 1e-12


def _angle_is_trivial(angle: float) -> bool:
    # ry/rz have period 4*pi; dropping a 2*pi rotation would flip global phase,
    # which matters once the gate is controlled elsewhere, so only multiples of
    # 4*pi are removable.
    return abs(math.remainder(angle, 2.0 * _TWO_PI)) <= _ANGLE_EPS


def _merge(a: Gate, b: Gate) -> list[Gate] | None:
    """Replacement for the adjacent pair (a, b), or None to keep both."""
    if a.kind == "x" and b.kind == "x" and a.target == b.target and a.controls == b.controls:
        return []
    if a.kind == b.kind and a.kind == "h" and a.target == b.target:
        return []
    if {a.kind, b.kind} == {"t", "tdg"} and a.target == b.target:
        return []
    if a.kind == b.kind and a.kind in _ROTATIONS and a.target == b.target:
        total = a.angle + b.angle
        if _angle_is_trivial(total):
            return []
        return [replace(a, angle=total)]
    return None


def peephole_simplify(circuit: Circuit) -> Circuit:
    """Cancel adjacent inverse pairs, merge adjacent same-axis rotations, and
    drop trivial rotations, to a fixpoint.  Two gates count as adjacent when
    no gate between them touches any wire of either one.

    Every merge rule pairs gates with identical wire sets, so a single pass
    with a per-wire stack of live gates reaches the fixpoint: an incoming gate
    can only merge with the newest live gate on all of its wires, and a
    cancellation re-exposes the gates beneath it.
    """
    emitted: list[Gate | None] = []
    tops: dict[int, list[int]] = {}

    def push(gate: Gate) -> None:
        emitted.append(gate)
        for w in gate.wires:
            tops.setdefault(w, []).append(len(emitted) - 1)

    def drop(index: int) -> None:
        for w in emitted[index].wires:  # type: ignore[union-attr]
            tops[w].pop()
        emitted[index] = None

    for gate in circuit.gates:
        while True:
            if gate.kind in _ROTATIONS and _angle_is_trivial(gate.angle):
                break
            newest = {tops[w][-1] for w in gate.wires if tops.get(w)}
            if len(newest) != 1:
                push(gate)
                break
            j = newest.pop()
            prev = emitted[j]
            if prev is None or set(prev.wires) != set(gate.wires):
                push(gate)
                break
            repl = _merge(prev, gate)
            if repl is None:
                push(gate)
                break
            drop(j)
            if not repl:
                break
            gate = repl[0]  # merged rotation: retry against what was beneath
    out = Circuit(circuit.n_main, circuit.has_ancilla)
    out.extend(g for g in emitted if g is not None)
    return out


# --- OpenQASM 2.0 export ----------------------------------------------------


def export_qasm(circuit: Circuit) -> str:
    """Serialize a lowered circuit as OpenQASM 2.0.  Multi-controlled gates
    must be expanded first."""
    if not circuit.is_lowered():
        raise RuntimeError("circuit contains multi-controlled gates; lower it before export")
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.width}];",
    ]
    for gate in circuit.gates:
        if gate.kind == "x" and len(gate.controls) == 1:
            (ctrl, pol), = gate.controls
            if pol != 1:
                raise ValueError("negative-polarity control survived lowering")
            lines.append(f"cx q[{ctrl}],q[{gate.target}];")
        elif gate.kind in _ROTATIONS:
            lines.append(f"{gate.kind}({gate.angle!r}) q[{gate.target}];")
        else:
            lines.append(f"{gate.kind} q[{gate.target}];")
    return "\n".join(lines) + "\n"
