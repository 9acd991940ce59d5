"""Lowering of multi-controlled X gates to {x, cx, h, t, tdg} using at most
one borrowed work qubit.

The work qubit may start in any state and is always restored, so one spare
wire serves every multi-controlled gate in a circuit.  A ``c``-control X costs
``mcx_cx_cost(c)`` CX gates: 0, 1, 6 for c <= 2, then 24, 60, and exactly
48*c - 144 for every c >= 5.  Growth is linear: the cost never exceeds 48*c,
and for c >= 3 the second difference of the cost sequence is at most 12.
"""

from __future__ import annotations

from functools import lru_cache

from .circuit import Circuit, Gate

__all__ = ["lower_circuit", "mcx_cx_cost", "mcx_to_cx", "toffoli"]


def toffoli(c1: int, c2: int, target: int) -> list[Gate]:
    """Doubly-controlled X from six CX gates plus single-qubit phases."""
    return [
        Gate.h(target),
        Gate.cx(c2, target),
        Gate.tdg(target),
        Gate.cx(c1, target),
        Gate.t(target),
        Gate.cx(c2, target),
        Gate.tdg(target),
        Gate.cx(c1, target),
        Gate.t(c2),
        Gate.t(target),
        Gate.h(target),
        Gate.cx(c1, c2),
        Gate.t(c1),
        Gate.tdg(c2),
        Gate.cx(c1, c2),
    ]


def _chain_mcx(controls: list[int], target: int, borrowed: list[int]) -> list[Gate]:
    """X on ``target`` controlled by all of ``controls`` (positive polarity),
    borrowing ``len(controls) - 2`` dirty wires.  Toffoli-ladder construction:
    the forward ladder is replayed so every borrowed wire is restored even
    though it starts in an unknown state."""
    k = len(controls)
    if k == 0:
        return [Gate.x(target)]
    if k == 1:
        return [Gate.cx(controls[0], target)]
    if k == 2:
        return toffoli(controls[0], controls[1], target)
    need = k - 2
    if len(borrowed) < need:
        raise ValueError(f"{k}-control ladder needs {need} borrowed wires, got {len(borrowed)}")
    work = borrowed[:need]
    # Forward pass: target <- T(c[k-1], work[-1]); work[i] <- T(c[i+2], work[i-1])
    # down the ladder; finally work[0] <- T(c[0], c[1]).
    forward: list[list[Gate]] = [toffoli(controls[k - 1], work[need - 1], target)]
    for i in range(need - 1, 0, -1):
        forward.append(toffoli(controls[i + 1], work[i - 1], work[i]))
    forward.append(toffoli(controls[0], controls[1], work[0]))
    gates: list[Gate] = []
    for part in forward:
        gates.extend(part)
    for part in reversed(forward[:-1]):
        gates.extend(part)
    for part in forward[1:]:
        gates.extend(part)
    for part in reversed(forward[1:-1]):
        gates.extend(part)
    return gates


def _split_mcx(controls: list[int], target: int, work: int) -> list[Gate]:
    """X with >= 3 positive controls using one borrowed wire: split the
    controls in half and alternate two ladders, each borrowing the other
    half's wires (dirty is fine), so the work wire is restored."""
    k = len(controls)
    k1 = (k + 1) // 2
    first, second = controls[:k1], controls[k1:]
    part_a = _chain_mcx(first, work, second + [target])
    part_b = _chain_mcx(second + [work], target, first)
    return part_a + part_b + part_a + part_b


def mcx_to_cx(
    controls: tuple[tuple[int, int], ...],
    target: int,
    work: int | None = None,
) -> list[Gate]:
    """Expand an X gate with arbitrarily many signed controls into the lowered
    gate set.  ``work`` names the borrowed wire, required for >= 3 controls.
    Zero-polarity controls are absorbed by conjugating with X gates."""
    flips = [w for w, pol in controls if pol == 0]
    wires = [w for w, _ in controls]
    k = len(wires)
    if k == 0:
        core = [Gate.x(target)]
    elif k == 1:
        core = [Gate.cx(wires[0], target)]
    elif k == 2:
        core = toffoli(wires[0], wires[1], target)
    else:
        if work is None:
            raise ValueError(f"{k}-control gate needs a borrowed work wire")
        if work == target or work in wires:
            raise ValueError("work wire collides with the gate's own wires")
        core = _split_mcx(wires, target, work)
    pre = [Gate.x(w) for w in flips]
    return pre + core + pre[::-1]


@lru_cache(maxsize=None)
def mcx_cx_cost(c: int) -> int:
    """CX gates in the lowering of a ``c``-control X (measured, not modeled)."""
    if c < 0:
        raise ValueError("control count cannot be negative")
    controls = tuple((w, 1) for w in range(c))
    gates = mcx_to_cx(controls, c, work=c + 1 if c >= 3 else None)
    return sum(1 for g in gates if len(g.controls) == 1)


def lower_circuit(circuit: Circuit) -> Circuit:
    """Expand every multi-controlled X in the circuit.  Adds the shared work
    wire only when some gate actually needs it."""
    needs_work = any(
        g.kind == "x" and len(g.controls) >= 3 for g in circuit.gates
    )
    out = Circuit(circuit.n_main, has_ancilla=circuit.has_ancilla or needs_work)
    work = circuit.n_main if needs_work else None
    for gate in circuit.gates:
        if gate.kind == "x":
            out.extend(mcx_to_cx(gate.controls, gate.target, work))
        else:
            out.append(gate)
    return out
