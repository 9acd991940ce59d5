"""Regenerate the golden circuit set under golden/.

Each entry is a QASM file plus a JSON reference: either the expected
statevector from the in-repo simulator ({"kind": "statevector", "n_wires",
"amplitudes": [[re, im], ...]}, amplitude index taken with wire 0 as the most
significant bit) or a permutation spec in the standard interchange format
({"n", "map"}), meaning every listed source basis state must map to its
destination.  `negative/` holds one deliberately corrupted circuit whose
check must fail; it is excluded from the passing set.

Deterministic: rerunning produces byte-identical files.
"""

import json
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from permweaver.circuit import Circuit, Gate, export_qasm
from permweaver.core import PermutationSpec, SparseState, dump_spec
from permweaver.mcx import lower_circuit, mcx_to_cx
from permweaver.sim import statevector
from permweaver.stateprep import prepare
from permweaver.synth import decompose_permutation, emit_swap_block

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "golden"


def loader(width: int) -> list[Gate]:
    """Fixed single-qubit rotations that spread |0...0> into a dense state, so
    equivalence checks exercise every amplitude."""
    gates = []
    for w in range(width):
        gates.append(Gate.ry(0.3 + 0.17 * w, w))
        gates.append(Gate.rz(0.11 * w - 0.4, w))
    return gates


def write_statevector_entry(name: str, circ: Circuit) -> None:
    vec = statevector(circ)
    ref = {
        "kind": "statevector",
        "n_wires": circ.width,
        "amplitudes": [[float(a.real), float(a.imag)] for a in vec],
    }
    (GOLDEN / f"{name}.qasm").write_text(export_qasm(circ))
    (GOLDEN / f"{name}.ref.json").write_text(json.dumps(ref) + "\n")


def write_permutation_entry(name: str, circ: Circuit, spec: PermutationSpec) -> None:
    (GOLDEN / f"{name}.qasm").write_text(export_qasm(circ))
    (GOLDEN / f"{name}.ref.json").write_text(dump_spec(spec))


def with_loader(circ: Circuit) -> Circuit:
    out = Circuit(circ.n_main, has_ancilla=circ.has_ancilla)
    out.extend(loader(out.width))
    out.extend(circ.gates)
    return out


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)
    (GOLDEN / "negative").mkdir(exist_ok=True)

    # Empty circuit: the identity on |000>.
    write_statevector_entry("01_empty", Circuit(3))

    # The four elementary swap-block shapes, behind a dense loader.
    blocks = [
        ("02_block_bare_x", "**0", "**1"),
        ("03_block_single_cx", "*01", "*11"),
        ("04_block_conjugated_cx", "00*", "11*"),
        ("05_block_full_swap", "000", "111"),
    ]
    for name, shc1, shc2 in blocks:
        _, circ = emit_swap_block(shc1, shc2)
        write_statevector_entry(name, with_loader(lower_circuit(circ)))

    # Lowered multi-controlled X for 0..6 controls, alternating polarities.
    for c in range(7):
        controls = tuple((w, w % 2) for w in range(c))
        target = c
        work = c + 1 if c >= 3 else None
        width = c + 2 if c >= 3 else c + 1
        circ = Circuit(width - (1 if work is not None else 0), has_ancilla=work is not None)
        circ.extend(loader(width))
        circ.extend(mcx_to_cx(controls, target, work=work))
        write_statevector_entry(f"{6 + c:02d}_mcx_{c}_controls", circ)

    # One full sparse preparation per method.
    rng = np.random.default_rng(20260822)
    clustered = [0, 1, 2, 3, 6, 7, 0xD0, 0xD1, 0xD4, 0xD5, 0xF4, 0xF5]
    amps = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    state8 = SparseState(
        8, dict(zip([format(v, "08b") for v in clustered], amps / np.linalg.norm(amps)))
    )
    write_statevector_entry("13_prep_cluster_n8", prepare(state8, "cluster"))

    vals6 = [int(v) for v in rng.choice(64, size=6, replace=False)]
    amps6 = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    state6 = SparseState(
        6, dict(zip([format(v, "06b") for v in vals6], amps6 / np.linalg.norm(amps6)))
    )
    write_statevector_entry("14_prep_pairwise_n6", prepare(state6, "pairwise"))

    vals5 = [int(v) for v in rng.choice(32, size=7, replace=False)]
    amps5 = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    state5 = SparseState(
        5, dict(zip([format(v, "05b") for v in vals5], amps5 / np.linalg.norm(amps5)))
    )
    write_statevector_entry("15_prep_dense_n5", prepare(state5, "dense"))

    # Synthesized permutations, checked source-by-source against the spec.
    perm_shapes = [(5, 4), (6, 8), (8, 12)]
    for i, (n, m) in enumerate(perm_shapes):
        sources = rng.choice(1 << n, size=m, replace=False)
        dests = rng.choice(1 << n, size=m, replace=False)
        spec = PermutationSpec(
            n,
            tuple(
                (format(int(s), f"0{n}b"), format(int(d), f"0{n}b"))
                for s, d in zip(sources, dests)
            ),
        )
        circ = lower_circuit(decompose_permutation(spec))
        write_permutation_entry(f"{16 + i}_synth_perm_n{n}", circ, spec)

    # Phase-heavy single-qubit cascade around CX gates.
    circ = Circuit(3)
    for w in range(3):
        circ.append(Gate.h(w))
    circ.append(Gate.cx(0, 1))
    circ.append(Gate.t(1))
    circ.append(Gate.cx(1, 2))
    circ.append(Gate.tdg(2))
    circ.append(Gate.t(2))
    circ.append(Gate.cx(1, 2))
    circ.append(Gate.rz(0.7, 0))
    circ.append(Gate.cx(0, 1))
    write_statevector_entry("19_phase_cascade", circ)

    # Pure rotation ladder (no entanglement) as a convention sentinel.
    circ = Circuit(4)
    circ.extend(loader(4))
    for w in range(3):
        circ.append(Gate.ry(0.9 - 0.2 * w, w + 1))
    write_statevector_entry("20_rotation_ladder", circ)

    # Negative control: corrupt one CX by swapping control and target, keep
    # the honest reference; equivalence checks must reject it.
    _, circ = emit_swap_block("*01", "*11")
    spec = PermutationSpec(3, (("001", "011"), ("011", "001")))
    qasm = export_qasm(Circuit(3, gates=list(circ.gates)))
    # The only cx line is "cx q[2],q[1];" — flip it.
    bad = qasm.replace("cx q[2],q[1];", "cx q[1],q[2];")
    assert bad != qasm
    (GOLDEN / "negative" / "flipped_control.qasm").write_text(bad)
    (GOLDEN / "negative" / "flipped_control.ref.json").write_text(dump_spec(spec))

    names = sorted(p.name for p in GOLDEN.glob("*.qasm"))
    print(f"wrote {len(names)} golden circuits + 1 negative:")
    for name in names:
        print(f"  {name}")


if __name__ == "__main__":
    main()
