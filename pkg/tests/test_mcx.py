"""Tests for multi-controlled X lowering and its CX cost model."""

import itertools

import numpy as np
import pytest

from permweaver.circuit import Circuit, Gate, cx_count
from permweaver.mcx import lower_circuit, mcx_cx_cost, mcx_to_cx, toffoli
from permweaver.sim import simulate_permutation, state_of_label, statevector, unitary


def reference_mcx_unitary(n_wires, controls, target):
    """Dense reference: flip target exactly where every control matches its
    polarity; identity on all other wires."""
    dim = 2**n_wires
    mat = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n_wires - 1 - w)) & 1 for w in range(n_wires)]
        if all(bits[w] == pol for w, pol in controls):
            bits[target] ^= 1
        out = 0
        for b in bits:
            out = (out << 1) | b
        mat[out, idx] = 1
    return mat


def lowered_circuit(controls, target, n_wires, work=None):
    circ = Circuit(n_wires)
    circ.extend(mcx_to_cx(controls, target, work=work))
    return circ


def test_zero_controls_is_plain_x():
    assert mcx_to_cx((), 0) == [Gate.x(0)]


def test_one_positive_control_is_cx():
    assert mcx_to_cx(((0, 1),), 1) == [Gate.cx(0, 1)]


def test_two_controls_is_six_cx_toffoli():
    gates = mcx_to_cx(((0, 1), (1, 1)), 2)
    circ = Circuit(3)
    circ.extend(gates)
    assert cx_count(circ) == 6
    assert np.allclose(unitary(circ), reference_mcx_unitary(3, ((0, 1), (1, 1)), 2), atol=1e-12)


def test_four_controls_with_work_wire():
    controls = tuple((w, 1) for w in range(4))
    circ = lowered_circuit(controls, 4, 6, work=5)
    expected = reference_mcx_unitary(6, controls, 4)  # identity on wire 5
    assert np.allclose(unitary(circ), expected, atol=1e-10)


def test_missing_work_wire_rejected():
    with pytest.raises(ValueError):
        mcx_to_cx(((0, 1), (1, 1), (2, 1)), 3)


def test_colliding_wires_rejected():
    with pytest.raises(ValueError):
        mcx_to_cx(((0, 1), (1, 1), (2, 1)), 3, work=2)
    with pytest.raises(ValueError):
        mcx_to_cx(((0, 1),), 0)


def test_unitary_equivalence_small_counts_all_polarities():
    for c in range(0, 4):
        n_wires = c + 2 if c >= 3 else c + 1
        work = n_wires - 1 if c >= 3 else None
        controls_base = tuple(range(c))
        target = c
        for pols in itertools.product((0, 1), repeat=c):
            controls = tuple(zip(controls_base, pols))
            circ = lowered_circuit(controls, target, n_wires, work=work)
            expected = reference_mcx_unitary(n_wires, controls, target)
            assert np.allclose(unitary(circ), expected, atol=1e-10), (c, pols)


def test_ancilla_borrowed_dirty_and_restored():
    # The lowered circuit mixes CX with single-qubit gates, so basis states are
    # pushed through the statevector simulator and read back off the result.
    rng = np.random.default_rng(7)
    for _ in range(200):
        c = int(rng.integers(3, 7))
        n_wires = c + 2
        work = n_wires - 1
        pols = tuple(int(p) for p in rng.integers(0, 2, size=c))
        controls = tuple(zip(range(c), pols))
        circ = Circuit(n_wires)
        circ.extend(mcx_to_cx(controls, c, work=work))
        bits = [int(b) for b in rng.integers(0, 2, size=n_wires)]
        label = "".join(map(str, bits))
        vec = statevector(circ, start=state_of_label(label, n_wires))
        fire = all(bits[w] == p for w, p in controls)
        expect = bits.copy()
        if fire:
            expect[c] ^= 1
        # Work wire must return to its input value even when it starts at 1.
        out_index = int("".join(map(str, expect)), 2)
        assert abs(vec[out_index]) == pytest.approx(1.0, abs=1e-10)


def test_cost_model_matches_emitted_circuits():
    for c in range(0, 13):
        n_wires = c + 2
        work = n_wires - 1 if c >= 3 else None
        controls = tuple((w, 1) for w in range(c))
        circ = lowered_circuit(controls, c, n_wires, work=work)
        assert mcx_cx_cost(c) == cx_count(circ), c


def test_cost_table_frozen():
    table = [mcx_cx_cost(c) for c in range(13)]
    assert table == [0, 1, 6, 24, 60, 96, 144, 192, 240, 288, 336, 384, 432]
    # Linear regime: exactly 48*c - 144 from five controls on.
    for c in range(5, 13):
        assert mcx_cx_cost(c) == 48 * c - 144
        assert mcx_cx_cost(c) <= 48 * c


def test_cost_growth_linear():
    costs = [mcx_cx_cost(c) for c in range(3, 13)]
    second = [costs[i + 2] - 2 * costs[i + 1] + costs[i] for i in range(len(costs) - 2)]
    assert all(d <= 12 for d in second)


def test_polarity_conjugation_adds_no_cx():
    pos = tuple((w, 1) for w in range(4))
    neg = tuple((w, 0) for w in range(4))
    circ_pos = lowered_circuit(pos, 4, 6, work=5)
    circ_neg = lowered_circuit(neg, 4, 6, work=5)
    assert cx_count(circ_pos) == cx_count(circ_neg)


def test_toffoli_helper_matches_reference():
    circ = Circuit(3)
    circ.extend(toffoli(0, 1, 2))
    assert np.allclose(unitary(circ), reference_mcx_unitary(3, ((0, 1), (1, 1)), 2), atol=1e-12)


def test_lower_circuit_adds_shared_work_wire_only_when_needed():
    small = Circuit(3)
    small.append(Gate.mcx(((0, 1), (1, 1)), 2))
    lowered = lower_circuit(small)
    assert lowered.width == 3 and lowered.is_lowered()

    big = Circuit(4)
    big.append(Gate.mcx(((0, 1), (1, 1), (2, 1)), 3))
    lowered = lower_circuit(big)
    assert lowered.width == 5 and lowered.has_ancilla
    assert lowered.is_lowered()


def test_lower_circuit_preserves_permutation_action():
    rng = np.random.default_rng(31)
    for _ in range(20):
        n = int(rng.integers(4, 7))
        circ = Circuit(n)
        for _ in range(4):
            k = int(rng.integers(0, n))
            wires = rng.permutation(n)[: k + 1]
            target = int(wires[0])
            controls = tuple((int(w), int(rng.integers(0, 2))) for w in wires[1:])
            circ.append(Gate("x", target, controls=controls))
        lowered = lower_circuit(circ)
        for _ in range(8):
            label = "".join(str(int(b)) for b in rng.integers(0, 2, size=n))
            expected = simulate_permutation(circ, label)
            vec = statevector(lowered, start=state_of_label(label, lowered.width))
            out_index = int(expected, 2) << (lowered.width - n)
            assert abs(vec[out_index]) == pytest.approx(1.0, abs=1e-10)
