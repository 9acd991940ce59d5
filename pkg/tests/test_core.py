"""Tests for labels, patterns, sparse states, permutation specs, and the
clustering metric."""

import json
import random

import numpy as np
import pytest

from permweaver.core import (
    PermutationSpec,
    SparseState,
    avg_adjacent_nonzero,
    capacity,
    conforms,
    dump_spec,
    dump_state,
    enumerate_conforming,
    fixed_dims,
    hamming,
    load_spec,
    load_state,
    spanned_dims,
)


def test_hamming_examples():
    assert hamming("000", "000") == 0
    assert hamming("001", "011") == 1
    assert hamming("00111", "01001") == 3


def test_hamming_length_mismatch():
    with pytest.raises(ValueError):
        hamming("00", "000")


def test_conforms_examples():
    assert conforms("001", "**1")
    assert not conforms("000", "**1")
    assert conforms("111", "***")
    # The **1 pattern selects exactly these four labels.
    assert sorted(enumerate_conforming("**1")) == ["001", "011", "101", "111"]


def test_conforms_length_mismatch():
    with pytest.raises(ValueError):
        conforms("00", "0*1")


def test_all_wildcard_conforms_everything():
    for value in range(16):
        assert conforms(format(value, "04b"), "****")


def test_dims_partition_and_capacity():
    pattern = "0*1*0"
    assert spanned_dims(pattern) == (1, 3)
    assert fixed_dims(pattern) == (0, 2, 4)
    assert capacity(pattern) == 4
    assert capacity("***") == 8
    assert capacity("010") == 1


def test_enumeration_matches_capacity():
    rng = random.Random(704)
    for _ in range(40):
        n = rng.randint(1, 12)
        pattern = "".join(rng.choice("01*") for _ in range(n))
        labels = enumerate_conforming(pattern)
        assert len(labels) == capacity(pattern)
        assert len(set(labels)) == len(labels)
        assert all(conforms(label, pattern) for label in labels)


def test_avg_adjacent_nonzero_examples():
    assert avg_adjacent_nonzero({"000"}) == 0
    assert avg_adjacent_nonzero({"000", "001"}) == 1
    # Neighbor counts are 1, 2, 2, 1 along the path 000-001-011-111.
    assert avg_adjacent_nonzero({"000", "001", "011", "111"}) == 1.5


def test_avg_adjacent_nonzero_empty_rejected():
    with pytest.raises(ValueError):
        avg_adjacent_nonzero(set())


def test_avg_adjacent_nonzero_invariances():
    rng = random.Random(1312)
    for _ in range(25):
        n = rng.randint(2, 8)
        m = rng.randint(1, min(20, 2**n))
        labels = set()
        while len(labels) < m:
            labels.add(format(rng.randrange(2**n), f"0{n}b"))
        base = avg_adjacent_nonzero(labels)
        mask = rng.randrange(2**n)
        xored = {format(int(l, 2) ^ mask, f"0{n}b") for l in labels}
        assert avg_adjacent_nonzero(xored) == pytest.approx(base)
        perm = list(range(n))
        rng.shuffle(perm)
        permuted = {"".join(l[p] for p in perm) for l in labels}
        assert avg_adjacent_nonzero(permuted) == pytest.approx(base)


def test_spec_validation():
    spec = PermutationSpec(2, (("00", "11"), ("11", "00")))
    assert spec.n == 2
    assert spec.mapping == {"00": "11", "11": "00"}
    with pytest.raises(ValueError):
        PermutationSpec(2, (("00", "11"), ("00", "01")))  # duplicate source
    with pytest.raises(ValueError):
        PermutationSpec(2, (("00", "11"), ("01", "11")))  # duplicate destination
    with pytest.raises(ValueError):
        PermutationSpec(2, (("0", "11"),))  # wrong length
    with pytest.raises(ValueError):
        PermutationSpec(2, (("0x", "11"),))  # bad character


def test_sparse_state_validation():
    state = SparseState(2, {"00": 0.6, "11": 0.8j})
    assert state.m == 2
    assert state.labels == ("00", "11")
    with pytest.raises(ValueError):
        SparseState(2, {})
    with pytest.raises(ValueError):
        SparseState(2, {"00": 0.0, "11": 1.0})  # zero amplitude
    with pytest.raises(ValueError):
        SparseState(2, {"00": 0.6, "11": 0.7})  # norm off by far more than 1e-10
    # Inputs outside tolerance are rejected, never renormalized.
    eps = 1e-6
    with pytest.raises(ValueError):
        SparseState(1, {"0": 1.0 + eps})


def test_state_json_round_trip():
    state = SparseState(3, {"001": 0.5, "110": -0.5, "111": 0.5 + 0.5j})
    text = dump_state(state)
    obj = json.loads(text)
    assert obj["n"] == 3
    assert obj["amplitudes"]["001"] == [0.5, 0.0]
    again = load_state(text)
    assert again.n == state.n
    assert again.entries == state.entries
    assert load_state(obj).entries == state.entries


def test_spec_json_round_trip():
    spec = PermutationSpec(3, (("000", "101"), ("101", "000")))
    text = dump_spec(spec)
    obj = json.loads(text)
    assert obj == {"n": 3, "map": [["000", "101"], ["101", "000"]]}
    assert load_spec(text).pairs == spec.pairs
    assert load_spec(obj).pairs == spec.pairs


def test_json_errors_name_offending_field():
    with pytest.raises(ValueError, match="amplitudes"):
        load_state({"n": 2})
    with pytest.raises(ValueError, match="n"):
        load_state({"amplitudes": {"00": [1.0, 0.0]}})
    with pytest.raises(ValueError, match="map"):
        load_spec({"n": 2})
    with pytest.raises(ValueError):
        load_state({"n": 2, "amplitudes": {"00": [1.0]}})
