"""Sub-hypercubes, pattern strings, and swap blocks.

A pattern string over {0,1,*} names a sub-hypercube (SHC) of basis labels:
'*' positions range freely, fixed positions pin a bit.  Position 0 is the
leftmost character and the most significant bit (wire 0).  A swap block
exchanges two SHCs that span the same wildcard positions, built from one
multi-controlled X conjugated by CX gates.
"""

from permweaver.core import capacity, enumerate_conforming, spanned_dims
from permweaver.sim import simulate_permutation
from permweaver.synth import block_cx_cost, emit_swap_block

print("== Patterns name sub-hypercubes ==")
for pattern in ("**0", "*01", "1*0*"):
    labels = enumerate_conforming(pattern)
    print(
        f"  {pattern!r}: spans dims {spanned_dims(pattern)}, "
        f"capacity {capacity(pattern)}, labels {labels}"
    )

print()
print("== The four elementary swap constructions ==")
cases = [
    ("**0", "**1", "patterns differ in one free-standing bit: a bare X"),
    ("*01", "*11", "one flip bit plus one agreeing fixed bit: a single CX"),
    ("00*", "11*", "two flip bits: CX conjugation folds one onto the other"),
    ("000", "111", "three flip bits and controls: conjugated double-controlled X"),
]
for shc1, shc2, why in cases:
    block, circ = emit_swap_block(shc1, shc2)
    print(f"  swap {shc1} <-> {shc2}  ({why})")
    for gate in circ:
        print(f"      {gate}")
    print(f"      CX cost {block_cx_cost(block)}")

print()
print("== A block is an involution on basis labels ==")
_, circ = emit_swap_block("000", "111")
for label in ("000", "111", "010", "101"):
    once = simulate_permutation(circ, label)
    twice = simulate_permutation(circ, once)
    print(f"  {label} -> {once} -> {twice}")
