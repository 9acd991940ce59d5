"""Command-line interface: synthesis, preparation, verification, benchmark.

Exit codes: 0 success, 1 verification failure (or a failed run), 2 input
error.  The ``PERMWEAVER_SEED`` environment variable overrides every
benchmark dataset seed, for reproducible CI runs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

import numpy as np

from . import bench as bench_mod
from .circuit import Circuit, Gate, export_qasm, stats
from .core import load_spec, load_state
from .mcx import lower_circuit
from .sim import fidelity, state_of_label, statevector
from .stateprep import prepare
from .synth import decompose_permutation

__all__ = ["main"]

FIDELITY_FLOOR = 1.0 - 1e-8


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _listing(circ: Circuit) -> str:
    """Permutation-level text listing (not loadable OpenQASM): multi-controlled
    X gates in one line each, ``!`` marking a 0-polarity control."""
    lines = [f"# permutation-level listing; {circ.width} wires"]
    for gate in circ.gates:
        if gate.kind != "x":
            raise ValueError("listing covers permutation-level circuits only")
        if not gate.controls:
            lines.append(f"x q[{gate.target}]")
        else:
            ctrls = ",".join(f"{'!' if pol == 0 else ''}q[{w}]" for w, pol in gate.controls)
            name = {1: "cx"}.get(len(gate.controls), "mcx")
            lines.append(f"{name} {ctrls} -> q[{gate.target}]")
    return "\n".join(lines) + "\n"


_QASM_GATE = re.compile(
    r"^(x|h|t|tdg|cx|ry|rz)\s*(\(([^)]*)\))?\s+([^;]+);$"
)
_QREG = re.compile(r"^qreg\s+(\w+)\s*\[\s*(\d+)\s*\]\s*;$")
_WIRE = re.compile(r"^\s*(\w+)\s*\[\s*(\d+)\s*\]\s*$")


def read_qasm(text: str) -> Circuit:
    """Parse the OpenQASM 2.0 subset produced by export_qasm: one quantum
    register and the gate set {x, h, t, tdg, cx, ry, rz} with literal float
    angles."""
    width = None
    gates: list[Gate] = []
    for raw in text.splitlines():
        line = raw.split("//")[0].strip()
        if not line:
            continue
        if line.startswith("OPENQASM") or line.startswith("include"):
            continue
        qreg = _QREG.match(line)
        if qreg:
            if width is not None:
                raise ValueError("multiple qreg declarations are not supported")
            width = int(qreg.group(2))
            continue
        gate = _QASM_GATE.match(line)
        if gate is None:
            raise ValueError(f"unsupported QASM line: {raw.strip()!r}")
        kind, _, angle_text, args = gate.groups()
        wires = []
        for part in args.split(","):
            wire = _WIRE.match(part)
            if wire is None:
                raise ValueError(f"bad wire reference {part.strip()!r}")
            wires.append(int(wire.group(2)))
        if kind == "cx":
            if len(wires) != 2:
                raise ValueError("cx expects two wires")
            gates.append(Gate.cx(wires[0], wires[1]))
            continue
        if len(wires) != 1:
            raise ValueError(f"{kind} expects one wire")
        if kind in ("ry", "rz"):
            if angle_text is None:
                raise ValueError(f"{kind} requires an angle")
            try:
                angle = float(angle_text)
            except ValueError as exc:
                raise ValueError(f"bad angle {angle_text!r}") from exc
            gates.append(Gate(kind, wires[0], angle=angle))
        else:
            if angle_text is not None:
                raise ValueError(f"{kind} takes no angle")
            gates.append(Gate(kind, wires[0]))
    if width is None:
        raise ValueError("missing qreg declaration")
    circ = Circuit(width)
    circ.extend(gates)
    return circ


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = load_spec(_read_json(args.spec))
    circ = decompose_permutation(spec)
    if args.no_lower:
        _write_text(args.out, _listing(circ))
    else:
        circ = lower_circuit(circ)
        _write_text(args.out, export_qasm(circ))
    if args.stats:
        _write_text(args.stats, json.dumps(stats(circ), indent=2) + "\n")
    return 0


def _cmd_prep(args: argparse.Namespace) -> int:
    state = load_state(_read_json(args.state))
    circ = prepare(state, args.method)
    _write_text(args.out, export_qasm(circ))
    if args.stats:
        _write_text(args.stats, json.dumps(stats(circ), indent=2) + "\n")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    with open(args.qasm) as fh:
        circ = read_qasm(fh.read())
    if args.spec:
        spec = load_spec(_read_json(args.spec))
        if circ.width not in (spec.n, spec.n + 1):
            raise ValueError(
                f"QASM register has {circ.width} wires; spec needs {spec.n} (+1 work wire)"
            )
        worst = 1.0
        for src, dst in spec.pairs:
            got = statevector(circ, start=state_of_label(src, circ.width))
            want = state_of_label(dst, circ.width)
            worst = min(worst, fidelity(got, want))
        ok = worst >= FIDELITY_FLOOR
        print(f"{'PASS' if ok else 'FAIL'} min pair fidelity {worst:.12f}")
        return 0 if ok else 1
    state = load_state(_read_json(args.state))
    if circ.width not in (state.n, state.n + 1):
        raise ValueError(
            f"QASM register has {circ.width} wires; state needs {state.n} (+1 work wire)"
        )
    target = np.zeros(1 << circ.width, dtype=complex)
    for label, amp in state.entries.items():
        target += amp * state_of_label(label, circ.width)
    fid = fidelity(statevector(circ), target)
    ok = fid >= FIDELITY_FLOOR
    print(f"{'PASS' if ok else 'FAIL'} fidelity {fid:.12f}")
    return 0 if ok else 1


def _cmd_bench(args: argparse.Namespace) -> int:
    obj = _read_json(args.config)
    if "datasets" not in obj or not isinstance(obj["datasets"], list):
        raise ValueError("bench config needs a 'datasets' list")
    seed_override = os.environ.get("PERMWEAVER_SEED")
    configs = []
    for i, entry in enumerate(obj["datasets"]):
        if not isinstance(entry, dict):
            raise ValueError(f"datasets[{i}] must be an object")
        try:
            cfg = bench_mod.DatasetConfig(
                dataset_id=str(entry.get("dataset_id", f"ds{i}")),
                n=entry["n"],
                m=entry["m"],
                clustering_knob=float(entry["clustering_knob"]),
                states_per_dataset=int(entry.get("states_per_dataset", 100)),
                seed=int(seed_override) if seed_override is not None else int(entry.get("seed", 0)),
            )
        except KeyError as exc:
            raise ValueError(f"datasets[{i}] missing field {exc}") from exc
        configs.append(cfg)
    methods = obj.get("methods", sorted(bench_mod.METHOD_NAMES))
    if not isinstance(methods, list):
        raise ValueError("'methods' must be a list")
    rows = bench_mod.run_benchmark(configs, methods, jobs=args.jobs)
    bench_mod.write_csv(rows, args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="permweaver",
        description="Sparse permutation synthesis and sparse state preparation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="decompose a permutation spec into a circuit")
    p_synth.add_argument("--spec", required=True, help="permutation spec JSON")
    p_synth.add_argument("--out", required=True, help="output QASM path")
    p_synth.add_argument("--stats", help="optional stats JSON path")
    p_synth.add_argument(
        "--no-lower",
        action="store_true",
        help="emit a permutation-level listing instead of lowered QASM",
    )
    p_synth.set_defaults(fn=_cmd_synth)

    p_prep = sub.add_parser("prep", help="prepare a sparse state")
    p_prep.add_argument("--state", required=True, help="sparse state JSON")
    p_prep.add_argument("--method", default="cluster", choices=["cluster", "pairwise", "dense"])
    p_prep.add_argument("--out", required=True, help="output QASM path")
    p_prep.add_argument("--stats", help="optional stats JSON path")
    p_prep.set_defaults(fn=_cmd_prep)

    p_verify = sub.add_parser("verify", help="simulate a QASM file against a spec or state")
    p_verify.add_argument("--qasm", required=True, help="circuit to check")
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", help="permutation spec JSON to verify against")
    group.add_argument("--state", help="sparse state JSON to verify against")
    p_verify.set_defaults(fn=_cmd_verify)

    p_bench = sub.add_parser("bench", help="run the clustering benchmark")
    p_bench.add_argument("--config", required=True, help="benchmark config JSON")
    p_bench.add_argument("--out", required=True, help="output CSV path")
    p_bench.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_bench.set_defaults(fn=_cmd_bench)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, 0 on --help; keep its code.
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
