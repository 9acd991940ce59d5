/**
 * Cross-validation of emitted OpenQASM circuits against the independent
 * `quantum-circuit` simulator.
 *
 * A reference JSON is either a statevector
 * (`{"kind": "statevector", "n_wires", "amplitudes": [[re, im], ...]}`) or a
 * permutation spec (`{"n", "map": [[source, destination], ...]}`).  In
 * statevector mode the circuit is simulated from |0...0> and compared
 * amplitude by amplitude after global-phase alignment; in permutation mode
 * every listed source basis state is pushed through the circuit and must come
 * out as exactly its destination (work wire back to 0).
 *
 * Wire convention of the emitting side: wire 0 is the leftmost label
 * character and the most significant bit of an amplitude index.
 * `quantum-circuit` numbers the same register elements identically but packs
 * qubit k into bit k of its state index (least significant first), so state
 * indices — never gate wires — are translated by bit reversal.
 */

import * as fs from "fs";
import QuantumCircuit = require("quantum-circuit");

export const TOLERANCE = 1e-8;

export interface Mismatch {
  source: string;
  expected: string;
  got: string;
}

export interface Report {
  qasm: string;
  ref: string;
  mode: "statevector" | "permutation" | "error";
  pass: boolean;
  maxDeviation?: number;
  mismatches?: Mismatch[];
  checkedSources?: number;
  error?: string;
}

interface StatevectorRef {
  kind: "statevector";
  n_wires: number;
  amplitudes: [number, number][];
}

interface PermutationRef {
  n: number;
  map: [string, string][];
}

type Complex = { re: number; im: number };

export function reverseBits(value: number, width: number): number {
  let out = 0;
  for (let b = 0; b < width; b++) {
    if (value & (1 << b)) out |= 1 << (width - 1 - b);
  }
  return out;
}

function declaredWidth(qasm: string): number {
  const m = qasm.match(/qreg\s+\w+\s*\[\s*(\d+)\s*\]/);
  if (!m) throw new Error("no qreg declaration found");
  return parseInt(m[1], 10);
}

const LINE_FORMS: RegExp[] = [
  /^OPENQASM 2\.0;$/,
  /^include "qelib1\.inc";$/,
  /^qreg \w+\[\d+\];$/,
  /^(?:x|h|t|tdg) \w+\[\d+\];$/,
  /^cx \w+\[\d+\],\w+\[\d+\];$/,
  /^r[yz]\(-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?\) \w+\[\d+\];$/,
];

/**
 * Reject anything outside the emitted statement forms up front: the backing
 * simulator silently skips statements it does not understand, which would
 * turn a corrupt file into a quietly different circuit instead of a failure.
 */
function validateQasm(qasm: string): void {
  const lines = qasm.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].replace(/\/\/.*$/, "").trim();
    if (line === "") continue;
    if (!LINE_FORMS.some((form) => form.test(line))) {
      throw new Error(`QASM parse failed at line ${i + 1}: unsupported statement ${JSON.stringify(line)}`);
    }
  }
}

function importCircuit(qasm: string): QuantumCircuit {
  validateQasm(qasm);
  const circuit = new QuantumCircuit();
  let failures: { msg: string; line?: number; col?: number }[] = [];
  circuit.importQASM(qasm, (errors) => {
    failures = errors ?? [];
  });
  if (failures.length > 0) {
    const first = failures[0];
    const where = first.line !== undefined ? ` at line ${first.line}` : "";
    throw new Error(`QASM parse failed${where}: ${first.msg}`);
  }
  return circuit;
}

/**
 * Simulate and return amplitudes indexed in the emitter's big-endian
 * convention.  The simulator drops register wires above the last gate it
 * sees, so the state is zero-padded back to the declared width (untouched
 * wires stay |0>) before the index translation.
 */
function simulate(qasm: string, width: number, initial?: (0 | 1)[]): Complex[] {
  const circuit = importCircuit(qasm);
  if (circuit.numQubits > width) {
    throw new Error(
      `circuit touches ${circuit.numQubits} wires, reference expects ${width}`
    );
  }
  circuit.run(initial ? initial.slice(0, circuit.numQubits) : null);
  const raw = circuit.stateAsSimpleArray(false);
  const padded: Complex[] = new Array(1 << width).fill(null).map(() => ({ re: 0, im: 0 }));
  for (let i = 0; i < raw.length; i++) {
    padded[i] = { re: raw[i].re, im: raw[i].im };
  }
  // An initial 1 on a wire the simulator dropped would be silently lost.
  if (initial) {
    for (let w = circuit.numQubits; w < width; w++) {
      if (initial[w] === 1) {
        throw new Error(`initial value 1 on wire ${w} beyond the simulated register`);
      }
    }
  }
  const out: Complex[] = new Array(1 << width);
  for (let i = 0; i < padded.length; i++) {
    out[reverseBits(i, width)] = padded[i];
  }
  return out;
}

function checkStatevector(qasmPath: string, qasm: string, ref: StatevectorRef, refPath: string): Report {
  const width = ref.n_wires;
  if (ref.amplitudes.length !== 1 << width) {
    throw new Error(
      `reference has ${ref.amplitudes.length} amplitudes for ${width} wires`
    );
  }
  if (declaredWidth(qasm) !== width) {
    throw new Error(
      `qreg declares ${declaredWidth(qasm)} wires, reference expects ${width}`
    );
  }
  const got = simulate(qasm, width);

  // Global phase alignment: divide out the phase difference measured at the
  // largest-magnitude simulated amplitude.
  let anchor = 0;
  let best = -1;
  for (let i = 0; i < got.length; i++) {
    const mag = got[i].re * got[i].re + got[i].im * got[i].im;
    if (mag > best) {
      best = mag;
      anchor = i;
    }
  }
  const g = got[anchor];
  const [rr, ri] = ref.amplitudes[anchor];
  const gm2 = g.re * g.re + g.im * g.im;
  // phase = ref[anchor] / got[anchor]; fall back to identity for a null state.
  const pr = gm2 > 0 ? (rr * g.re + ri * g.im) / gm2 : 1;
  const pi = gm2 > 0 ? (ri * g.re - rr * g.im) / gm2 : 0;

  let maxDeviation = 0;
  for (let i = 0; i < got.length; i++) {
    const ar = got[i].re * pr - got[i].im * pi;
    const ai = got[i].re * pi + got[i].im * pr;
    const d = Math.hypot(ar - ref.amplitudes[i][0], ai - ref.amplitudes[i][1]);
    if (d > maxDeviation) maxDeviation = d;
  }
  return {
    qasm: qasmPath,
    ref: refPath,
    mode: "statevector",
    pass: maxDeviation <= TOLERANCE,
    maxDeviation,
  };
}

function labelOfIndex(index: number, width: number): string {
  let label = "";
  for (let w = 0; w < width; w++) {
    label += (index >> (width - 1 - w)) & 1 ? "1" : "0";
  }
  return label;
}

function checkPermutation(qasmPath: string, qasm: string, ref: PermutationRef, refPath: string): Report {
  const width = declaredWidth(qasm);
  if (width !== ref.n && width !== ref.n + 1) {
    throw new Error(
      `qreg declares ${width} wires, spec needs ${ref.n} (+1 optional work wire)`
    );
  }
  const mismatches: Mismatch[] = [];
  for (const [source, destination] of ref.map) {
    const initial: (0 | 1)[] = new Array(width).fill(0);
    for (let w = 0; w < source.length; w++) {
      initial[w] = source[w] === "1" ? 1 : 0;
    }
    const out = simulate(qasm, width, initial);
    let top = 0;
    let best = -1;
    for (let i = 0; i < out.length; i++) {
      const mag = out[i].re * out[i].re + out[i].im * out[i].im;
      if (mag > best) {
        best = mag;
        top = i;
      }
    }
    const full = labelOfIndex(top, width);
    const got = full.slice(0, ref.n);
    const work = full.slice(ref.n);
    const clean = Math.abs(1 - Math.sqrt(best)) <= TOLERANCE;
    if (got !== destination || work === "1" || !clean) {
      mismatches.push({ source, expected: destination, got: work === "1" ? full : got });
    }
  }
  return {
    qasm: qasmPath,
    ref: refPath,
    mode: "permutation",
    pass: mismatches.length === 0,
    mismatches,
    checkedSources: ref.map.length,
  };
}

/** Validate one QASM file against its JSON reference. */
export function crossvalidate(qasmPath: string, refPath: string): Report {
  try {
    const qasm = fs.readFileSync(qasmPath, "utf8");
    const ref = JSON.parse(fs.readFileSync(refPath, "utf8"));
    if (ref && typeof ref === "object" && Array.isArray(ref.map)) {
      return checkPermutation(qasmPath, qasm, ref as PermutationRef, refPath);
    }
    if (ref && typeof ref === "object" && Array.isArray(ref.amplitudes)) {
      return checkStatevector(qasmPath, qasm, ref as StatevectorRef, refPath);
    }
    throw new Error("reference JSON is neither a statevector nor a permutation spec");
  } catch (err) {
    return {
      qasm: qasmPath,
      ref: refPath,
      mode: "error",
      pass: false,
      error: err instanceof Error ? err.message : String(err),
    };
  }
}
