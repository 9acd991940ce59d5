import assert from "node:assert/strict";
import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import test from "node:test";

import { crossvalidate, reverseBits, TOLERANCE, type Report } from "./xval";

const GOLDEN = path.resolve(__dirname, "..", "..", "golden");

function goldenPairs(): [string, string][] {
  return fs
    .readdirSync(GOLDEN)
    .filter((name) => name.endsWith(".qasm"))
    .sort()
    .map((name) => [
      path.join(GOLDEN, name),
      path.join(GOLDEN, name.replace(/\.qasm$/, ".ref.json")),
    ]);
}

test("bit reversal round-trips", () => {
  assert.equal(reverseBits(0b100, 3), 0b001);
  assert.equal(reverseBits(0b001, 3), 0b100);
  assert.equal(reverseBits(0b10110, 5), 0b01101);
  for (let i = 0; i < 64; i++) {
    assert.equal(reverseBits(reverseBits(i, 6), 6), i);
  }
});

test("golden set is present and complete", () => {
  const pairs = goldenPairs();
  assert.ok(pairs.length >= 20, `expected at least 20 golden circuits, found ${pairs.length}`);
  for (const [, ref] of pairs) {
    assert.ok(fs.existsSync(ref), `missing reference ${ref}`);
  }
});

test("every golden circuit agrees with the reference", () => {
  for (const [qasm, ref] of goldenPairs()) {
    const report = crossvalidate(qasm, ref);
    assert.equal(report.pass, true, `${path.basename(qasm)}: ${JSON.stringify(report)}`);
    if (report.mode === "statevector") {
      assert.ok(report.maxDeviation !== undefined && report.maxDeviation <= TOLERANCE);
    } else {
      assert.equal(report.mode, "permutation");
      assert.equal(report.mismatches!.length, 0);
      assert.ok(report.checkedSources! > 0);
    }
  }
});

test("empty circuit matches |0...0> with zero deviation", () => {
  const report = crossvalidate(
    path.join(GOLDEN, "01_empty.qasm"),
    path.join(GOLDEN, "01_empty.ref.json")
  );
  assert.equal(report.pass, true);
  assert.equal(report.mode, "statevector");
  assert.ok(report.maxDeviation! <= 1e-12);
});

test("lowered double-controlled X matches the reference statevector", () => {
  const report = crossvalidate(
    path.join(GOLDEN, "08_mcx_2_controls.qasm"),
    path.join(GOLDEN, "08_mcx_2_controls.ref.json")
  );
  assert.equal(report.pass, true);
  assert.ok(report.maxDeviation! <= TOLERANCE);
});

test("flipped control polarity fails and lists the mismatching states", () => {
  const report = crossvalidate(
    path.join(GOLDEN, "negative", "flipped_control.qasm"),
    path.join(GOLDEN, "negative", "flipped_control.ref.json")
  );
  assert.equal(report.pass, false);
  assert.equal(report.mode, "permutation");
  assert.ok(report.mismatches!.length > 0);
  const sources = report.mismatches!.map((m) => m.source);
  assert.ok(sources.includes("001") || sources.includes("011"));
  for (const m of report.mismatches!) {
    assert.notEqual(m.got, m.expected);
  }
});

test("unparsable QASM yields an error report", () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "xval-"));
  const bad = path.join(dir, "bad.qasm");
  const ref = path.join(dir, "ref.json");
  fs.writeFileSync(bad, "OPENQASM 2.0;\nqreg q[2];\nfrobnicate q[0];\n");
  fs.writeFileSync(
    ref,
    JSON.stringify({ kind: "statevector", n_wires: 2, amplitudes: [[1, 0], [0, 0], [0, 0], [0, 0]] })
  );
  const report = crossvalidate(bad, ref);
  assert.equal(report.pass, false);
  assert.equal(report.mode, "error");
  assert.ok(report.error && report.error.length > 0);
});

test("cli: pass, fail, and error exit codes", () => {
  const cli = path.join(__dirname, "cli.js");
  const run = (args: string[]) => {
    try {
      const stdout = execFileSync(process.execPath, [cli, ...args], { encoding: "utf8" });
      return { code: 0, stdout };
    } catch (err: any) {
      return { code: err.status as number, stdout: err.stdout as string };
    }
  };

  const good = run([
    path.join(GOLDEN, "13_prep_cluster_n8.qasm"),
    "--ref",
    path.join(GOLDEN, "13_prep_cluster_n8.ref.json"),
  ]);
  assert.equal(good.code, 0);
  const goodReport = JSON.parse(good.stdout) as Report;
  assert.equal(goodReport.pass, true);

  const bad = run([
    path.join(GOLDEN, "negative", "flipped_control.qasm"),
    "--ref",
    path.join(GOLDEN, "negative", "flipped_control.ref.json"),
  ]);
  assert.equal(bad.code, 1);
  const badReport = JSON.parse(bad.stdout) as Report;
  assert.equal(badReport.pass, false);
  assert.ok(badReport.mismatches!.length > 0);

  const missing = run(["/nonexistent.qasm", "--ref", "/nonexistent.json"]);
  assert.equal(missing.code, 2);

  const usage = run(["--ref"]);
  assert.equal(usage.code, 2);
});
