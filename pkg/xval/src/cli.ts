#!/usr/bin/env node
/**
 * xval <circuit.qasm> --ref <reference.json>
 *
 * Prints a JSON report to stdout.  Exit 0 when the check passes, 1 when the
 * circuit disagrees with the reference, 2 on parse/usage errors.
 */

import { crossvalidate } from "./xval";

function usage(): never {
  process.stderr.write("usage: xval <circuit.qasm> --ref <reference.json>\n");
  process.exit(2);
}

function main(argv: string[]): number {
  let qasm: string | undefined;
  let ref: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--ref") {
      ref = argv[++i];
      if (ref === undefined) usage();
    } else if (arg === "--help" || arg === "-h") {
      usage();
    } else if (arg.startsWith("-")) {
      usage();
    } else if (qasm === undefined) {
      qasm = arg;
    } else {
      usage();
    }
  }
  if (qasm === undefined || ref === undefined) usage();

  const report = crossvalidate(qasm, ref);
  process.stdout.write(JSON.stringify(report, null, 2) + "\n");
  if (report.mode === "error") return 2;
  return report.pass ? 0 : 1;
}

process.exit(main(process.argv.slice(2)));
