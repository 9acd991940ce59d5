declare module "quantum-circuit" {
  class QuantumCircuit {
    constructor(numQubits?: number);
    numQubits: number;
    importQASM(qasm: string, onError: (errors: { msg: string; line?: number; col?: number }[]) => void): void;
    run(initialValues?: (0 | 1)[] | null): void;
    stateAsSimpleArray(onlyNonZero?: boolean): { re: number; im: number }[];
  }
  export = QuantumCircuit;
}
