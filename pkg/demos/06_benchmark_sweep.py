"""Benchmark sweep: CX cost of each preparation method vs. label clustering.

Dataset states grow by seeded accretion: with probability `clustering_knob`
the next label is a uniform draw from the cluster's free Hamming-1 frontier
(counted once per adjacency, so multiply-touching cells are likelier),
otherwise uniform over all free labels.  The measured `avg_neighbors` column
reports how clustered the datasets actually came out.  Expect the cluster
method to pull away from both baselines as the knob rises; runtimes are
wall-clock and not part of the deterministic output.
"""

import sys

from permweaver.bench import DatasetConfig, csv_text, run_benchmark

configs = [
    DatasetConfig(
        dataset_id=f"knob{knob:g}",
        n=8,
        m=16,
        clustering_knob=knob,
        states_per_dataset=10,
        seed=424242,
    )
    for knob in (0.0, 0.5, 1.0)
]
print("running 3 datasets x 10 states x 3 methods (roughly a minute)...",
      file=sys.stderr)
rows = run_benchmark(configs, ["cluster_swaps", "pairwise_swaps", "dense_all"])

print(csv_text(rows))
print("mean CX by method:")
for method in ("cluster_swaps", "pairwise_swaps", "dense_all"):
    line = "  ".join(
        f"knob {r.clustering_knob:g}: {r.mean_cx:7.1f} +- {r.ci95:5.1f}"
        for r in rows
        if r.method == method
    )
    print(f"  {method:>14}: {line}")
