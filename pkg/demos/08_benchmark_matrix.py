"""Programmatic benchmarking: the machinery behind `llp run`.

Builds one instance, times a solver x threads matrix, and prints the
per-configuration medians with speedups against a named baseline - the
same report the CLI writes as CSV.
"""

from llp.bench import run_matrix

report = run_matrix(
    "sssp",
    "randgraph:n=30000,m=120000,wmax=40",
    solvers=["bag", "swb", "ptwb"],
    threads_list=[1, 2, 4],
    reps=3,
    seed=1,
    baseline="delta-stepping",
    check=True,
)

assert not report.check_failures
print(f"{'solver':26s} {'threads':>7s} {'median(ms)':>11s} {'speedup':>8s}")
for solver, threads, runs, median_ns, speedup in report.summary:
    print(f"{solver:26s} {threads:7d} {median_ns / 1e6:11.1f} {speedup or '-':>8s}")
print("\nchecksums all matched the Dijkstra oracle (--check semantics)")
