"""Precedence scheduling: settle-once jobs and fixed-state memoization.

A job becomes workable only when every prerequisite has committed, so
each job advances exactly once and is then *fixed*.  Solvers skip fixed
indices, which is why the work counters stay near the job count instead
of growing with repeated re-scans.
"""

from llp import SolverConfig, generate, run_solver
from llp.baselines import topo_sort_seq
from llp.problems import adapter_for

inst = generate("dag:n=4000,p=0.01", 5)
adapter = adapter_for("job", inst)

result = run_solver(adapter, SolverConfig(strategy="ptwb", threads=4))
assert (result.solution == topo_sort_seq(inst.graph, inst.durations)).all()

n = inst.graph.num_vertices
print(f"{n} jobs, {inst.graph.num_edges} prerequisite edges")
print(f"critical path length: {int(result.solution.max())}")
print(f"predicate evaluations: {result.stats.predicate_evals} "
      f"({result.stats.predicate_evals / n:.1f} per job)")
print(f"advances: {result.stats.advances} (one commit per job)")
