"""The four-vertex worked example, step by step.

An undirected graph with four vertices:

    v0 --2-- v1      v0 --3-- v3
    v1 --3-- v2      v2 --3-- v3

Shortest-path distances from v0 form a monotone search: every vertex
holds a tentative distance, a vertex is *forbidden* while some edge
offers a shorter route into it, and advancing a forbidden vertex writes
that shorter route.  Whatever order the advances happen in, the search
converges to the unique fixed point [0, 2, 5, 3].
"""

from llp import SolverConfig, example_graph, solve
from llp.problems import adapter_for
from llp.worklists import SeqBag

inst = example_graph()
adapter = adapter_for("sssp", inst)

print("initial state: d =", adapter.init_state().values.snapshot())

# Drive the search by hand for a few steps.
state = adapter.init_state()
bag = SeqBag()
adapter.push_initial(state, bag)
print("\nmanual steps (index popped -> advanced?):")
for _ in range(6):
    item = bag.pop()
    if item is None:
        break
    changed = adapter.ensure(state, item[0], bag)
    print(f"  v{item[0]}: forbidden={changed}, d = {state.values.snapshot()}")

# Any solver reaches the same place.
print("\nevery solver strategy agrees:")
for strategy, threads in [("cyclic", 1), ("bag", 1), ("swb", 2), ("ptwb", 4), ("buckets", 4)]:
    got = solve(adapter_for("sssp", inst), SolverConfig(strategy=strategy, threads=threads))
    print(f"  {strategy:8s} threads={threads}: {got.tolist()}")

print("\nfixed point [0, 2, 5, 3]: v1 via the direct edge (2), v3 via the")
print("direct edge (3), v2 via v1 (2+3=5, beating v3's 3+3=6).")
