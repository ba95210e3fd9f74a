"""0/1 knapsack: the DP table as a tiled wavefront.

DP cells only ever rise toward the classic recurrence, so rows overlap
freely: a tile of row k+1 can start from a partially-risen row k and be
re-raised later.  Tile width trades scheduling granularity against
worklist overhead without changing the fixed point.
"""

from llp import SolverConfig, generate, solve
from llp.baselines import dp_row_knapsack
from llp.problems import Knapsack, adapter_for

inst = generate("knap:n=120,cap=900,wmax=60,vmax=100", 21)
oracle = dp_row_knapsack(inst.weights, inst.values, inst.capacity)

for width in (64, 256, 1024):
    adapter = Knapsack(inst.weights, inst.values, inst.capacity, tile_width=width)
    got = solve(adapter, SolverConfig(strategy="buckets", threads=4, delta=64))
    assert (got == oracle).all()
    print(f"tile width {width:4d}: {adapter.strips} strips/row, optimum {adapter.optimum(got)}")

print("every tiling reaches the same table row; the optimum matches the row DP")
