"""Baselines: oracle spot values and parallel/sequential agreement."""

import numpy as np
import pytest

from llp.baselines import (
    MismatchedInstanceError,
    bfs_mt_queue,
    bfs_seq,
    binary_tree_reduce,
    blocking_pairs,
    default_delta,
    delta_stepping,
    dijkstra_heap,
    dp_row_knapsack,
    floyd_warshall_par,
    gale_shapley_rounds,
    gale_shapley_seq,
    oracle_for,
    run_baseline,
    topo_levels_par,
    topo_sort_seq,
)
from llp.instances import CsrGraph, example_graph, generate
from llp.problems.closure import unpack_reachability


def test_dijkstra_on_example_graph():
    inst = example_graph()
    assert dijkstra_heap(inst.graph, inst.source).tolist() == [0, 2, 5, 3]


@pytest.mark.parametrize("delta", [1, 2, 8, 64])
def test_delta_stepping_agrees_with_dijkstra(delta):
    for seed in range(8):
        g = generate("randgraph:n=80,m=200,wmax=30", seed).graph
        want = dijkstra_heap(g, 0)
        assert np.array_equal(delta_stepping(g, 0, delta=delta), want)


def test_delta_stepping_default_delta_and_threads():
    g = generate("randgraph:n=100,m=300,wmax=21", 3).graph
    want = dijkstra_heap(g, 0)
    assert np.array_equal(delta_stepping(g, 0), want)
    assert np.array_equal(delta_stepping(g, 0, threads=4), want)
    assert default_delta(g) >= 1


def test_bfs_mt_queue_agrees_with_sequential():
    for seed in range(5):
        g = generate("randgraph:n=120,m=360,wmax=5", seed).graph
        assert np.array_equal(bfs_mt_queue(g, 0, threads=4), bfs_seq(g, 0))


def test_gale_shapley_hand_instance():
    got = gale_shapley_seq([[0, 1], [0, 1]], [[1, 0], [0, 1]])
    assert got.tolist() == [1, 0]


def test_gale_shapley_rounds_agrees_with_sequential():
    for seed in range(10):
        inst = generate("sm:n=40", seed)
        want = gale_shapley_seq(inst.mprefs, inst.wprefs)
        assert np.array_equal(gale_shapley_rounds(inst.mprefs, inst.wprefs), want)
        assert np.array_equal(gale_shapley_rounds(inst.mprefs, inst.wprefs, threads=4), want)


def test_topo_levels_agrees_with_kahn():
    for seed in range(10):
        inst = generate("dag:n=120,p=0.15", seed)
        want = topo_sort_seq(inst.graph, inst.durations)
        assert np.array_equal(topo_levels_par(inst.graph, inst.durations, threads=4), want)


def test_topo_baselines_reject_cycles():
    cyclic = CsrGraph.from_edges(2, [(0, 1, 1), (1, 0, 1)])
    with pytest.raises(MismatchedInstanceError):
        topo_sort_seq(cyclic, [1, 1])
    with pytest.raises(MismatchedInstanceError):
        topo_levels_par(cyclic, [1, 1], threads=2)


def test_binary_tree_reduce_matches_plain_sum():
    values = list(range(1, 500))
    assert binary_tree_reduce(values)[0] == sum(values)
    assert binary_tree_reduce(values, threads=4)[0] == sum(values)


def test_floyd_warshall_two_edge_path():
    g = CsrGraph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    reach = unpack_reachability(floyd_warshall_par(g), 3)
    assert {(u, v) for u in range(3) for v in range(3) if reach[u, v]} == {
        (0, 1),
        (1, 2),
        (0, 2),
    }


def test_floyd_warshall_parallel_agrees_with_sequential():
    for seed in range(6):
        g = generate("closuredag:n=40,p=0.2", seed).graph
        assert np.array_equal(floyd_warshall_par(g, threads=4), floyd_warshall_par(g, threads=1))


def test_dp_row_knapsack_small_values():
    row = dp_row_knapsack([2, 3], [3, 4], 5)
    assert row.tolist() == [0, 0, 3, 4, 4, 7]


def test_blocking_pairs_detects_planted_instability():
    mprefs = [[0, 1], [1, 0]]
    wprefs = [[0, 1], [1, 0]]
    # Everyone gets their first choice: stable.
    assert blocking_pairs(mprefs, wprefs, [0, 0]) == []
    # Swap the partners: both couples prefer to defect.
    pairs = blocking_pairs(mprefs, wprefs, [1, 1])
    assert (0, 0) in pairs and (1, 1) in pairs


def test_oracle_mapping_is_total():
    assert oracle_for("sssp") == "dijkstra-heap"
    assert oracle_for("sm") == "gale-shapley-seq"
    assert oracle_for("knapsack") == "dp-row-knapsack"
    for problem in ("sssp", "bfs", "sm", "job", "reduce", "closure", "knapsack"):
        assert oracle_for(problem)


def test_run_baseline_dispatch_and_mismatches():
    graph_inst = example_graph()
    assert run_baseline(graph_inst, "dijkstra-heap").tolist() == [0, 2, 5, 3]
    with pytest.raises(MismatchedInstanceError):
        run_baseline(graph_inst, "gale-shapley-seq")
    with pytest.raises(ValueError):
        run_baseline(graph_inst, "quantum-annealer")
    with pytest.raises(ValueError):
        run_baseline(graph_inst, "dijkstra-heap", threads=2)  # sequential id
