import numpy as np
import pytest

import oracles
from multifuse import _backend
from multifuse.assoc import adjusted_rand
from multifuse.cluster import LouvainTrace, WeightedGraph, graph_from_similarity, louvain, modularity
from multifuse.errors import EmptyGraphError
from multifuse.fusion import SnfConfig, snf
from multifuse.model import Partition, SimilarityMatrix
from multifuse.synth import complementary_pair, planted_partition_graph


def two_cliques(size=10, extra=0):
    n = 2 * size + extra
    a = np.zeros((n, n))
    a[:size, :size] = 1
    a[size:2 * size, size:2 * size] = 1
    np.fill_diagonal(a, 0)
    return WeightedGraph(a)


def part(labels):
    return Partition(tuple(labels), tuple(str(i) for i in range(len(labels))))


def random_graph(rng, n, density=0.3):
    a = rng.random((n, n)) * (rng.random((n, n)) < density)
    a = np.triu(a, 1)
    return WeightedGraph(a + a.T)


def test_modularity_examples(rng):
    g = two_cliques()
    assert modularity(g, part([0] * 20)) == 0.0
    assert modularity(g, part([0] * 10 + [1] * 10)) == 0.5
    h = random_graph(rng, 15)
    k, m2 = h.degrees(), 2 * h.total_weight
    assert modularity(h, part(range(15))) == pytest.approx(-np.sum((k / m2) ** 2), abs=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_modularity_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, 20)
    labels = rng.integers(0, 4, 20).tolist()
    assert abs(modularity(g, part(labels)) - oracles.modularity(g.adjacency.tolist(), labels)) < 1e-12


def test_modularity_invariances(rng):
    g = random_graph(rng, 18)
    labels = rng.integers(0, 3, 18)
    q = modularity(g, part(labels))
    assert abs(modularity(WeightedGraph(7.5 * g.adjacency), part(labels)) - q) < 1e-12
    assert abs(modularity(g, part((labels + 1) % 3 + 10)) - q) < 1e-12


def test_empty_graph():
    with pytest.raises(EmptyGraphError):
        modularity(WeightedGraph(np.zeros((3, 3))), part([0, 1, 2]))
    with pytest.raises(EmptyGraphError):
        louvain(WeightedGraph(np.zeros((3, 3))))
    with pytest.raises(EmptyGraphError):
        graph_from_similarity(SimilarityMatrix(np.eye(3), ("a", "b", "c")))


def test_graph_from_similarity():
    g = graph_from_similarity(SimilarityMatrix(np.array([[1, 0.5], [0.5, 1]]), ("a", "b")))
    assert g.adjacency.tolist() == [[0, 0.5], [0.5, 0]]
    assert g.total_weight == 0.5 and g.node_ids == ("a", "b")


def test_graph_from_fused_matrix():
    pm = complementary_pair(40, 4, seed=0)
    g = graph_from_similarity(snf(pm.bundle, SnfConfig(k_neighbors=8, iterations=5)))
    assert g.total_weight > 0 and np.all(np.diag(g.adjacency) == 0)


def test_two_cliques_recovered(backend):
    g = two_cliques()
    p = louvain(g, seed=3, backend=backend)
    assert p.labels.tolist() == [0] * 10 + [1] * 10
    assert modularity(g, p) == 0.5


def test_deterministic_per_seed(backend, rng):
    g = random_graph(rng, 40, 0.15)
    assert louvain(g, seed=9, backend=backend) == louvain(g, seed=9, backend=backend)


def test_trace_is_monotone_and_beats_singletons(backend, rng):
    g = random_graph(rng, 50, 0.1)
    trace = LouvainTrace()
    p = louvain(g, seed=1, trace=trace, backend=backend)
    assert all(b >= a - 1e-12 for a, b in zip(trace.modularity, trace.modularity[1:]))
    assert modularity(g, p) >= modularity(g, part(range(50)))
    assert trace.modularity[-1] == pytest.approx(modularity(g, p), abs=1e-12)


def test_backends_agree(rng):
    if len(_backend.BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    for seed in range(5):
        g = random_graph(rng, 60, 0.1)
        assert louvain(g, seed=seed, backend="python") == louvain(g, seed=seed, backend="compiled")


def test_planted_four_blocks(backend):
    hits = 0
    for seed in range(10):
        g, truth = planted_partition_graph((50, 50, 50, 50), 0.3, 0.01, seed=seed)
        hits += adjusted_rand(louvain(g, seed=seed, backend=backend), truth) == 1.0
    assert hits >= 9


def test_isolated_nodes_become_singletons(rng):
    core = random_graph(rng, 25, 0.3)
    n = 30
    a = np.zeros((n, n))
    placed = np.sort(rng.choice(n, 25, replace=False))
    a[np.ix_(placed, placed)] = core.adjacency
    trace = LouvainTrace()
    full = np.asarray(louvain(WeightedGraph(a), seed=4, trace=trace).labels)
    sub = np.asarray(louvain(core, seed=4).labels)
    assert trace.isolated == 5
    assert adjusted_rand(part(full[placed]), part(sub)) == 1.0
    loners = np.setdiff1d(np.arange(n), placed)
    assert len(set(full[loners])) == 5
    assert not set(full[loners]) & set(full[placed])
