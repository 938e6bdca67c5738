import math

import numpy as np
import pytest

import oracles
from multifuse.assoc import (EmbeddedDistances, adjusted_rand, cramers_v, cramers_v_table, distance_correlation,
                             embed_rows, partial_distance_correlation)
from multifuse.errors import AlignmentError, DimensionMismatchError, InsufficientSampleError
from multifuse.model import Partition, SimilarityMatrix
from multifuse.synth import LayerNoise, PlantedSpec, equal_blocks, planted_multiplex

# Values computed once by the loop oracles in tests/oracles.py and frozen here.
DCOR_N4 = (0.871784668962236, 0.7600085090375954)
PDCOR_N6 = 0.805254751314541
ARI_N8 = 0.047619047619047616


def sim(values):
    values = np.asarray(values, float)
    return SimilarityMatrix(values, tuple(f"n{i}" for i in range(len(values))))


def random_sim(rng, n):
    a = rng.random((n, n))
    a = (a + a.T) / 2
    np.fill_diagonal(a, 1.0)
    return sim(a)


def part(labels):
    return Partition(tuple(labels), tuple(f"n{i}" for i in range(len(labels))))


def dist_of(x):
    return EmbeddedDistances(np.asarray(oracles.euclidean_rows(np.asarray(x).tolist())))


def test_embed_rows(rng):
    assert embed_rows(sim(np.eye(2))).d[0, 1] == pytest.approx(math.sqrt(2), abs=1e-15)
    v = np.array([[1, 0.3, 0.3], [0.3, 1, 1], [0.3, 1, 1]])
    assert embed_rows(sim(v)).d[1, 2] == 0
    d = embed_rows(random_sim(rng, 12)).d
    assert np.array_equal(d, d.T) and np.all(np.diag(d) == 0) and d.min() >= 0
    assert np.all(d[:, :, None] <= d[:, None, :] + d.T[None, :, :] + 1e-12)


def test_dcor_self_and_scale(rng):
    s = random_sim(rng, 15)
    r = distance_correlation(embed_rows(s), embed_rows(s))
    assert r.dcor == pytest.approx(1.0, abs=1e-12)
    scaled = sim(3.7 * s.values)
    assert abs(distance_correlation(embed_rows(s), embed_rows(scaled)).dcor - 1) < 1e-9


def test_dcor_frozen_n4():
    rng = np.random.default_rng(4)
    x, y = rng.random((4, 3)), rng.random((4, 2))
    r = distance_correlation(dist_of(x), dist_of(y))
    assert abs(r.dcor - DCOR_N4[0]) < 1e-10
    assert abs(r.dcor_sq - DCOR_N4[1]) < 1e-10


@pytest.mark.parametrize("seed", range(5))
def test_dcor_matches_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    a, b = random_sim(rng, 9), random_sim(rng, 9)
    da, db = oracles.euclidean_rows(a.values.tolist()), oracles.euclidean_rows(b.values.tolist())
    exp = oracles.dcor(da, db)
    got = distance_correlation(embed_rows(a), embed_rows(b))
    assert abs(got.dcor - exp[0]) < 1e-10 and abs(got.dcor_sq - exp[1]) < 1e-10


def test_dcor_properties(rng):
    a, b = embed_rows(random_sim(rng, 14)), embed_rows(random_sim(rng, 14))
    r, r2 = distance_correlation(a, b), distance_correlation(b, a)
    assert r == r2 or abs(r.dcor - r2.dcor) < 1e-15
    assert abs(r.dcor_sq - r.dcor ** 2) < 1e-12
    assert 0 <= r.dcor <= 1 and 0 <= r.dcor_sq <= 1
    perm = rng.permutation(14)
    rp = distance_correlation(EmbeddedDistances(a.d[np.ix_(perm, perm)]), EmbeddedDistances(b.d[np.ix_(perm, perm)]))
    assert abs(rp.dcor - r.dcor) < 1e-12
    with pytest.raises(DimensionMismatchError):
        distance_correlation(a, embed_rows(random_sim(rng, 5)))


def test_dcor_constant_input_is_zero(rng):
    const = EmbeddedDistances(np.zeros((5, 5)))
    assert distance_correlation(const, embed_rows(random_sim(rng, 5))).dcor == 0.0


def test_pdcor_frozen_n6():
    rng = np.random.default_rng(6)
    x, y, z = rng.random((6, 3)), rng.random((6, 3)), rng.random((6, 2))
    got = partial_distance_correlation(dist_of(x), dist_of(y), dist_of(z))
    assert abs(got.pdcor - PDCOR_N6) < 1e-10
    assert got.sqrt_pdcor == pytest.approx(math.sqrt(PDCOR_N6), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_pdcor_matches_oracle_and_range(seed):
    rng = np.random.default_rng(200 + seed)
    a, b, z = (random_sim(rng, 8) for _ in range(3))
    e = [oracles.euclidean_rows(m.values.tolist()) for m in (a, b, z)]
    got = partial_distance_correlation(embed_rows(a), embed_rows(b), embed_rows(z)).pdcor
    assert abs(got - oracles.pdcor(*e)) < 1e-10
    assert -1 <= got <= 1
    swapped = partial_distance_correlation(embed_rows(b), embed_rows(a), embed_rows(z)).pdcor
    assert swapped == pytest.approx(got, abs=1e-15)


def test_pdcor_conditioning_on_self(rng):
    a, b = embed_rows(random_sim(rng, 10)), embed_rows(random_sim(rng, 10))
    assert abs(partial_distance_correlation(a, b, b).pdcor) < 1e-10


def test_pdcor_errors(rng):
    small = embed_rows(random_sim(rng, 3))
    with pytest.raises(InsufficientSampleError):
        partial_distance_correlation(small, small, small)
    a = embed_rows(random_sim(rng, 6))
    with pytest.raises(DimensionMismatchError):
        partial_distance_correlation(a, a, embed_rows(random_sim(rng, 7)))


def test_cramers_v_examples():
    p = part([0, 0, 1, 1, 2, 2])
    assert cramers_v(p, part([5, 5, 3, 3, 9, 9])) == pytest.approx(1.0, abs=1e-15)
    assert cramers_v_table(np.array([[25, 25], [25, 25]])) == 0.0
    assert cramers_v_table(np.array([[8, 2], [2, 8]])) == 0.6
    assert cramers_v(part([0] * 4), part([0] * 4)) == 1.0
    assert cramers_v(part([0] * 4), part([0, 1, 0, 1])) == 0.0
    with pytest.raises(AlignmentError):
        cramers_v(p, Partition((0, 0, 1, 1, 2, 2), tuple("abcdef")))


@pytest.mark.parametrize("seed", range(8))
def test_cramers_v_oracle_and_relabel(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 40))
    p, q = rng.integers(0, 4, n).tolist(), rng.integers(0, 3, n).tolist()
    got = cramers_v(part(p), part(q))
    assert abs(got - oracles.cramers_v(p, q)) < 1e-12
    relabel = {old: new for old, new in zip(range(4), rng.permutation(4) + 10)}
    assert abs(cramers_v(part([relabel[x] for x in p]), part(q)) - got) < 1e-12


def test_adjusted_rand_examples():
    assert adjusted_rand(part([0, 0, 1, 1]), part([1, 1, 0, 0])) == 1.0
    assert adjusted_rand(part([0] * 5), part(list(range(5)))) == 0.0
    p, q = [0, 0, 1, 1, 2, 2, 0, 1], [0, 1, 1, 1, 2, 0, 0, 2]
    assert oracles.adjusted_rand(p, q) == ARI_N8
    assert abs(adjusted_rand(part(p), part(q)) - ARI_N8) < 1e-15


@pytest.mark.parametrize("seed", range(8))
def test_adjusted_rand_oracle(seed):
    rng = np.random.default_rng(50 + seed)
    n = int(rng.integers(2, 40))
    p, q = rng.integers(0, 5, n).tolist(), rng.integers(0, 5, n).tolist()
    assert abs(adjusted_rand(part(p), part(q)) - oracles.adjusted_rand(p, q)) < 1e-12


def test_adjusted_rand_near_zero_under_permutation():
    rng = np.random.default_rng(0)
    p = np.repeat(np.arange(5), 40)
    vals = [adjusted_rand(part(p.tolist()), part(rng.permutation(p).tolist())) for _ in range(50)]
    assert abs(np.mean(vals)) < 0.01


def test_dcor_tracks_shared_structure():
    violations = 0
    for seed in range(10):
        four = PlantedSpec(40, equal_blocks(40, 4), (LayerNoise(), LayerNoise()), seed=seed)
        other = PlantedSpec(40, equal_blocks(40, 4), (LayerNoise(merge_map=((0, 2), (1, 3))),), seed=seed + 100)
        a, b = planted_multiplex(four).bundle.layers
        c = planted_multiplex(other).bundle.layers[0]
        same = distance_correlation(embed_rows(a), embed_rows(b)).dcor
        diff = distance_correlation(embed_rows(a), embed_rows(c)).dcor
        violations += same <= diff
    assert violations <= 1
