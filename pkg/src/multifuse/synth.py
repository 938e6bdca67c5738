"""Planted-partition multiplexes with known ground truth."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .cluster import WeightedGraph
from .errors import SpecError
from .model import MultiplexBundle, Partition, SimilarityMatrix


@dataclass(frozen=True)
class LayerNoise:
    mu_in: float = 0.7
    mu_out: float = 0.2
    sigma: float = 0.05
    merge_map: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if not 0.0 <= self.mu_out <= self.mu_in <= 1.0:
            raise SpecError(f"need 0 <= mu_out <= mu_in <= 1, got {self.mu_out}, {self.mu_in}")
        if self.sigma < 0:
            raise SpecError("sigma must be >= 0")
        object.__setattr__(self, "merge_map", tuple(tuple(int(b) for b in grp) for grp in self.merge_map))


@dataclass(frozen=True)
class PlantedSpec:
    n: int
    blocks: tuple[int, ...]
    layers: tuple[LayerNoise, ...] = field(default_factory=lambda: (LayerNoise(), LayerNoise()))
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        object.__setattr__(self, "layers", tuple(self.layers))
        if any(b <= 0 for b in self.blocks):
            raise SpecError("block sizes must be positive")
        if sum(self.blocks) != self.n:
            raise SpecError(f"block sizes sum to {sum(self.blocks)}, expected n={self.n}")
        if not self.layers:
            raise SpecError("at least one layer is required")
        for layer in self.layers:
            seen: set[int] = set()
            for grp in layer.merge_map:
                for b in grp:
                    if not 0 <= b < len(self.blocks):
                        raise SpecError(f"merge_map refers to unknown block {b}")
                    if b in seen:
                        raise SpecError(f"block {b} appears in more than one merge group")
                    seen.add(b)


class PlantedMultiplex(NamedTuple):
    bundle: MultiplexBundle
    truth: Partition


def node_ids(n: int) -> tuple[str, ...]:
    width = len(str(max(n - 1, 0)))
    return tuple(f"v{i:0{width}d}" for i in range(n))


def _effective_blocks(truth: np.ndarray, merge_map) -> np.ndarray:
    remap = np.arange(truth.max() + 1)
    for grp in merge_map:
        remap[list(grp)] = min(grp)
    return remap[truth]


def planted_multiplex(spec: PlantedSpec) -> PlantedMultiplex:
    """Draw one similarity layer per ``LayerNoise`` around the planted blocks.

    Pair (i, j) is N(mu_in, sigma) if i and j share a block after the layer's
    merges, else N(mu_out, sigma), clamped to [0, 1]; diagonal 1.
    """
    rng = np.random.default_rng(spec.seed)
    truth = np.repeat(np.arange(len(spec.blocks)), spec.blocks)
    ids = node_ids(spec.n)
    iu = np.triu_indices(spec.n, 1)
    layers = []
    for noise in spec.layers:
        eff = _effective_blocks(truth, noise.merge_map)
        same = eff[iu[0]] == eff[iu[1]]
        draws = np.where(same, noise.mu_in, noise.mu_out) + noise.sigma * rng.standard_normal(same.size)
        v = np.zeros((spec.n, spec.n))
        v[iu] = np.clip(draws, 0.0, 1.0)
        v = v + v.T
        np.fill_diagonal(v, 1.0)
        layers.append(SimilarityMatrix(v, ids))
    return PlantedMultiplex(MultiplexBundle(tuple(layers)), Partition(truth, ids))


def equal_blocks(n: int, k: int) -> tuple[int, ...]:
    base, extra = divmod(n, k)
    return tuple(base + (1 if i < extra else 0) for i in range(k))


def complementary_pair(
    n: int,
    k: int,
    seed: int = 0,
    sigma: float = 0.05,
    mu_in: float = 0.7,
    mu_out: float = 0.2,
) -> PlantedMultiplex:
    """Two layers that each resolve only half of ``k`` planted blocks.

    Layer 1 merges blocks (0, 1), (2, 3), ...; layer 2 merges (1, 2), (3, 4),
    ..., (k - 1, 0). Only the two layers together identify every block.
    """
    if k < 4 or k % 2:
        raise SpecError(f"k must be even and >= 4, got {k}")
    if n < k:
        raise SpecError(f"n={n} is smaller than k={k}")
    first = tuple((b, b + 1) for b in range(0, k, 2))
    second = tuple((b, (b + 1) % k) for b in range(1, k, 2))
    spec = PlantedSpec(
        n=n,
        blocks=equal_blocks(n, k),
        layers=(
            LayerNoise(mu_in, mu_out, sigma, first),
            LayerNoise(mu_in, mu_out, sigma, second),
        ),
        seed=seed,
    )
    return planted_multiplex(spec)


def planted_partition_graph(
    blocks: Sequence[int], p_in: float, p_out: float, seed: int = 0
) -> tuple[WeightedGraph, Partition]:
    """Unweighted stochastic block graph with edge probability p_in / p_out."""
    if not (0.0 <= p_out <= 1.0 and 0.0 <= p_in <= 1.0):
        raise SpecError("edge probabilities must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    truth = np.repeat(np.arange(len(blocks)), blocks)
    n = truth.size
    iu = np.triu_indices(n, 1)
    prob = np.where(truth[iu[0]] == truth[iu[1]], p_in, p_out)
    a = np.zeros((n, n))
    a[iu] = (rng.random(prob.size) < prob).astype(np.float64)
    a = a + a.T
    ids = node_ids(n)
    return WeightedGraph(a, ids), Partition(truth, ids)


def write_demo_corpus(directory, n: int = 120, k: int = 3, seed: int = 0,
                      refs_per_block: int = 40, words_per_block: int = 60) -> dict[str, str]:
    """Write a small citation + word-count corpus with ``k`` planted groups.

    Articles in group g cite mostly from group g's reference pool and draw
    words mostly from group g's vocabulary, with shared background terms.
    Returns the paths of ``edges.csv`` and ``counts.csv``.
    """
    rng = np.random.default_rng(seed)
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    groups = np.repeat(np.arange(k), equal_blocks(n, k))
    width = len(str(n - 1))
    arts = [f"a{i:0{width}d}" for i in range(n)]
    n_refs, n_words, n_common = k * refs_per_block, k * words_per_block, 30
    edges, counts = [], []
    for i, g in enumerate(groups):
        own = np.arange(g * refs_per_block, (g + 1) * refs_per_block)
        picks = set(rng.choice(own, size=8, replace=False).tolist())
        picks |= set(rng.choice(n_refs, size=2, replace=False).tolist())
        edges.extend(f"{arts[i]},r{r:04d}" for r in sorted(picks))
        weights = np.full(n_words + n_common, 0.2)
        weights[g * words_per_block:(g + 1) * words_per_block] = 3.0
        weights[n_words:] = 2.0
        draws = rng.multinomial(300, weights / weights.sum())
        counts.extend(f"{arts[i]},w{w:04d},{c}" for w, c in enumerate(draws) if c)
    (d / "edges.csv").write_text("\n".join(edges) + "\n", encoding="utf-8")
    (d / "counts.csv").write_text("\n".join(counts) + "\n", encoding="utf-8")
    return {"edges": str(d / "edges.csv"), "counts": str(d / "counts.csv")}
