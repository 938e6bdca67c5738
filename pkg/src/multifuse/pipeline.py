"""Pipeline commands behind the CLI.

Every command writes into a private staging directory first. On success the
files are moved into place under the output directory; on failure the staged
files go to ``quarantine/<command>/`` and earlier results stay untouched.
"""
from __future__ import annotations

import contextlib
import csv
import itertools
import json
import logging
import shutil
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Iterator

import numpy as np

from . import io
from .assoc import adjusted_rand, contingency, cramers_v, distance_correlation, embed_rows, partial_distance_correlation
from .cluster import LouvainTrace, graph_from_similarity, louvain, modularity
from .config import RunConfig
from .errors import ConfigError, MultifuseError
from .fusion import (
    SnfConfig,
    SnfTrace,
    boyack_alpha,
    convex_combination,
    fixed_weight_alpha,
    glanzel_combination,
    mass,
    snf,
)
from .ingest import CountTable, filter_vocabulary, read_citation_edges, read_count_table, read_distribution_table
from .model import MultiplexBundle, SimilarityMatrix, validate_similarity
from .similarity import jaccard_layer, relative_frequencies, total_variation_layer
from .synth import complementary_pair
from .topics import LdaConfig, fit_lda

log = logging.getLogger(__name__)

LAYERS, FUSED, PARTITIONS, REPORTS, EXPORT = "layers", "fused", "partitions", "reports", "export"
EMBEDDING_NOTE = "rows of each similarity matrix are the samples"


class CommandFailed(MultifuseError):
    """Raised after a command finished with per-item errors (outputs quarantined)."""


# ---------------------------------------------------------------- plumbing

@contextlib.contextmanager
def staged(out_dir: Path, command: str) -> Iterator[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    stage = out_dir / ".staging" / command
    if stage.exists():
        shutil.rmtree(stage)
    stage.mkdir(parents=True)
    try:
        yield stage
    except BaseException:
        quarantine = out_dir / "quarantine" / command
        if quarantine.exists():
            shutil.rmtree(quarantine)
        quarantine.parent.mkdir(parents=True, exist_ok=True)
        shutil.move(str(stage), str(quarantine))
        log.error("%s failed; partial outputs in %s", command, quarantine)
        raise
    else:
        for src in sorted(p for p in stage.rglob("*") if p.is_file()):
            dst = out_dir / src.relative_to(stage)
            dst.parent.mkdir(parents=True, exist_ok=True)
            src.replace(dst)
        shutil.rmtree(stage)
    finally:
        staging_root = out_dir / ".staging"
        if staging_root.exists() and not any(staging_root.iterdir()):
            staging_root.rmdir()


def pmap(fn: Callable, items: Iterable, threads: int) -> list:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def write_csv(path: Path, header: list[str], rows: Iterable[Iterable]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(x) for x in row])


def _cell(x):
    if isinstance(x, (float, np.floating)):
        return io.FLOAT_FMT % x
    return x


def display_table(row_names: list[str], col_names: list[str], values, title: str = "") -> str:
    """Fixed-width 3-decimal rendering of a matrix-shaped report."""
    width = max([len(c) for c in col_names] + [7])
    lead = max([len(r) for r in row_names] + [1])
    lines = [title] if title else []
    lines.append(" " * lead + "  " + "  ".join(c.rjust(width) for c in col_names))
    for r, row in zip(row_names, values):
        cells = ["" if v is None or (isinstance(v, float) and np.isnan(v))
                 else str(v) if isinstance(v, (int, np.integer)) else f"{v:.3f}" for v in row]
        lines.append(r.ljust(lead) + "  " + "  ".join(c.rjust(width) for c in cells))
    return "\n".join(lines) + "\n"


def _load_dir(d: Path, names: list[str] | None = None) -> dict[str, SimilarityMatrix]:
    if not d.is_dir():
        return {}
    found = {p.stem: p for p in sorted(d.glob("*.csv"))}
    if names is None:
        names = [n for n in _recorded_order(d) if n in found]
        names += [n for n in found if n not in names]
    missing = [n for n in names if n not in found]
    if missing:
        raise ConfigError(f"matrices not found in {d}: {missing}")
    return {name: io.read_matrix(found[name]) for name in names}


def _recorded_order(d: Path) -> list[str]:
    """Names in the order the producing command logged them."""
    for log_name, key in (("build_log.json", "layers"), ("fuse_log.json", "fused")):
        p = d / log_name
        if p.exists():
            return [e["name"] for e in json.loads(p.read_text(encoding="utf-8"))[key]]
    return []


def load_matrices(out_dir: Path) -> dict[str, SimilarityMatrix]:
    """Built layers followed by fused and baseline matrices."""
    out = _load_dir(out_dir / LAYERS)
    out.update(_load_dir(out_dir / FUSED))
    return out


def _density(m: SimilarityMatrix) -> float:
    n = m.n
    if n < 2:
        return 0.0
    off = np.count_nonzero(m.values) - np.count_nonzero(np.diag(m.values))
    return off / (n * (n - 1))


# ---------------------------------------------------------------- build

def cmd_build(cfg: RunConfig) -> dict:
    if not cfg.layers:
        raise ConfigError("config defines no layers")
    out_dir = cfg.output_dir
    vocab = cfg.section("vocabulary")
    lda = cfg.section("lda")
    counts_cache: dict[Path, CountTable] = {}
    entries = []

    def counts(path: Path) -> CountTable:
        if path not in counts_cache:
            raw = read_count_table(path, cfg.sep)
            t = filter_vocabulary(raw, int(vocab.get("min_docs", 3)), float(vocab.get("max_doc_fraction", 0.95)))
            empty = t.empty_rows()
            if empty and cfg.drop_empty:
                log.warning("dropping %d articles left without terms", len(empty))
                t = t.drop_rows(empty)
            counts_cache[path] = t
            entries.append({"source": str(path.name), "raw_terms": len(raw.cols), "kept_terms": len(t.cols),
                            "articles": t.n, "dropped_articles": len(empty) if cfg.drop_empty else 0})
        return counts_cache[path]

    with staged(out_dir, "build") as stage:
        built = []
        for recipe in cfg.layers:
            if recipe.recipe == "citation":
                inc = read_citation_edges(recipe.path, cfg.sep, cfg.drop_empty)
                built.append((recipe.name, jaccard_layer(inc), {"references": len(inc.cols)}))
            elif recipe.recipe == "words":
                t = counts(recipe.path)
                built.append((recipe.name, total_variation_layer(relative_frequencies(t)), {"vocabulary": len(t.cols)}))
            elif recipe.recipe == "topics":
                t = counts(recipe.path)

                def one(k, t=t, recipe=recipe):
                    conf = LdaConfig(k_topics=k, alpha=lda.get("alpha"), beta=float(lda.get("beta", 0.01)),
                                     sweeps=int(lda.get("sweeps", 1000)), burn_in=int(lda.get("burn_in", 500)),
                                     seed=int(lda.get("seed", 0)))
                    return k, fit_lda(t, conf)

                for k, theta in pmap(one, recipe.k_topics, cfg.threads):
                    name = f"{recipe.name}_{k}"
                    io.write_distribution(_ensure(stage / LAYERS) / f"{name}.theta", theta)
                    built.append((name, total_variation_layer(theta), {"k_topics": k, "vocabulary": len(t.cols)}))
            else:
                if recipe.format == "distribution":
                    d = read_distribution_table(recipe.path, cfg.sep)
                    built.append((recipe.name, total_variation_layer(d), {"features": len(d.cols)}))
                else:
                    built.append((recipe.name, validate_similarity(io.read_matrix(recipe.path)), {}))
        (stage / LAYERS).mkdir(parents=True, exist_ok=True)
        layers_log = []
        for name, m, extra in built:
            io.write_matrix(stage / LAYERS / f"{name}.csv", m)
            layers_log.append({"name": name, "n": m.n, "density": _density(m), **extra})
        report = {"layers": layers_log, "vocabulary": entries}
        write_json(stage / LAYERS / "build_log.json", report)
    return report


# ---------------------------------------------------------------- fuse

def _snf_grid(cfg: RunConfig) -> list[SnfConfig]:
    s = cfg.section("snf")
    ks = s.get("k_neighbors", 20)
    ts = s.get("iterations", 20)
    ks = ks if isinstance(ks, list) else [ks]
    ts = ts if isinstance(ts, list) else [ts]
    return [SnfConfig(int(k), int(t)) for k in ks for t in ts]


def fusion_pairs(cfg: RunConfig, names: list[str]) -> list[tuple[str, str]]:
    pairs = cfg.section("fusion").get("pairs")
    if pairs is None:
        if len(names) < 2:
            raise ConfigError("fusion needs at least two built layers")
        return [(names[0], other) for other in names[1:]]
    out = []
    for p in pairs:
        if len(p) != 2 or any(x not in names for x in p):
            raise ConfigError(f"fusion pair {p!r} does not name two built layers ({names})")
        out.append((str(p[0]), str(p[1])))
    return out


def cmd_fuse(cfg: RunConfig) -> dict:
    out_dir = cfg.output_dir
    layers = _load_dir(out_dir / LAYERS)
    pairs = fusion_pairs(cfg, list(layers))
    grid = _snf_grid(cfg)
    base = cfg.section("baselines")
    sweep = len(grid) > 1

    def run(job):
        (a, b), sc = job
        trace = SnfTrace()
        fused = snf(MultiplexBundle((layers[a], layers[b])), sc, trace)
        tag = f"snf_k{sc.k_neighbors}_t{sc.iterations}" if sweep else "snf"
        entry = {"name": f"{tag}__{a}__{b}", "method": "snf", "layers": [a, b],
                 "k_neighbors": sc.k_neighbors, "iterations": sc.iterations,
                 "iteration_max_change": trace.deltas, "isolated": trace.isolated}
        return entry, fused

    with staged(out_dir, "fuse") as stage:
        results = pmap(run, list(itertools.product(pairs, grid)), cfg.threads)
        fused_log = []
        for entry, m in results:
            io.write_matrix(_ensure(stage / FUSED) / f"{entry['name']}.csv", m)
            fused_log.append(entry)
        for a, b in pairs:
            s1, s2 = layers[a], layers[b]
            t1, t2 = mass(s1), mass(s2)
            if base.get("boyack_auto", True):
                alpha = boyack_alpha(s1, s2)
                name = f"boyack__{a}__{b}"
                io.write_matrix(_ensure(stage / FUSED) / f"{name}.csv", convex_combination(s1, s2, alpha))
                fused_log.append({"name": name, "method": "boyack_auto", "layers": [a, b],
                                  "alpha": alpha, "T1": t1, "T2": t2})
            for low in base.get("fixed_weights") or []:
                alpha = fixed_weight_alpha(s1, s2, float(low))
                name = f"bk_{float(low):.3f}__{a}__{b}"
                io.write_matrix(_ensure(stage / FUSED) / f"{name}.csv", convex_combination(s1, s2, alpha))
                fused_log.append({"name": name, "method": "fixed_weight", "layers": [a, b],
                                  "low_weight": float(low), "alpha": alpha, "T1": t1, "T2": t2})
            w = base.get("glanzel_w", 0.5)
            if w is not None and w is not False:
                name = f"glanzel_{float(w):.2f}__{a}__{b}"
                io.write_matrix(_ensure(stage / FUSED) / f"{name}.csv", glanzel_combination(s1, s2, float(w)))
                fused_log.append({"name": name, "method": "glanzel", "layers": [a, b], "w": float(w)})
        write_json(stage / FUSED / "fuse_log.json",
                   {"fused": fused_log, "note": "fused diagonal kept; zeroed before clustering"})
    return {"fused": fused_log}


def _ensure(d: Path) -> Path:
    d.mkdir(parents=True, exist_ok=True)
    return d


# ---------------------------------------------------------------- cluster

def cmd_cluster(cfg: RunConfig) -> dict:
    out_dir = cfg.output_dir
    sec = cfg.section("cluster")
    seed, resolution = int(sec.get("seed", 0)), float(sec.get("resolution", 1.0))
    names = sec.get("matrices")
    mats = load_matrices(out_dir)
    if names is not None:
        missing = [n for n in names if n not in mats]
        if missing:
            raise ConfigError(f"unknown matrices for clustering: {missing}")
        mats = {n: mats[n] for n in names}
    if not mats:
        raise ConfigError(f"no matrices found under {out_dir}")

    def run(item):
        name, m = item
        try:
            g = graph_from_similarity(m)
            trace = LouvainTrace()
            p = louvain(g, seed=seed, resolution=resolution, trace=trace)
            return name, p, {"name": name, "status": "ok", "clusters": p.n_clusters,
                             "modularity": modularity(g, p, resolution), "levels": trace.modularity}, None
        except MultifuseError as exc:
            return name, None, {"name": name, "status": f"error: {type(exc).__name__}: {exc}",
                                "clusters": "", "modularity": ""}, exc

    with staged(out_dir, "cluster") as stage:
        results = pmap(run, list(mats.items()), cfg.threads)
        rows, errors, levels = [], [], {}
        for name, p, row, exc in results:
            if p is not None:
                io.write_partition(_ensure(stage / PARTITIONS) / f"{name}.csv", p)
                levels[name] = row.pop("levels")
            else:
                errors.append(f"{name}: {exc}")
            rows.append(row)
        write_csv(_ensure(stage / REPORTS) / "modularity.csv", ["matrix", "clusters", "modularity", "status"],
                  [[r["name"], r["clusters"], r["modularity"], r["status"]] for r in rows])
        (stage / REPORTS / "modularity.txt").write_text(
            display_table([r["name"] for r in rows], ["clusters", "Q"],
                          [[r["clusters"] if r["clusters"] != "" else None,
                            r["modularity"] if r["modularity"] != "" else None] for r in rows],
                          f"Louvain (seed={seed}, resolution={resolution})"), encoding="utf-8")
        write_json(stage / REPORTS / "cluster_log.json",
                   {"seed": seed, "resolution": resolution, "per_level_modularity": levels})
        if errors:
            raise CommandFailed("clustering failed for " + "; ".join(errors))
    return {"rows": rows}


# ---------------------------------------------------------------- compare

def _fused_log(out_dir: Path) -> list[dict]:
    p = out_dir / FUSED / "fuse_log.json"
    return json.loads(p.read_text(encoding="utf-8"))["fused"] if p.exists() else []


def cmd_compare(cfg: RunConfig) -> dict:
    out_dir = cfg.output_dir
    mats = load_matrices(out_dir)
    names = cfg.section("compare").get("matrices")
    if names is not None:
        mats = {n: mats[n] for n in names}
    parts_dir = out_dir / PARTITIONS
    parts = {p.stem: io.read_partition(p) for p in sorted(parts_dir.glob("*.csv"))} if parts_dir.is_dir() else {}
    rank = {n: i for i, n in enumerate(mats)}
    parts = dict(sorted(parts.items(), key=lambda kv: (rank.get(kv[0], len(rank)), kv[0])))
    if not mats and not parts:
        raise ConfigError(f"nothing to compare under {out_dir}")
    report: dict = {}
    with staged(out_dir, "compare") as stage:
        rep = _ensure(stage / REPORTS)
        names = list(mats)
        if names:
            emb = dict(zip(names, pmap(lambda n: embed_rows(mats[n]), names, cfg.threads)))
            pairs = [(a, b) for i, a in enumerate(names) for b in names[i:]]
            vals = pmap(lambda ab: distance_correlation(emb[ab[0]], emb[ab[1]]), pairs, cfg.threads)
            table = {}
            for (a, b), r in zip(pairs, vals):
                table[a, b] = table[b, a] = r
            write_csv(rep / "dcor.csv", ["matrix_a", "matrix_b", "dcor", "dcor_sq"],
                      [[a, b, table[a, b].dcor, table[a, b].dcor_sq] for a in names for b in names])
            (rep / "dcor.txt").write_text(
                display_table(names, names, [[table[a, b].dcor for b in names] for a in names],
                              f"Distance correlation; {EMBEDDING_NOTE}")
                + "\n" + display_table(names, names, [[table[a, b].dcor_sq for b in names] for a in names],
                                       "Squared distance correlation"), encoding="utf-8")
            report["dcor"] = {f"{a}|{b}": table[a, b].dcor for a, b in pairs}

            rows = []
            for entry in _fused_log(out_dir):
                if entry.get("method") != "snf" or entry["name"] not in mats:
                    continue
                a, b = entry["layers"]
                if a not in emb or b not in emb:
                    continue
                f = emb[entry["name"]]
                for x, z in ((a, b), (b, a)):
                    r = partial_distance_correlation(f, emb[x], emb[z])
                    rows.append([entry["name"], x, z, r.pdcor, r.sqrt_pdcor])
            write_csv(rep / "pdcor.csv", ["fused", "layer", "given", "pdcor", "sqrt_pdcor"], rows)
            if rows:
                fused_names = list(dict.fromkeys(r[0] for r in rows))
                labels = list(dict.fromkeys(f"{r[1]} | {r[2]}" for r in rows))
                lookup = {(r[0], f"{r[1]} | {r[2]}"): r[3] for r in rows}
                (rep / "pdcor.txt").write_text(display_table(
                    labels, fused_names, [[lookup.get((f, lab), float("nan")) for f in fused_names] for lab in labels],
                    "Partial distance correlation, fused vs layer given the other layer"), encoding="utf-8")
            report["pdcor"] = rows
        pnames = list(parts)
        if pnames:
            cv = {(a, b): cramers_v(parts[a], parts[b]) for a in pnames for b in pnames}
            write_csv(rep / "cramers_v.csv", ["partition_a", "partition_b", "cramers_v"],
                      [[a, b, cv[a, b]] for a in pnames for b in pnames])
            (rep / "cramers_v.txt").write_text(display_table(
                pnames, pnames, [[cv[a, b] for b in pnames] for a in pnames], "Cramer's V between partitions"),
                encoding="utf-8")
            report["cramers_v"] = {f"{a}|{b}": v for (a, b), v in cv.items()}
    return report


# ---------------------------------------------------------------- synth-bench

BENCH_METHODS = ("layer1", "layer2", "snf", "boyack", "bk_0.500", "bk_0.333", "bk_0.200", "glanzel")


def bench_matrices(bundle: MultiplexBundle, snf_cfg: SnfConfig, glanzel_w: float = 0.5) -> dict[str, SimilarityMatrix]:
    s1, s2 = bundle[0], bundle[1]
    out = {"layer1": s1, "layer2": s2, "snf": snf(bundle, snf_cfg),
           "boyack": convex_combination(s1, s2, boyack_alpha(s1, s2))}
    for low in (0.5, 0.333, 0.2):
        out[f"bk_{low:.3f}"] = convex_combination(s1, s2, fixed_weight_alpha(s1, s2, low))
    out["glanzel"] = glanzel_combination(s1, s2, glanzel_w)
    return out


def cmd_synth_bench(cfg: RunConfig) -> dict:
    out_dir = cfg.output_dir
    sec = cfg.section("synth")
    if sec.get("generator", "complementary_pair") != "complementary_pair":
        raise ConfigError(f"unknown synth generator {sec.get('generator')!r}")
    seeds = [int(s) for s in sec.get("seeds", range(10))]
    snf_cfg = _snf_grid(cfg)[0]
    resolution = float(cfg.section("cluster").get("resolution", 1.0))
    glanzel_w = float(cfg.section("baselines").get("glanzel_w", 0.5) or 0.5)

    def run(seed):
        bundle, truth = complementary_pair(int(sec.get("n", 200)), int(sec.get("k", 4)), seed,
                                           sigma=float(sec.get("sigma", 0.05)),
                                           mu_in=float(sec.get("mu_in", 0.7)), mu_out=float(sec.get("mu_out", 0.2)))
        rows = []
        for method, m in bench_matrices(bundle, snf_cfg, glanzel_w).items():
            p = louvain(graph_from_similarity(m), seed=seed, resolution=resolution)
            rows.append([method, seed, adjusted_rand(p, truth), p.n_clusters])
        return rows

    with staged(out_dir, "synth-bench") as stage:
        rows = [r for chunk in pmap(run, seeds, cfg.threads) for r in chunk]
        rep = _ensure(stage / REPORTS)
        rows.sort(key=lambda r: (BENCH_METHODS.index(r[0]), r[1]))
        write_csv(rep / "synth_bench.csv", ["method", "seed", "ari", "clusters"], rows)
        best = {s: max(r[2] for r in rows if r[1] == s) for s in seeds}
        summary = []
        for method in BENCH_METHODS:
            mine = [r for r in rows if r[0] == method]
            summary.append([method, float(np.mean([r[2] for r in mine])), sum(r[2] >= best[r[1]] for r in mine),
                            len(mine)])
        write_csv(rep / "synth_bench_summary.csv", ["method", "mean_ari", "wins", "runs"], summary)
        (rep / "synth_bench.txt").write_text(display_table(
            [s[0] for s in summary], ["mean_ARI", "wins"], [[s[1], int(s[2])] for s in summary],
            f"Planted complementary pair, {len(seeds)} seeds"), encoding="utf-8")
    return {"rows": rows, "summary": summary}


# ---------------------------------------------------------------- export

def cmd_export(cfg: RunConfig) -> dict:
    out_dir = cfg.output_dir
    sec = cfg.section("export")
    mats = load_matrices(out_dir)
    fused_names = [e["name"] for e in _fused_log(out_dir) if e.get("method") == "snf"]
    name = sec.get("matrix") or (fused_names[0] if fused_names else None)
    if name is None or name not in mats:
        raise ConfigError(f"export matrix {name!r} not found")
    m = mats[name]
    pname = sec.get("partition") or name
    ppath = out_dir / PARTITIONS / f"{pname}.csv"
    if not ppath.exists():
        raise ConfigError(f"partition {pname!r} not found; run cluster first")
    part = io.read_partition(ppath)
    threshold = float(sec.get("threshold", 0.0))
    v = m.values
    iu, ju = np.triu_indices(m.n, 1)
    w = v[iu, ju]
    positive = w > 0
    keep = positive & (w >= threshold)
    dropped = int(np.count_nonzero(positive & ~keep))
    lab = part.labels
    with staged(out_dir, "export") as stage:
        ex = _ensure(stage / EXPORT)
        with open(ex / f"{name}.edges.tsv", "w", encoding="utf-8", newline="") as fh:
            fh.write("source\ttarget\tweight\tcluster\n")
            for i, j, x in zip(iu[keep], ju[keep], w[keep]):
                c = lab[i] if lab[i] == lab[j] else -1
                fh.write(f"{m.node_ids[i]}\t{m.node_ids[j]}\t{io.FLOAT_FMT % x}\t{c}\n")
        with open(ex / f"{name}.nodes.tsv", "w", encoding="utf-8", newline="") as fh:
            fh.write("id\tcluster\n")
            for node, c in zip(part.node_ids, lab):
                fh.write(f"{node}\t{c}\n")
        crosstab = sec.get("crosstab")
        if crosstab is None:
            entry = next((e for e in _fused_log(out_dir) if e["name"] == name), None)
            crosstab = []
            if entry is not None:
                a, b = entry["layers"]
                crosstab = [[a, b], [a, name], [b, name]]
        written = []
        for pa, pb in crosstab:
            fa, fb = out_dir / PARTITIONS / f"{pa}.csv", out_dir / PARTITIONS / f"{pb}.csv"
            if not (fa.exists() and fb.exists()):
                log.warning("skipping crosstab %s vs %s: partition missing", pa, pb)
                continue
            P, Q = io.read_partition(fa), io.read_partition(fb)
            table = contingency(P, Q)
            r, c = np.nonzero(table)
            write_csv(ex / f"crosstab__{pa}__{pb}.csv", ["cluster_a", "cluster_b", "count"],
                      [[int(x), int(y), int(table[x, y])] for x, y in zip(r, c)])
            written.append([pa, pb])
        info = {"matrix": name, "partition": pname, "threshold": threshold, "edges": int(np.count_nonzero(keep)),
                "dropped_below_threshold": dropped, "crosstabs": written}
        write_json(ex / "export_log.json", info)
    log.info("export: %d edges written, %d below threshold %g dropped", info["edges"], dropped, threshold)
    return info


COMMANDS = {
    "build": cmd_build,
    "fuse": cmd_fuse,
    "cluster": cmd_cluster,
    "compare": cmd_compare,
    "synth-bench": cmd_synth_bench,
    "export": cmd_export,
}
