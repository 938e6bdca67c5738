"""Command-line entry point: ``multifuse <command> --config run.toml``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import _backend
from .config import RunConfig
from .errors import MultifuseError
from .pipeline import COMMANDS

log = logging.getLogger("multifuse")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multifuse",
        description="Fuse citation and content similarity layers, cluster them, and compare the results.",
    )
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "build": "build similarity layers from citation, word-count and topic inputs",
        "fuse": "fuse layer pairs with SNF and the hybrid baselines",
        "cluster": "Louvain partitions and a modularity table for every matrix",
        "compare": "distance correlation, partial distance correlation and Cramer's V reports",
        "synth-bench": "recovery benchmark on planted complementary multiplexes",
        "export": "weighted edge list and cluster cross-tabulations for external plotting",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("--log-level", default=argparse.SUPPRESS, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
        p.add_argument("-c", "--config", help="TOML run configuration")
        p.add_argument("-o", "--out", help="output directory (overrides output_dir)")
        p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                       help="override any config key, e.g. --set snf.k_neighbors=30")
        p.add_argument("--threads", type=int, help="worker threads (capped by MULTIFUSE_THREADS)")
        p.add_argument("--seed", type=int, help="seed for clustering, LDA and the synthetic benchmark")
        if name == "build":
            p.add_argument("--tsv", action="store_true", help="inputs are tab-separated")
            p.add_argument("--drop-empty", action="store_true", help="drop articles without references or terms")
        if name in ("fuse", "synth-bench"):
            p.add_argument("--k-neighbors", type=int)
            p.add_argument("--iterations", type=int)
        if name in ("cluster", "synth-bench"):
            p.add_argument("--resolution", type=float)
        if name == "export":
            p.add_argument("--threshold", type=float, help="drop edges with weight below this cutoff")
            p.add_argument("--matrix", help="matrix to export (default: first SNF fused matrix)")
    return parser


def _overrides(args: argparse.Namespace) -> list[str]:
    out = list(args.overrides)
    if args.out:
        out.append(f"output_dir={json.dumps(args.out)}")
    if args.threads is not None:
        out.append(f"threads={args.threads}")
    if args.seed is not None:
        key = {"build": "lda.seed", "synth-bench": "cluster.seed"}.get(args.command, "cluster.seed")
        out.append(f"{key}={args.seed}")
    if getattr(args, "tsv", False):
        out.append('input.sep="\\t"')
    if getattr(args, "drop_empty", False):
        out.append("input.drop_empty=true")
    if getattr(args, "k_neighbors", None) is not None:
        out.append(f"snf.k_neighbors={args.k_neighbors}")
    if getattr(args, "iterations", None) is not None:
        out.append(f"snf.iterations={args.iterations}")
    if getattr(args, "resolution", None) is not None:
        out.append(f"cluster.resolution={args.resolution}")
    if getattr(args, "threshold", None) is not None:
        out.append(f"export.threshold={args.threshold}")
    if getattr(args, "matrix", None):
        out.append(f"export.matrix={json.dumps(args.matrix)}")
    return out


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = RunConfig.load(args.config, _overrides(args))
        log.debug("kernel backend: %s", _backend.NAME)
        COMMANDS[args.command](cfg)
    except MultifuseError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return 1
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
