"""Matrix, partition and distribution file formats.

Matrices are headerless CSV with full-precision floats and a sidecar
``<stem>.ids`` file holding one node id per line.
"""
from __future__ import annotations

import csv
import os
from pathlib import Path
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .errors import ParseError
from .model import DistributionMatrix, Partition, SimilarityMatrix

FLOAT_FMT = "%.17g"


def ids_path(path: str | os.PathLike) -> Path:
    return Path(path).with_suffix(".ids")


def write_ids(path: str | os.PathLike, ids: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for x in ids:
            fh.write(f"{x}\n")


def read_ids(path: str | os.PathLike) -> tuple[str, ...]:
    with open(path, encoding="utf-8") as fh:
        return tuple(line.rstrip("\n") for line in fh if line.strip())


def write_matrix(path: str | os.PathLike, m: SimilarityMatrix) -> Path:
    path = Path(path)
    np.savetxt(path, m.values, fmt=FLOAT_FMT, delimiter=",")
    write_ids(ids_path(path), m.node_ids)
    return path


def read_matrix(path: str | os.PathLike) -> SimilarityMatrix:
    path = Path(path)
    try:
        values = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except (ValueError, OSError) as exc:
        raise ParseError(str(exc), path=path) from exc
    side = ids_path(path)
    ids = read_ids(side) if side.exists() else None
    return SimilarityMatrix(values, ids)


def write_partition(path: str | os.PathLike, p: Partition) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node_id", "cluster_id"])
        for node, lab in zip(p.node_ids, p.labels):
            w.writerow([node, int(lab)])
    return path


def read_partition(path: str | os.PathLike) -> Partition:
    path = Path(path)
    ids, labels = [], []
    with open(path, encoding="utf-8", newline="") as fh:
        for line_no, row in enumerate(csv.reader(fh), start=1):
            if not row or (line_no == 1 and row == ["node_id", "cluster_id"]):
                continue
            if len(row) != 2:
                raise ParseError("expected node_id,cluster_id", path, line_no, ",".join(row))
            try:
                labels.append(int(row[1]))
            except ValueError:
                raise ParseError("cluster id is not an integer", path, line_no, ",".join(row)) from None
            ids.append(row[0])
    return Partition(np.asarray(labels, dtype=np.int64), ids)


def write_distribution(path: str | os.PathLike, d: DistributionMatrix) -> Path:
    """Write ``article_id,feature,weight`` triples (nonzero cells only)."""
    path = Path(path)
    coo = sp.coo_matrix(d.values)
    order = np.lexsort((coo.col, coo.row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for k in order:
            w.writerow([d.rows[coo.row[k]], d.cols[coo.col[k]], FLOAT_FMT % coo.data[k]])
    return path
