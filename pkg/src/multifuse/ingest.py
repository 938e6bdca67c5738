"""Readers for citation edges, word counts and topic distributions.

All readers take a ``sep`` argument (``","`` by default, ``"\\t"`` for TSV
dumps) and report parse failures with file, line number and the offending
text verbatim.
"""
from __future__ import annotations

import csv
import logging
import os
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import (
    AllTermsRemovedError,
    EmptyArticleError,
    NegativeCountError,
    ParseError,
    ZeroRowError,
)
from .model import BipartiteIncidence, DistributionMatrix

log = logging.getLogger(__name__)

RENORM_TOL = 1e-6
DENSE_MAX_COLS = 1024


@dataclass(frozen=True)
class CountTable:
    """Nonnegative integer counts, articles x terms (CSR, sorted ids)."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    counts: sp.csr_matrix

    def __post_init__(self):
        c = sp.csr_matrix(self.counts, dtype=np.int64, copy=True)
        c.sum_duplicates()
        c.eliminate_zeros()
        c.sort_indices()
        if c.shape != (len(self.rows), len(self.cols)):
            raise ValueError(f"count shape {c.shape} does not match ids")
        if c.data.size and c.data.min() < 0:
            raise NegativeCountError("counts must be nonnegative")
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "counts", c)

    @property
    def n(self) -> int:
        return len(self.rows)

    def empty_rows(self) -> list[str]:
        return [self.rows[i] for i in np.flatnonzero(np.diff(self.counts.indptr) == 0)]

    def document_frequency(self) -> np.ndarray:
        return np.bincount(self.counts.indices, minlength=len(self.cols))

    def drop_rows(self, ids) -> "CountTable":
        drop = set(ids)
        keep = [i for i, r in enumerate(self.rows) if r not in drop]
        return CountTable(tuple(self.rows[i] for i in keep), self.cols, self.counts[keep])


def _records(path, sep, min_fields, max_fields):
    path = Path(path)
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise ParseError(f"cannot open input: {exc.strerror}", path=path) from exc
    with fh:
        reader = csv.reader(fh, delimiter=sep)
        try:
            for row in reader:
                line_no = reader.line_num
                if not row or all(not f.strip() for f in row):
                    continue
                if row[0].startswith("#"):
                    continue
                if not (min_fields <= len(row) <= max_fields):
                    raise ParseError(
                        f"expected {min_fields if min_fields == max_fields else f'{min_fields}-{max_fields}'} fields, got {len(row)}",
                        path, line_no, sep.join(row),
                    )
                fields = [f.strip() for f in row]
                if not fields[0]:
                    raise ParseError("empty article id", path, line_no, sep.join(row))
                yield line_no, fields, sep.join(row)
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 ({exc.reason})", path=path) from exc
        except csv.Error as exc:
            raise ParseError(str(exc), path, reader.line_num) from exc


def read_citation_edges(path: str | os.PathLike, sep: str = ",", drop_empty: bool = False) -> BipartiteIncidence:
    """Read ``article_id,reference_id`` pairs into a binary incidence.

    A line carrying only an article id (or an empty reference field) declares
    an article; articles that end up with no references raise
    :class:`EmptyArticleError` unless ``drop_empty`` is set, in which case
    they are dropped and logged.
    """
    refs: dict[str, set[str]] = defaultdict(set)
    for _, fields, _ in _records(path, sep, 1, 2):
        art = fields[0]
        ref = fields[1] if len(fields) == 2 else ""
        bucket = refs[art]
        if ref:
            bucket.add(ref)
    empty = sorted(a for a, r in refs.items() if not r)
    if empty:
        if not drop_empty:
            raise EmptyArticleError(empty, f"{path}: articles without cited references: {', '.join(empty[:20])}")
        log.warning("dropping %d articles without cited references: %s", len(empty), ", ".join(empty[:20]))
        for a in empty:
            del refs[a]
    if not refs:
        raise ParseError("no citation edges found", path=path)
    rows = tuple(sorted(refs))
    cols = tuple(sorted(set().union(*refs.values())))
    col_index = {c: j for j, c in enumerate(cols)}
    indptr, indices = [0], []
    for a in rows:
        idx = sorted(col_index[r] for r in refs[a])
        indices.extend(idx)
        indptr.append(len(indices))
    data = np.ones(len(indices))
    cells = sp.csr_matrix((data, np.asarray(indices, dtype=np.int64), np.asarray(indptr)), shape=(len(rows), len(cols)))
    return BipartiteIncidence(rows, cols, cells)


def read_count_table(path: str | os.PathLike, sep: str = ",") -> CountTable:
    """Read ``article_id,term,count`` triples; repeated triples are summed."""
    acc: dict[tuple[str, str], int] = defaultdict(int)
    arts, terms = set(), set()
    for line_no, fields, raw in _records(path, sep, 3, 3):
        art, term, cnt = fields
        if not term:
            raise ParseError("empty term", path, line_no, raw)
        try:
            value = int(cnt)
        except ValueError:
            raise ParseError("count is not an integer", path, line_no, raw) from None
        if value < 0:
            raise NegativeCountError(f"{path}:{line_no}: negative count [{raw!r}]")
        acc[art, term] += value
        arts.add(art)
        terms.add(term)
    if not acc:
        raise ParseError("no count records found", path=path)
    rows, cols = tuple(sorted(arts)), tuple(sorted(terms))
    ri = {a: i for i, a in enumerate(rows)}
    ci = {t: j for j, t in enumerate(cols)}
    keys = list(acc)
    r = np.fromiter((ri[a] for a, _ in keys), dtype=np.int64, count=len(keys))
    c = np.fromiter((ci[t] for _, t in keys), dtype=np.int64, count=len(keys))
    v = np.fromiter(acc.values(), dtype=np.int64, count=len(keys))
    return CountTable(rows, cols, sp.csr_matrix((v, (r, c)), shape=(len(rows), len(cols))))


def filter_vocabulary(t: CountTable, min_docs: int = 3, max_doc_fraction: float = 0.95) -> CountTable:
    """Drop rare and ubiquitous terms by document frequency.

    A term survives when it occurs (count > 0) in at least ``min_docs``
    documents and in no more than ``max_doc_fraction * n`` documents. Rows
    left without any term are logged but kept.
    """
    if min_docs < 0:
        raise ValueError("min_docs must be >= 0")
    if not 0.0 <= max_doc_fraction <= 1.0:
        raise ValueError("max_doc_fraction must lie in [0, 1]")
    df = t.document_frequency()
    keep = np.flatnonzero((df >= min_docs) & (df <= max_doc_fraction * t.n))
    if keep.size == 0:
        raise AllTermsRemovedError(
            f"no term has document frequency in [{min_docs}, {max_doc_fraction} * {t.n}]"
        )
    out = CountTable(t.rows, tuple(t.cols[j] for j in keep), t.counts[:, keep])
    log.info("vocabulary filter kept %d of %d terms", keep.size, len(t.cols))
    empty = out.empty_rows()
    if empty:
        log.warning("%d articles have no terms left after filtering: %s", len(empty), ", ".join(empty[:20]))
    return out


def read_distribution_table(path: str | os.PathLike, sep: str = ",") -> DistributionMatrix:
    """Read ``article_id,feature,weight`` triples and renormalize rows to 1."""
    acc: dict[tuple[str, str], float] = defaultdict(float)
    arts, feats = set(), set()
    for line_no, fields, raw in _records(path, sep, 3, 3):
        art, feat, w = fields
        if not feat:
            raise ParseError("empty feature", path, line_no, raw)
        try:
            value = float(w)
        except ValueError:
            raise ParseError("weight is not a number", path, line_no, raw) from None
        if not np.isfinite(value) or value < 0:
            raise ParseError("weight must be finite and nonnegative", path, line_no, raw)
        acc[art, feat] += value
        arts.add(art)
        feats.add(feat)
    if not acc:
        raise ParseError("no distribution records found", path=path)
    rows, cols = tuple(sorted(arts)), tuple(sorted(feats))
    ri = {a: i for i, a in enumerate(rows)}
    ci = {f: j for j, f in enumerate(cols)}
    keys = list(acc)
    r = np.fromiter((ri[a] for a, _ in keys), dtype=np.int64, count=len(keys))
    c = np.fromiter((ci[f] for _, f in keys), dtype=np.int64, count=len(keys))
    v = np.fromiter(acc.values(), dtype=np.float64, count=len(keys))
    m = sp.csr_matrix((v, (r, c)), shape=(len(rows), len(cols)))
    m.sort_indices()
    sums = np.asarray(m.sum(axis=1)).ravel()
    zero = [rows[i] for i in np.flatnonzero(sums <= 0)]
    if zero:
        raise ZeroRowError(zero, f"{path}: rows with zero total weight: {', '.join(zero[:20])}")
    off = np.flatnonzero(np.abs(sums - 1.0) > RENORM_TOL)
    if off.size:
        log.info("%s: renormalized %d rows whose weights did not sum to 1 (e.g. %s: %g)",
                 path, off.size, rows[off[0]], sums[off[0]])
    m = sp.diags(1.0 / sums) @ m
    m = sp.csr_matrix(m)
    if len(cols) <= DENSE_MAX_COLS:
        return DistributionMatrix(rows, cols, m.toarray())
    return DistributionMatrix(rows, cols, m)
