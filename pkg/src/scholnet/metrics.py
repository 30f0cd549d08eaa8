"""Visibility metrics: citations, papers and the extended h-index, plus author rankings."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ._io import write_csv
from ._parallel import map_ordered
from .corpus import Corpus
from .exceptions import DomainError
from .fields import FieldAssignment

# Tuples compare lexicographically with a proper prefix ranking lower,
# which is exactly the ordering of extended h-indexes.
HSequence = tuple[int, ...]


def h_index(citations: Iterable[int]) -> int:
    """Classic h-index."""
    cs = sorted(citations, reverse=True)
    h = 0
    while h < len(cs) and cs[h] >= h + 1:
        h += 1
    return h


def extended_h_index(citations: Iterable[int]) -> HSequence:
    """Extended h-index as a non-increasing sequence ``(h1, h2, ...)``.

    With papers sorted by decreasing citations, ``h1`` is the side of the
    largest square anchored at the origin under the citation profile. Each
    following square sits on top of the previous one: it starts at height
    ``h1 + ... + hk`` and may only span the first ``hk`` papers. The sequence
    ends at the first square of side zero.

    >>> extended_h_index([5, 4, 3, 2, 1])
    (3, 1, 1)
    """
    cs = sorted(citations, reverse=True)
    if cs and cs[-1] < 0:
        raise DomainError("citation counts must be non-negative")
    seq: list[int] = []
    base = 0
    width = len(cs)
    while True:
        side = 0
        while side < width and cs[side] - base >= side + 1:
            side += 1
        if side == 0:
            break
        seq.append(side)
        base += side
        width = side
    return tuple(seq)


def compare_h_sequences(x: Sequence[int], y: Sequence[int]) -> int:
    """Three-way lexicographic comparison: -1, 0 or 1."""
    tx, ty = tuple(x), tuple(y)
    return (tx > ty) - (tx < ty)


def format_h(seq: Sequence[int]) -> str:
    return "-".join(str(h) for h in seq)


class Metric(str, enum.Enum):
    CITATIONS = "citations"
    PAPERS = "papers"
    H_EXTENDED = "h_extended"


@dataclass(frozen=True)
class AuthorMetrics:
    author_id: str
    papers: int
    citations: int
    h: HSequence


def metrics_for_papers(corpus: Corpus, author_id: str, paper_ids: Iterable[str]) -> AuthorMetrics:
    cits = [corpus.papers[pid].citation_count for pid in paper_ids]
    return AuthorMetrics(author_id, len(cits), sum(cits), extended_h_index(cits))


def author_metrics(corpus: Corpus, a: str) -> AuthorMetrics:
    return metrics_for_papers(corpus, a, corpus.author(a).paper_ids)


def compute_all_metrics(corpus: Corpus, n_jobs: int | None = None) -> dict[str, AuthorMetrics]:
    ids = list(corpus.authors)
    return dict(zip(ids, map_ordered(lambda a: author_metrics(corpus, a), ids, n_jobs)))


def _metric_value(m: AuthorMetrics, metric: Metric):
    if metric is Metric.CITATIONS:
        return m.citations
    if metric is Metric.PAPERS:
        return m.papers
    return m.h


def order_by_metric(values: Mapping[str, AuthorMetrics], metric: Metric | str) -> list[tuple[str, object]]:
    """Sort authors best-first by ``metric``.

    Ties fall to total citations, then paper count (both descending), then the
    smallest author id.
    """
    metric = Metric(metric)
    ids = sorted(values)
    ids.sort(
        key=lambda a: (_metric_value(values[a], metric), values[a].citations, values[a].papers),
        reverse=True,  # stable: equal keys keep ascending id order
    )
    return [(a, _metric_value(values[a], metric)) for a in ids]


def rank_authors(
    corpus: Corpus,
    metric: Metric | str = Metric.H_EXTENDED,
    restrict_field: str | None = None,
    fields: FieldAssignment | None = None,
    n_jobs: int | None = None,
) -> list[tuple[str, object]]:
    """Ranking of authors (position 1 first) by ``metric``.

    When ``restrict_field`` is given only authors whose primary field is that
    field are ranked; ``fields`` must then be supplied.
    """
    if restrict_field is not None:
        if fields is None:
            raise ValueError("restrict_field requires a field assignment")
        ids = fields.authors_in(restrict_field)
    else:
        ids = list(corpus.authors)
    ms = dict(zip(ids, map_ordered(lambda a: author_metrics(corpus, a), ids, n_jobs)))
    return order_by_metric(ms, metric)


def write_metrics_csv(path: str | os.PathLike, metrics: Mapping[str, AuthorMetrics],
                      fields: FieldAssignment | None = None) -> None:
    def field(a: str) -> str:
        if fields is None:
            return ""
        return fields.primary.get(a) or ""

    write_csv(
        path,
        ("author_id", "field", "papers", "citations", "h_sequence"),
        ((a, field(a), m.papers, m.citations, format_h(m.h)) for a, m in sorted(metrics.items())),
    )
