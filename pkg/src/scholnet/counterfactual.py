"""Author metrics recomputed without the papers shared with their top collaborator.

Counterfactuals never modify the corpus: each author is compared with a
reduced version of themselves. For rankings, every author in the field is
reduced at the same time (each against their own top collaborator), so the
reduced ranking is one coherent ordering.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Iterable

from ._io import write_csv
from ._parallel import map_ordered
from .corpus import Corpus
from .fields import FieldAssignment
from .influence import InfluenceNetwork, top_collaborator
from .metrics import AuthorMetrics, HSequence, format_h, metrics_for_papers, order_by_metric

RANKING_MODE = "simultaneous"


@dataclass(frozen=True)
class MetricSnapshot:
    papers: int
    citations: int
    h: HSequence
    h_rank: int | None = None


@dataclass(frozen=True)
class CounterfactualRecord:
    author_id: str
    field: str | None
    original: MetricSnapshot
    reduced: MetricSnapshot
    top_collaborator: str | None


def reduced_paper_set(corpus: Corpus, a: str, t: str | None) -> frozenset[str]:
    """Papers of ``a`` that do not list ``t`` among their authors."""
    pids = corpus.author(a).paper_ids
    if t is None:
        return frozenset(pids)
    return frozenset(pid for pid in pids if t not in corpus.papers[pid].author_ids)


def _snapshot(m: AuthorMetrics) -> MetricSnapshot:
    return MetricSnapshot(m.papers, m.citations, m.h)


def counterfactual_author(corpus: Corpus, net: InfluenceNetwork, a: str,
                          fields: FieldAssignment | None = None) -> CounterfactualRecord:
    t = top_collaborator(net, a)
    author = corpus.author(a)
    original = metrics_for_papers(corpus, a, author.paper_ids)
    if t is None:
        reduced = original
    else:
        keep = reduced_paper_set(corpus, a, t)
        reduced = metrics_for_papers(corpus, a, (pid for pid in author.paper_ids if pid in keep))
    field = fields.primary.get(a) if fields is not None else None
    return CounterfactualRecord(a, field, _snapshot(original), _snapshot(reduced), t)


def counterfactual_all(corpus: Corpus, net: InfluenceNetwork, fields: FieldAssignment | None = None,
                       authors: Iterable[str] | None = None,
                       n_jobs: int | None = None) -> list[CounterfactualRecord]:
    ids = sorted(authors) if authors is not None else list(net.nodes)
    return map_ordered(lambda a: counterfactual_author(corpus, net, a, fields), ids, n_jobs)


def _ranks(records: list[CounterfactualRecord], which: str) -> dict[str, int]:
    values = {}
    for r in records:
        s = getattr(r, which)
        values[r.author_id] = AuthorMetrics(r.author_id, s.papers, s.citations, s.h)
    return {a: i for i, (a, _) in enumerate(order_by_metric(values, "h_extended"), start=1)}


def rank_records(records: list[CounterfactualRecord]) -> list[CounterfactualRecord]:
    """Attach original and reduced h-ranks computed within ``records``."""
    orig = _ranks(records, "original")
    red = _ranks(records, "reduced")
    ranked = [
        replace(r, original=replace(r.original, h_rank=orig[r.author_id]),
                reduced=replace(r.reduced, h_rank=red[r.author_id]))
        for r in records
    ]
    ranked.sort(key=lambda r: (r.original.h_rank, r.author_id))
    return ranked


def counterfactual_rankings(corpus: Corpus, net: InfluenceNetwork, field: str,
                            fields: FieldAssignment, n_jobs: int | None = None) -> list[CounterfactualRecord]:
    """Original and reduced h-ranks for all authors whose primary field is ``field``.

    Records come back ordered by original rank.
    """
    members = [a for a in fields.authors_in(field) if a in net]
    return rank_records(counterfactual_all(corpus, net, fields, members, n_jobs))


COUNTERFACTUAL_HEADER = (
    "author_id", "field", "orig_papers", "red_papers", "orig_citations", "red_citations",
    "orig_h", "red_h", "orig_rank", "red_rank", "top_collaborator",
)


def write_counterfactual_csv(path: str | os.PathLike, records: Iterable[CounterfactualRecord]) -> None:
    def rank(x: int | None) -> str:
        return "" if x is None else str(x)

    write_csv(
        path,
        COUNTERFACTUAL_HEADER,
        (
            (
                r.author_id, r.field or "",
                r.original.papers, r.reduced.papers,
                r.original.citations, r.reduced.citations,
                format_h(r.original.h), format_h(r.reduced.h),
                rank(r.original.h_rank), rank(r.reduced.h_rank),
                r.top_collaborator or "",
            )
            for r in records
        ),
    )
