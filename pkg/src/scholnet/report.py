"""Plot-ready summaries: CDFs, medians, trimmed means, per-field tables, correlations."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import stats

from ._parallel import map_ordered
from .corpus import Corpus, author_collaborators
from .exceptions import DomainError
from .fields import FieldAssignment
from .influence import InfluenceNetwork, WeightKind, top_influence

CORRELATION_KIND = "spearman"
TRIM_PERCENTILE = 0.95


@dataclass(frozen=True)
class CdfSeries:
    label: str
    points: tuple[tuple[float, float], ...]


def cdf(values: Iterable[float], label: str = "") -> CdfSeries:
    """Empirical CDF; tied values collapse onto their last (highest) fraction."""
    xs = sorted(values)
    n = len(xs)
    pts: list[tuple[float, float]] = []
    for i, x in enumerate(xs, start=1):
        if i < n and xs[i] == x:
            continue
        pts.append((x, i / n))
    return CdfSeries(label, tuple(pts))


def median(values: Iterable[float]) -> float:
    """Median; midpoint of the two middle values for even counts."""
    xs = list(values)
    if not xs:
        raise DomainError("median of an empty sample")
    return float(statistics.median(xs))


def nearest_rank_percentile(values: Sequence[float], percentile: float) -> float:
    if not 0 < percentile <= 1:
        raise DomainError("percentile must lie in (0, 1]")
    xs = sorted(values)
    if not xs:
        raise DomainError("percentile of an empty sample")
    # guard against 0.95 * n landing a hair above an integer
    rank = max(1, math.ceil(percentile * len(xs) - 1e-9))
    return xs[rank - 1]


def trimmed_mean(values: Iterable[float], percentile: float = TRIM_PERCENTILE) -> float:
    """Mean of the values not exceeding the nearest-rank ``percentile``."""
    xs = list(values)
    cut = nearest_rank_percentile(xs, percentile)
    kept = [x for x in xs if x <= cut]
    return math.fsum(kept) / len(kept)


@dataclass(frozen=True)
class FieldSummary:
    field: str
    author_count: int
    median_influence_citations: float
    median_influence_papers: float
    mean_collaborators_trimmed: float
    median_collaborators: float


def _influences(net: InfluenceNetwork, authors: Iterable[str]) -> list[float]:
    return [top_influence(net, a) for a in authors if a in net and not net.is_skipped(a)]


def _median_or_nan(xs: Sequence[float]) -> float:
    return median(xs) if xs else math.nan


def field_summary_table(
    corpus: Corpus,
    nets: Mapping[WeightKind | str, InfluenceNetwork],
    fields: FieldAssignment,
    n_jobs: int | None = None,
) -> list[FieldSummary]:
    """One row per top field that has authors, ordered by citation-influence median."""
    by_kind = {WeightKind(k): v for k, v in nets.items()}
    cit_net = by_kind[WeightKind.CITATIONS]
    pap_net = by_kind[WeightKind.PAPERS]

    def summarize(field: str) -> FieldSummary | None:
        members = fields.authors_in(field)
        if not members:
            return None
        n_collab = [len(author_collaborators(corpus, a)) for a in members]
        return FieldSummary(
            field,
            len(members),
            _median_or_nan(_influences(cit_net, members)),
            _median_or_nan(_influences(pap_net, members)),
            trimmed_mean(n_collab, TRIM_PERCENTILE),
            median(n_collab),
        )

    rows = [r for r in map_ordered(summarize, sorted(fields.top_fields), n_jobs) if r is not None]
    rows.sort(key=lambda r: (math.isnan(r.median_influence_citations), r.median_influence_citations, r.field))
    return rows


def parallel_coordinates(rows: Sequence[FieldSummary]) -> list[tuple[str, float, float, float]]:
    """Per-field (collaborators, citation influence, paper influence), each scaled by its column max."""
    def scaled(xs: list[float]) -> list[float]:
        finite = [x for x in xs if not math.isnan(x)]
        top = max(finite, default=0.0)
        return [x / top if top > 0 else 0.0 for x in xs]

    collab = scaled([r.mean_collaborators_trimmed for r in rows])
    cit = scaled([r.median_influence_citations for r in rows])
    pap = scaled([r.median_influence_papers for r in rows])
    return [(r.field, c, ci, p) for r, c, ci, p in zip(rows, collab, cit, pap)]


def influence_cdfs(net: InfluenceNetwork, fields: FieldAssignment) -> dict[str, CdfSeries]:
    out = {}
    for f in sorted(fields.top_fields):
        xs = _influences(net, fields.authors_in(f))
        if xs:
            out[f] = cdf(xs, f)
    return out


def birth_year_cdf(corpus: Corpus, fields: FieldAssignment) -> dict[str, CdfSeries]:
    out = {}
    for f in sorted(fields.top_fields):
        members = fields.authors_in(f)
        if members:
            out[f] = cdf((corpus.authors[a].birth_year for a in members), f)
    return out


@dataclass(frozen=True)
class Correlation:
    field: str
    n: int
    rho: float | None

    @property
    def defined(self) -> bool:
        return self.rho is not None


def spearman(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Spearman rank correlation, or ``None`` when undefined (n < 3 or a constant input)."""
    if len(x) != len(y):
        raise ValueError("x and y differ in length")
    if len(x) < 3 or len(set(x)) < 2 or len(set(y)) < 2:
        return None
    return float(stats.spearmanr(np.asarray(x, dtype=float), np.asarray(y, dtype=float)).statistic)


def influence_age_correlation(corpus: Corpus, net: InfluenceNetwork,
                              fields: FieldAssignment) -> dict[str, Correlation]:
    """Per-field Spearman correlation between birth year and top-collaborator influence."""
    out = {}
    for f in sorted(fields.top_fields):
        members = [a for a in fields.authors_in(f) if a in net and not net.is_skipped(a)]
        years = [corpus.authors[a].birth_year for a in members]
        infl = [top_influence(net, a) for a in members]
        out[f] = Correlation(f, len(members), spearman(years, infl))
    return out


def team_size_distribution(corpus: Corpus) -> dict[int, int]:
    """Number of papers per author-list length."""
    counts = Counter(len(p.author_ids) for p in corpus.papers.values())
    return {k: counts[k] for k in sorted(counts)}
