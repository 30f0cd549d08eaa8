"""scikit-learn compatible wrappers around the functional API.

The estimators take a :class:`~scholnet.corpus.Corpus` as ``X`` and compose
in a :class:`sklearn.pipeline.Pipeline`::

    Pipeline([
        ("filter", CorpusFilter(min_papers=10, min_citations=200)),
        ("cf", TopCollaboratorCounterfactual(hierarchy=h)),
    ]).fit(corpus)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_author_ids, check_corpus, check_hierarchy, check_weight_kind
from .corpus import FilterConfig, filter_corpus
from .counterfactual import counterfactual_all, rank_records
from .fields import assign_fields
from .influence import build_influence_network, top_collaborator, top_influence
from .metrics import compute_all_metrics, format_h


class CorpusFilter(TransformerMixin, BaseEstimator):
    """Drop out-of-window and oversized papers, then under-threshold authors.

    Parameters
    ----------
    year_from, year_to : int
        Inclusive publication-year window.
    max_team_size : int
        Papers with more authors are discarded.
    min_papers, min_citations : int
        Author thresholds, evaluated on the surviving papers.
    """

    def __init__(self, year_from=1950, year_to=2020, max_team_size=10, min_papers=10, min_citations=200):
        self.year_from = year_from
        self.year_to = year_to
        self.max_team_size = max_team_size
        self.min_papers = min_papers
        self.min_citations = min_citations

    def fit(self, X, y=None):
        X = check_corpus(X)
        self.config_ = FilterConfig(self.year_from, self.year_to, self.max_team_size,
                                    self.min_papers, self.min_citations)
        self.n_papers_in_ = len(X.papers)
        self.n_authors_in_ = len(X.authors)
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return filter_corpus(check_corpus(X), self.config_)


class FieldAssigner(BaseEstimator):
    """Assign each author their primary top field.

    ``predict`` maps author ids to field ids (``None`` for authors whose
    papers reach no top field).
    """

    def __init__(self, hierarchy=None):
        self.hierarchy = hierarchy

    def fit(self, X, y=None):
        X = check_corpus(X)
        h = check_hierarchy(self.hierarchy, allow_none=False)
        self.assignment_ = assign_fields(h, X)
        self.fields_ = sorted(h.top_fields)
        return self

    def predict(self, X):
        check_is_fitted(self, "assignment_")
        return [self.assignment_.field_of(a) for a in check_author_ids(X)]


class InfluenceNetworkBuilder(TransformerMixin, BaseEstimator):
    """Fit the directed influence network of a corpus.

    ``predict`` returns each author's top collaborator; ``transform`` returns
    their top-collaborator influence as a float array.
    """

    def __init__(self, kind="citations", n_jobs=None):
        self.kind = kind
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_corpus(X)
        self.network_ = build_influence_network(X, check_weight_kind(self.kind), self.n_jobs)
        return self

    def predict(self, X):
        check_is_fitted(self, "network_")
        return [top_collaborator(self.network_, a) for a in check_author_ids(X)]

    def transform(self, X):
        check_is_fitted(self, "network_")
        ids = check_author_ids(X)
        return np.array([top_influence(self.network_, a) for a in ids], dtype=float)


class TopCollaboratorCounterfactual(TransformerMixin, BaseEstimator):
    """Original vs. reduced metrics after removing each author's top-collaborator papers.

    After ``fit``, ``records_`` holds one ranked record per author (ranks are
    computed within each primary field when a hierarchy is given, otherwise
    over all authors). ``transform`` returns a numeric array with columns
    ``orig_papers, red_papers, orig_citations, red_citations, orig_h1, red_h1``
    for the requested authors.
    """

    columns = ("orig_papers", "red_papers", "orig_citations", "red_citations", "orig_h1", "red_h1")

    def __init__(self, kind="citations", hierarchy=None, n_jobs=None):
        self.kind = kind
        self.hierarchy = hierarchy
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_corpus(X)
        kind = check_weight_kind(self.kind)
        h = check_hierarchy(self.hierarchy)
        self.network_ = build_influence_network(X, kind, self.n_jobs)
        self.fields_ = assign_fields(h, X) if h is not None else None
        records = counterfactual_all(X, self.network_, self.fields_, n_jobs=self.n_jobs)
        groups: dict = {}
        for r in records:
            groups.setdefault(r.field, []).append(r)
        ranked = []
        for f in sorted(groups, key=lambda f: (f is None, f or "")):
            ranked.extend(rank_records(groups[f]))
        self.records_ = ranked
        self._by_author = {r.author_id: r for r in ranked}
        return self

    def transform(self, X):
        check_is_fitted(self, "records_")
        rows = []
        for a in check_author_ids(X):
            r = self._by_author.get(a)
            if r is None:
                raise KeyError(f"author {a!r} was not seen during fit")
            rows.append((
                r.original.papers, r.reduced.papers, r.original.citations, r.reduced.citations,
                r.original.h[0] if r.original.h else 0, r.reduced.h[0] if r.reduced.h else 0,
            ))
        return np.array(rows, dtype=np.int64).reshape(-1, len(self.columns))


class MetricsTable(TransformerMixin, BaseEstimator):
    """Per-author papers, citations and extended h-index as table rows."""

    def __init__(self, n_jobs=None):
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        self.metrics_ = compute_all_metrics(check_corpus(X), self.n_jobs)
        return self

    def transform(self, X):
        check_is_fitted(self, "metrics_")
        return [
            (a, self.metrics_[a].papers, self.metrics_[a].citations, format_h(self.metrics_[a].h))
            for a in check_author_ids(X)
        ]
