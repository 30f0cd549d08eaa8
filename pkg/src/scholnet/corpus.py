"""Bibliographic corpus: loading, validation, filtering and per-author statistics.

A :class:`Corpus` is immutable. ``load_corpus`` returns an unfiltered corpus in
which every author listed on any paper is an author record; ``filter_corpus``
applies the paper-level predicates (year window, team size) and then, once, the
author thresholds (minimum papers and citations).
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

from ._io import iter_jsonl
from ._parallel import map_ordered
from .exceptions import ConfigError, CorpusParseError, NotFoundError

logger = logging.getLogger(__name__)

PathLike = str | os.PathLike


@dataclass(frozen=True)
class Paper:
    id: str
    year: int
    author_ids: tuple[str, ...]
    subfield_ids: tuple[str, ...] = ()
    citation_count: int = 0

    def __post_init__(self) -> None:
        if not self.author_ids:
            raise ValueError(f"paper {self.id!r} has no authors")
        if len(set(self.author_ids)) != len(self.author_ids):
            raise ValueError(f"paper {self.id!r} lists an author twice")
        if self.citation_count < 0:
            raise ValueError(f"paper {self.id!r} has a negative citation count")


@dataclass(frozen=True)
class Author:
    """An author record.

    ``paper_ids`` are the author's papers within the corpus (sorted), and
    ``citations`` is the sum of their citation counts.
    """

    id: str
    paper_ids: tuple[str, ...]
    birth_year: int
    citations: int = 0

    @property
    def n_papers(self) -> int:
        return len(self.paper_ids)


@dataclass(frozen=True)
class FilterConfig:
    year_from: int = 1950
    year_to: int = 2020
    max_team_size: int = 10
    min_papers: int = 10
    min_citations: int = 200

    def __post_init__(self) -> None:
        if self.year_from > self.year_to:
            raise ConfigError(f"year_from ({self.year_from}) > year_to ({self.year_to})")
        if self.max_team_size < 1:
            raise ConfigError("max_team_size must be a positive integer")
        if self.min_papers < 1:
            raise ConfigError("min_papers must be a positive integer")
        if self.min_citations < 0:
            raise ConfigError("min_citations must be non-negative")

    def as_dict(self) -> dict[str, int]:
        return {
            "year_from": self.year_from,
            "year_to": self.year_to,
            "max_team_size": self.max_team_size,
            "min_papers": self.min_papers,
            "min_citations": self.min_citations,
        }


@dataclass(frozen=True)
class LoadStats:
    records: int = 0
    citation_edges: int = 0
    dropped_edges: int = 0
    collapsed_duplicate_authors: int = 0
    citation_source: str = "inline"


class Corpus:
    """Immutable store of papers, authors and the author/paper incidence.

    Papers keep their full author lists even when some of those authors were
    removed by filtering; :meth:`paper_authors` returns only retained authors.
    """

    __slots__ = ("papers", "authors", "filter_config", "load_stats", "_paper_authors")

    def __init__(
        self,
        papers: Mapping[str, Paper],
        authors: Mapping[str, Author],
        filter_config: FilterConfig | None = None,
        load_stats: LoadStats | None = None,
    ):
        papers = {pid: papers[pid] for pid in sorted(papers)}
        authors = {aid: authors[aid] for aid in sorted(authors)}
        for a in authors.values():
            for pid in a.paper_ids:
                if pid not in papers:
                    raise ValueError(f"author {a.id!r} references unknown paper {pid!r}")
        paper_authors = {
            pid: tuple(aid for aid in p.author_ids if aid in authors) for pid, p in papers.items()
        }
        object.__setattr__(self, "papers", MappingProxyType(papers))
        object.__setattr__(self, "authors", MappingProxyType(authors))
        object.__setattr__(self, "filter_config", filter_config)
        object.__setattr__(self, "load_stats", load_stats or LoadStats())
        object.__setattr__(self, "_paper_authors", MappingProxyType(paper_authors))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Corpus is immutable")

    def __repr__(self) -> str:
        state = "filtered" if self.is_filtered else "unfiltered"
        return f"Corpus({len(self.papers)} papers, {len(self.authors)} authors, {state})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return (
            dict(self.papers) == dict(other.papers)
            and dict(self.authors) == dict(other.authors)
            and self.filter_config == other.filter_config
        )

    __hash__ = None  # type: ignore[assignment]

    def __copy__(self) -> "Corpus":
        return self

    def __deepcopy__(self, memo) -> "Corpus":
        return self

    @property
    def is_filtered(self) -> bool:
        return self.filter_config is not None

    def author(self, a: str) -> Author:
        try:
            return self.authors[a]
        except KeyError:
            raise NotFoundError(f"unknown author id {a!r}") from None

    def paper(self, p: str) -> Paper:
        try:
            return self.papers[p]
        except KeyError:
            raise NotFoundError(f"unknown paper id {p!r}") from None

    def paper_authors(self, p: str) -> tuple[str, ...]:
        """Retained authors of paper ``p``, in the paper's author order."""
        try:
            return self._paper_authors[p]
        except KeyError:
            raise NotFoundError(f"unknown paper id {p!r}") from None


def build_corpus(papers: Iterable[Paper], filter_config: FilterConfig | None = None,
                 load_stats: LoadStats | None = None) -> Corpus:
    """Assemble a corpus whose authors are synthesized from paper author lists."""
    by_id: dict[str, Paper] = {}
    for p in papers:
        if p.id in by_id:
            raise ValueError(f"duplicate paper id {p.id!r}")
        by_id[p.id] = p
    return Corpus(by_id, _synthesize_authors(by_id.values()), filter_config, load_stats)


def _synthesize_authors(papers: Iterable[Paper], keep: set[str] | None = None) -> dict[str, Author]:
    ids: dict[str, list[str]] = {}
    cits: Counter[str] = Counter()
    first: dict[str, int] = {}
    for p in papers:
        for aid in p.author_ids:
            if keep is not None and aid not in keep:
                continue
            ids.setdefault(aid, []).append(p.id)
            cits[aid] += p.citation_count
            if aid not in first or p.year < first[aid]:
                first[aid] = p.year
    return {
        aid: Author(aid, tuple(sorted(pids)), first[aid], cits[aid]) for aid, pids in ids.items()
    }


def _parse_paper(obj: dict[str, Any], path: str, lineno: int) -> tuple[Paper, int]:
    def fail(msg: str) -> CorpusParseError:
        return CorpusParseError(msg, path, lineno)

    for key in ("id", "year", "authors"):
        if key not in obj:
            raise fail(f"missing required field {key!r}")
    pid = obj["id"]
    if not isinstance(pid, str) or not pid:
        raise fail("'id' must be a non-empty string")
    year = obj["year"]
    if isinstance(year, bool) or not isinstance(year, int):
        raise fail("'year' must be an integer")
    authors = obj["authors"]
    if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
        raise fail("'authors' must be a list of strings")
    fields = obj.get("fields", [])
    if not isinstance(fields, list) or not all(isinstance(f, str) for f in fields):
        raise fail("'fields' must be a list of strings")
    cits = obj.get("citations", 0)
    if cits is None:
        cits = 0
    if isinstance(cits, bool) or not isinstance(cits, int) or cits < 0:
        raise fail("'citations' must be a non-negative integer")

    deduped = tuple(dict.fromkeys(authors))
    collapsed = len(authors) - len(deduped)
    if collapsed:
        logger.warning("%s:%d: paper %r lists duplicate authors; collapsed", path, lineno, pid)
    if not deduped:
        raise fail(f"paper {pid!r} has no authors")
    return Paper(pid, year, deduped, tuple(dict.fromkeys(fields)), cits), collapsed


def _read_papers(path: PathLike) -> tuple[list[tuple[Paper, str, int]], int, int]:
    out = []
    collapsed = 0
    records = 0
    for lineno, obj in iter_jsonl(path):
        paper, c = _parse_paper(obj, str(path), lineno)
        collapsed += c
        records += 1
        out.append((paper, str(path), lineno))
    return out, records, collapsed


def load_corpus(
    papers_path: PathLike | Sequence[PathLike],
    citations_path: PathLike | None = None,
    n_jobs: int | None = None,
) -> Corpus:
    """Load an unfiltered corpus from JSONL files.

    Parameters
    ----------
    papers_path : path or sequence of paths
        ``papers.jsonl`` (optionally gzip-compressed). A sequence is treated as
        shards of one file and parsed in parallel; the merged corpus does not
        depend on shard order.
    citations_path : path, optional
        ``citations.jsonl`` edge list. When given, every paper's citation count
        is its in-degree in this file and inline counts are ignored. Edges that
        mention an unknown paper are dropped and tallied.
    n_jobs : int, optional
        Number of shards parsed concurrently.
    """
    if isinstance(papers_path, (str, os.PathLike)):
        shards: list[PathLike] = [papers_path]
    else:
        shards = list(papers_path)

    parsed = map_ordered(_read_papers, shards, n_jobs)
    by_id: dict[str, Paper] = {}
    where: dict[str, tuple[str, int]] = {}
    records = collapsed = 0
    for rows, n, c in parsed:
        records += n
        collapsed += c
        for paper, path, lineno in rows:
            if paper.id in by_id:
                first = where[paper.id]
                raise CorpusParseError(
                    f"duplicate paper id {paper.id!r} (first seen at {first[0]}:{first[1]})",
                    path, lineno,
                )
            by_id[paper.id] = paper
            where[paper.id] = (path, lineno)

    stats = LoadStats(records=records, collapsed_duplicate_authors=collapsed)
    if citations_path is not None:
        indeg, n_edges, dropped = _count_in_degree(citations_path, by_id.keys())
        if dropped:
            logger.warning("%s: dropped %d citation edges with unknown paper ids", citations_path, dropped)
        by_id = {
            pid: Paper(p.id, p.year, p.author_ids, p.subfield_ids, indeg.get(pid, 0))
            for pid, p in by_id.items()
        }
        stats = LoadStats(records, n_edges, dropped, collapsed, "edges")
    return Corpus(by_id, _synthesize_authors(by_id.values()), None, stats)


def _count_in_degree(path: PathLike, known: Iterable[str]) -> tuple[Counter[str], int, int]:
    known = set(known)
    indeg: Counter[str] = Counter()
    n_edges = dropped = 0
    for lineno, obj in iter_jsonl(path):
        citing, cited = obj.get("citing"), obj.get("cited")
        if not isinstance(citing, str) or not isinstance(cited, str):
            raise CorpusParseError("edge needs string 'citing' and 'cited'", str(path), lineno)
        n_edges += 1
        if citing not in known or cited not in known:
            dropped += 1
            continue
        indeg[cited] += 1
    return indeg, n_edges, dropped


def filter_corpus(corpus: Corpus, cfg: FilterConfig | None = None) -> Corpus:
    """Apply paper predicates, then author thresholds, in a single pass.

    Author thresholds are evaluated on the papers that survive the paper
    predicates. Retained papers keep their full author lists; authors dropped
    here simply have no record in the result.
    """
    cfg = cfg or FilterConfig()
    kept = [
        p for p in corpus.papers.values()
        if cfg.year_from <= p.year <= cfg.year_to and len(p.author_ids) <= cfg.max_team_size
    ]
    n_papers: Counter[str] = Counter()
    cits: Counter[str] = Counter()
    for p in kept:
        for aid in p.author_ids:
            n_papers[aid] += 1
            cits[aid] += p.citation_count
    survivors = {
        aid for aid, n in n_papers.items() if n >= cfg.min_papers and cits[aid] >= cfg.min_citations
    }
    return Corpus(
        {p.id: p for p in kept},
        _synthesize_authors(kept, keep=survivors),
        cfg,
        corpus.load_stats,
    )


def author_citations(corpus: Corpus, a: str) -> int:
    return corpus.author(a).citations


def author_papers(corpus: Corpus, a: str) -> int:
    return corpus.author(a).n_papers


def author_birth_year(corpus: Corpus, a: str) -> int:
    """Year of the author's first publication within the corpus."""
    return corpus.author(a).birth_year


def author_collaborators(corpus: Corpus, a: str) -> frozenset[str]:
    """Distinct retained coauthors of ``a`` over ``a``'s papers."""
    out: set[str] = set()
    for pid in corpus.author(a).paper_ids:
        out.update(corpus.paper_authors(pid))
    out.discard(a)
    return frozenset(out)
