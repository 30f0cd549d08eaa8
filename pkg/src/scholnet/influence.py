"""Directed network of influences between coauthors and top-collaborator queries.

Edge ``A -> B`` carries ``c_AB``, the citations (or number of papers) that A
earned on papers coauthored with B, and the weight ``c_AB / c_A``: the share of
A's total that came through the collaboration with B.
"""

from __future__ import annotations

import enum
import logging
import os
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ._io import fmt_float, write_csv
from ._parallel import map_chunks
from .corpus import Corpus
from .exceptions import NotFoundError

logger = logging.getLogger(__name__)


class WeightKind(str, enum.Enum):
    CITATIONS = "citations"
    PAPERS = "papers"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Edge:
    joint_value: int
    weight: float


class InfluenceNetwork:
    """Immutable weighted digraph over the retained authors of a corpus.

    Attributes
    ----------
    kind : WeightKind
    nodes : tuple of str
        Every author of the corpus, sorted.
    totals : mapping
        ``c_A`` for each node under ``kind``.
    skipped : tuple of str
        Authors whose total is zero; they have no out-edges and their
        influence is undefined.
    """

    def __init__(self, kind: WeightKind, totals: Mapping[str, int],
                 joint: Mapping[tuple[str, str], int], unfiltered: bool = False):
        self.kind = WeightKind(kind)
        self.nodes: tuple[str, ...] = tuple(sorted(totals))
        self.totals: Mapping[str, int] = MappingProxyType(dict(totals))
        self.skipped: tuple[str, ...] = tuple(a for a in self.nodes if totals[a] == 0)
        self.unfiltered = unfiltered
        out: dict[str, dict[str, Edge]] = {a: {} for a in self.nodes}
        for (a, b) in sorted(joint):
            c_a = totals[a]
            if c_a == 0:
                continue
            out[a][b] = Edge(joint[(a, b)], joint[(a, b)] / c_a)
        self._out = MappingProxyType({a: MappingProxyType(e) for a, e in out.items()})

    def __repr__(self) -> str:
        return f"InfluenceNetwork(kind={self.kind.value}, nodes={len(self.nodes)}, edges={self.n_edges})"

    def __contains__(self, a: str) -> bool:
        return a in self._out

    @property
    def n_edges(self) -> int:
        return sum(len(e) for e in self._out.values())

    def out_edges(self, a: str) -> Mapping[str, Edge]:
        try:
            return self._out[a]
        except KeyError:
            raise NotFoundError(f"author {a!r} is not a node of the network") from None

    def edges(self) -> Iterable[tuple[str, str, Edge]]:
        """All edges ordered by (source, target)."""
        for a in self.nodes:
            for b, e in self._out[a].items():
                yield a, b, e

    def is_skipped(self, a: str) -> bool:
        self.out_edges(a)
        return self.totals[a] == 0


def _pair_counts(corpus: Corpus, kind: WeightKind, paper_ids: Sequence[str]) -> Counter:
    acc: Counter = Counter()
    by_citations = kind is WeightKind.CITATIONS
    for pid in paper_ids:
        authors = corpus.paper_authors(pid)
        if len(authors) < 2:
            continue
        value = corpus.papers[pid].citation_count if by_citations else 1
        for pair in permutations(authors, 2):
            acc[pair] += value
    return acc


def joint_values(corpus: Corpus, kind: WeightKind | str = WeightKind.CITATIONS,
                 n_jobs: int | None = None) -> dict[tuple[str, str], int]:
    """``c_AB`` for every ordered pair of retained coauthors.

    Papers are sharded across workers and the integer partial counts summed,
    so the result does not depend on ``n_jobs``. Pairs that only share
    zero-citation papers still appear, with value 0.
    """
    kind = WeightKind(kind)
    pids = list(corpus.papers)
    total: Counter = Counter()
    for part in map_chunks(lambda shard: _pair_counts(corpus, kind, shard), pids, n_jobs):
        total.update(part)
    return dict(total)


def build_influence_network(corpus: Corpus, kind: WeightKind | str = WeightKind.CITATIONS,
                            n_jobs: int | None = None) -> InfluenceNetwork:
    kind = WeightKind(kind)
    if not corpus.is_filtered:
        logger.warning("building an influence network on an unfiltered corpus; thresholds unverified")
    if kind is WeightKind.CITATIONS:
        totals = {a: rec.citations for a, rec in corpus.authors.items()}
    else:
        totals = {a: rec.n_papers for a, rec in corpus.authors.items()}
    net = InfluenceNetwork(kind, totals, joint_values(corpus, kind, n_jobs), not corpus.is_filtered)
    if net.skipped:
        logger.info("%d authors have zero %s and no out-edges", len(net.skipped), kind.value)
    return net


def influence_weight(net: InfluenceNetwork, a: str, b: str) -> float:
    """``w_ab``, or 0 when ``a`` and ``b`` never coauthored."""
    out = net.out_edges(a)
    if b not in net:
        raise NotFoundError(f"author {b!r} is not a node of the network")
    edge = out.get(b)
    return edge.weight if edge is not None else 0.0


def _rank_key(item: tuple[str, Edge]) -> tuple[float, int, str]:
    b, e = item
    return (-e.weight, -e.joint_value, b)


def top_collaborator(net: InfluenceNetwork, a: str) -> str | None:
    """Out-neighbour with the largest weight.

    Ties fall to the larger joint value, then the smallest author id.
    """
    out = net.out_edges(a)
    if not out:
        return None
    return min(out.items(), key=_rank_key)[0]


def top_influence(net: InfluenceNetwork, a: str) -> float:
    out = net.out_edges(a)
    return max((e.weight for e in out.values()), default=0.0)


def write_network_csv(net: InfluenceNetwork, path: str | os.PathLike) -> None:
    write_csv(
        path,
        ("source", "target", "joint_value", "weight"),
        ((a, b, e.joint_value, fmt_float(e.weight)) for a, b, e in net.edges()),
    )
