"""Field-of-study hierarchy and the mapping of papers and authors onto top fields."""

from __future__ import annotations

import graphlib
import os
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from ._io import iter_jsonl
from .corpus import Corpus, Paper
from .exceptions import CorpusParseError, HierarchyError, NotFoundError

FieldWeights = dict[str, Fraction]


@dataclass(frozen=True)
class FieldNode:
    id: str
    name: str = ""
    parent_ids: tuple[str, ...] = ()


class FieldHierarchy:
    """A DAG of fields of study with a designated set of top fields.

    Upward reachability to the top set is precomputed once in topological
    order, so lookups are pure reads and safe to share between threads.
    """

    def __init__(self, nodes: Iterable[FieldNode], top_fields: Iterable[str]):
        table: dict[str, FieldNode] = {}
        for node in nodes:
            if node.id in table:
                raise HierarchyError(f"duplicate field id {node.id!r}")
            table[node.id] = node
        top = frozenset(top_fields)
        missing = top - table.keys()
        if missing:
            raise HierarchyError(f"top fields not in hierarchy: {sorted(missing)}")
        for node in table.values():
            for parent in node.parent_ids:
                if parent not in table:
                    raise HierarchyError(f"field {node.id!r} has unknown parent {parent!r}")

        sorter = graphlib.TopologicalSorter({fid: n.parent_ids for fid, n in table.items()})
        try:
            order = list(sorter.static_order())
        except graphlib.CycleError as exc:
            raise HierarchyError(f"field hierarchy contains a cycle: {exc.args[1]}") from None

        reach: dict[str, frozenset[str]] = {}
        for fid in order:  # parents come before children
            if fid in top:
                reach[fid] = frozenset((fid,))
            else:
                acc: set[str] = set()
                for parent in table[fid].parent_ids:
                    acc |= reach[parent]
                reach[fid] = frozenset(acc)

        self.nodes: Mapping[str, FieldNode] = MappingProxyType(table)
        self.top_fields: frozenset[str] = top
        self._reach = MappingProxyType(reach)

    @classmethod
    def from_records(cls, records: Iterable[Mapping]) -> "FieldHierarchy":
        nodes, top = [], []
        for rec in records:
            nodes.append(FieldNode(rec["id"], rec.get("name", rec["id"]), tuple(rec.get("parents", ()))))
            if rec.get("top", False):
                top.append(rec["id"])
        return cls(nodes, top)

    def __contains__(self, f: str) -> bool:
        return f in self.nodes

    def __deepcopy__(self, memo) -> "FieldHierarchy":
        return self  # immutable

    def __len__(self) -> int:
        return len(self.nodes)

    def name(self, f: str) -> str:
        return self._node(f).name or f

    def _node(self, f: str) -> FieldNode:
        try:
            return self.nodes[f]
        except KeyError:
            raise NotFoundError(f"unknown field id {f!r}") from None

    def parents_of(self, f: str) -> frozenset[str]:
        try:
            return self._reach[f]
        except KeyError:
            raise NotFoundError(f"unknown field id {f!r}") from None


def load_hierarchy(path: str | os.PathLike) -> FieldHierarchy:
    """Read ``fields.jsonl`` (``{"id", "name", "parents", "top"}`` per line)."""
    records = []
    for lineno, obj in iter_jsonl(path):
        fid = obj.get("id")
        if not isinstance(fid, str) or not fid:
            raise CorpusParseError("field record needs a string 'id'", str(path), lineno)
        parents = obj.get("parents", [])
        if not isinstance(parents, list) or not all(isinstance(p, str) for p in parents):
            raise CorpusParseError("'parents' must be a list of strings", str(path), lineno)
        records.append(obj)
    return FieldHierarchy.from_records(records)


def parents_of(h: FieldHierarchy, f: str) -> frozenset[str]:
    """Top fields reachable upwards from ``f``; ``{f}`` when ``f`` is itself a top field."""
    return h.parents_of(f)


def paper_field_weights(h: FieldHierarchy, paper: Paper | Iterable[str]) -> FieldWeights:
    """Relevance of each top field to a paper, as exact fractions.

    Subfields that reach no top field, or that are absent from the hierarchy,
    are removed before averaging, so the weights of any paper with at least one
    mapped subfield sum to exactly one.
    """
    subfields = paper.subfield_ids if isinstance(paper, Paper) else tuple(paper)
    mapped = []
    for f in dict.fromkeys(subfields):
        tops = h._reach.get(f)
        if tops:
            mapped.append(tops)
    if not mapped:
        return {}
    weights: dict[str, Fraction] = defaultdict(Fraction)
    share = Fraction(1, len(mapped))
    for tops in mapped:
        part = share / len(tops)
        for t in tops:
            weights[t] += part
    return {t: weights[t] for t in sorted(weights)}


def author_field_weights(h: FieldHierarchy, corpus: Corpus, a: str) -> FieldWeights:
    """Unnormalized sum of the paper weights over the author's papers."""
    total: dict[str, Fraction] = defaultdict(Fraction)
    for pid in corpus.author(a).paper_ids:
        for t, w in paper_field_weights(h, corpus.papers[pid]).items():
            total[t] += w
    return {t: total[t] for t in sorted(total)}


def primary_field(weights: Mapping[str, Fraction | float]) -> str | None:
    """Argmax of ``weights``, ties going to the smallest field id."""
    best = None
    for t in sorted(weights):
        if best is None or weights[t] > weights[best]:
            best = t
    return best


def author_primary_field(h: FieldHierarchy, corpus: Corpus, a: str) -> str | None:
    return primary_field(author_field_weights(h, corpus, a))


@dataclass(frozen=True)
class FieldAssignment:
    """Per-author primary field, as produced by :func:`assign_fields`."""

    top_fields: frozenset[str]
    primary: Mapping[str, str | None]

    def field_of(self, a: str) -> str | None:
        try:
            return self.primary[a]
        except KeyError:
            raise NotFoundError(f"author {a!r} has no field assignment") from None

    def check_field(self, field: str) -> None:
        if field not in self.top_fields:
            raise NotFoundError(f"unknown top field {field!r}")

    def authors_in(self, field: str) -> list[str]:
        self.check_field(field)
        return sorted(a for a, f in self.primary.items() if f == field)


def assign_fields(h: FieldHierarchy, corpus: Corpus) -> FieldAssignment:
    """Primary field of every author in ``corpus``."""
    cache = {pid: paper_field_weights(h, p) for pid, p in corpus.papers.items()}
    primary: dict[str, str | None] = {}
    for aid, author in corpus.authors.items():
        total: dict[str, Fraction] = defaultdict(Fraction)
        for pid in author.paper_ids:
            for t, w in cache[pid].items():
                total[t] += w
        primary[aid] = primary_field(total)
    return FieldAssignment(h.top_fields, MappingProxyType(primary))
