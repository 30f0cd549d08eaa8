"""Seeded synthetic corpora in the ``papers/citations/fields`` JSONL formats.

Each field owns a disjoint pool of authors split into research groups. A paper
is led by a random author of the field; coauthors are drawn from the lead's
group with probability ``in_group_prob`` and from the whole field otherwise.
Team sizes are ``1 + Poisson(mean_team_size - 1)``. Per-paper citation counts
follow a discrete Pareto tail, and each citation is materialized as an edge
from a distinct random paper.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from ._io import write_jsonl
from .exceptions import ConfigError


@dataclass(frozen=True)
class FieldSpec:
    name: str
    n_authors: int
    n_papers: int
    mean_team_size: float = 3.0


@dataclass(frozen=True)
class SynthParams:
    fields: tuple[FieldSpec, ...]
    year_from: int = 1950
    year_to: int = 2020
    mid_fields_per_field: int = 3
    leaf_fields_per_mid: int = 3
    max_subfields_per_paper: int = 2
    cross_field_prob: float = 0.0
    group_size: int = 8
    in_group_prob: float = 0.85
    max_team_size: int = 10
    citation_alpha: float = 2.5
    citation_xmin: int = 10
    citation_max: int = 5000
    out_of_window_frac: float = 0.0
    oversize_team_frac: float = 0.0

    def __post_init__(self) -> None:
        if not self.fields:
            raise ConfigError("at least one field is required")
        names = [f.name for f in self.fields]
        if len(set(names)) != len(names) or not all(names):
            raise ConfigError("field names must be unique and non-empty")
        for f in self.fields:
            if f.n_authors < 1 or f.n_papers < 0:
                raise ConfigError(f"field {f.name!r}: need n_authors >= 1 and n_papers >= 0")
            if not 1.0 <= f.mean_team_size <= self.max_team_size:
                raise ConfigError(f"field {f.name!r}: mean_team_size must lie in [1, max_team_size]")
        if self.year_from > self.year_to:
            raise ConfigError("year_from > year_to")
        if self.citation_alpha <= 1.0:
            raise ConfigError("citation_alpha must exceed 1")
        if self.citation_xmin < 1 or self.citation_max < 0:
            raise ConfigError("citation_xmin must be >= 1 and citation_max >= 0")
        for name in ("cross_field_prob", "in_group_prob", "out_of_window_frac", "oversize_team_frac"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must be a probability")
        if self.group_size < 1 or self.max_team_size < 1:
            raise ConfigError("group_size and max_team_size must be positive")
        if min(self.mid_fields_per_field, self.leaf_fields_per_mid, self.max_subfields_per_paper) < 1:
            raise ConfigError("hierarchy shape parameters must be positive")

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "SynthParams":
        d = dict(d)
        try:
            fields = tuple(FieldSpec(**f) for f in d.pop("fields"))
            return cls(fields=fields, **d)
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"invalid generator parameters: {exc}") from None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def default_params(n_fields: int = 4, authors_per_field: int = 1250, papers_per_field: int = 12500,
                   team_sizes: Sequence[float] | None = None) -> SynthParams:
    team_sizes = list(team_sizes) if team_sizes else [3.0] * n_fields
    if len(team_sizes) != n_fields:
        raise ConfigError("need one mean team size per field")
    return SynthParams(tuple(
        FieldSpec(f"F{k}", authors_per_field, papers_per_field, float(team_sizes[k]))
        for k in range(n_fields)
    ))


def _hierarchy(params: SynthParams, rng: np.random.Generator) -> tuple[list[dict], dict[str, list[str]]]:
    records: list[dict] = []
    mids: dict[str, list[str]] = {}
    leaves: dict[str, list[str]] = {}
    for f in params.fields:
        records.append({"id": f.name, "name": f.name, "parents": [], "top": True})
        mids[f.name] = []
        for j in range(params.mid_fields_per_field):
            mid = f"{f.name}.m{j}"
            mids[f.name].append(mid)
            records.append({"id": mid, "name": mid, "parents": [f.name], "top": False})
    names = [f.name for f in params.fields]
    for k, f in enumerate(params.fields):
        leaves[f.name] = []
        for j, mid in enumerate(mids[f.name]):
            for m in range(params.leaf_fields_per_mid):
                leaf = f"{mid}.l{m}"
                parents = [mid]
                if len(names) > 1 and rng.random() < params.cross_field_prob:
                    other = names[(k + 1 + int(rng.integers(len(names) - 1))) % len(names)]
                    parents.append(mids[other][int(rng.integers(len(mids[other])))])
                leaves[f.name].append(leaf)
                records.append({"id": leaf, "name": leaf, "parents": parents, "top": False})
    return records, leaves


def _team(rng: np.random.Generator, lead: int, pool: np.ndarray, group_of: np.ndarray,
          groups: list[np.ndarray], size: int, in_group_prob: float) -> list[int]:
    size = min(size, len(pool))
    team = [lead]
    chosen = {lead}
    group = groups[group_of[lead]]
    while len(team) < size:
        if len(group) > 1 and rng.random() < in_group_prob and not chosen.issuperset(group.tolist()):
            cand = int(group[rng.integers(len(group))])
        else:
            cand = int(pool[rng.integers(len(pool))])
        if cand not in chosen:
            chosen.add(cand)
            team.append(cand)
    return team


def generate_records(params: SynthParams, seed: int) -> tuple[list[dict], list[dict], list[dict]]:
    """Return ``(papers, citations, fields)`` record lists; pure function of its inputs."""
    rng = np.random.default_rng(seed)
    field_records, leaves = _hierarchy(params, rng)

    papers: list[dict] = []
    author_base = 0
    for f in params.fields:
        pool = np.arange(author_base, author_base + f.n_authors)
        author_base += f.n_authors
        order = rng.permutation(pool)
        groups = [order[i:i + params.group_size] for i in range(0, len(order), params.group_size)]
        group_of = np.empty(author_base, dtype=np.int64)
        for g, members in enumerate(groups):
            group_of[members] = g
        start = rng.integers(params.year_from, params.year_to + 1, size=author_base)

        for _ in range(f.n_papers):
            lead = int(pool[rng.integers(len(pool))])
            size = 1 + int(rng.poisson(f.mean_team_size - 1.0))
            size = min(size, params.max_team_size)
            if rng.random() < params.oversize_team_frac:
                size = params.max_team_size + 1 + int(rng.integers(5))
            team = _team(rng, lead, pool, group_of, groups, size, params.in_group_prob)
            year = int(rng.integers(start[lead], params.year_to + 1))
            if rng.random() < params.out_of_window_frac:
                year = (params.year_from - 1 - int(rng.integers(30)) if rng.random() < 0.5
                        else params.year_to + 1 + int(rng.integers(5)))
            n_sub = 1 + int(rng.integers(params.max_subfields_per_paper))
            subs = rng.choice(len(leaves[f.name]), size=min(n_sub, len(leaves[f.name])), replace=False)
            papers.append({
                "id": "",
                "year": year,
                "authors": [f"A{a:06d}" for a in team],
                "fields": [leaves[f.name][int(i)] for i in sorted(subs)],
            })

    n = len(papers)
    for i, rec in enumerate(papers):
        rec["id"] = f"P{i:07d}"

    edges: list[dict] = []
    tail = rng.pareto(params.citation_alpha - 1.0, size=n)
    counts = np.floor(params.citation_xmin * (1.0 + tail)).astype(np.int64) - params.citation_xmin
    counts = np.clip(counts, 0, min(params.citation_max, max(n - 1, 0)))
    for i in range(n):
        c = int(counts[i])
        papers[i]["citations"] = c
        if c == 0:
            continue
        citers = rng.choice(n - 1, size=c, replace=False)
        citers = np.sort(np.where(citers >= i, citers + 1, citers))
        cited = papers[i]["id"]
        edges.extend({"citing": f"P{int(j):07d}", "cited": cited} for j in citers)
    return papers, edges, field_records


def generate_synthetic_corpus(params: SynthParams, seed: int, out_dir: str | os.PathLike,
                              compress: bool = False) -> dict[str, Path]:
    """Write ``papers.jsonl``, ``citations.jsonl`` and ``fields.jsonl`` to ``out_dir``.

    The same ``params`` and ``seed`` always produce byte-identical files.
    """
    if not isinstance(params, SynthParams):
        raise ConfigError("params must be a SynthParams instance")
    papers, edges, field_records = generate_records(params, int(seed))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = ".jsonl.gz" if compress else ".jsonl"
    paths = {
        "papers": out / f"papers{ext}",
        "citations": out / f"citations{ext}",
        "fields": out / f"fields{ext}",
    }
    write_jsonl(paths["papers"], papers)
    write_jsonl(paths["citations"], edges)
    write_jsonl(paths["fields"], field_records)
    return paths
