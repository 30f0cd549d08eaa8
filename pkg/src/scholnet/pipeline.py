"""End-to-end runs: ingest, field assignment, networks, metrics, counterfactuals, report.

Every stage writes deterministic CSVs (sorted rows, 12 significant digits) and
a ``summary.json`` manifest into the output directory.
"""

from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ._io import fmt_float, resolve_input, write_csv
from .corpus import Corpus, FilterConfig, filter_corpus, load_corpus
from .counterfactual import (
    RANKING_MODE,
    counterfactual_all,
    rank_records,
    write_counterfactual_csv,
)
from .exceptions import ConfigError
from .fields import FieldAssignment, FieldHierarchy, assign_fields, load_hierarchy
from .influence import InfluenceNetwork, WeightKind, build_influence_network, write_network_csv
from .metrics import compute_all_metrics, write_metrics_csv
from .report import (
    CORRELATION_KIND,
    TRIM_PERCENTILE,
    birth_year_cdf,
    field_summary_table,
    influence_age_correlation,
    influence_cdfs,
    parallel_coordinates,
    team_size_distribution,
)

logger = logging.getLogger(__name__)

STAGES = ("ingest", "fields", "network", "metrics", "counterfactual", "report")


@dataclass
class RunConfig:
    input_dir: Path
    output_dir: Path
    filter: FilterConfig = field(default_factory=FilterConfig)
    weight: WeightKind = WeightKind.CITATIONS
    n_jobs: int = 1


@dataclass
class Context:
    """Artifacts built so far; each is computed lazily and at most once."""

    cfg: RunConfig
    raw: Corpus | None = None
    corpus: Corpus | None = None
    hierarchy: FieldHierarchy | None = None
    fields: FieldAssignment | None = None
    nets: dict[WeightKind, InfluenceNetwork] = field(default_factory=dict)
    manifest: dict[str, Any] = field(default_factory=dict)

    def load(self) -> Corpus:
        if self.corpus is None:
            papers = resolve_input(self.cfg.input_dir, "papers")
            if papers is None:
                raise ConfigError(f"no papers.jsonl[.gz] in {self.cfg.input_dir}")
            citations = resolve_input(self.cfg.input_dir, "citations")
            self.raw = load_corpus(papers, citations, n_jobs=self.cfg.n_jobs)
            self.corpus = filter_corpus(self.raw, self.cfg.filter)
        return self.corpus

    def assignment(self) -> FieldAssignment:
        if self.fields is None:
            path = resolve_input(self.cfg.input_dir, "fields")
            if path is None:
                raise ConfigError(f"no fields.jsonl[.gz] in {self.cfg.input_dir}")
            self.hierarchy = load_hierarchy(path)
            self.fields = assign_fields(self.hierarchy, self.load())
        return self.fields

    def network(self, kind: WeightKind) -> InfluenceNetwork:
        if kind not in self.nets:
            self.nets[kind] = build_influence_network(self.load(), kind, self.cfg.n_jobs)
        return self.nets[kind]


def _out(ctx: Context, name: str) -> Path:
    return ctx.cfg.output_dir / name


def _slug(field_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", field_id)


def stage_ingest(ctx: Context) -> None:
    corpus = ctx.load()
    write_csv(
        _out(ctx, "authors.csv"),
        ("author_id", "papers", "citations", "birth_year"),
        ((a.id, a.n_papers, a.citations, a.birth_year) for a in corpus.authors.values()),
    )
    write_csv(_out(ctx, "team_sizes.csv"), ("team_size", "papers"), team_size_distribution(ctx.raw).items())


def stage_fields(ctx: Context) -> None:
    fields = ctx.assignment()
    write_csv(_out(ctx, "author_fields.csv"), ("author_id", "field"),
              ((a, f or "") for a, f in fields.primary.items()))


def stage_network(ctx: Context) -> None:
    net = ctx.network(ctx.cfg.weight)
    write_network_csv(net, _out(ctx, f"network_{net.kind.value}.csv"))


def stage_metrics(ctx: Context) -> None:
    metrics = compute_all_metrics(ctx.load(), ctx.cfg.n_jobs)
    write_metrics_csv(_out(ctx, "metrics.csv"), metrics, ctx.assignment())


def _counterfactual_records(ctx: Context, kind: WeightKind):
    corpus, fields, net = ctx.load(), ctx.assignment(), ctx.network(kind)
    records = counterfactual_all(corpus, net, fields, n_jobs=ctx.cfg.n_jobs)
    by_field: dict[str | None, list] = {}
    for r in records:
        by_field.setdefault(r.field, []).append(r)
    ranked = []
    for f in sorted(by_field, key=lambda f: (f is None, f or "")):
        ranked.extend(rank_records(by_field[f]))
    return ranked


def stage_counterfactual(ctx: Context) -> None:
    kind = ctx.cfg.weight
    write_counterfactual_csv(_out(ctx, f"counterfactual_{kind.value}.csv"), _counterfactual_records(ctx, kind))


def _write_cdf(path: Path, series) -> None:
    write_csv(path, ("value", "fraction"), ((fmt_float(v), fmt_float(q)) for v, q in series.points))


def stage_report(ctx: Context) -> None:
    corpus, fields = ctx.load(), ctx.assignment()
    nets = {k: ctx.network(k) for k in WeightKind}
    for kind in WeightKind:
        write_network_csv(nets[kind], _out(ctx, f"network_{kind.value}.csv"))
        write_counterfactual_csv(_out(ctx, f"counterfactual_{kind.value}.csv"),
                                 _counterfactual_records(ctx, kind))
        for f, series in influence_cdfs(nets[kind], fields).items():
            _write_cdf(_out(ctx, f"cdf_influence_{kind.value}_{_slug(f)}.csv"), series)
    for f, series in birth_year_cdf(corpus, fields).items():
        _write_cdf(_out(ctx, f"cdf_birth_year_{_slug(f)}.csv"), series)

    rows = field_summary_table(corpus, nets, fields, ctx.cfg.n_jobs)
    write_csv(
        _out(ctx, "field_summary.csv"),
        ("field", "author_count", "median_influence_citations", "median_influence_papers",
         "mean_collaborators_trimmed", "median_collaborators"),
        ((r.field, r.author_count, fmt_float(r.median_influence_citations),
          fmt_float(r.median_influence_papers), fmt_float(r.mean_collaborators_trimmed),
          fmt_float(r.median_collaborators)) for r in rows),
    )
    write_csv(
        _out(ctx, "parallel_coordinates.csv"),
        ("field", "collaborators", "influence_citations", "influence_papers"),
        ((f, fmt_float(a), fmt_float(b), fmt_float(c)) for f, a, b, c in parallel_coordinates(rows)),
    )
    corr = influence_age_correlation(corpus, nets[WeightKind.CITATIONS], fields)
    write_csv(
        _out(ctx, "age_correlation.csv"),
        ("field", "n", "rho", "defined"),
        ((c.field, c.n, "" if c.rho is None else fmt_float(c.rho), int(c.defined)) for c in corr.values()),
    )
    ctx.manifest["undefined_correlations"] = [c.field for c in corr.values() if not c.defined]
    stage_ingest(ctx)
    stage_metrics(ctx)
    stage_fields(ctx)


_STAGE_FUNCS = {
    "ingest": stage_ingest,
    "fields": stage_fields,
    "network": stage_network,
    "metrics": stage_metrics,
    "counterfactual": stage_counterfactual,
    "report": stage_report,
}


def _manifest(ctx: Context, stage: str) -> dict[str, Any]:
    cfg = ctx.cfg
    m: dict[str, Any] = {
        "stage": stage,
        "config": {
            "input": str(cfg.input_dir),
            **cfg.filter.as_dict(),
            "weight": cfg.weight.value,
            "threads": cfg.n_jobs,
        },
        "decisions": {
            "correlation": CORRELATION_KIND,
            "trim_percentile": TRIM_PERCENTILE,
            "trimmed_statistic": "mean",
            "median_convention": "midpoint",
            "counterfactual_ranking": RANKING_MODE,
            "unmapped_subfields": "excluded",
            "citation_source": ctx.raw.load_stats.citation_source if ctx.raw else None,
        },
    }
    if ctx.raw is not None:
        stats = ctx.raw.load_stats
        m["counts"] = {
            "papers_loaded": len(ctx.raw.papers),
            "authors_loaded": len(ctx.raw.authors),
            "papers_retained": len(ctx.corpus.papers),
            "authors_retained": len(ctx.corpus.authors),
            "citation_edges": stats.citation_edges,
            "dropped_edges": stats.dropped_edges,
            "collapsed_duplicate_authors": stats.collapsed_duplicate_authors,
        }
    if ctx.fields is not None:
        tally: dict[str, int] = {}
        for f in ctx.fields.primary.values():
            key = f if f is not None else ""
            tally[key] = tally.get(key, 0) + 1
        m["authors_per_field"] = dict(sorted(tally.items()))
    m["skipped_nodes"] = {k.value: len(net.skipped) for k, net in sorted(ctx.nets.items())}
    m.update(ctx.manifest)
    return m


def run_stage(stage: str, cfg: RunConfig) -> dict[str, Any]:
    """Run one stage (with whatever it depends on) and return the manifest."""
    if stage not in _STAGE_FUNCS:
        raise ConfigError(f"unknown stage {stage!r}")
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    ctx = Context(cfg)
    _STAGE_FUNCS[stage](ctx)
    manifest = _manifest(ctx, stage)
    with open(cfg.output_dir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def run_pipeline(input_dir: str | os.PathLike, output_dir: str | os.PathLike,
                 filter_config: FilterConfig | None = None, n_jobs: int = 1) -> dict[str, Any]:
    """Full ingest-to-report run."""
    cfg = RunConfig(Path(input_dir), Path(output_dir), filter_config or FilterConfig(), n_jobs=n_jobs)
    return run_stage("report", cfg)
