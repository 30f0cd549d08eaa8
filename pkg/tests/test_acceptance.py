"""Exit criteria for the primary component, one test per criterion.

Each test prints a PASS/FAIL line (visible with ``pytest -s`` or in the
captured output of a failure) and asserts at the stated tolerance.
"""

from __future__ import annotations

import random
import time
from pathlib import Path

import pytest

from scholnet import (
    FieldHierarchy,
    FieldNode,
    FieldSpec,
    FilterConfig,
    Paper,
    SynthParams,
    WeightKind,
    assign_fields,
    build_corpus,
    build_influence_network,
    extended_h_index,
    filter_corpus,
    generate_synthetic_corpus,
    influence_weight,
    load_corpus,
    load_hierarchy,
    paper_field_weights,
    parents_of,
    top_collaborator,
)
from scholnet.counterfactual import counterfactual_all
from scholnet.influence import joint_values
from scholnet.pipeline import run_pipeline
from scholnet.report import field_summary_table
from scholnet.synth import default_params

from oracles import brute_extended_h, brute_joint, brute_top_reach, random_corpus, random_dag


@pytest.fixture
def verdict(capsys):
    def emit(name: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))
        assert ok, f"{name}: {detail}"
    return emit


@pytest.fixture(scope="module")
def random_corpora():
    return [random_corpus(random.Random(10_000 + i), max_authors=20, max_papers=50) for i in range(200)]


def test_fig2_toy_network(verdict):
    t0 = time.perf_counter()
    papers = [
        Paper("ab", 2000, ("A", "B"), (), 50),
        Paper("a1", 2001, ("A",), (), 150),
        Paper("bd", 2002, ("B", "D"), (), 150),
        Paper("b1", 2003, ("B",), (), 100),
        Paper("cd", 2004, ("C", "D"), (), 40),
    ]
    corpus = filter_corpus(build_corpus(papers), FilterConfig(1900, 2100, 10, 1, 0))
    net = build_influence_network(corpus, WeightKind.CITATIONS)
    w_ab = influence_weight(net, "A", "B")
    w_ba = influence_weight(net, "B", "A")
    top_b = top_collaborator(net, "B")
    elapsed = time.perf_counter() - t0
    ok = (net.totals["A"] == 200 and net.totals["B"] == 300 and w_ab == 0.25
          and abs(w_ba - 50 / 300) <= 1e-12 and top_b == "D" and elapsed < 1.0)
    verdict("Fig.2 golden network", ok, f"w_AB={w_ab} w_BA={w_ba:.15f} T(B)={top_b} t={elapsed:.3f}s")


def test_extended_h_index_oracle(verdict):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(1000):
        cs = [rng.randint(0, 100) for _ in range(rng.randint(0, 50))]
        if extended_h_index(cs) != brute_extended_h(cs):
            mismatches += 1
    elapsed = time.perf_counter() - t0
    verdict("extended h-index vs brute force (1000 multisets)", mismatches == 0 and elapsed < 10,
            f"mismatches={mismatches} t={elapsed:.2f}s")


def test_pair_aggregation_oracle(verdict, random_corpora):
    t0 = time.perf_counter()
    bad = 0
    pairs = 0
    for c in random_corpora:
        for kind in WeightKind:
            got, want = joint_values(c, kind), brute_joint(c, kind.value)
            pairs += len(want)
            bad += got != want
    elapsed = time.perf_counter() - t0
    verdict("pair aggregation vs double loop (200 corpora, both kinds)", bad == 0 and elapsed < 30,
            f"mismatching corpora={bad} pairs={pairs} t={elapsed:.2f}s")


def test_field_weight_conservation(verdict):
    rng = random.Random(77)
    checked = reach_bad = sum_bad = 0
    worst = 0.0
    for _ in range(500):
        names, parents, top = random_dag(rng, rng.randint(1, 50))
        h = FieldHierarchy([FieldNode(n, n, tuple(parents[n])) for n in names], top)
        for n in names:
            reach_bad += parents_of(h, n) != brute_top_reach(parents, top, n)
        for _ in range(5):
            subs = rng.sample(names, rng.randint(1, min(6, len(names))))
            if all(brute_top_reach(parents, top, s) for s in subs):
                err = abs(float(sum(paper_field_weights(h, subs).values())) - 1.0)
                worst = max(worst, err)
                sum_bad += err > 1e-12
                checked += 1
    verdict("field-weight conservation and reachability (500 DAGs)",
            reach_bad == 0 and sum_bad == 0 and checked > 0,
            f"papers checked={checked} max|sum-1|={worst:.1e} reach mismatches={reach_bad}")


def test_counterfactual_conservation(verdict, random_corpora):
    authors = violations = 0
    for c in random_corpora:
        for kind in WeightKind:
            net = build_influence_network(c, kind)
            for rec in counterfactual_all(c, net):
                authors += 1
                t = rec.top_collaborator
                joint = sum(p.citation_count for p in c.papers.values()
                            if rec.author_id in p.author_ids and t is not None and t in p.author_ids)
                o, r = rec.original, rec.reduced
                ok = (o.citations - r.citations == joint and r.citations <= o.citations
                      and r.papers <= o.papers and r.h <= o.h)
                violations += not ok
    verdict("counterfactual conservation and monotone reduction", violations == 0 and authors > 0,
            f"authors={authors} violations={violations}")


def test_filter_soundness(verdict, tmp_path):
    params = SynthParams(
        (FieldSpec("X", 300, 4000, 3.0), FieldSpec("Y", 300, 4000, 5.0)),
        out_of_window_frac=0.1, oversize_team_frac=0.1,
    )
    paths = generate_synthetic_corpus(params, 5, tmp_path)
    raw = load_corpus(paths["papers"], paths["citations"])
    planted_years = sum(not 1950 <= p.year <= 2020 for p in raw.papers.values())
    planted_teams = sum(len(p.author_ids) > 10 for p in raw.papers.values())
    out = filter_corpus(raw, FilterConfig())
    bad_papers = sum(not 1950 <= p.year <= 2020 or len(p.author_ids) > 10 for p in out.papers.values())
    bad_authors = 0
    for a in out.authors.values():
        mine = [p for p in out.papers.values() if a.id in p.author_ids]
        bad_authors += len(mine) < 10 or sum(p.citation_count for p in mine) < 200
    ok = planted_years > 0 and planted_teams > 0 and bad_papers == 0 and bad_authors == 0 and len(out.authors) > 0
    verdict("filter soundness with planted violations", ok,
            f"planted years={planted_years} teams={planted_teams}; retained authors={len(out.authors)}; "
            f"bad papers={bad_papers} bad authors={bad_authors}")


def _csv_bytes(directory: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(directory.glob("*.csv"))}


@pytest.mark.slow
def test_pipeline_determinism(verdict, tmp_path):
    paths = generate_synthetic_corpus(default_params(4, 1250, 12500), 1, tmp_path / "in")
    runs = []
    timings = []
    for i, threads in enumerate([1, 1, 1, 4, 8]):
        t0 = time.perf_counter()
        manifest = run_pipeline(tmp_path / "in", tmp_path / f"out{i}", FilterConfig(), n_jobs=threads)
        timings.append(time.perf_counter() - t0)
        runs.append(_csv_bytes(tmp_path / f"out{i}"))
    identical = all(r == runs[0] for r in runs[1:])
    counts = manifest["counts"]
    ok = identical and len(runs[0]) > 10 and max(timings) < 120
    verdict("pipeline determinism (3 runs, threads 1/4/8)", ok,
            f"{counts['authors_loaded']} authors, {counts['papers_loaded']} papers, {len(runs[0])} CSVs; "
            f"slowest run {max(timings):.1f}s")


def test_team_size_shape(verdict, tmp_path):
    params = SynthParams((FieldSpec("Humanities", 600, 6000, 1.5), FieldSpec("Sciences", 600, 6000, 6.0)))
    paths = generate_synthetic_corpus(params, 3, tmp_path)
    corpus = filter_corpus(load_corpus(paths["papers"], paths["citations"]), FilterConfig())
    fields = assign_fields(load_hierarchy(paths["fields"]), corpus)
    nets = {k: build_influence_network(corpus, k) for k in WeightKind}
    rows = {r.field: r for r in field_summary_table(corpus, nets, fields)}
    lo, hi = rows["Humanities"], rows["Sciences"]
    ok = (hi.median_influence_citations > lo.median_influence_citations
          and hi.median_influence_papers > lo.median_influence_papers)
    verdict("larger teams give higher median top-collaborator influence", ok,
            f"citations {lo.median_influence_citations:.3f} -> {hi.median_influence_citations:.3f}; "
            f"papers {lo.median_influence_papers:.3f} -> {hi.median_influence_papers:.3f}")
