from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from scholnet import FieldHierarchy, FieldNode, FilterConfig, Paper, build_corpus, filter_corpus

LENIENT = FilterConfig(1900, 2100, 10, 1, 0)


def write_jsonl(path: Path, rows) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        for r in rows:
            fh.write(r if isinstance(r, str) else json.dumps(r))
            fh.write("\n")
    return path


@pytest.fixture
def jsonl(tmp_path):
    def make(name, rows):
        return write_jsonl(tmp_path / name, rows)
    return make


@pytest.fixture
def fig2_corpus():
    """Toy network: c_A = 200, c_B = 300, c_AB = 50, w_BD = 0.5."""
    papers = [
        Paper("ab", 2000, ("A", "B"), ("f_net",), 50),
        Paper("a1", 2001, ("A",), ("f_net",), 150),
        Paper("bd", 2002, ("B", "D"), ("f_phys",), 150),
        Paper("b1", 2003, ("B",), ("f_phys",), 100),
        Paper("cd", 2004, ("C", "D"), ("f_phys",), 40),
    ]
    return filter_corpus(build_corpus(papers), LENIENT)


@pytest.fixture
def small_hierarchy():
    """Katz centrality -> Network science -> Complex networks -> {Mathematics, Computer Science}."""
    nodes = [
        FieldNode("math", "Mathematics"),
        FieldNode("cs", "Computer Science"),
        FieldNode("phys", "Physics"),
        FieldNode("complex", "Complex networks", ("math", "cs")),
        FieldNode("netsci", "Network science", ("complex",)),
        FieldNode("katz", "Katz centrality", ("netsci",)),
        FieldNode("algebra", "Algebra", ("math",)),
        FieldNode("orphan", "Orphan topic"),
        FieldNode("f_net", "Networks", ("netsci",)),
        FieldNode("f_phys", "Stat mech", ("phys",)),
    ]
    return FieldHierarchy(nodes, {"math", "cs", "phys"})
