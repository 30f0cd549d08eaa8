"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

from typing import Iterable

from .corpus import Corpus
from .fields import FieldHierarchy
from .influence import WeightKind


def check_corpus(X, require_filtered: bool = False) -> Corpus:
    if not isinstance(X, Corpus):
        raise TypeError(f"expected a Corpus, got {type(X).__name__}")
    if require_filtered and not X.is_filtered:
        raise ValueError("this estimator needs a filtered corpus (run CorpusFilter first)")
    return X


def check_weight_kind(kind) -> WeightKind:
    try:
        return WeightKind(kind)
    except ValueError:
        allowed = ", ".join(repr(k.value) for k in WeightKind)
        raise ValueError(f"kind must be one of {allowed}, got {kind!r}") from None


def check_hierarchy(h, allow_none: bool = True) -> FieldHierarchy | None:
    if h is None and allow_none:
        return None
    if not isinstance(h, FieldHierarchy):
        raise TypeError(f"expected a FieldHierarchy, got {type(h).__name__}")
    return h


def check_author_ids(X) -> list[str]:
    """Accept a single id, an iterable of ids, or a Corpus (meaning all its authors)."""
    if isinstance(X, Corpus):
        return list(X.authors)
    if isinstance(X, str):
        return [X]
    if isinstance(X, Iterable):
        ids = list(X)
        bad = [x for x in ids if not isinstance(x, str)]
        if bad:
            raise TypeError(f"author ids must be strings, got {type(bad[0]).__name__}")
        return ids
    raise TypeError(f"expected author ids or a Corpus, got {type(X).__name__}")
