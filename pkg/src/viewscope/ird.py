"""Iterative rank difference over contrasting term lists.

A term's score is its normalized rank in the contrasting list minus its
normalized rank in the subject list (1-based positions; a term missing from
the contrasting list is ranked one past its bottom). High scores mark terms
specific to the subject corpus.

The first iteration describes a viewpoint: subject terms come from the
cluster's texts, contrasting terms from the texts of all *other* viewpoint
clusters (noisy clusters represent no viewpoint and are excluded). Later
iterations drill into one or more terms within a single viewpoint: subject
texts are those mentioning any query term, contrasting texts are the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .selection import ViewpointSelection
from .text import RankedTermList, Tokenizer, term_frequencies


class IRDError(ValueError):
    pass


class DegenerateSplitError(IRDError):
    """A drill query that fails to split the cluster's texts in two."""

    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason  # "empty_subject" | "empty_contrast"


@dataclass(frozen=True)
class RankDiffEntry:
    term: str
    score: float
    subject_rank: int
    contrast_rank: Optional[int]  # None when absent from the contrasting list
    subject_freq: int

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "score": self.score,
            "subject_rank": self.subject_rank,
            "contrast_rank": self.contrast_rank,
            "subject_freq": self.subject_freq,
        }


@dataclass(frozen=True)
class RankDiffResult:
    entries: tuple[RankDiffEntry, ...]
    subject_size: int
    contrast_size: int


def rank_difference(subject: RankedTermList, contrast: RankedTermList) -> RankDiffResult:
    """Score every subject term by contrast rank minus subject rank.

    Entries are sorted by score descending, ties by subject frequency
    descending then term ascending. Scores are computed in exact rational
    arithmetic before conversion to float.
    """
    if len(subject) == 0:
        raise IRDError("subject term list is empty")
    if len(contrast) == 0:
        raise IRDError("contrasting term list is empty")
    n_s = len(subject)
    n_c = len(contrast)
    contrast_ranks = contrast.ranks()
    absent_rank = n_c + 1
    entries = []
    for s_rank, (term, freq) in enumerate(subject.entries, start=1):
        c_rank = contrast_ranks.get(term)
        effective_c = c_rank if c_rank is not None else absent_rank
        score = float(Fraction(effective_c, n_c) - Fraction(s_rank, n_s))
        entries.append(
            RankDiffEntry(
                term=term,
                score=score,
                subject_rank=s_rank,
                contrast_rank=c_rank,
                subject_freq=freq,
            )
        )
    entries.sort(key=lambda e: (-e.score, -e.subject_freq, e.term))
    return RankDiffResult(tuple(entries), subject_size=n_s, contrast_size=n_c)


@dataclass
class ViewpointCorpus:
    """Normalized token lists per cluster, plus the tokenizer that made them."""

    cluster_tokens: dict[int, list[list[str]]]
    tokenizer: Tokenizer

    def texts_of(self, cluster: int) -> list[list[str]]:
        return self.cluster_tokens.get(cluster, [])


def build_viewpoint_corpus(posts, assignment: dict[str, int], tokenizer: Tokenizer) -> ViewpointCorpus:
    """Tokenize every post by a partitioned author, grouped by cluster.

    ``posts`` is any iterable of objects with ``author`` and ``text``
    attributes; posts by users outside the partition are ignored.
    """
    cluster_tokens: dict[int, list[list[str]]] = {}
    for post in posts:
        cluster = assignment.get(post.author)
        if cluster is None:
            continue
        cluster_tokens.setdefault(cluster, []).append(tokenizer(post.text))
    return ViewpointCorpus(cluster_tokens, tokenizer)


@dataclass(frozen=True)
class ViewpointDescription:
    viewpoint: int
    entries: tuple[RankDiffEntry, ...]
    subject_terms: RankedTermList
    contrast_terms: RankedTermList
    n: int
    m: int

    def to_dict(self) -> dict:
        return {
            "viewpoint": self.viewpoint,
            "query_terms": [],
            "n": self.n,
            "m": self.m,
            "subject_size": len(self.subject_terms),
            "contrast_size": len(self.contrast_terms),
            "terms": [e.to_dict() for e in self.entries],
            "subject_list": self.subject_terms.to_list(),
            "contrast_list": self.contrast_terms.to_list(),
        }


@dataclass(frozen=True)
class TermDrilldown:
    viewpoint: int
    query_terms: tuple[str, ...]
    entries: tuple[RankDiffEntry, ...]
    subject_size: int
    contrast_size: int
    n: int
    m: int

    def to_dict(self) -> dict:
        return {
            "viewpoint": self.viewpoint,
            "query_terms": list(self.query_terms),
            "n": self.n,
            "m": self.m,
            "subject_size": self.subject_size,
            "contrast_size": self.contrast_size,
            "terms": [e.to_dict() for e in self.entries],
        }


def _require_viewpoint(selection: ViewpointSelection, cluster: int) -> None:
    if cluster in selection.noisy_clusters:
        raise IRDError(f"cluster {cluster} is noisy, not a viewpoint")
    if cluster not in selection.viewpoint_clusters:
        raise IRDError(f"unknown viewpoint cluster {cluster}")


def describe_viewpoint(
    corpus: ViewpointCorpus,
    selection: ViewpointSelection,
    cluster: int,
    n: int = 200,
    m: int = 10,
) -> ViewpointDescription:
    """What is this viewpoint about?

    Subject list: top-n terms of the cluster's texts. Contrasting list: top-n
    terms of the texts of all other viewpoint clusters pooled together.
    """
    _require_viewpoint(selection, cluster)
    subject_texts = corpus.texts_of(cluster)
    contrast_texts: list[list[str]] = []
    for other in selection.viewpoint_clusters:
        if other != cluster:
            contrast_texts.extend(corpus.texts_of(other))
    w_s = term_frequencies(subject_texts, provenance=f"viewpoint {cluster}").top(max(n, 1))
    w_c = term_frequencies(contrast_texts, provenance=f"contrast of viewpoint {cluster}").top(max(n, 1))
    if len(w_s) == 0:
        raise IRDError(f"viewpoint {cluster} has no terms to describe")
    if len(w_c) == 0:
        raise IRDError(f"viewpoint {cluster} has no contrasting texts")
    result = rank_difference(w_s, w_c)
    return ViewpointDescription(
        viewpoint=cluster,
        entries=result.entries[:m],
        subject_terms=w_s,
        contrast_terms=w_c,
        n=n,
        m=m,
    )


def normalize_query_terms(terms: Sequence[str], tokenizer: Tokenizer) -> list[str]:
    """Run raw query terms through the pipeline; error if nothing survives."""
    if not terms:
        raise IRDError("query term set is empty")
    normalized: list[str] = []
    for raw in terms:
        for tok in tokenizer(raw):
            if tok not in normalized:
                normalized.append(tok)
    if not normalized:
        raise IRDError(f"no query term survives the text pipeline: {list(terms)!r}")
    return normalized


def drill_terms(
    corpus: ViewpointCorpus,
    selection: ViewpointSelection,
    cluster: int,
    term_set: Sequence[str],
    n: int = 200,
    m: int = 5,
) -> TermDrilldown:
    """What is a term (or a set of synonymous terms) about?

    Subject texts: the cluster's texts containing at least one query term
    (matched post-normalization). Contrasting texts: the cluster's remaining
    texts. Query terms are removed from the subject list before scoring, so
    a query never describes itself.
    """
    _require_viewpoint(selection, cluster)
    query = normalize_query_terms(term_set, corpus.tokenizer)
    query_set = set(query)
    subject_texts: list[list[str]] = []
    contrast_texts: list[list[str]] = []
    for tokens in corpus.texts_of(cluster):
        if query_set.intersection(tokens):
            subject_texts.append(tokens)
        else:
            contrast_texts.append(tokens)
    if not subject_texts:
        raise DegenerateSplitError(
            f"no texts of viewpoint {cluster} mention {query}", reason="empty_subject"
        )
    if not contrast_texts:
        raise DegenerateSplitError(
            f"every text of viewpoint {cluster} mentions {query}; contrasting corpus is empty",
            reason="empty_contrast",
        )
    w_s = term_frequencies(subject_texts).without(query_set).top(max(n, 1))
    w_c = term_frequencies(contrast_texts).top(max(n, 1))
    if len(w_s) == 0:
        raise DegenerateSplitError(
            f"subject texts of viewpoint {cluster} contain nothing besides {query}",
            reason="empty_subject",
        )
    if len(w_c) == 0:
        raise DegenerateSplitError(
            f"contrasting texts of viewpoint {cluster} contain no usable terms",
            reason="empty_contrast",
        )
    result = rank_difference(w_s, w_c)
    return TermDrilldown(
        viewpoint=cluster,
        query_terms=tuple(query),
        entries=result.entries[:m],
        subject_size=result.subject_size,
        contrast_size=result.contrast_size,
        n=n,
        m=m,
    )
