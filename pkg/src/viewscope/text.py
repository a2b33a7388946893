"""Post texts to frequency-ranked term lists.

Tokenization lowercases, strips @mentions and URLs, keeps hashtags intact
(leading ``#`` is part of the token), drops stopwords, punctuation-only
tokens and anything shorter than 3 characters (hashtag length measured
without the ``#``), then runs the remaining tokens through a pluggable
normalizer. The default normalizer is a plural-only suffix stemmer;
``identity`` is available for reproducibility-sensitive runs. Hashtags skip
normalization: they are opaque labels and stemming would corrupt them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterable, Optional

_URL_RE = re.compile(r"(?:https?://|www\.)\S+")
_MENTION_RE = re.compile(r"@\w+")
_TOKEN_RE = re.compile(r"#?\w+")
_HAS_ALNUM_RE = re.compile(r"[^\W_]")

_MIN_LEN = 3


def load_stopwords(path=None) -> frozenset[str]:
    """The shipped English stopword list, or one word per line from ``path``."""
    if path is None:
        raw = resources.files("viewscope.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    return frozenset(w.strip().lower() for w in raw.splitlines() if w.strip())


def stem_term(token: str) -> str:
    """Plural-only suffix stemming; never produces a stem shorter than 3 chars."""
    if len(token) <= _MIN_LEN:
        return token
    if token.endswith("ies") and not token.endswith(("eies", "aies")):
        return token[:-3] + "y"
    if token.endswith("es") and not token.endswith(("aes", "ees", "oes")):
        stem = token[:-1]
        return stem if len(stem) >= _MIN_LEN else token
    if token.endswith("s") and not token.endswith(("us", "ss")):
        stem = token[:-1]
        return stem if len(stem) >= _MIN_LEN else token
    return token


def identity_term(token: str) -> str:
    return token


NORMALIZERS: dict[str, Callable[[str], str]] = {
    "stem": stem_term,
    "identity": identity_term,
}


class Tokenizer:
    """The full preprocessing recipe as one reusable callable."""

    def __init__(
        self,
        stopwords: Optional[frozenset[str]] = None,
        normalizer: str = "stem",
    ):
        if normalizer not in NORMALIZERS:
            raise ValueError(f"unknown normalizer {normalizer!r}; choose from {sorted(NORMALIZERS)}")
        self.stopwords = stopwords if stopwords is not None else load_stopwords()
        self.normalizer_name = normalizer
        self._normalize = NORMALIZERS[normalizer]

    def __call__(self, text: str) -> list[str]:
        s = text.lower()
        s = _URL_RE.sub(" ", s)
        s = _MENTION_RE.sub(" ", s)
        out: list[str] = []
        for token in _TOKEN_RE.findall(s):
            if token.startswith("#"):
                if len(token) - 1 < _MIN_LEN:
                    continue
                out.append(token)
                continue
            if not _HAS_ALNUM_RE.search(token):
                continue
            if len(token) < _MIN_LEN or token in self.stopwords:
                continue
            token = self._normalize(token)
            if token in self.stopwords:
                continue
            out.append(token)
        return out


_default_tokenizer: Optional[Tokenizer] = None


def tokenize_normalize(text: str, tokenizer: Optional[Tokenizer] = None) -> list[str]:
    """Tokenize with the shipped defaults (or a configured :class:`Tokenizer`)."""
    global _default_tokenizer
    if tokenizer is None:
        if _default_tokenizer is None:
            _default_tokenizer = Tokenizer()
        tokenizer = _default_tokenizer
    return tokenizer(text)


@dataclass(frozen=True)
class RankedTermList:
    """Terms ordered by (frequency desc, term asc); no duplicates."""

    entries: tuple[tuple[str, int], ...]
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.entries)

    def terms(self) -> list[str]:
        return [t for t, _ in self.entries]

    def ranks(self) -> dict[str, int]:
        """1-based positions; position 1 is the most frequent term."""
        return {t: i for i, (t, _) in enumerate(self.entries, start=1)}

    def frequency(self, term: str) -> int:
        for t, f in self.entries:
            if t == term:
                return f
        return 0

    def top(self, n: int) -> "RankedTermList":
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        return RankedTermList(self.entries[:n], self.provenance)

    def without(self, terms: Iterable[str]) -> "RankedTermList":
        drop = set(terms)
        return RankedTermList(tuple((t, f) for t, f in self.entries if t not in drop), self.provenance)

    def to_list(self) -> list[dict]:
        return [{"term": t, "freq": f} for t, f in self.entries]

    @classmethod
    def from_list(cls, items: list[dict], provenance: str = "") -> "RankedTermList":
        return cls(tuple((d["term"], int(d["freq"])) for d in items), provenance)


def term_frequencies(
    token_lists: Iterable[list[str]],
    term_filter: Optional[Callable[[str], bool]] = None,
    provenance: str = "",
) -> RankedTermList:
    """Count token occurrences (not document frequencies) across posts."""
    counts: dict[str, int] = {}
    for tokens in token_lists:
        for tok in tokens:
            if term_filter is not None and not term_filter(tok):
                continue
            counts[tok] = counts.get(tok, 0) + 1
    ordered = tuple(sorted(counts.items(), key=lambda item: (-item[1], item[0])))
    return RankedTermList(ordered, provenance)


def top_n(term_list: RankedTermList, n: int) -> RankedTermList:
    """First min(n, len) entries, ordering preserved."""
    return term_list.top(n)
