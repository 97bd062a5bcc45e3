"""Deduplication and the six rejection rules for mined sentence pairs.

Rules are checked in a fixed order and the first violation is reported:

a. ``identical``      — source equals target after whitespace collapse
b. ``empty``          — either side empty after trimming
c. ``too_long``       — either side over 250 whitespace-delimited words
d. ``digits_only``    — either side only digits/punctuation/whitespace
e. ``wrong_language`` — identified language contradicts the declared one
f. ``url_email``      — a majority of a side's tokens are URLs/e-mails

Deduplication runs before the rules in the pipeline and reports the
separate ``duplicate`` identifier in rejection logs.
"""

from __future__ import annotations

import hashlib
import re
import struct
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Iterator

from .langid import LangIdModel, identify_language
from .records import MonolingualSentence, SentencePair

RULE_IDENTICAL = "identical"
RULE_EMPTY = "empty"
RULE_TOO_LONG = "too_long"
RULE_DIGITS_ONLY = "digits_only"
RULE_WRONG_LANGUAGE = "wrong_language"
RULE_URL_EMAIL = "url_email"
RULE_DUPLICATE = "duplicate"
ALL_RULES = (
    RULE_IDENTICAL,
    RULE_EMPTY,
    RULE_TOO_LONG,
    RULE_DIGITS_ONLY,
    RULE_WRONG_LANGUAGE,
    RULE_URL_EMAIL,
    RULE_DUPLICATE,
)

_URL_RE = re.compile(r"(?:https?://|ftp://|www\.)\S*", re.IGNORECASE)
_EMAIL_RE = re.compile(r"\S+@\S+\.\S+")


@dataclass(frozen=True)
class FilterVerdict:
    accepted: bool
    rejected_by: str | None = None

    def __post_init__(self):
        if self.accepted == (self.rejected_by is not None):
            raise ValueError("rejected_by must be set exactly when rejected")


@dataclass(frozen=True)
class FilterOptions:
    """Tunable thresholds; defaults follow the documented rules."""

    max_words: int = 250
    strict_digits: bool = False
    langid_confidence: float = 0.2
    url_token_fraction: float = 0.5


DEFAULT_OPTIONS = FilterOptions()


def normalize_whitespace(text: str) -> str:
    return " ".join(text.split())


def _is_digitish(text: str, strict: bool) -> bool:
    stripped = text.strip()
    if not stripped:
        return False
    if strict:
        return all(c.isdigit() or c.isspace() for c in stripped)
    for c in stripped:
        if c.isspace() or c.isdigit():
            continue
        if unicodedata.category(c).startswith("P"):
            continue
        return False
    return True


def _is_url_or_email(token: str) -> bool:
    return bool(_URL_RE.fullmatch(token) or _EMAIL_RE.fullmatch(token))


def _mostly_urls(text: str, fraction: float) -> bool:
    tokens = text.split()
    if not tokens:
        return False
    hits = sum(1 for t in tokens if _is_url_or_email(t))
    return hits / len(tokens) > fraction


def apply_filters(
    pair: SentencePair,
    model: LangIdModel | None = None,
    options: FilterOptions = DEFAULT_OPTIONS,
) -> FilterVerdict:
    """Check one pair against rules a-f; first violation wins."""
    source = pair.source_text
    target = pair.target_text

    if normalize_whitespace(source) == normalize_whitespace(target):
        return FilterVerdict(False, RULE_IDENTICAL)
    if not source.strip() or not target.strip():
        return FilterVerdict(False, RULE_EMPTY)
    if len(source.split()) > options.max_words or len(target.split()) > options.max_words:
        return FilterVerdict(False, RULE_TOO_LONG)
    if _is_digitish(source, options.strict_digits) or _is_digitish(
        target, options.strict_digits
    ):
        return FilterVerdict(False, RULE_DIGITS_ONLY)
    for text, declared in ((source, pair.source_lang), (target, pair.target_lang)):
        identified, confidence = identify_language(text, model)
        if (
            identified != declared
            and identified != "other"
            and confidence >= options.langid_confidence
        ):
            return FilterVerdict(False, RULE_WRONG_LANGUAGE)
    if _mostly_urls(source, options.url_token_fraction) or _mostly_urls(
        target, options.url_token_fraction
    ):
        return FilterVerdict(False, RULE_URL_EMAIL)
    return FilterVerdict(True)


def pair_digest(source: str, target: str) -> bytes:
    source_bytes = unicodedata.normalize("NFC", normalize_whitespace(source)).encode()
    target_bytes = unicodedata.normalize("NFC", normalize_whitespace(target)).encode()
    return hashlib.blake2b(
        struct.pack("<Q", len(source_bytes)) + source_bytes + target_bytes,
        digest_size=16,
    ).digest()


def deduplicate(pairs: Iterable[SentencePair]) -> Iterator[SentencePair]:
    """Yield the first occurrence of each normalized (source, target).

    Streaming: memory is bounded by one 128-bit digest per distinct
    pair; input order is otherwise preserved.
    """
    seen: set[bytes] = set()
    for pair in pairs:
        digest = pair_digest(pair.source_text, pair.target_text)
        if digest in seen:
            continue
        seen.add(digest)
        yield pair


def deduplicate_sentences(
    sentences: Iterable[MonolingualSentence],
) -> Iterator[MonolingualSentence]:
    """Monolingual counterpart of :func:`deduplicate`, keyed by text."""
    seen: set[bytes] = set()
    for sentence in sentences:
        digest = pair_digest(sentence.text, "")
        if digest in seen:
            continue
        seen.add(digest)
        yield sentence
