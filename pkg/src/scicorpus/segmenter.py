"""Rule-based sentence splitting for abstracts.

A split happens after a run of terminator characters when the run is
not preceded by a known abbreviation and is followed by whitespace and
an uppercase letter, opening quote, or digit. The splitter is lossless:
joining the output with single spaces and collapsing whitespace
reproduces the whitespace-normalized input.

Titles are never split; candidate-document construction adds each title
as a single segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

TERMINATORS = frozenset(".!?…")
_OPENING_QUOTES = frozenset("\"'«“‘¿¡([")

_DEFAULT_ABBREVIATIONS = frozenset(
    {"dr", "prof", "fig", "et al", "e.g", "i.e", "cf", "vs", "etc", "no", "vol"}
)


@dataclass(frozen=True)
class SegmenterRules:
    """Per-language splitting rules."""

    lang: str
    abbreviations: frozenset[str]
    terminators: frozenset[str] = TERMINATORS

    def __post_init__(self):
        if not self.abbreviations:
            raise ValueError(f"empty abbreviation set for '{self.lang}'")


@lru_cache(maxsize=None)
def rules_for(lang: str) -> SegmenterRules:
    """Load shipped rules for a language; unknown languages get defaults."""
    try:
        text = (
            resources.files("scicorpus.resources")
            .joinpath(f"segmenter/{lang}.txt")
            .read_text("utf-8")
        )
    except FileNotFoundError:
        return SegmenterRules(lang=lang, abbreviations=_DEFAULT_ABBREVIATIONS)
    abbreviations = frozenset(
        line.strip().lower() for line in text.splitlines() if line.strip()
    )
    return SegmenterRules(lang=lang, abbreviations=abbreviations)


def _preceded_by_abbreviation(text: str, index: int, rules: SegmenterRules) -> bool:
    """True when the terminator at ``index`` closes a known abbreviation."""
    before = text[:index].casefold()
    for abbr in rules.abbreviations:
        if not before.endswith(abbr):
            continue
        boundary = len(before) - len(abbr) - 1
        if boundary < 0 or not (before[boundary].isalnum() or before[boundary] == "."):
            return True
    return False


def split_sentences(text: str, rules: SegmenterRules) -> list[str]:
    """Split ``text`` into sentences; empty input gives an empty list."""
    if not text.strip():
        return []
    sentences = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] not in rules.terminators:
            i += 1
            continue
        # Consume the whole terminator run ("?!", "...", etc.).
        end = i + 1
        while end < n and text[end] in rules.terminators:
            end += 1
        follow = end
        while follow < n and text[follow].isspace():
            follow += 1
        starts_next = (
            follow > end
            and follow < n
            and (
                text[follow].isupper()
                or text[follow].isdigit()
                or text[follow] in _OPENING_QUOTES
            )
        )
        if starts_next and not (
            end - i == 1
            and text[i] == "."
            and _preceded_by_abbreviation(text, i, rules)
        ):
            sentence = text[start:end].strip()
            if sentence:
                sentences.append(sentence)
            start = follow
            i = follow
        else:
            i = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def normalized(text: str) -> str:
    """Whitespace-collapsed form used by the losslessness property."""
    return " ".join(text.split())
