"""Keyword-based domain classification of academic records.

A record is assigned to one of the four focused research domains only
when keyword evidence points at that domain exclusively; everything
else is general. The keyword lexicon is user-supplied configuration;
the lexicon shipped under ``resources/lexicon.json`` is an illustrative
starter list, not a published standard.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

from .records import FOCUSED_DOMAINS, GENERAL_DOMAIN, AcademicRecord


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class DomainLexicon:
    """Lowercase keyword phrases per focused domain.

    Each phrase is 1-5 words; matching is case-insensitive on word
    boundaries with diacritics preserved.
    """

    entries: dict[str, tuple[str, ...]]

    def __post_init__(self):
        for domain in FOCUSED_DOMAINS:
            phrases = self.entries.get(domain)
            if not phrases:
                raise LexiconError(f"lexicon has no phrases for domain '{domain}'")
            if len(set(phrases)) != len(phrases):
                raise LexiconError(f"duplicate phrases in domain '{domain}'")
            for phrase in phrases:
                words = phrase.split()
                if not 1 <= len(words) <= 5:
                    raise LexiconError(
                        f"phrase '{phrase}' in '{domain}' must be 1-5 words"
                    )
                if phrase != phrase.lower():
                    raise LexiconError(
                        f"phrase '{phrase}' in '{domain}' must be lowercase"
                    )
        unknown = set(self.entries) - set(FOCUSED_DOMAINS)
        if unknown:
            raise LexiconError(f"unknown domains in lexicon: {sorted(unknown)}")


def load_lexicon(serialized: bytes) -> DomainLexicon:
    """Load a lexicon from its JSON form (domain tag -> phrase list)."""
    try:
        doc = json.loads(serialized.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise LexiconError(f"not a valid lexicon file: {exc}") from exc
    if not isinstance(doc, dict):
        raise LexiconError("lexicon must be a JSON object")
    entries = {}
    for domain, phrases in doc.items():
        if not isinstance(phrases, list) or any(
            not isinstance(p, str) for p in phrases
        ):
            raise LexiconError(f"phrases for '{domain}' must be a list of strings")
        entries[domain] = tuple(phrases)
    return DomainLexicon(entries)


def builtin_lexicon() -> DomainLexicon:
    """The illustrative starter lexicon shipped with the package."""
    data = resources.files("scicorpus.resources").joinpath("lexicon.json").read_bytes()
    return load_lexicon(data)


def _phrase_pattern(phrase: str) -> re.Pattern:
    # Whole-word match, Unicode-aware boundaries, flexible internal
    # whitespace; occurrences of one phrase never overlap each other.
    parts = [re.escape(w) for w in phrase.split()]
    return re.compile(
        r"(?<!\w)" + r"\s+".join(parts) + r"(?!\w)", re.IGNORECASE | re.UNICODE
    )


def record_text(record: AcademicRecord) -> str:
    """All classifiable text of a record: titles, abstracts, keywords."""
    chunks = [record.titles[l] for l in sorted(record.titles)]
    chunks += [record.abstracts[l] for l in sorted(record.abstracts)]
    chunks += record.keywords
    return "\n".join(chunks)


def count_keywords(record: AcademicRecord, lexicon: DomainLexicon) -> dict[str, int]:
    """Count keyword-phrase hits per focused domain over a record's text.

    Counts are case-insensitive whole-word matches; a phrase's own
    occurrences never overlap, but phrases of different domains may
    match the same text span.
    """
    text = record_text(record)
    counts = {}
    for domain in FOCUSED_DOMAINS:
        total = 0
        for phrase in lexicon.entries[domain]:
            total += len(_phrase_pattern(phrase).findall(text))
        counts[domain] = total
    return counts


def classify(counts: dict[str, int], min_hits: int = 1) -> str:
    """Resolve keyword counts to a domain.

    Returns a focused domain only when it reaches ``min_hits`` and every
    other focused domain has zero hits (the exclusive-fit rule);
    anything else is general.
    """
    positive = [d for d in FOCUSED_DOMAINS if counts.get(d, 0) > 0]
    if len(positive) == 1 and counts[positive[0]] >= min_hits:
        return positive[0]
    return GENERAL_DOMAIN


def classify_record(
    record: AcademicRecord, lexicon: DomainLexicon, min_hits: int = 1
) -> AcademicRecord:
    """Fill a record's keyword counts and domain in place."""
    record.domain_keyword_count = count_keywords(record, lexicon)
    record.domain = classify(record.domain_keyword_count, min_hits=min_hits)
    return record
