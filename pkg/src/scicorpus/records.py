"""Canonical record and sentence-pair data types and their JSON forms.

Every pipeline stage consumes or produces these types. Records are
stored one JSON object per file; corpora are JSONL with one object per
line. Serialization is canonical: a fixed key order, UTF-8, and a fixed
indentation, so equal values always produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

TARGETED_LANGUAGES = ("en", "es", "fr", "pt")

FOCUSED_DOMAINS = ("cancer", "energy", "transportation", "neuroscience")
GENERAL_DOMAIN = "general"
DOMAINS = FOCUSED_DOMAINS + (GENERAL_DOMAIN,)

ORIGIN_TITLE = "title"
ORIGIN_ABSTRACT = "abstract"
ORIGINS = (ORIGIN_TITLE, ORIGIN_ABSTRACT)


def normalize_language(tag: str) -> str:
    """Map a raw language tag to a canonical code.

    Recognized codes are exactly the four targeted languages; a tag such
    as ``EN-GB`` or ``pt_BR`` normalizes to its two-letter base code.
    Anything else is returned lowercased and stripped, so unexpected
    tags survive verbatim (the "other" category) instead of being
    dropped silently.
    """
    cleaned = tag.strip().lower()
    base = cleaned.split("-")[0].split("_")[0]
    if base in TARGETED_LANGUAGES:
        return base
    return cleaned


def is_targeted(lang: str) -> bool:
    return lang in TARGETED_LANGUAGES


class RecordParseError(ValueError):
    """Raised when a serialized record is malformed.

    ``field`` names the offending field, or is empty when the document
    itself is not valid JSON.
    """

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field


@dataclass
class AcademicRecord:
    """One repository record: multilingual titles/abstracts plus metadata.

    ``abstracts`` and ``titles`` map language codes to a single text per
    language. Optional metadata defaults to empty strings/lists so
    downstream code never branches on presence. ``domain_keyword_count``
    always carries all four focused domains (zero allowed); ``domain``
    is filled by the classifier and stays ``general`` until then.
    """

    repository: str
    html_id: int
    abstracts: dict[str, str] = field(default_factory=dict)
    titles: dict[str, str] = field(default_factory=dict)
    link_html: str = ""
    link_pdf: str = ""
    uri: str = ""
    license_link: str = ""
    license: str = ""
    date_available: str = ""
    document_language: str = ""
    document_type: str = ""
    keywords: list[str] = field(default_factory=list)
    authors: list[str] = field(default_factory=list)
    publishers: list[str] = field(default_factory=list)
    bibliographic_citation: str = ""
    journal: str = ""
    domain_keyword_count: dict[str, int] = field(
        default_factory=lambda: {d: 0 for d in FOCUSED_DOMAINS}
    )
    domain: str = GENERAL_DOMAIN

    @property
    def record_key(self) -> tuple[str, int]:
        """Global identity of the record: (repository, html_id)."""
        return (self.repository, self.html_id)


@dataclass(frozen=True)
class SentencePair:
    """A scored candidate parallel sentence with record provenance.

    ``score`` is the dimensionless margin score assigned by the miner
    and is strictly positive for every emitted pair. ``origin`` is
    ``title`` only when both sides are title segments.
    """

    source_text: str
    target_text: str
    source_lang: str
    target_lang: str
    score: float
    domain: str
    record_key: tuple[str, int]
    origin: str


@dataclass(frozen=True)
class MonolingualSentence:
    """A sentence from a record that had no parallel counterpart.

    Emitted only for languages that participated in no candidate
    parallel document of their record.
    """

    text: str
    lang: str
    domain: str
    record_key: tuple[str, int]
    origin: str


# Canonical key order for record files (matches the stored schema).
_RECORD_FIELDS = (
    "abstracts",
    "titles",
    "repository",
    "html_id",
    "link_html",
    "link_pdf",
    "uri",
    "license_link",
    "license",
    "date_available",
    "document_language",
    "document_type",
    "keywords",
    "authors",
    "publishers",
    "bibliographic_citation",
    "journal",
    "domain_keyword_count",
    "domain",
)

_STRING_FIELDS = (
    "link_html",
    "link_pdf",
    "uri",
    "license_link",
    "license",
    "date_available",
    "document_language",
    "document_type",
    "bibliographic_citation",
    "journal",
)

_LIST_FIELDS = ("keywords", "authors", "publishers")


def _ordered_langs(text_map: dict[str, str]) -> list[str]:
    """Targeted languages in canonical order first, then others sorted."""
    known = [l for l in TARGETED_LANGUAGES if l in text_map]
    other = sorted(k for k in text_map if k not in TARGETED_LANGUAGES)
    return known + other


def _require_text_map(value: Any, name: str) -> dict[str, str]:
    if not isinstance(value, dict):
        raise RecordParseError(f"field '{name}' must be an object", field=name)
    out: dict[str, str] = {}
    for key, text in value.items():
        if not isinstance(key, str) or not isinstance(text, str):
            raise RecordParseError(
                f"field '{name}' must map language codes to strings", field=name
            )
        out[normalize_language(key)] = text
    return out


def _require_str(value: Any, name: str) -> str:
    if not isinstance(value, str):
        raise RecordParseError(f"field '{name}' must be a string", field=name)
    return value


def _require_str_list(value: Any, name: str) -> list[str]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise RecordParseError(f"field '{name}' must be a list of strings", field=name)
    return list(value)


def parse_record(serialized: bytes) -> AcademicRecord:
    """Parse one serialized record document.

    Absent optional fields become empty strings/lists/maps; unknown
    extra fields are ignored. Raises :class:`RecordParseError` (never an
    unstructured exception) for malformed input, naming the offending
    field where one can be identified.
    """
    try:
        doc = json.loads(serialized.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise RecordParseError(f"not a valid record document: {exc}") from exc
    if not isinstance(doc, dict):
        raise RecordParseError("record document must be a JSON object")

    if "repository" not in doc:
        raise RecordParseError("missing required field 'repository'", field="repository")
    repository = _require_str(doc["repository"], "repository")
    if "html_id" not in doc:
        raise RecordParseError("missing required field 'html_id'", field="html_id")
    html_id = doc["html_id"]
    if isinstance(html_id, bool) or not isinstance(html_id, int):
        raise RecordParseError("field 'html_id' must be an integer", field="html_id")

    record = AcademicRecord(repository=repository, html_id=html_id)
    record.abstracts = _require_text_map(doc.get("abstracts", {}), "abstracts")
    record.titles = _require_text_map(doc.get("titles", {}), "titles")
    for name in _STRING_FIELDS:
        if name in doc:
            setattr(record, name, _require_str(doc[name], name))
    for name in _LIST_FIELDS:
        if name in doc:
            setattr(record, name, _require_str_list(doc[name], name))

    counts = doc.get("domain_keyword_count", {})
    if not isinstance(counts, dict):
        raise RecordParseError(
            "field 'domain_keyword_count' must be an object",
            field="domain_keyword_count",
        )
    parsed_counts = {d: 0 for d in FOCUSED_DOMAINS}
    for key, count in counts.items():
        if key not in FOCUSED_DOMAINS:
            continue
        if isinstance(count, bool) or not isinstance(count, int) or count < 0:
            raise RecordParseError(
                f"domain_keyword_count['{key}'] must be a non-negative integer",
                field="domain_keyword_count",
            )
        parsed_counts[key] = count
    record.domain_keyword_count = parsed_counts

    domain = doc.get("domain", GENERAL_DOMAIN)
    if domain not in DOMAINS:
        raise RecordParseError(f"unknown domain '{domain}'", field="domain")
    record.domain = domain
    return record


def serialize_record(record: AcademicRecord) -> bytes:
    """Serialize a record to its canonical byte form.

    Keys follow the documented fixed order, language maps list targeted
    languages first, and output is indented UTF-8 JSON with non-ASCII
    text preserved. ``parse_record(serialize_record(r)) == r`` holds for
    every record, and equal records yield identical bytes.
    """
    doc: dict[str, Any] = {}
    for name in _RECORD_FIELDS:
        value = getattr(record, name)
        if name in ("abstracts", "titles"):
            value = {lang: value[lang] for lang in _ordered_langs(value)}
        elif name == "domain_keyword_count":
            value = {d: value.get(d, 0) for d in FOCUSED_DOMAINS}
        doc[name] = value
    return (json.dumps(doc, ensure_ascii=False, indent=4) + "\n").encode("utf-8")


def _round_score(score: float) -> float:
    # 12 significant digits: stable across BLAS builds, exact in JSON.
    return float(f"{score:.12g}")


def pair_to_json(pair: SentencePair) -> str:
    """One-line JSON form of a pair, as stored in corpus JSONL files."""
    return json.dumps(
        {
            "source_text": pair.source_text,
            "target_text": pair.target_text,
            "source_lang": pair.source_lang,
            "target_lang": pair.target_lang,
            "score": _round_score(pair.score),
            "domain": pair.domain,
            "repository": pair.record_key[0],
            "html_id": pair.record_key[1],
            "origin": pair.origin,
        },
        ensure_ascii=False,
        separators=(",", ":"),
    )


def pair_from_json(line: str) -> SentencePair:
    doc = json.loads(line)
    return SentencePair(
        source_text=doc["source_text"],
        target_text=doc["target_text"],
        source_lang=doc["source_lang"],
        target_lang=doc["target_lang"],
        score=float(doc["score"]),
        domain=doc["domain"],
        record_key=(doc["repository"], doc["html_id"]),
        origin=doc["origin"],
    )


def mono_to_json(sentence: MonolingualSentence) -> str:
    return json.dumps(
        {
            "text": sentence.text,
            "lang": sentence.lang,
            "domain": sentence.domain,
            "repository": sentence.record_key[0],
            "html_id": sentence.record_key[1],
            "origin": sentence.origin,
        },
        ensure_ascii=False,
        separators=(",", ":"),
    )


def mono_from_json(line: str) -> MonolingualSentence:
    doc = json.loads(line)
    return MonolingualSentence(
        text=doc["text"],
        lang=doc["lang"],
        domain=doc["domain"],
        record_key=(doc["repository"], doc["html_id"]),
        origin=doc["origin"],
    )


def pair_to_tsv(pair: SentencePair) -> str:
    """Two-column plain-text form; internal tabs/newlines become spaces."""
    clean = lambda s: " ".join(s.split())
    return f"{clean(pair.source_text)}\t{clean(pair.target_text)}"
