"""Margin-based mining of parallel sentences from candidate documents.

Candidate parallel documents are built per record whenever titles
and/or abstracts exist in two targeted languages. Mining is local: the
k-nearest-neighbor cosine neighborhoods that normalize the ratio margin
are drawn from within the document pair, not from a global index, which
is what lets title pairs (1x1 documents, margin exactly 1.0 when the
cosine is positive) survive a corpus threshold below 1.

The ratio margin of a source vector x and target vector y is::

    cos(x, y) / (sum(cos(x, z), z in NNk(x)) / (2*kx)
                 + sum(cos(y, z), z in NNk(y)) / (2*ky))

where NNk(x) are x's k nearest targets and NNk(y) are y's k nearest
sources (nothing excluded), and k clamps per side to the side's size.
A pair is emitted when it is mutually best by margin in both directions
and its margin reaches the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import EmbeddingBackend, embed_batch
from .records import (
    ORIGIN_ABSTRACT,
    ORIGIN_TITLE,
    AcademicRecord,
    MonolingualSentence,
    SentencePair,
    TARGETED_LANGUAGES,
)
from .segmenter import rules_for, split_sentences

DENOMINATOR_FLOOR = 1e-6


@dataclass(frozen=True)
class CandidateDocumentPair:
    """One record's segments in two languages, ready for mining."""

    source_sentences: tuple[str, ...]
    target_sentences: tuple[str, ...]
    source_lang: str
    target_lang: str
    record_key: tuple[str, int]
    source_origins: tuple[str, ...]
    target_origins: tuple[str, ...]
    domain: str

    def __post_init__(self):
        if not self.source_sentences or not self.target_sentences:
            raise ValueError("candidate document sides must be non-empty")
        if len(self.source_origins) != len(self.source_sentences) or len(
            self.target_origins
        ) != len(self.target_sentences):
            raise ValueError("one origin per sentence required")


def record_segments(record: AcademicRecord) -> dict[str, list[tuple[str, str]]]:
    """Per-language (text, origin) segments: the title plus each abstract
    sentence. Titles are single segments, never split."""
    segments: dict[str, list[tuple[str, str]]] = {}
    for lang in TARGETED_LANGUAGES:
        entries = []
        title = record.titles.get(lang, "").strip()
        if title:
            entries.append((title, ORIGIN_TITLE))
        abstract = record.abstracts.get(lang, "")
        for sentence in split_sentences(abstract, rules_for(lang)):
            entries.append((sentence, ORIGIN_ABSTRACT))
        if entries:
            segments[lang] = entries
    return segments


def build_candidate_documents(
    record: AcademicRecord,
) -> tuple[list[CandidateDocumentPair], list[MonolingualSentence]]:
    """Candidate document pairs for every two-language combination.

    A language present in no pair (i.e., the record has a single
    targeted language) contributes monolingual sentences instead.
    """
    segments = record_segments(record)
    langs = [l for l in TARGETED_LANGUAGES if l in segments]
    documents = []
    if len(langs) >= 2:
        for i, source_lang in enumerate(langs):
            for target_lang in langs[i + 1 :]:
                src = segments[source_lang]
                tgt = segments[target_lang]
                documents.append(
                    CandidateDocumentPair(
                        source_sentences=tuple(t for t, _ in src),
                        target_sentences=tuple(t for t, _ in tgt),
                        source_lang=source_lang,
                        target_lang=target_lang,
                        record_key=record.record_key,
                        source_origins=tuple(o for _, o in src),
                        target_origins=tuple(o for _, o in tgt),
                        domain=record.domain,
                    )
                )
        return documents, []
    monolingual = [
        MonolingualSentence(
            text=text,
            lang=lang,
            domain=record.domain,
            record_key=record.record_key,
            origin=origin,
        )
        for lang in langs
        for text, origin in segments[lang]
    ]
    return documents, monolingual


def margin_score(
    x: np.ndarray,
    y: np.ndarray,
    nnx: list[np.ndarray],
    nny: list[np.ndarray],
    k: int,
) -> float:
    """Ratio margin of one vector pair given its neighbor lists.

    ``nnx``/``nny`` hold the (at most k) nearest neighbors of x among
    the targets and of y among the sources; k clamps per side to the
    list length. The denominator is floored at 1e-6.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if not nnx or not nny:
        raise ValueError("neighbor lists must be non-empty")
    if len(nnx) > k or len(nny) > k:
        raise ValueError("neighbor lists longer than k")
    for z in list(nnx) + list(nny):
        if np.asarray(z).shape != x.shape:
            raise ValueError("neighbor dimension mismatch")
    kx = len(nnx)
    ky = len(nny)
    denom = sum(float(np.dot(x, z)) for z in nnx) / (2 * kx)
    denom += sum(float(np.dot(y, z)) for z in nny) / (2 * ky)
    return float(np.dot(x, y)) / max(denom, DENOMINATOR_FLOOR)


def margin_matrix(similarities: np.ndarray, k: int) -> np.ndarray:
    """Ratio margins for every source x target combination.

    ``similarities`` is the cosine matrix of unit-norm embeddings; the
    per-side neighborhoods are the top-k entries of each row/column,
    with k clamped to the opposite side's size.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    n_src, n_tgt = similarities.shape
    kx = min(k, n_tgt)
    ky = min(k, n_src)
    # Mean of the kx largest entries per row / ky largest per column.
    row_top = np.partition(similarities, n_tgt - kx, axis=1)[:, n_tgt - kx :]
    col_top = np.partition(similarities, n_src - ky, axis=0)[n_src - ky :, :]
    row_mean = row_top.mean(axis=1)
    col_mean = col_top.mean(axis=0)
    denom = (row_mean[:, None] + col_mean[None, :]) / 2.0
    return similarities / np.maximum(denom, DENOMINATOR_FLOOR)


def mine_pairs(
    doc: CandidateDocumentPair,
    backend: EmbeddingBackend,
    k: int = 4,
    threshold: float = 0.98,
) -> list[SentencePair]:
    """Mine scored sentence pairs from one candidate document pair.

    Emits the combinations that are mutually best by margin (ties break
    to the lowest index), score at least ``threshold``, and have
    non-negative cosine (guards against floored denominators turning
    anti-correlated pairs into high margins).
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    source_vectors = embed_batch(list(doc.source_sentences), backend)
    target_vectors = embed_batch(list(doc.target_sentences), backend)
    similarities = source_vectors @ target_vectors.T
    margins = margin_matrix(similarities, k)
    best_target = margins.argmax(axis=1)
    best_source = margins.argmax(axis=0)

    pairs = []
    for i, j in enumerate(best_target):
        if best_source[j] != i:
            continue
        score = float(margins[i, j])
        if score < threshold or similarities[i, j] < 0.0:
            continue
        origin = (
            ORIGIN_TITLE
            if doc.source_origins[i] == ORIGIN_TITLE
            and doc.target_origins[j] == ORIGIN_TITLE
            else ORIGIN_ABSTRACT
        )
        pairs.append(
            SentencePair(
                source_text=doc.source_sentences[i],
                target_text=doc.target_sentences[j],
                source_lang=doc.source_lang,
                target_lang=doc.target_lang,
                score=score,
                domain=doc.domain,
                record_key=doc.record_key,
                origin=origin,
            )
        )
    return pairs
