"""Construction of dev/test benchmark splits from filtered corpora.

The split applies three gates stricter than the corpus filter (margin
score above 1.08, word-count ratio at most 1.66, at least 3 words per
side), then samples a fixed number of distinct records, takes one pair
per record, and deals the shuffled pairs alternately into equal dev and
test halves. Every random choice comes from the documented SplitMix64
generator, so identical inputs give byte-identical splits on any
platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .filters import normalize_whitespace
from .records import DOMAINS, TARGETED_LANGUAGES, SentencePair, pair_to_json
from .rng import SplitMix64


class BenchmarkError(ValueError):
    pass


class ShortfallError(BenchmarkError):
    """Fewer eligible records than requested; never silently downsized."""

    def __init__(self, needed: int, available: int):
        super().__init__(
            f"benchmark needs {needed} eligible records, found {available} "
            f"(short by {needed - available})"
        )
        self.needed = needed
        self.available = available


@dataclass(frozen=True)
class BenchmarkSpec:
    domain: str
    lang_pair: tuple[str, str]
    records_to_sample: int
    score_min: float = 1.08
    token_ratio_max: float = 1.66
    min_words: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.records_to_sample <= 0 or self.records_to_sample % 2:
            raise BenchmarkError("records_to_sample must be positive and even")
        if self.domain not in DOMAINS:
            raise BenchmarkError(f"unknown domain {self.domain!r}")
        source, target = self.lang_pair
        if source == target or not {source, target} <= set(TARGETED_LANGUAGES):
            raise BenchmarkError(f"invalid language pair {self.lang_pair!r}")


@dataclass(frozen=True)
class BenchmarkSplit:
    dev: tuple[SentencePair, ...]
    test: tuple[SentencePair, ...]


def _word_ratio(pair: SentencePair) -> float:
    source_words = len(pair.source_text.split())
    target_words = len(pair.target_text.split())
    low = min(source_words, target_words)
    high = max(source_words, target_words)
    return high / low if low else float("inf")


def _eligible(pair: SentencePair, spec: BenchmarkSpec) -> bool:
    if pair.score <= spec.score_min:
        return False
    if _word_ratio(pair) > spec.token_ratio_max:
        return False
    if (
        len(pair.source_text.split()) < spec.min_words
        or len(pair.target_text.split()) < spec.min_words
    ):
        return False
    return True


def build_benchmark(pairs: list[SentencePair], spec: BenchmarkSpec) -> BenchmarkSplit:
    """Build the dev/test split; deterministic in (pairs, spec).

    ``pairs`` must already have passed the corpus filter chain and
    belong to the spec's domain and language pair.
    """
    for pair in pairs:
        if (pair.source_lang, pair.target_lang) != spec.lang_pair:
            raise BenchmarkError(
                f"pair languages {(pair.source_lang, pair.target_lang)} "
                f"do not match spec {spec.lang_pair}"
            )
        if pair.domain != spec.domain:
            raise BenchmarkError(
                f"pair domain {pair.domain!r} does not match spec {spec.domain!r}"
            )

    by_record: dict[tuple[str, int], list[SentencePair]] = {}
    for pair in pairs:
        if _eligible(pair, spec):
            by_record.setdefault(pair.record_key, []).append(pair)

    if len(by_record) < spec.records_to_sample:
        raise ShortfallError(spec.records_to_sample, len(by_record))

    rng = SplitMix64(spec.seed)
    record_keys = sorted(by_record)
    rng.shuffle(record_keys)
    chosen = [
        candidates[rng.below(len(candidates))]
        for key in record_keys[: spec.records_to_sample]
        for candidates in (by_record[key],)
    ]
    rng.shuffle(chosen)
    return BenchmarkSplit(dev=tuple(chosen[0::2]), test=tuple(chosen[1::2]))


def verify_split(split: BenchmarkSplit, spec: BenchmarkSpec) -> list[str]:
    """Independent post-hoc check of the split invariants.

    Re-derives every gate from the raw pair texts rather than trusting
    the builder; returns a list of violation messages (empty = valid).
    """
    problems = []
    half = spec.records_to_sample // 2
    if len(split.dev) != half:
        problems.append(f"dev size {len(split.dev)} != {half}")
    if len(split.test) != half:
        problems.append(f"test size {len(split.test)} != {half}")

    def norm_key(pair: SentencePair) -> tuple[str, str]:
        return (
            normalize_whitespace(pair.source_text),
            normalize_whitespace(pair.target_text),
        )

    dev_texts = {norm_key(p) for p in split.dev}
    test_texts = {norm_key(p) for p in split.test}
    if dev_texts & test_texts:
        problems.append("dev and test share normalized pair text")

    records = [p.record_key for p in split.dev + split.test]
    if len(set(records)) != len(records):
        problems.append("a record contributes more than one pair")

    for name, pairs in (("dev", split.dev), ("test", split.test)):
        for i, pair in enumerate(pairs):
            source_words = len(pair.source_text.split())
            target_words = len(pair.target_text.split())
            if pair.score <= spec.score_min:
                problems.append(f"{name}[{i}]: score {pair.score} <= {spec.score_min}")
            if min(source_words, target_words) < spec.min_words:
                problems.append(f"{name}[{i}]: under {spec.min_words} words")
            elif (
                max(source_words, target_words) / min(source_words, target_words)
                > spec.token_ratio_max
            ):
                problems.append(f"{name}[{i}]: token ratio over {spec.token_ratio_max}")
    return problems


def write_split(split: BenchmarkSplit, directory: str | Path) -> None:
    """Write dev.src/dev.tgt/test.src/test.tgt plus pairs.jsonl.

    The four text files are line-aligned; any internal newline in a
    sentence is flattened to a space on export.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    def flat(text: str) -> str:
        return " ".join(text.splitlines()) if "\n" in text else text

    for name, pairs in (("dev", split.dev), ("test", split.test)):
        with open(directory / f"{name}.src", "w", encoding="utf-8") as src, open(
            directory / f"{name}.tgt", "w", encoding="utf-8"
        ) as tgt:
            for pair in pairs:
                src.write(flat(pair.source_text) + "\n")
                tgt.write(flat(pair.target_text) + "\n")
    with open(directory / "pairs.jsonl", "w", encoding="utf-8") as meta:
        for name, pairs in (("dev", split.dev), ("test", split.test)):
            for pair in pairs:
                row = {"split": name, **json.loads(pair_to_json(pair))}
                meta.write(
                    json.dumps(row, ensure_ascii=False, separators=(",", ":")) + "\n"
                )
