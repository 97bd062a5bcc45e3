"""Corpus-level BLEU and chrF2++ for translation evaluation.

Both metrics reproduce the published reference-scorer behavior so that
numbers computed here are comparable with externally reported results:

* BLEU uses mteval-v13a tokenization, modified n-gram precisions for
  n = 1..4, exponential (NIST method 3) smoothing of zero counts, and
  the standard brevity penalty. No effective-order shortening.
* chrF2++ combines character n-grams 1..6 (whitespace removed) with
  word n-grams 1..2 (punctuation split off word edges), sums match
  statistics over the corpus, averages precision and recall across the
  orders that actually occur, and applies F with beta = 2.

Scores are floats in [0, 100], deterministic and locale-independent.
An optional paired bootstrap gives confidence intervals; the point
score is always computed on the full corpus.
"""

from __future__ import annotations

import math
import re
import statistics as _statistics
import string
from collections import Counter
from dataclasses import dataclass

from . import __version__
from .rng import SplitMix64


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class BleuConfig:
    max_ngram: int = 4
    tokenizer: str = "13a"
    smoothing: str = "exp"
    lowercase: bool = False

    def __post_init__(self):
        if self.max_ngram < 1:
            raise MetricError("max_ngram must be at least 1")
        if self.tokenizer not in ("13a", "none"):
            raise MetricError(f"unsupported tokenizer {self.tokenizer!r}")
        if self.smoothing not in ("exp", "none"):
            raise MetricError(f"unsupported smoothing {self.smoothing!r}")


@dataclass(frozen=True)
class ChrfConfig:
    char_ngram_max: int = 6
    word_ngram_max: int = 2
    beta: int = 2
    whitespace_included: bool = False
    effective_order: bool = True
    lowercase: bool = False

    def __post_init__(self):
        if self.char_ngram_max < 1 or self.word_ngram_max < 0:
            raise MetricError("invalid n-gram orders")
        if self.beta <= 0:
            raise MetricError("beta must be positive")

    @property
    def total_orders(self) -> int:
        return self.char_ngram_max + self.word_ngram_max


# Sentinel for log(0); large enough that one zero precision forces the
# geometric mean (and hence the score) to underflow to 0.0.
_LOG_ZERO = -9999999999


def _safe_log(value: float) -> float:
    return math.log(value) if value != 0.0 else _LOG_ZERO


def tokenize_13a(line: str) -> str:
    """mteval-v13a tokenization: unescape, then pad punctuation.

    Periods and commas stay attached between digits; dashes split only
    after a digit. Returns the tokenized line as a single string.
    """
    norm = line
    norm = norm.replace("<skipped>", "")
    norm = norm.replace("-\n", "")
    norm = norm.replace("\n", " ")
    norm = norm.replace("&quot;", '"')
    norm = norm.replace("&amp;", "&")
    norm = norm.replace("&lt;", "<")
    norm = norm.replace("&gt;", ">")

    norm = f" {norm} "
    norm = re.sub(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])", r" \1 ", norm)
    norm = re.sub(r"([^0-9])([\.,])", r"\1 \2 ", norm)
    norm = re.sub(r"([\.,])([^0-9])", r" \1 \2", norm)
    norm = re.sub(r"([0-9])(-)", r"\1 \2 ", norm)
    return " ".join(norm.split())


def _tokenize(line: str, cfg: BleuConfig) -> list[str]:
    if cfg.lowercase:
        line = line.lower()
    if cfg.tokenizer == "13a":
        return tokenize_13a(line.rstrip()).split()
    return line.rstrip().split()


def _word_ngrams(tokens: list[str], min_order: int, max_order: int) -> Counter:
    grams: Counter = Counter()
    for n in range(min_order, max_order + 1):
        for i in range(len(tokens) - n + 1):
            grams[tuple(tokens[i : i + n])] += 1
    return grams


@dataclass(frozen=True)
class _BleuStats:
    correct: tuple[int, ...]
    total: tuple[int, ...]
    sys_len: int
    ref_len: int

    def __add__(self, other: "_BleuStats") -> "_BleuStats":
        return _BleuStats(
            tuple(a + b for a, b in zip(self.correct, other.correct)),
            tuple(a + b for a, b in zip(self.total, other.total)),
            self.sys_len + other.sys_len,
            self.ref_len + other.ref_len,
        )


def _bleu_segment_stats(hypothesis: str, reference: str, cfg: BleuConfig) -> _BleuStats:
    hyp_tokens = _tokenize(hypothesis, cfg)
    ref_tokens = _tokenize(reference, cfg)
    hyp_grams = _word_ngrams(hyp_tokens, 1, cfg.max_ngram)
    ref_grams = _word_ngrams(ref_tokens, 1, cfg.max_ngram)
    correct = [0] * cfg.max_ngram
    total = [0] * cfg.max_ngram
    for gram, count in hyp_grams.items():
        order = len(gram)
        correct[order - 1] += min(count, ref_grams.get(gram, 0))
        total[order - 1] += count
    return _BleuStats(tuple(correct), tuple(total), len(hyp_tokens), len(ref_tokens))


def _bleu_from_stats(stats: _BleuStats, cfg: BleuConfig) -> float:
    precisions = [0.0] * cfg.max_ngram
    smooth_denominator = 1.0
    for n in range(1, cfg.max_ngram + 1):
        if stats.total[n - 1] == 0:
            break
        if stats.correct[n - 1] == 0:
            if cfg.smoothing == "exp":
                smooth_denominator *= 2
                precisions[n - 1] = 100.0 / (smooth_denominator * stats.total[n - 1])
        else:
            precisions[n - 1] = 100.0 * stats.correct[n - 1] / stats.total[n - 1]

    brevity_penalty = 1.0
    if stats.sys_len < stats.ref_len:
        brevity_penalty = (
            math.exp(1 - stats.ref_len / stats.sys_len) if stats.sys_len > 0 else 0.0
        )
    # exp(log(100)) != 100.0 in binary floating point; keep perfect
    # hypotheses at exactly 100.0 instead of 100.00000000000004.
    if brevity_penalty == 1.0 and all(p == 100.0 for p in precisions):
        return 100.0
    mean_log = sum(_safe_log(p) for p in precisions) / cfg.max_ngram
    return brevity_penalty * math.exp(mean_log)


def _check_streams(hypotheses: list[str], references: list[str]) -> None:
    if len(hypotheses) != len(references):
        raise MetricError(
            f"{len(hypotheses)} hypotheses vs {len(references)} references"
        )
    if not hypotheses:
        raise MetricError("empty hypothesis list")


def bleu(
    hypotheses: list[str],
    references: list[str],
    cfg: BleuConfig = BleuConfig(),
) -> float:
    """Corpus BLEU in [0, 100] for aligned hypothesis/reference lists."""
    _check_streams(hypotheses, references)
    stats = _bleu_segment_stats(hypotheses[0], references[0], cfg)
    for hyp, ref in zip(hypotheses[1:], references[1:]):
        stats = stats + _bleu_segment_stats(hyp, ref, cfg)
    return _bleu_from_stats(stats, cfg)


# chrF+'s word tokenizer detaches one leading or trailing punctuation
# character per word (trailing wins), matching the reference scorer
# including its behavior on words like "(hi)" -> ["(hi", ")"].
_PUNCTUATION = frozenset(string.punctuation)


def _split_punctuation(segment: str) -> list[str]:
    tokens = []
    for word in segment.split():
        if len(word) == 1:
            tokens.append(word)
        elif word[-1] in _PUNCTUATION:
            tokens.extend((word[:-1], word[-1]))
        elif word[0] in _PUNCTUATION:
            tokens.extend((word[0], word[1:]))
        else:
            tokens.append(word)
    return tokens


def _char_ngrams(segment: str, n: int) -> Counter:
    return Counter(segment[i : i + n] for i in range(len(segment) - n + 1))


def _chrf_segment_stats(hypothesis: str, reference: str, cfg: ChrfConfig) -> list[int]:
    """Per-order [hyp_count, ref_count, match_count] triples, flattened.

    Character orders come first, then word orders.
    """
    if cfg.lowercase:
        hypothesis = hypothesis.lower()
        reference = reference.lower()
    stats = []
    hyp_chars = hypothesis if cfg.whitespace_included else "".join(hypothesis.split())
    ref_chars = reference if cfg.whitespace_included else "".join(reference.split())
    for n in range(1, cfg.char_ngram_max + 1):
        hyp_grams = _char_ngrams(hyp_chars, n)
        ref_grams = _char_ngrams(ref_chars, n)
        stats += [
            sum(hyp_grams.values()),
            sum(ref_grams.values()),
            sum((hyp_grams & ref_grams).values()),
        ]
    if cfg.word_ngram_max:
        hyp_words = _split_punctuation(hypothesis)
        ref_words = _split_punctuation(reference)
        for n in range(1, cfg.word_ngram_max + 1):
            hyp_grams = _word_ngrams(hyp_words, n, n)
            ref_grams = _word_ngrams(ref_words, n, n)
            stats += [
                sum(hyp_grams.values()),
                sum(ref_grams.values()),
                sum((hyp_grams & ref_grams).values()),
            ]
    return stats


def _chrf_from_stats(stats: list[int], cfg: ChrfConfig) -> float:
    avg_precision = 0.0
    avg_recall = 0.0
    present_orders = 0
    for i in range(cfg.total_orders):
        hyp_count, ref_count, match_count = stats[3 * i : 3 * i + 3]
        if hyp_count > 0 and ref_count > 0:
            avg_precision += match_count / hyp_count
            avg_recall += match_count / ref_count
            present_orders += 1
    if cfg.effective_order:
        if present_orders == 0:
            return 0.0
    else:
        present_orders = cfg.total_orders
    avg_precision /= present_orders
    avg_recall /= present_orders
    if avg_precision + avg_recall == 0.0:
        return 0.0
    beta_sq = cfg.beta**2
    f_score = (
        (1 + beta_sq)
        * avg_precision
        * avg_recall
        / (beta_sq * avg_precision + avg_recall)
    )
    return 100.0 * f_score


def chrf2pp(
    hypotheses: list[str],
    references: list[str],
    cfg: ChrfConfig = ChrfConfig(),
) -> float:
    """Corpus chrF2++ in [0, 100] for aligned hypothesis/reference lists."""
    _check_streams(hypotheses, references)
    totals = [0] * (3 * cfg.total_orders)
    for hyp, ref in zip(hypotheses, references):
        for i, value in enumerate(_chrf_segment_stats(hyp, ref, cfg)):
            totals[i] += value
    return _chrf_from_stats(totals, cfg)


@dataclass(frozen=True)
class BootstrapResult:
    point: float
    mean: float
    # Half-width of the ~95% normal-approximation interval (1.96 sigma).
    delta: float
    n_resamples: int
    seed: int


def paired_bootstrap(
    hypotheses: list[str],
    references: list[str],
    metric: str = "bleu",
    bleu_cfg: BleuConfig = BleuConfig(),
    chrf_cfg: ChrfConfig = ChrfConfig(),
    n_resamples: int = 1000,
    seed: int = 12345,
) -> BootstrapResult:
    """Paired bootstrap over segments, reusing per-segment statistics.

    Resamples the corpus with replacement ``n_resamples`` times using
    the portable seeded generator and reports the resample mean with a
    1.96-sigma half-width.
    """
    _check_streams(hypotheses, references)
    if n_resamples < 2:
        raise MetricError("n_resamples must be at least 2")
    if metric == "bleu":
        segments = [
            _bleu_segment_stats(h, r, bleu_cfg)
            for h, r in zip(hypotheses, references)
        ]

        def score(chosen: list[int]) -> float:
            stats = segments[chosen[0]]
            for index in chosen[1:]:
                stats = stats + segments[index]
            return _bleu_from_stats(stats, bleu_cfg)

        point = bleu(hypotheses, references, bleu_cfg)
    elif metric == "chrf2pp":
        chrf_segments = [
            _chrf_segment_stats(h, r, chrf_cfg)
            for h, r in zip(hypotheses, references)
        ]

        def score(chosen: list[int]) -> float:
            totals = [0] * (3 * chrf_cfg.total_orders)
            for index in chosen:
                for i, value in enumerate(chrf_segments[index]):
                    totals[i] += value
            return _chrf_from_stats(totals, chrf_cfg)

        point = chrf2pp(hypotheses, references, chrf_cfg)
    else:
        raise MetricError(f"unknown metric {metric!r}")

    rng = SplitMix64(seed)
    count = len(hypotheses)
    scores = [
        score([rng.below(count) for _ in range(count)]) for _ in range(n_resamples)
    ]
    mean = _statistics.fmean(scores)
    delta = 1.96 * _statistics.stdev(scores)
    return BootstrapResult(point, mean, delta, n_resamples, seed)


def _signature(fields: list[tuple[str, str]]) -> str:
    return "|".join(f"{key}:{value}" for key, value in fields)


def bleu_signature(
    cfg: BleuConfig = BleuConfig(),
    n_bootstrap: int | None = None,
    seed: int | None = None,
) -> str:
    """Reproducibility string echoing the BLEU configuration."""
    fields = [("nrefs", "1")]
    if n_bootstrap:
        fields += [("bs", str(n_bootstrap)), ("seed", str(seed))]
    fields += [
        ("case", "lc" if cfg.lowercase else "mixed"),
        ("eff", "no"),
        ("tok", cfg.tokenizer),
        ("smooth", cfg.smoothing),
        ("version", __version__),
    ]
    return _signature(fields)


def chrf_signature(
    cfg: ChrfConfig = ChrfConfig(),
    n_bootstrap: int | None = None,
    seed: int | None = None,
) -> str:
    """Reproducibility string echoing the chrF2++ configuration."""
    fields = [("nrefs", "1")]
    if n_bootstrap:
        fields += [("bs", str(n_bootstrap)), ("seed", str(seed))]
    fields += [
        ("case", "lc" if cfg.lowercase else "mixed"),
        ("eff", "yes" if cfg.effective_order else "no"),
        ("nc", str(cfg.char_ngram_max)),
        ("nw", str(cfg.word_ngram_max)),
        ("space", "yes" if cfg.whitespace_included else "no"),
        ("version", __version__),
    ]
    return _signature(fields)
