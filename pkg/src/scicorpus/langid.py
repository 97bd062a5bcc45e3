"""Character n-gram language identification.

A rank-distance classifier in the Cavnar-Trenkle style: each language
has a profile of its 300 most frequent character n-grams (n = 1..3),
and a text is assigned the language whose profile is closest under the
out-of-place rank distance. Profiles for the four targeted languages
ship with the package and can be retrained from any text corpus.

Texts shorter than 20 characters are reported as unidentifiable
("other" with confidence 0) rather than guessed at; the filter chain
never rejects a pair over an unidentifiable side.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .records import TARGETED_LANGUAGES

PROFILE_SIZE = 300
NGRAM_RANGE = (1, 3)
MIN_TEXT_LENGTH = 20
OTHER = "other"

# Out-of-place cost for text n-grams absent from a language profile.
# Twice the profile size: absence is stronger evidence than any rank
# displacement, and the coverage term is what separates related
# languages, so it outweighs displacement noise in the confidence.
MISSING_PENALTY = 2 * PROFILE_SIZE


def _char_ngrams(text: str) -> Counter:
    folded = " ".join(text.split()).casefold()
    grams: Counter = Counter()
    n_min, n_max = NGRAM_RANGE
    for n in range(n_min, n_max + 1):
        for i in range(len(folded) - n + 1):
            grams[folded[i : i + n]] += 1
    return grams


def rank_ngrams(text: str, size: int = PROFILE_SIZE) -> list[str]:
    """The ``size`` most frequent n-grams of ``text``, most frequent first.

    Frequency ties break lexicographically so profiles are reproducible.
    """
    grams = _char_ngrams(text)
    ordered = sorted(grams.items(), key=lambda item: (-item[1], item[0]))
    return [gram for gram, _ in ordered[:size]]


@dataclass(frozen=True)
class LangIdModel:
    """Ranked n-gram profiles per language (gram -> rank, 0 = most frequent)."""

    profiles: dict[str, dict[str, int]]

    def __post_init__(self):
        missing = [l for l in TARGETED_LANGUAGES if l not in self.profiles]
        if missing:
            raise ValueError(f"model lacks profiles for: {missing}")


def train_profile(texts: list[str], size: int = PROFILE_SIZE) -> list[str]:
    """Build a ranked profile from training texts."""
    return rank_ngrams("\n".join(texts), size=size)


def ranked_to_profile(ranked: list[str]) -> dict[str, int]:
    """Convert a ranked n-gram list to the gram -> rank mapping models use."""
    return {gram: rank for rank, gram in enumerate(ranked)}


def dump_profile(ranked: list[str]) -> str:
    """Profile file form: one ``ngram TAB rank`` line per entry."""
    return "".join(f"{gram}\t{rank}\n" for rank, gram in enumerate(ranked))


def parse_profile(text: str) -> dict[str, int]:
    profile = {}
    for line in text.splitlines():
        if not line:
            continue
        gram, _, rank = line.rpartition("\t")
        profile[gram] = int(rank)
    return profile


@lru_cache(maxsize=1)
def default_model() -> LangIdModel:
    """The model built from the shipped per-language profile files."""
    profiles = {}
    for lang in TARGETED_LANGUAGES:
        text = (
            resources.files("scicorpus.resources")
            .joinpath(f"langid/{lang}.profile")
            .read_text("utf-8")
        )
        profiles[lang] = parse_profile(text)
    return LangIdModel(profiles)


def _distance(text_ranked: list[str], profile: dict[str, int]) -> int:
    # Out-of-place measure; n-grams absent from the language profile pay
    # the maximum penalty.
    total = 0
    for rank, gram in enumerate(text_ranked):
        profile_rank = profile.get(gram)
        total += MISSING_PENALTY if profile_rank is None else abs(rank - profile_rank)
    return total


def identify_language(text: str, model: LangIdModel | None = None) -> tuple[str, float]:
    """Identify the language of ``text``.

    Returns ``(language, confidence)`` where confidence in [0, 1] is the
    margin of the best profile over the runner-up, ``(best - runner_up)
    / runner_up`` on rank distances. Short or empty texts return
    ``("other", 0.0)``.
    """
    if model is None:
        model = default_model()
    stripped = " ".join(text.split())
    if len(stripped) < MIN_TEXT_LENGTH:
        return (OTHER, 0.0)
    ranked = rank_ngrams(stripped)
    distances = sorted(
        (_distance(ranked, profile), lang) for lang, profile in model.profiles.items()
    )
    (best_distance, best_lang), (runner_up, _) = distances[0], distances[1]
    if runner_up <= 0:
        return (best_lang, 0.0)
    confidence = (runner_up - best_distance) / runner_up
    return (best_lang, confidence)
