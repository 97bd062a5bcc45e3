"""Benchmark split construction, gating, and independent verification."""

import json

import pytest

from scicorpus.benchmark import (
    BenchmarkError,
    BenchmarkSpec,
    BenchmarkSplit,
    ShortfallError,
    build_benchmark,
    verify_split,
    write_split,
)
from scicorpus.records import SentencePair

SPEC = BenchmarkSpec(domain="energy", lang_pair=("en", "pt"), records_to_sample=4)


def make_pair(
    record_id,
    score=1.2,
    source_text=None,
    target_text=None,
    domain="energy",
    source_lang="en",
    target_lang="pt",
    origin="abstract",
):
    return SentencePair(
        source_text=source_text
        or f"Measured output rose in sector {record_id} overall.",
        target_text=target_text
        or f"A producao medida subiu no setor {record_id} em geral.",
        source_lang=source_lang,
        target_lang=target_lang,
        score=score,
        domain=domain,
        record_key=("10198", record_id),
        origin=origin,
    )


def words(count, stem="w"):
    return " ".join(f"{stem}{i}" for i in range(count))


class TestSpecValidation:
    def test_accepts_defaults(self):
        spec = BenchmarkSpec(domain="cancer", lang_pair=("en", "es"), records_to_sample=2)
        assert spec.score_min == 1.08
        assert spec.token_ratio_max == 1.66
        assert spec.min_words == 3
        assert spec.seed == 0

    @pytest.mark.parametrize("count", [0, -2, 3, 999])
    def test_rejects_odd_or_nonpositive_sample(self, count):
        with pytest.raises(BenchmarkError, match="positive and even"):
            BenchmarkSpec(domain="energy", lang_pair=("en", "pt"), records_to_sample=count)

    def test_rejects_unknown_domain(self):
        with pytest.raises(BenchmarkError, match="unknown domain"):
            BenchmarkSpec(domain="botany", lang_pair=("en", "pt"), records_to_sample=2)

    @pytest.mark.parametrize("pair", [("en", "en"), ("en", "zz"), ("xx", "pt")])
    def test_rejects_invalid_language_pair(self, pair):
        with pytest.raises(BenchmarkError, match="language pair"):
            BenchmarkSpec(domain="energy", lang_pair=pair, records_to_sample=2)


class TestGates:
    def run(self, pairs, **spec_kwargs):
        kwargs = {
            "domain": "energy",
            "lang_pair": ("en", "pt"),
            "records_to_sample": 2,
        }
        kwargs.update(spec_kwargs)
        return build_benchmark(pairs, BenchmarkSpec(**kwargs))

    def test_score_must_exceed_threshold_strictly(self):
        boundary = [make_pair(i, score=1.08) for i in range(4)]
        with pytest.raises(ShortfallError):
            self.run(boundary)
        above = [make_pair(i, score=1.08 + 1e-9) for i in range(4)]
        split = self.run(above)
        assert len(split.dev) == len(split.test) == 1

    def test_token_ratio_boundary_is_inclusive(self):
        # 83/50 words is exactly the 1.66 limit; 5/3 words is 1.67.
        at_limit = [
            make_pair(i, source_text=words(50), target_text=words(83, "p"))
            for i in range(4)
        ]
        assert len(self.run(at_limit).dev) == 1
        over = [
            make_pair(i, source_text=words(3), target_text=words(5, "p"))
            for i in range(4)
        ]
        with pytest.raises(ShortfallError):
            self.run(over)

    def test_minimum_words_per_side(self):
        short = [
            make_pair(i, source_text=words(2), target_text=words(3, "p"))
            for i in range(4)
        ]
        with pytest.raises(ShortfallError):
            self.run(short)
        enough = [
            make_pair(i, source_text=words(3), target_text=words(3, "p"))
            for i in range(4)
        ]
        assert len(self.run(enough).dev) == 1

    def test_gate_overrides_are_honored(self):
        pairs = [make_pair(i, score=1.03) for i in range(4)]
        split = self.run(pairs, score_min=1.0)
        assert len(split.dev) == 1

    def test_input_pair_language_must_match_spec(self):
        with pytest.raises(BenchmarkError, match="languages"):
            self.run([make_pair(0, source_lang="en", target_lang="es")])

    def test_input_pair_domain_must_match_spec(self):
        with pytest.raises(BenchmarkError, match="domain"):
            self.run([make_pair(0, domain="general")])


class TestSampling:
    def test_shortfall_reports_counts(self):
        pairs = [make_pair(i) for i in range(3)]
        spec = BenchmarkSpec(domain="energy", lang_pair=("en", "pt"), records_to_sample=6)
        with pytest.raises(ShortfallError, match="needs 6.*found 3.*short by 3") as info:
            build_benchmark(pairs, spec)
        assert info.value.needed == 6
        assert info.value.available == 3
        assert isinstance(info.value, BenchmarkError)
        assert isinstance(info.value, ValueError)

    def test_ineligible_records_do_not_count(self):
        pairs = [make_pair(i) for i in range(3)] + [
            make_pair(i, score=0.5) for i in range(3, 10)
        ]
        spec = BenchmarkSpec(domain="energy", lang_pair=("en", "pt"), records_to_sample=4)
        with pytest.raises(ShortfallError) as info:
            build_benchmark(pairs, spec)
        assert info.value.available == 3

    def test_one_pair_per_record(self):
        pairs = []
        for record_id in range(6):
            for variant in range(5):
                pairs.append(
                    make_pair(
                        record_id,
                        source_text=f"Sentence variant {variant} of record {record_id} text.",
                        target_text=f"Frase variante {variant} do registo {record_id} texto.",
                    )
                )
        split = build_benchmark(pairs, SPEC)
        chosen = [p.record_key for p in split.dev + split.test]
        assert len(chosen) == len(set(chosen)) == 4

    def test_deterministic_for_fixed_seed(self):
        pairs = [make_pair(i) for i in range(12)]
        assert build_benchmark(pairs, SPEC) == build_benchmark(list(pairs), SPEC)

    def test_seed_changes_selection(self):
        pairs = [make_pair(i) for i in range(40)]
        other = BenchmarkSpec(
            domain="energy", lang_pair=("en", "pt"), records_to_sample=4, seed=1
        )
        assert build_benchmark(pairs, SPEC) != build_benchmark(pairs, other)

    def test_input_order_does_not_matter(self):
        pairs = [make_pair(i) for i in range(10)]
        assert build_benchmark(pairs, SPEC) == build_benchmark(pairs[::-1], SPEC)

    def test_large_corpus_yields_balanced_halves(self):
        pairs = [make_pair(i) for i in range(2400)]
        spec = BenchmarkSpec(
            domain="energy", lang_pair=("en", "pt"), records_to_sample=2000
        )
        split = build_benchmark(pairs, spec)
        assert len(split.dev) == 1000
        assert len(split.test) == 1000
        assert verify_split(split, spec) == []


class TestVerifySplit:
    def test_accepts_valid_split(self):
        split = build_benchmark([make_pair(i) for i in range(8)], SPEC)
        assert verify_split(split, SPEC) == []

    def test_flags_uneven_sizes(self):
        split = BenchmarkSplit(dev=(make_pair(0),), test=())
        problems = verify_split(split, SPEC)
        assert any("dev size" in p for p in problems)
        assert any("test size" in p for p in problems)

    def test_flags_shared_text_after_normalization(self):
        shared = make_pair(0)
        respaced = make_pair(
            1,
            source_text="  " + shared.source_text.replace(" ", "  "),
            target_text=shared.target_text + " ",
        )
        split = BenchmarkSplit(dev=(shared,), test=(respaced,))
        assert any(
            "share normalized pair text" in p for p in verify_split(split, SPEC)
        )

    def test_flags_record_reuse(self):
        first = make_pair(0)
        second = make_pair(0, source_text=words(4), target_text=words(4, "p"))
        split = BenchmarkSplit(dev=(first,), test=(second,))
        assert any("more than one pair" in p for p in verify_split(split, SPEC))

    def test_rechecks_gates_from_raw_texts(self):
        low = make_pair(0, score=1.0)
        lopsided = make_pair(1, source_text=words(3), target_text=words(30, "p"))
        short = make_pair(2, source_text="um dois", target_text="one two")
        ok = make_pair(3)
        split = BenchmarkSplit(dev=(low, lopsided), test=(short, ok))
        problems = verify_split(split, SPEC)
        assert any("score 1.0" in p for p in problems)
        assert any("token ratio over" in p for p in problems)
        assert any("under 3 words" in p for p in problems)


class TestWriteSplit:
    def test_writes_aligned_files_and_metadata(self, tmp_path):
        split = build_benchmark([make_pair(i) for i in range(8)], SPEC)
        out = tmp_path / "bench"
        write_split(split, out)

        for name, pairs in (("dev", split.dev), ("test", split.test)):
            src = (out / f"{name}.src").read_text(encoding="utf-8").splitlines()
            tgt = (out / f"{name}.tgt").read_text(encoding="utf-8").splitlines()
            assert src == [p.source_text for p in pairs]
            assert tgt == [p.target_text for p in pairs]

        rows = [
            json.loads(line)
            for line in (out / "pairs.jsonl").read_text(encoding="utf-8").splitlines()
        ]
        assert [row["split"] for row in rows] == ["dev", "dev", "test", "test"]
        assert rows[0]["source_text"] == split.dev[0].source_text
        assert rows[0]["domain"] == "energy"

    def test_flattens_internal_newlines(self, tmp_path):
        pair = make_pair(
            0,
            source_text="line one\nline two here",
            target_text="linha um\nlinha dois aqui",
        )
        split = BenchmarkSplit(dev=(pair,), test=(make_pair(1),))
        write_split(split, tmp_path)
        assert (tmp_path / "dev.src").read_text(encoding="utf-8") == (
            "line one line two here\n"
        )
