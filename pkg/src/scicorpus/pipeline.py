"""Batch pipeline: extract → classify → mine → filter → benchmark → stats.

Each stage reads the previous stage's directory under ``output_dir``
and builds its own output in a temporary directory that is renamed
into place only on success, so a failing stage never corrupts earlier
results and every stage can be rerun. All traversal orders are sorted
and all randomness comes from seeded generators, which makes two runs
over the same inputs byte-identical.

Stage directories:

* ``records/<repository>/<id>.json``     extracted records
* ``classified/<repository>/<id>.json``  records with domain + counts
* ``mined/pairs.jsonl``, ``mined/mono.jsonl``
* ``corpus/<src>-<tgt>/<domain>.jsonl|.tsv``, ``corpus/mono/<lang>/<domain>.txt``,
  ``corpus/rejections.jsonl``
* ``benchmarks/<domain>-<src>-<tgt>/{dev,test}.{src,tgt}``
* ``stats/stats.json``, ``stats/tables.txt``

Each stage also writes a ``manifest.json`` of its counters.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .benchmark import BenchmarkSpec, build_benchmark, verify_split, write_split
from .domains import builtin_lexicon, classify_record, load_lexicon
from .embeddings import backend_from_spec
from .extractor import extract_record, load_config, read_pages
from .filters import (
    ALL_RULES,
    RULE_DUPLICATE,
    apply_filters,
    normalize_whitespace,
    pair_digest,
)
from .langid import default_model
from .mining import build_candidate_documents, mine_pairs, record_segments
from .records import (
    MonolingualSentence,
    mono_from_json,
    mono_to_json,
    pair_from_json,
    pair_to_json,
    pair_to_tsv,
    parse_record,
    serialize_record,
)


class PipelineError(RuntimeError):
    """A stage failed; prior stage outputs are left untouched."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class MiningSettings:
    k: int = 4
    threshold: float = 0.98
    backend: str = "hash"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("mining k must be >= 1")


@dataclass(frozen=True)
class PipelineConfig:
    repos_dir: Path
    configs_dir: Path
    output_dir: Path
    lexicon_path: Path | None = None
    workers: int = 1
    seed: int = 0
    mining: MiningSettings = MiningSettings()
    benchmarks: tuple[BenchmarkSpec, ...] = ()

    def __post_init__(self):
        for name in ("repos_dir", "configs_dir"):
            path = getattr(self, name)
            if not path.is_dir():
                raise FileNotFoundError(f"{name} does not exist: {path}")
        if self.lexicon_path is not None and not self.lexicon_path.is_file():
            raise FileNotFoundError(f"lexicon_path does not exist: {self.lexicon_path}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def load_pipeline_config(
    path: str | Path,
    workers: int | None = None,
    seed: int | None = None,
) -> PipelineConfig:
    """Load a pipeline config file; relative paths resolve against it."""
    path = Path(path)
    raw = json.loads(path.read_text("utf-8"))
    base = path.parent

    def resolve(key: str) -> Path:
        return (base / raw[key]).resolve()

    for key in ("repos_dir", "configs_dir", "output_dir"):
        if key not in raw:
            raise KeyError(f"pipeline config is missing {key!r}")

    config_seed = seed if seed is not None else raw.get("seed", 0)
    mining = MiningSettings(**raw.get("mining", {}))
    benchmarks = tuple(
        BenchmarkSpec(
            domain=spec["domain"],
            lang_pair=tuple(spec["lang_pair"]),
            records_to_sample=spec["records_to_sample"],
            score_min=spec.get("score_min", 1.08),
            token_ratio_max=spec.get("token_ratio_max", 1.66),
            min_words=spec.get("min_words", 3),
            seed=spec.get("seed", config_seed),
        )
        for spec in raw.get("benchmarks", [])
    )
    return PipelineConfig(
        repos_dir=resolve("repos_dir"),
        configs_dir=resolve("configs_dir"),
        output_dir=resolve("output_dir"),
        lexicon_path=(base / raw["lexicon_path"]).resolve()
        if raw.get("lexicon_path")
        else None,
        workers=workers if workers is not None else raw.get("workers", 1),
        seed=config_seed,
        mining=mining,
        benchmarks=benchmarks,
    )


@contextmanager
def _stage_dir(cfg: PipelineConfig, name: str):
    """Build a stage directory atomically: tmp dir, rename on success."""
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{name}-", dir=cfg.output_dir))
    try:
        yield tmp
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    target = cfg.output_dir / name
    if target.exists():
        shutil.rmtree(target)
    os.replace(tmp, target)


def _write_manifest(directory: Path, manifest: dict) -> None:
    (directory / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _read_manifest(cfg: PipelineConfig, stage: str) -> dict:
    return json.loads((cfg.output_dir / stage / "manifest.json").read_text("utf-8"))


def _require_stage(cfg: PipelineConfig, current: str, needed: str) -> Path:
    path = cfg.output_dir / needed
    if not path.is_dir():
        raise PipelineError(current, f"missing {needed}/ output; run {needed} first")
    return path


def _record_paths(directory: Path) -> list[Path]:
    return sorted(directory.glob("*/*.json"))


@lru_cache(maxsize=64)
def _cached_repo_config(serialized: bytes):
    return load_config(serialized)


@lru_cache(maxsize=8)
def _cached_lexicon(serialized: bytes | None):
    return load_lexicon(serialized) if serialized is not None else builtin_lexicon()


@lru_cache(maxsize=8)
def _cached_backend(spec: str):
    return backend_from_spec(spec)


def _extract_one(task: tuple[str, int, bytes, bytes]) -> tuple[str, int, bytes]:
    repository, html_id, body, config_bytes = task
    from .extractor import RawPage

    record = extract_record(
        RawPage(repository, html_id, body), _cached_repo_config(config_bytes)
    )
    return (repository, html_id, serialize_record(record))


def _classify_one(task: tuple[bytes, bytes | None]) -> tuple[str, int, bytes]:
    record_bytes, lexicon_bytes = task
    record = parse_record(record_bytes)
    classified = classify_record(record, _cached_lexicon(lexicon_bytes))
    return (record.repository, record.html_id, serialize_record(classified))


def _mine_one(task: tuple[bytes, str, int, float]) -> tuple[int, list[str], list[str]]:
    """Mine one record: (document count, pair lines, mono lines)."""
    record_bytes, backend_spec, k, threshold = task
    record = parse_record(record_bytes)
    documents, _ = build_candidate_documents(record)
    pair_lines: list[str] = []
    paired_langs: set[str] = set()
    for document in documents:
        mined = mine_pairs(document, _cached_backend(backend_spec), k=k, threshold=threshold)
        pair_lines.extend(pair_to_json(pair) for pair in mined)
        if mined:
            paired_langs.update((document.source_lang, document.target_lang))
    # Languages that ended up in no mined pair feed the monolingual
    # corpora instead.
    mono_lines = [
        mono_to_json(
            MonolingualSentence(
                text=text,
                lang=lang,
                domain=record.domain,
                record_key=record.record_key,
                origin=origin,
            )
        )
        for lang, segments in record_segments(record).items()
        if lang not in paired_langs
        for text, origin in segments
    ]
    return (len(documents), pair_lines, mono_lines)


def _map_tasks(fn, tasks: list, workers: int) -> list:
    """Order-preserving map, fanned out to worker processes if asked."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=8))


def cmd_extract(cfg: PipelineConfig) -> dict:
    """Extract records from every page under every repository directory."""
    pages = read_pages(cfg.repos_dir)
    if not pages:
        raise PipelineError("extract", f"no pages found under {cfg.repos_dir}")
    tasks = []
    for page in pages:
        config_path = cfg.configs_dir / f"{page.repository}.json"
        if not config_path.is_file():
            raise PipelineError(
                "extract", f"no repository config for {page.repository!r}"
            )
        tasks.append((page.repository, page.html_id, page.body, config_path.read_bytes()))

    results = _map_tasks(_extract_one, tasks, cfg.workers)
    empty_records = 0
    with _stage_dir(cfg, "records") as out:
        for repository, html_id, serialized in results:
            target = out / repository
            target.mkdir(exist_ok=True)
            (target / f"{html_id}.json").write_bytes(serialized)
            loaded = json.loads(serialized)
            if not loaded["titles"] and not loaded["abstracts"]:
                empty_records += 1
        manifest = {
            "stage": "extract",
            "pages": len(pages),
            "records": len(results),
            "repositories": sorted({page.repository for page in pages}),
            "records_without_text": empty_records,
        }
        _write_manifest(out, manifest)
    return manifest


def cmd_classify(cfg: PipelineConfig) -> dict:
    """Attach domain keyword counts and the domain label to every record."""
    records_dir = _require_stage(cfg, "classify", "records")
    lexicon_bytes = cfg.lexicon_path.read_bytes() if cfg.lexicon_path else None
    _cached_lexicon(lexicon_bytes)  # validate before fanning out
    tasks = [(path.read_bytes(), lexicon_bytes) for path in _record_paths(records_dir)]
    results = _map_tasks(_classify_one, tasks, cfg.workers)
    domain_counts: dict[str, int] = {}
    with _stage_dir(cfg, "classified") as out:
        for repository, html_id, serialized in results:
            domain = json.loads(serialized)["domain"]
            domain_counts[domain] = domain_counts.get(domain, 0) + 1
            target = out / repository
            target.mkdir(exist_ok=True)
            (target / f"{html_id}.json").write_bytes(serialized)
        manifest = {
            "stage": "classify",
            "records": len(results),
            "domains": dict(sorted(domain_counts.items())),
        }
        _write_manifest(out, manifest)
    return manifest


def cmd_mine(cfg: PipelineConfig) -> dict:
    """Segment records, pair candidate documents, and mine sentence pairs."""
    classified_dir = _require_stage(cfg, "mine", "classified")
    _cached_backend(cfg.mining.backend)  # validate before fanning out
    tasks = [
        (path.read_bytes(), cfg.mining.backend, cfg.mining.k, cfg.mining.threshold)
        for path in _record_paths(classified_dir)
    ]
    results = _map_tasks(_mine_one, tasks, cfg.workers)
    pair_count = 0
    mono_count = 0
    document_count = 0
    with _stage_dir(cfg, "mined") as out:
        with open(out / "pairs.jsonl", "w", encoding="utf-8") as pair_file, open(
            out / "mono.jsonl", "w", encoding="utf-8"
        ) as mono_file:
            for documents, pair_lines, mono_lines in results:
                document_count += documents
                pair_count += len(pair_lines)
                mono_count += len(mono_lines)
                for line in pair_lines:
                    pair_file.write(line + "\n")
                for line in mono_lines:
                    mono_file.write(line + "\n")
        manifest = {
            "stage": "mine",
            "records": len(results),
            "candidate_documents": document_count,
            "pairs": pair_count,
            "mono_sentences": mono_count,
            "backend": cfg.mining.backend,
            "k": cfg.mining.k,
            "threshold": cfg.mining.threshold,
        }
        _write_manifest(out, manifest)
    return manifest


def cmd_filter(cfg: PipelineConfig) -> dict:
    """Deduplicate and filter mined pairs into the corpus layout."""
    mined_dir = _require_stage(cfg, "filter", "mined")
    model = default_model()
    rule_counts = {rule: 0 for rule in ALL_RULES}
    input_pairs = 0
    accepted = 0
    seen: set[bytes] = set()
    mono_in = 0
    mono_out = 0

    with _stage_dir(cfg, "corpus") as out:
        open_files: dict[Path, object] = {}

        def corpus_file(path: Path):
            if path not in open_files:
                path.parent.mkdir(parents=True, exist_ok=True)
                open_files[path] = open(path, "w", encoding="utf-8")
            return open_files[path]

        try:
            rejections = corpus_file(out / "rejections.jsonl")
            with open(mined_dir / "pairs.jsonl", encoding="utf-8") as pair_file:
                for line in pair_file:
                    pair = pair_from_json(line)
                    input_pairs += 1
                    digest = pair_digest(pair.source_text, pair.target_text)
                    if digest in seen:
                        rule_counts[RULE_DUPLICATE] += 1
                        rejections.write(
                            json.dumps(
                                {"rejected_by": RULE_DUPLICATE, **json.loads(line)},
                                ensure_ascii=False,
                                separators=(",", ":"),
                            )
                            + "\n"
                        )
                        continue
                    seen.add(digest)
                    verdict = apply_filters(pair, model)
                    if verdict.accepted:
                        accepted += 1
                        pair_dir = out / f"{pair.source_lang}-{pair.target_lang}"
                        corpus_file(pair_dir / f"{pair.domain}.jsonl").write(
                            pair_to_json(pair) + "\n"
                        )
                        corpus_file(pair_dir / f"{pair.domain}.tsv").write(
                            pair_to_tsv(pair) + "\n"
                        )
                    else:
                        rule_counts[verdict.rejected_by] += 1
                        rejections.write(
                            json.dumps(
                                {"rejected_by": verdict.rejected_by, **json.loads(line)},
                                ensure_ascii=False,
                                separators=(",", ":"),
                            )
                            + "\n"
                        )

            seen_mono: set[bytes] = set()
            with open(mined_dir / "mono.jsonl", encoding="utf-8") as mono_file:
                for line in mono_file:
                    sentence = mono_from_json(line)
                    mono_in += 1
                    key = pair_digest(sentence.lang, sentence.text)
                    if key in seen_mono:
                        continue
                    if not normalize_whitespace(sentence.text):
                        continue
                    seen_mono.add(key)
                    mono_out += 1
                    corpus_file(
                        out / "mono" / sentence.lang / f"{sentence.domain}.txt"
                    ).write(normalize_whitespace(sentence.text) + "\n")
        finally:
            for handle in open_files.values():
                handle.close()

        manifest = {
            "stage": "filter",
            "input_pairs": input_pairs,
            "accepted_pairs": accepted,
            "rejected": dict(sorted(rule_counts.items())),
            "mono_in": mono_in,
            "mono_out": mono_out,
        }
        _write_manifest(out, manifest)
    return manifest


def cmd_benchmark(cfg: PipelineConfig) -> dict:
    """Build each configured dev/test split from the filtered corpus."""
    corpus_dir = _require_stage(cfg, "benchmark", "corpus")
    if not cfg.benchmarks:
        raise PipelineError("benchmark", "no benchmark specs configured")
    splits_manifest: dict[str, dict] = {}
    with _stage_dir(cfg, "benchmarks") as out:
        for spec in cfg.benchmarks:
            source, target = spec.lang_pair
            pair_path = corpus_dir / f"{source}-{target}" / f"{spec.domain}.jsonl"
            if not pair_path.is_file():
                raise PipelineError(
                    "benchmark",
                    f"no corpus file for {spec.domain} {source}-{target}",
                )
            with open(pair_path, encoding="utf-8") as handle:
                pairs = [pair_from_json(line) for line in handle]
            try:
                split = build_benchmark(pairs, spec)
            except ValueError as exc:
                raise PipelineError("benchmark", str(exc)) from exc
            problems = verify_split(split, spec)
            if problems:
                raise PipelineError(
                    "benchmark",
                    f"{spec.domain} {source}-{target} failed verification: "
                    + "; ".join(problems),
                )
            name = f"{spec.domain}-{source}-{target}"
            write_split(split, out / name)
            splits_manifest[name] = {
                "dev": len(split.dev),
                "test": len(split.test),
                "candidate_pairs": len(pairs),
                "seed": spec.seed,
            }
        manifest = {"stage": "benchmark", "splits": splits_manifest}
        _write_manifest(out, manifest)
    return manifest


def _count_lines(path: Path) -> int:
    with open(path, encoding="utf-8") as handle:
        return sum(1 for _ in handle)


def cmd_stats(cfg: PipelineConfig) -> dict:
    """Tabulate corpus sizes per domain and language pair / language."""
    corpus_dir = _require_stage(cfg, "stats", "corpus")
    parallel: dict[str, dict[str, int]] = {}
    for path in sorted(corpus_dir.glob("*-*/*.jsonl")):
        lang_pair = path.parent.name
        domain = path.stem
        parallel.setdefault(lang_pair, {})[domain] = _count_lines(path)
    mono: dict[str, dict[str, int]] = {}
    for path in sorted(corpus_dir.glob("mono/*/*.txt")):
        lang = path.parent.name
        domain = path.stem
        mono.setdefault(lang, {})[domain] = _count_lines(path)

    stats = {
        "parallel_pairs": parallel,
        "monolingual_sentences": mono,
        "totals": {
            "parallel_pairs": sum(sum(row.values()) for row in parallel.values()),
            "monolingual_sentences": sum(sum(row.values()) for row in mono.values()),
        },
    }
    tables = format_tables(stats)
    with _stage_dir(cfg, "stats") as out:
        (out / "stats.json").write_text(
            json.dumps(stats, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        (out / "tables.txt").write_text(tables, encoding="utf-8")
        _write_manifest(out, {"stage": "stats", **stats["totals"]})
    return stats


_TABLE_DOMAINS = ("cancer", "energy", "transportation", "neuroscience", "general")


def format_tables(stats: dict) -> str:
    """Both corpus-size tables as aligned text, with totals row."""

    def table(title: str, rows: dict[str, dict[str, int]], row_header: str) -> str:
        header = [row_header, *(d.capitalize() for d in _TABLE_DOMAINS), "Total"]
        body = []
        column_totals = dict.fromkeys(_TABLE_DOMAINS, 0)
        for key in sorted(rows):
            counts = rows[key]
            cells = [counts.get(domain, 0) for domain in _TABLE_DOMAINS]
            for domain, value in zip(_TABLE_DOMAINS, cells):
                column_totals[domain] += value
            body.append([key, *map(str, cells), str(sum(cells))])
        total_cells = [column_totals[d] for d in _TABLE_DOMAINS]
        body.append(["Total", *map(str, total_cells), str(sum(total_cells))])
        widths = [
            max(len(row[i]) for row in [header, *body]) for i in range(len(header))
        ]
        lines = [title]
        for row in [header, *body]:
            lines.append(
                "  ".join(cell.rjust(width) for cell, width in zip(row, widths))
            )
        return "\n".join(lines)

    return (
        table("Parallel corpora sizes (sentence pairs)", stats["parallel_pairs"], "Pair")
        + "\n\n"
        + table(
            "Monolingual corpora sizes (sentences)",
            stats["monolingual_sentences"],
            "Language",
        )
        + "\n"
    )


_STAGES = {
    "extract": cmd_extract,
    "classify": cmd_classify,
    "mine": cmd_mine,
    "filter": cmd_filter,
    "benchmark": cmd_benchmark,
    "stats": cmd_stats,
}


def run_stages(cfg: PipelineConfig, stages: list[str]) -> dict[str, dict]:
    results = {}
    for stage in stages:
        results[stage] = _STAGES[stage](cfg)
    return results


def run_all(cfg: PipelineConfig) -> dict[str, dict]:
    """The full extract→classify→mine→filter→benchmark→stats run."""
    return run_stages(cfg, list(_STAGES))
