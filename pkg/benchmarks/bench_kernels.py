"""Throughput comparison of the compiled and pure-Python hot kernels.

Runs ``ngram_hash_counts`` and ``fnv1a_64`` over the same synthetic
sentence corpus with both implementations, verifies they agree
bit-for-bit, and reports wall-clock throughput and speedup.

Usage:
    python benchmarks/bench_kernels.py [--sentences N] [--dim D]
                                       [--max-n N] [--repeats R]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

import numpy as np

from scicorpus.kernels import pure

try:
    from scicorpus.kernels import _chargrams as compiled
except ImportError:
    compiled = None

WORDS = (
    "energy solar wind measurement corpus sentence margin baseline "
    "neuron tumor transport railway grid producao medida regional "
    "estudo resultados analyse donnees reseau modele ensayo celula"
).split()


def make_corpus(n_sentences: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    return [
        " ".join(rng.choice(WORDS) for _ in range(rng.randint(6, 24)))
        for _ in range(n_sentences)
    ]


def time_counts(module, corpus: list[str], dim: int, max_n: int, repeats: int):
    """Best-of-N wall time for hashing the whole corpus into count vectors."""
    timings = []
    for _ in range(repeats):
        started = time.perf_counter()
        for text in corpus:
            module.ngram_hash_counts(text, dim, max_n)
        timings.append(time.perf_counter() - started)
    return min(timings)


def time_hash(module, payloads: list[bytes], repeats: int):
    timings = []
    for _ in range(repeats):
        started = time.perf_counter()
        for payload in payloads:
            module.fnv1a_64(payload)
        timings.append(time.perf_counter() - started)
    return min(timings)


def verify_agreement(corpus: list[str], dim: int, max_n: int) -> None:
    for text in corpus[:200]:
        want = pure.ngram_hash_counts(text, dim, max_n)
        got = compiled.ngram_hash_counts(text, dim, max_n)
        if not np.array_equal(want, got):
            raise SystemExit(f"implementations disagree on {text!r}")
        payload = text.encode("utf-8")
        if pure.fnv1a_64(payload) != compiled.fnv1a_64(payload):
            raise SystemExit(f"hash mismatch on {payload!r}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sentences", type=int, default=2000)
    parser.add_argument("--dim", type=int, default=256)
    parser.add_argument("--max-n", type=int, default=3)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    corpus = make_corpus(args.sentences, args.seed)
    payloads = [text.encode("utf-8") for text in corpus]
    total_chars = sum(len(text) for text in corpus)
    mean_len = statistics.mean(len(text) for text in corpus)
    print(
        f"corpus: {len(corpus)} sentences, {total_chars} chars "
        f"(mean {mean_len:.1f}), dim={args.dim}, max_n={args.max_n}"
    )

    if compiled is None:
        print("compiled extension not built; timing pure Python only")
    else:
        verify_agreement(corpus, args.dim, args.max_n)
        print("agreement: compiled and pure outputs are bit-identical")

    rows = [("python", pure)]
    if compiled is not None:
        rows.append(("cython", compiled))

    results = {}
    for name, module in rows:
        counts_s = time_counts(module, corpus, args.dim, args.max_n, args.repeats)
        hash_s = time_hash(module, payloads, args.repeats)
        results[name] = (counts_s, hash_s)
        print(
            f"{name:>7}: ngram_hash_counts {len(corpus) / counts_s:>10.0f} sent/s"
            f" ({counts_s * 1e3:7.1f} ms)   "
            f"fnv1a_64 {total_chars / hash_s / 1e6:>7.1f} MB/s"
        )

    if len(results) == 2:
        counts_x = results["python"][0] / results["cython"][0]
        hash_x = results["python"][1] / results["cython"][1]
        print(f"speedup: ngram_hash_counts {counts_x:.1f}x, fnv1a_64 {hash_x:.1f}x")


if __name__ == "__main__":
    main()
