"""Sentence embedding backends for bitext mining.

The miner only assumes an :class:`EmbeddingBackend`: a named,
deterministic mapping from text to unit-norm vectors of a fixed
dimension. Two implementations ship here:

* :class:`HashEmbeddingBackend` — self-contained and bit-reproducible:
  character n-gram (n = 1..4) feature hashing into 256 buckets with the
  FNV-1a 64-bit hash, then L2 normalization.
* :class:`ExternalVectorBackend` — precomputed sentence vectors (e.g.,
  from a neural encoder run offline) loaded from a binary file keyed by
  the FNV-1a 64-bit hash of each sentence's UTF-8 text.

Vector file layout (little-endian): magic ``SMVEC1``, u32 dimension,
u64 count, then ``count`` entries of (u64 sentence-hash, dimension x
float32).
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from . import kernels

VECTOR_FILE_MAGIC = b"SMVEC1"


class EmbeddingError(RuntimeError):
    """Backend failure; ``index`` locates the offending text in the batch."""

    def __init__(self, message: str, index: int = -1):
        super().__init__(message)
        self.index = index


class EmbeddingBackend:
    """Interface: deterministic text -> unit-norm float64 vector."""

    name: str
    dimension: int

    def embed(self, text: str) -> np.ndarray:
        raise NotImplementedError


class HashEmbeddingBackend(EmbeddingBackend):
    """Deterministic built-in backend (no model, no files).

    The zero vector (empty text) maps to the first basis vector so the
    unit-norm contract holds for every input.
    """

    def __init__(self, dimension: int = 256, max_ngram: int = 4):
        if dimension <= 0 or max_ngram <= 0:
            raise ValueError("dimension and max_ngram must be positive")
        self.name = "hash"
        self.dimension = dimension
        self.max_ngram = max_ngram

    def embed(self, text: str) -> np.ndarray:
        counts = kernels.ngram_hash_counts(text, self.dimension, self.max_ngram)
        norm = np.sqrt(np.dot(counts, counts))
        if norm == 0.0:
            counts[0] = 1.0
            return counts
        return counts / norm


class ExternalVectorBackend(EmbeddingBackend):
    """Precomputed vectors from a binary file; loads fully into memory.

    Vectors are L2-normalized on load. Lookups are by sentence hash, so
    the file must cover every text the miner will see; a miss is an
    :class:`EmbeddingError` naming the text index.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.name = f"external:{self.path}"
        self.vectors: dict[int, np.ndarray] = {}
        with open(self.path, "rb") as handle:
            magic = handle.read(len(VECTOR_FILE_MAGIC))
            if magic != VECTOR_FILE_MAGIC:
                raise EmbeddingError(f"{self.path}: not a vector file")
            (dimension,) = struct.unpack("<I", handle.read(4))
            (count,) = struct.unpack("<Q", handle.read(8))
            self.dimension = int(dimension)
            entry = struct.Struct(f"<Q{self.dimension}f")
            for _ in range(count):
                chunk = handle.read(entry.size)
                if len(chunk) != entry.size:
                    raise EmbeddingError(f"{self.path}: truncated vector file")
                values = entry.unpack(chunk)
                vector = np.asarray(values[1:], dtype=np.float64)
                norm = np.sqrt(np.dot(vector, vector))
                if norm == 0.0:
                    raise EmbeddingError(
                        f"{self.path}: zero vector for key {values[0]}"
                    )
                self.vectors[values[0]] = vector / norm

    def embed(self, text: str) -> np.ndarray:
        key = kernels.fnv1a_64(text.encode("utf-8"))
        try:
            return self.vectors[key]
        except KeyError:
            raise EmbeddingError(f"no vector for text {text!r}") from None


def write_vector_file(path: str | Path, dimension: int, entries) -> None:
    """Write a vector file from an iterable of (text, vector) pairs."""
    entries = list(entries)
    with open(path, "wb") as handle:
        handle.write(VECTOR_FILE_MAGIC)
        handle.write(struct.pack("<I", dimension))
        handle.write(struct.pack("<Q", len(entries)))
        packer = struct.Struct(f"<Q{dimension}f")
        for text, vector in entries:
            vector = np.asarray(vector, dtype=np.float32)
            if vector.shape != (dimension,):
                raise ValueError(f"vector for {text!r} is not {dimension}-dimensional")
            key = kernels.fnv1a_64(text.encode("utf-8"))
            handle.write(packer.pack(key, *vector.tolist()))


def embed_batch(texts: list[str], backend: EmbeddingBackend) -> np.ndarray:
    """Embed a batch; returns an (n, dimension) float64 array, rows unit-norm.

    Backend failures surface as :class:`EmbeddingError` carrying the
    index of the text that failed.
    """
    out = np.empty((len(texts), backend.dimension), dtype=np.float64)
    for i, text in enumerate(texts):
        try:
            vector = backend.embed(text)
        except EmbeddingError as exc:
            raise EmbeddingError(f"text {i}: {exc}", index=i) from exc
        if vector.shape != (backend.dimension,):
            raise EmbeddingError(
                f"text {i}: backend returned shape {vector.shape}", index=i
            )
        out[i] = vector
    return out


def backend_from_spec(spec: str) -> EmbeddingBackend:
    """CLI backend selector: ``hash`` or ``external:<path>``."""
    if spec == "hash":
        return HashEmbeddingBackend()
    if spec.startswith("external:"):
        return ExternalVectorBackend(spec.split(":", 1)[1])
    raise ValueError(f"unknown embedding backend '{spec}'")
