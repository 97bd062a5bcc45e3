"""Pure-Python implementations of the hot kernels.

These are the reference semantics for the compiled extension in
``_chargrams.pyx``; both produce bit-identical results. The pure
versions are selected automatically when the extension is not built
(or when ``SCICORPUS_PURE_KERNELS`` is set).
"""

from __future__ import annotations

import numpy as np

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1


def fnv1a_64(data: bytes) -> int:
    """FNV-1a 64-bit hash of a byte string."""
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK
    return h


def ngram_hash_counts(text: str, dim: int, max_n: int) -> np.ndarray:
    """Character n-gram occurrence counts hashed into ``dim`` buckets.

    N-grams run over Unicode code points for n = 1..max_n; each n-gram
    is keyed by the FNV-1a 64-bit hash of its UTF-8 bytes, bucketed by
    modulo. Counts are returned as float64 ready for normalization.
    """
    counts = np.zeros(dim, dtype=np.float64)
    length = len(text)
    for i in range(length):
        limit = min(max_n, length - i)
        for n in range(1, limit + 1):
            h = fnv1a_64(text[i : i + n].encode("utf-8"))
            counts[h % dim] += 1.0
    return counts
