"""Hot-kernel selection: compiled extension when available, else pure Python.

Set ``SCICORPUS_PURE_KERNELS=1`` to force the pure implementation (used
by the kernel benchmark and by tests that compare both).
"""

import os

if os.environ.get("SCICORPUS_PURE_KERNELS"):
    from .pure import fnv1a_64, ngram_hash_counts

    IMPLEMENTATION = "python"
else:
    try:
        from ._chargrams import fnv1a_64, ngram_hash_counts

        IMPLEMENTATION = "cython"
    except ImportError:
        from .pure import fnv1a_64, ngram_hash_counts

        IMPLEMENTATION = "python"

__all__ = ["fnv1a_64", "ngram_hash_counts", "IMPLEMENTATION"]
