"""Backend dispatch for the hot numeric kernels.

Set ``BALLSLEP_NO_NUMBA=1`` to force the pure-numpy fallback; otherwise the
numba implementation is used when numba imports cleanly.  Both backends share
the same function signatures, see ``benchmarks/bench_accel.py`` for a timing
comparison.
"""

import os

_disabled = os.environ.get("BALLSLEP_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

if not _disabled:
    try:
        from ._impl_numba import assoc_legendre_table, gram_combine, jacobi_table

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _disabled = True

if _disabled:
    from ._impl_numpy import assoc_legendre_table, gram_combine, jacobi_table

    BACKEND = "numpy"

__all__ = ["BACKEND", "jacobi_table", "assoc_legendre_table", "gram_combine"]
