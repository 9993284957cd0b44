"""Hot numeric kernels with a compiled fast path.

The Cython extension ``_native`` is selected at import time when it was
built; otherwise the pure-Python ``_pyfallback`` module is used. Set
``BIRADSCHECK_PURE=1`` to force the fallback (the benchmark and parity
tests rely on this).
"""

from __future__ import annotations

import os

from . import _pyfallback

if os.environ.get("BIRADSCHECK_PURE"):
    _impl = _pyfallback
    HAVE_NATIVE = False
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        HAVE_NATIVE = True
    except ImportError:
        _impl = _pyfallback
        HAVE_NATIVE = False

IMPLEMENTATION = "native" if HAVE_NATIVE else "pure"

levenshtein = _impl.levenshtein
solve_assignment = _impl.solve_assignment

__all__ = ["levenshtein", "solve_assignment", "HAVE_NATIVE", "IMPLEMENTATION"]
