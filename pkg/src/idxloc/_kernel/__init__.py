"""Search-kernel backend selection.

Imports the compiled extension when available, falling back to the pure
Python implementation otherwise.  Set IDXLOC_KERNEL=py to force the pure
backend, IDXLOC_KERNEL=c to require the compiled one.
"""

from __future__ import annotations

import os

_choice = os.environ.get("IDXLOC_KERNEL", "").strip().lower()

if _choice in ("py", "python"):
    from . import _pycore as _impl
elif _choice in ("c", "compiled"):
    from . import _fastcore as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _fastcore as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pycore as _impl

backend = _impl.BACKEND
rank_fq = _impl.rank_fq
min_query_sets = _impl.min_query_sets
minrank_dfs = _impl.minrank_dfs

__all__ = ["backend", "rank_fq", "min_query_sets", "minrank_dfs"]
