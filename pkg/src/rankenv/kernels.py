"""Backend selection for the ranking kernels.

The compiled extension is used when importable; set ``RANKENV_DISABLE_EXT=1``
to force the NumPy fallback (useful for benchmarking and cross-checking).
"""

import os

from . import _ranks_np

_impl = _ranks_np
if not os.environ.get("RANKENV_DISABLE_EXT"):
    try:
        from . import _ranks_ext as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

two_sided_ranks = _impl.two_sided_ranks
cont_ranks = _impl.cont_ranks

BACKEND = "numpy" if _impl is _ranks_np else "compiled"
