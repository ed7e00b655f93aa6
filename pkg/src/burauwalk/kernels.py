"""Select the walk kernel at import time.

The compiled ``_walk`` extension is used when it was built; otherwise, or
when ``BURAUWALK_PURE_PYTHON=1`` is set, the pure-Python ``_walk_py``
kernel runs instead.  Both return identical counts for identical input.
"""

import os

from ._walk_py import walk_counts as walk_counts_python

try:
    from ._walk import walk_counts as walk_counts_compiled
except ImportError:  # extension not built
    walk_counts_compiled = None

if walk_counts_compiled is not None and os.environ.get("BURAUWALK_PURE_PYTHON") != "1":
    walk_counts = walk_counts_compiled
    BACKEND = "cython"
else:
    walk_counts = walk_counts_python
    BACKEND = "python"

__all__ = ["walk_counts", "walk_counts_python", "walk_counts_compiled", "BACKEND"]
