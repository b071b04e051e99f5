"""Float64 scan kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen once at import time: set ``MSF_BACKEND=numpy`` to force
the fallback, ``MSF_BACKEND=numba`` to require the compiled path.  By default
numba is used when importable.  Both backends return identical arrays; all
reported quantities are re-confirmed at full precision upstream, so the
backend never affects results, only speed.
"""

from __future__ import annotations

import os

ENV_BACKEND = "MSF_BACKEND"

_requested = os.environ.get(ENV_BACKEND, "").strip().lower()

if _requested == "numpy":
    from . import reference as _impl

    BACKEND = "numpy"
elif _requested == "numba":
    from . import accel as _impl

    BACKEND = "numba"
elif _requested == "":
    try:
        from . import accel as _impl

        BACKEND = "numba"
    except ImportError:
        from . import reference as _impl

        BACKEND = "numpy"
else:
    raise ValueError(f"unknown {ENV_BACKEND}={_requested!r} (expected numba or numpy)")

near_vertex_pairs = _impl.near_vertex_pairs
near_vertex_edge_pairs = _impl.near_vertex_edge_pairs
edge_pair_candidates = _impl.edge_pair_candidates
triangle_cycles = _impl.triangle_cycles


def get_backend() -> str:
    return BACKEND
