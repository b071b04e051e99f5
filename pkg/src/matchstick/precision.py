"""Global decimal-precision context shared by every module.

All coordinates are mpmath floats evaluated under a single process-wide
precision of ``p`` significant decimal digits.  Tolerances of the form
``10**(k - p)`` tighten automatically when the precision is raised, which is
what keeps exact incidences (distance 0), genuine micro-gaps (~6e-5) and
arithmetic noise separated by many orders of magnitude.
"""

from __future__ import annotations

import os

from mpmath import mp, mpf

ENV_PRECISION = "MSF_PRECISION"

MIN_DIGITS = 30
DEFAULT_DIGITS = 60


def set_precision(digits: int) -> None:
    """Set the global working precision in significant decimal digits."""
    digits = int(digits)
    if digits < MIN_DIGITS:
        raise ValueError(f"precision must be >= {MIN_DIGITS} digits, got {digits}")
    mp.dps = digits


def get_precision() -> int:
    """Current working precision in significant decimal digits."""
    return mp.dps


def tol(offset: int) -> mpf:
    """Tolerance ``10**(offset - p)`` at the current precision ``p``."""
    return mpf(10) ** (offset - mp.dps)


def scalar(value) -> mpf:
    """Parse a value (preferably a decimal string) at the current precision."""
    return mpf(value)


def scalar_to_str(x: mpf) -> str:
    """Shortest decimal string that reparses to exactly ``x``.

    Fixture coordinates (20 decimal places) come back verbatim; freshly
    computed values need up to ``p + 2`` digits.
    """
    from mpmath import nstr

    if x == 0:
        return "0.0"

    def ok(d: int) -> str | None:
        s = nstr(x, d)
        return s if mpf(s) == x else None

    hi = mp.dps + 3
    s = ok(hi)
    if s is None:
        # Value carries more bits than p digits can express (should not
        # happen for values produced at the current precision); widen.
        d = hi
        while s is None:
            d += 4
            s = ok(d)
        return s
    # Binary search for the smallest digit count that still round-trips.
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        cand = ok(mid)
        if cand is not None:
            s, hi = cand, mid
        else:
            lo = mid + 1
    return s


def _init_from_env() -> None:
    raw = os.environ.get(ENV_PRECISION)
    if raw:
        set_precision(int(raw))
    else:
        set_precision(DEFAULT_DIGITS)


_init_from_env()
