"""Backend selection for the carry-counting kernels.

The compiled extension ``polytors._kernels`` is used when it imports and the
arguments fit in 64 bits; otherwise the pure-Python implementation runs.
Set ``POLYTORS_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

_WORD_LIMIT = 2**63

if os.environ.get("POLYTORS_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def carry_count(N: int, n: int, p: int) -> int:
    if _compiled is not None and N < _WORD_LIMIT and p < _WORD_LIMIT:
        return _compiled.carry_count(N, n, p)
    return _kernels_py.carry_count(N, n, p)


def min_carry_scan(N: int, S: int, p: int, step: int) -> tuple[int | None, list[int]]:
    if S < step:
        return None, []
    if _compiled is not None and N < _WORD_LIMIT and S < _WORD_LIMIT and p < _WORD_LIMIT:
        return _compiled.min_carry_scan(N, S, p, step)
    return _kernels_py.min_carry_scan(N, S, p, step)
