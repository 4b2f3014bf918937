"""Kernel backend dispatch.

Hot combinatorial kernels (cut induced-matching size, whole-cut tables,
exhaustive decomposition search) run as numba-compiled int64 code when the
host graph fits in 62 bits, with a pure-Python big-int fallback for larger
graphs and for environments without numba.

Set WIDTHLAB_BACKEND=python to force the fallback everywhere; the default
is numba when it imports. `benchmarks/bench_kernels.py` compares the two.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import pykernels

BIG = pykernels.BIG

_requested = os.environ.get("WIDTHLAB_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "python"):
    raise RuntimeError(f"WIDTHLAB_BACKEND must be 'numba' or 'python', got {_requested!r}")

nbkernels = None
if _requested == "numba":
    try:
        import importlib

        nbkernels = importlib.import_module(".nbkernels", __name__)
    except ImportError:
        nbkernels = None

BACKEND = "numba" if nbkernels is not None else "python"


def _as_array(masks: Sequence[int], mask_array) -> np.ndarray:
    if mask_array is not None:
        return mask_array
    return np.array(masks, dtype=np.int64)


def cut_matching(masks: Sequence[int], a_mask: int, b_mask: int, in_graph: bool,
                 cap: int = BIG, n: int | None = None, mask_array=None) -> int:
    """Maximum induced matching between the two sides, capped at `cap`."""
    if n is None:
        n = len(masks)
    if nbkernels is not None and n <= 62:
        r = nbkernels.cut_matching(_as_array(masks, mask_array), np.int64(a_mask),
                                   np.int64(b_mask), in_graph, min(cap, BIG))
        if r >= 0:
            return int(r)
    return pykernels.cut_matching(masks, a_mask, b_mask, in_graph, cap)


def cut_table(masks: Sequence[int], n: int, in_graph: bool, mask_array=None):
    """Cut value for every bipartition mask; indexable of length 2^n."""
    if nbkernels is not None and n <= 14:
        return nbkernels.cut_table(_as_array(masks, mask_array), n, in_graph)
    return pykernels.cut_table(masks, n, in_graph)


def width_search(table, n: int, lower_bound: int) -> tuple[int, list[int]]:
    """Exact width over all branch decompositions plus the witness choices."""
    if n == 2:
        return int(table[2]), []
    if nbkernels is not None and n <= 14:
        arr = table if isinstance(table, np.ndarray) else np.array(table, dtype=np.int64)
        best, choices = nbkernels.width_search(arr, n, lower_bound)
        return int(best), [int(c) for c in choices]
    return pykernels.width_search(table, n, lower_bound)
