"""Pure numpy implementations of the transform hot kernels.

Same API as the compiled module `_speedups`; selected by `_accel` when the
extension is unavailable or RANKMRA_PURE_PYTHON is set.
"""

from __future__ import annotations

import numpy as np

from . import _perm


def rank_rows(words: np.ndarray) -> np.ndarray:
    """Lexicographic ranks of permutation-like rows (comparison based)."""
    return _perm.rank_words(words)


def scatter_rowwise(
    out: np.ndarray,
    row: np.ndarray,
    pinv: np.ndarray,
    pwords: np.ndarray,
    src_ranks: np.ndarray,
    src_vals: np.ndarray,
) -> None:
    """Accumulate alpha-filter columns for each nonzero source coefficient.

    For source word v of rank r with value val, adds val * row[rank(p_t^-1 o v)]
    to out[t] for every output rank t.
    """
    for r, val in zip(src_ranks, src_vals):
        composed = pinv[:, pwords[r]]
        out += val * row[_perm.rank_words(composed)]


def window_accumulate(
    out: np.ndarray,
    pwords: np.ndarray,
    i: int,
    j: int,
    slot_by_mask: np.ndarray,
    vals: np.ndarray,
    weight: float,
) -> None:
    """Add the contribution of the contiguous window [i, j] to every word.

    `vals` stacks one dense block per subset of the window's size; the subset
    reached by each word is looked up through its bitmask over word positions.
    """
    seg = pwords[:, i : j + 1]
    masks = (np.int64(1) << seg).sum(axis=1)
    slots = slot_by_mask[masks]
    ranks = _perm.rank_words(seg)
    out += weight * vals[slots, ranks]
