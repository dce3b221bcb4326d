"""Regularization of wavelet features across same-size subsets.

Blocks of equal size live on different subsets; transporting a block from B
to B' averages over all item bijections B -> B' that fix the intersection
pointwise, which is well defined because relabeling acts on rankings. The
kernel smoother replaces each block by a distance-weighted average of the
transported blocks of its neighbors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from . import _perm
from .errors import DomainError
from .transform import WaveletCoefficients, feature_marginal
from .words import EMPTY_SET, Subset


def subset_distance(b: Subset, b_prime: Subset) -> int:
    """Number of items of b not shared with b_prime (same sizes only)."""
    if len(b) != len(b_prime):
        raise DomainError(f"subsets {b} and {b_prime} differ in size")
    return len(set(b).difference(b_prime))


def transport(vec: np.ndarray, b: Subset, b_prime: Subset) -> np.ndarray:
    """Carry a block over b to b_prime, averaging over the item bijections
    that fix the shared items pointwise."""
    b = tuple(sorted(b))
    b_prime = tuple(sorted(b_prime))
    k = len(b)
    if subset_distance(b, b_prime) == 0:
        return np.asarray(vec, dtype=float).copy()
    vec = np.asarray(vec, dtype=float)
    movers_src = sorted(set(b).difference(b_prime))
    movers_dst = sorted(set(b_prime).difference(b))
    out = np.zeros(math.factorial(k))
    pwords = _perm.perms(k)
    n_maps = math.factorial(len(movers_src))
    for image in permutations(movers_dst):
        item_map = {item: item for item in set(b) & set(b_prime)}
        item_map.update(zip(movers_src, image))
        # index-level lookup: position of the mapped item inside b_prime
        idx_map = np.array(
            [b_prime.index(item_map[item]) for item in b], dtype=np.int64
        )
        ranks = _perm.rank_words(np.ascontiguousarray(idx_map[pwords]))
        np.add.at(out, ranks, vec / n_maps)
    return out


def kernel_weights(k: int, n: int, h: int) -> list[tuple[int, Fraction]]:
    """Exact weights q(j) for distances j = 0..h_eff, h_eff = min(h, k, n-k).

    Each distance class at size k in an n-item universe has C(k, j) * C(n-k, j)
    members, so the weights sum to one exactly.
    """
    if h < 0:
        raise DomainError("negative bandwidth")
    if not 0 <= k <= n:
        raise DomainError(f"size {k} outside universe of {n}")
    h_eff = min(h, k, n - k)
    return [
        (j, Fraction(1, (h_eff + 1) * math.comb(k, j) * math.comb(n - k, j)))
        for j in range(h_eff + 1)
    ]


def kernel_smooth(
    x: WaveletCoefficients, h: int, universe: Subset
) -> WaveletCoefficients:
    """Distance-kernel smoothing of every block scale across the universe.

    Each size-k target subset gathers the transported blocks of all subsets
    within bandwidth; the scalar block passes through unchanged. Exactly-zero
    results are dropped.
    """
    items = tuple(sorted(universe))
    members = set(items)
    n = len(items)
    scales = sorted({len(b) for b, _ in x.blocks() if len(b) >= 2})
    for b, _ in x.blocks():
        if b and not members.issuperset(b):
            raise DomainError(f"block {b} outside universe {items}")
    out = WaveletCoefficients()
    if EMPTY_SET in x:
        out.set_block(EMPTY_SET, x.block_or_zeros(EMPTY_SET).copy())
    for k in scales:
        weights = {j: float(q) for j, q in kernel_weights(k, n, h)}
        sources = [
            (b, x.block(b)) for b in combinations(items, k) if x.block(b) is not None
        ]
        for target in combinations(items, k):
            acc = np.zeros(math.factorial(k))
            touched = False
            for b, vec in sources:
                q = weights.get(subset_distance(b, target))
                if q is None:
                    continue
                acc += q * transport(vec, b, target)
                touched = True
            if touched:
                out.set_block(target, acc)
    return out.drop_zero_blocks()


def local_regularize(
    x: WaveletCoefficients, a: Subset, h: int
) -> WaveletCoefficients:
    """Smooth only the blocks inside a, over the universe a itself."""
    return kernel_smooth(feature_marginal(x, a), h, a)
