"""Wavelet analysis and synthesis for incomplete rankings.

The transform decomposes a function on the rankings of a subset A into one
block per subset B of A (sizes >= 2, plus a scalar) such that each block
carries exactly the information specific to the marginal on B. Analysis runs
as a filter-bank cascade (high-pass blocks via alpha coefficients, low-pass
marginalization to the next scale); synthesis evaluates each output word from
its contiguous-window blocks.

Alpha coefficients are exact rationals; only the canonical row per size is
stored, everything else is recovered through relabeling invariance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import _perm
from ._accel import kernels
from .errors import DomainError, ResourceLimitError
from .functions import RankingFunction
from .words import EMPTY_SET, EMPTY_WORD, Subset, Word, content, enumerate_rankings

K_MAX_DEFAULT = 8
K_MAX_CAP = 10

# Largest scale for which the dense (j!, j!) filter gather table is built;
# beyond it the compiled/vectorized row-wise kernel recomputes indices.
_GATHER_MAX = 6


@dataclass
class OpCounter:
    """Exact multiply-add counts of a transform run."""

    highpass_mults: int = 0
    lowpass_adds: int = 0

    @property
    def total(self) -> int:
        return self.highpass_mults + self.lowpass_adds


@dataclass(frozen=True)
class AlphaTable:
    """Canonical top-block filter rows in exact rational arithmetic.

    For each size k in {2..k_max}, `rows_exact[k][r]` is the coefficient
    alpha(identity word, word of rank r); all other entries follow from
    relabeling. `construction_ops` is the term-evaluation count of the build.
    """

    k_max: int
    rows_exact: dict[int, tuple[Fraction, ...]] = field(repr=False)
    rows_float: dict[int, np.ndarray] = field(repr=False)
    construction_ops: int = 0


def build_alpha_table(k_max: int = K_MAX_DEFAULT) -> AlphaTable:
    """Build canonical alpha rows for sizes 2..k_max by recursion on windows.

    Each entry is the identity indicator minus 1/k! minus the weighted window
    terms; windows of the identity word are sorted runs, so only smaller
    canonical rows are consulted.
    """
    if not 2 <= k_max <= K_MAX_CAP:
        raise ResourceLimitError(f"table size {k_max} outside [2, {K_MAX_CAP}]")
    rows_exact: dict[int, tuple[Fraction, ...]] = {}
    ops = 0
    for k in range(2, k_max + 1):
        identity = tuple(range(1, k + 1))
        windows = [
            (i, i + length - 1)
            for length in range(2, k)
            for i in range(k - length + 1)
        ]
        uniform = Fraction(1, math.factorial(k))
        row = []
        for word in permutations(identity):
            value = Fraction(int(word == identity)) - uniform
            for i, j in windows:
                length = j - i + 1
                lo, hi = i + 1, j + 1
                sub = tuple(x - lo for x in word if lo <= x <= hi)
                weight = Fraction(1, math.factorial(k - length + 1))
                value -= weight * rows_exact[length][_perm.rank_word(sub)]
            row.append(value)
            ops += len(windows) + 1
        rows_exact[k] = tuple(row)
    rows_float = {
        k: np.array([float(x) for x in row]) for k, row in rows_exact.items()
    }
    return AlphaTable(k_max, rows_exact, rows_float, ops)


@cache
def default_table(k_max: int = K_MAX_DEFAULT) -> AlphaTable:
    """Shared alpha table, built once per size."""
    return build_alpha_table(k_max)


def alpha(b: Subset, pi: Word, pi_prime: Word, table: AlphaTable) -> Fraction:
    """Exact coefficient alpha_B(pi, pi') via relabeling to the canonical row."""
    if content(pi) != b or content(pi_prime) != b:
        raise DomainError(f"words {pi}, {pi_prime} must both rank subset {b}")
    k = len(b)
    if k == 0:
        return Fraction(1)
    if k == 1:
        raise DomainError("size-1 subsets carry no ranking")
    if k > table.k_max:
        raise ResourceLimitError(f"alpha table holds sizes up to {table.k_max}")
    u = _perm.index_word(pi, b)
    v = _perm.index_word(pi_prime, b)
    u_inv = [0] * k
    for pos, idx in enumerate(u):
        u_inv[idx] = pos
    composed = tuple(u_inv[idx] for idx in v)
    return table.rows_exact[k][_perm.rank_word(composed)]


def alpha_matrix(k: int, table: AlphaTable) -> list[list[Fraction]]:
    """Full k! x k! exact matrix over the canonical subset {1..k}, lex order."""
    subset_k = tuple(range(1, k + 1))
    words = enumerate_rankings(subset_k)
    return [[alpha(subset_k, pi, pp, table) for pp in words] for pi in words]


class WaveletCoefficients:
    """Feature-space element: dense per-subset blocks.

    Each block is a float vector over the rankings of its subset in
    lexicographic order; the empty-set block has length 1. Blocks absent from
    the mapping are zero.
    """

    __slots__ = ("_blocks",)

    def __init__(self, blocks: Mapping[Subset, np.ndarray] | None = None):
        self._blocks: dict[Subset, np.ndarray] = {}
        if blocks:
            for b, vec in blocks.items():
                self.set_block(b, vec)

    def set_block(self, b: Subset, vec: np.ndarray | Iterable[float]) -> None:
        arr = np.asarray(vec, dtype=float)
        expected = 1 if len(b) == 0 else math.factorial(len(b))
        if len(b) == 1 or arr.shape != (expected,):
            raise DomainError(f"block {b} needs shape ({expected},), got {arr.shape}")
        self._blocks[b] = arr

    def block(self, b: Subset) -> np.ndarray | None:
        return self._blocks.get(b)

    def block_or_zeros(self, b: Subset) -> np.ndarray:
        vec = self._blocks.get(b)
        if vec is None:
            return np.zeros(1 if len(b) == 0 else math.factorial(len(b)))
        return vec

    @property
    def scalar(self) -> float:
        vec = self._blocks.get(EMPTY_SET)
        return float(vec[0]) if vec is not None else 0.0

    def subsets(self) -> list[Subset]:
        return sorted(self._blocks, key=lambda b: (len(b), b))

    def blocks(self) -> Iterator[tuple[Subset, np.ndarray]]:
        for b in self.subsets():
            yield b, self._blocks[b]

    def __len__(self) -> int:
        return len(self._blocks)

    def __contains__(self, b: Subset) -> bool:
        return b in self._blocks

    def copy(self) -> "WaveletCoefficients":
        out = WaveletCoefficients()
        for b, vec in self._blocks.items():
            out._blocks[b] = vec.copy()
        return out

    def add_scaled(self, other: "WaveletCoefficients", factor: float) -> None:
        for b, vec in other._blocks.items():
            mine = self._blocks.get(b)
            if mine is None:
                self._blocks[b] = factor * vec
            else:
                mine += factor * vec

    def scaled(self, factor: float) -> "WaveletCoefficients":
        out = self.copy()
        for vec in out._blocks.values():
            vec *= factor
        return out

    def drop_zero_blocks(self) -> "WaveletCoefficients":
        """Remove blocks that are exactly zero (bitwise)."""
        for b in [b for b, vec in self._blocks.items() if not vec.any()]:
            del self._blocks[b]
        return self

    def max_abs_diff(self, other: "WaveletCoefficients") -> float:
        worst = 0.0
        for b in set(self._blocks) | set(other._blocks):
            diff = np.abs(self.block_or_zeros(b) - other.block_or_zeros(b)).max()
            worst = max(worst, float(diff))
        return worst

    def block_function(self, b: Subset) -> RankingFunction:
        """The block of b as a sparse function on the rankings of b."""
        return block_to_function(self.block_or_zeros(b), b)


def function_to_block(f: RankingFunction, a: Subset) -> np.ndarray:
    """Dense lex-ordered vector of a function supported on the rankings of a."""
    k = len(a)
    vec = np.zeros(1 if k == 0 else math.factorial(k))
    for word, value in f.items():
        if content(word) != a:
            raise DomainError(f"word {word} is not a ranking of {a}")
        idx = 0 if k == 0 else _perm.rank_word(_perm.index_word(word, a))
        vec[idx] = value
    return vec


def block_to_function(vec: np.ndarray, a: Subset) -> RankingFunction:
    if len(a) == 0:
        return RankingFunction({EMPTY_WORD: float(vec[0])})
    words = enumerate_rankings(a)
    return RankingFunction({w: float(v) for w, v in zip(words, vec)})


@cache
def _gather_table(j: int) -> np.ndarray:
    """Table G with G[r, t] = rank(p_t^-1 o p_r), shape (j!, j!)."""
    table = _perm.compose_rank_table(j)[_perm.inverse_ranks(j)]
    return np.ascontiguousarray(table.T)


def _scale_subsets(a: Subset, j: int) -> list[Subset]:
    return list(combinations(sorted(a), j))


def high_pass(
    f_scale: Mapping[Subset, np.ndarray],
    a: Subset,
    j: int,
    table: AlphaTable,
    counter: OpCounter | None = None,
) -> dict[Subset, np.ndarray]:
    """Scale-j wavelet blocks from the scale-j approximation blocks.

    Applies the alpha filter of each block's subset; missing input blocks are
    treated as zero.
    """
    if not 2 <= j <= len(a):
        raise DomainError(f"scale {j} outside [2, {len(a)}]")
    if j > table.k_max:
        raise ResourceLimitError(f"alpha table holds sizes up to {table.k_max}")
    row = table.rows_float[j]
    out: dict[Subset, np.ndarray] = {}
    for b in _scale_subsets(a, j):
        src = f_scale.get(b)
        result = np.zeros(math.factorial(j))
        if src is not None:
            nz = np.flatnonzero(src)
            if nz.size:
                if j <= _GATHER_MAX:
                    result = (src[nz, None] * row[_gather_table(j)[nz]]).sum(axis=0)
                else:
                    kernels.scatter_rowwise(
                        result,
                        row,
                        _perm.inverse_perms(j),
                        _perm.perms(j),
                        np.ascontiguousarray(nz),
                        np.ascontiguousarray(src[nz]),
                    )
                if counter is not None:
                    counter.highpass_mults += math.factorial(j) * nz.size
        out[b] = result
    return out


def low_pass(
    f_scale: Mapping[Subset, np.ndarray],
    a: Subset,
    j: int,
    counter: OpCounter | None = None,
) -> dict[Subset, np.ndarray]:
    """Scale-(j-1) approximation blocks from the scale-j ones.

    Each target subset C receives the insertions of the smallest item of A
    outside C; at j = 2 the block of the two smallest items of A collapses to
    the empty-word scalar.
    """
    if not 2 <= j <= len(a):
        raise DomainError(f"scale {j} outside [2, {len(a)}]")
    items = sorted(a)
    if j == 2:
        b = tuple(items[:2])
        src = f_scale.get(b)
        value = float(src.sum()) if src is not None else 0.0
        if counter is not None and src is not None:
            counter.lowpass_adds += int(np.count_nonzero(src))
        return {EMPTY_SET: np.array([value])}
    out: dict[Subset, np.ndarray] = {}
    for c in _scale_subsets(a, j - 1):
        b_item = min(set(items).difference(c))
        b = tuple(sorted(c + (b_item,)))
        src = f_scale.get(b)
        if src is None:
            out[c] = np.zeros(math.factorial(j - 1))
            continue
        slot = b.index(b_item)
        out[c] = src[_perm.insertion_rank_table(j, slot)].sum(axis=1)
        if counter is not None:
            counter.lowpass_adds += int(np.count_nonzero(src))
    return out


def fwt_single(
    f: RankingFunction,
    a: Subset,
    table: AlphaTable,
    counter: OpCounter | None = None,
) -> WaveletCoefficients:
    """Wavelet transform of a function supported on the rankings of one subset.

    Cascades from the top scale down: high-pass emits the scale blocks,
    low-pass feeds the next scale; the final scalar is the total mass.
    Exactly-zero blocks are dropped.
    """
    k = len(a)
    if k == 1:
        raise DomainError("size-1 subsets carry no ranking")
    if k > table.k_max:
        raise ResourceLimitError(
            f"subset of size {k} exceeds the table size {table.k_max}"
        )
    if k == 0:
        mass = f[EMPTY_WORD]
        out = WaveletCoefficients()
        if mass:
            out.set_block(EMPTY_SET, [mass])
        return out
    current: dict[Subset, np.ndarray] = {a: function_to_block(f, a)}
    out = WaveletCoefficients()
    for j in range(k, 1, -1):
        for b, vec in high_pass(current, a, j, table, counter).items():
            out.set_block(b, vec)
        current = low_pass(current, a, j, counter)
    out.set_block(EMPTY_SET, current[EMPTY_SET])
    return out.drop_zero_blocks()


def fwt(
    f: RankingFunction,
    table: AlphaTable,
    counter: OpCounter | None = None,
) -> WaveletCoefficients:
    """Wavelet transform of any function: per-content transforms, summed."""
    out = WaveletCoefficients()
    for a in sorted(f.global_support(), key=lambda s: (len(s), s)):
        out.add_scaled(fwt_single(f.restrict_content(a), a, table, counter), 1.0)
    return out.drop_zero_blocks()


def synthesize(x: WaveletCoefficients, a: Subset) -> RankingFunction:
    """Reconstruct the function on the rankings of a from its blocks.

    Each word accumulates the scalar at weight 1/k! plus every contiguous
    window's block value at weight 1/(k - length + 1)!; blocks outside a
    contribute nothing.
    """
    k = len(a)
    if k < 2:
        raise DomainError(f"synthesis needs a subset of size >= 2, got {a}")
    items = sorted(a)
    out = np.full(math.factorial(k), x.scalar / math.factorial(k))
    pwords = _perm.perms(k)
    for length in range(2, k + 1):
        if not any(b in x for b in combinations(items, length)):
            continue
        vals = np.zeros((math.comb(k, length), math.factorial(length)))
        slot_by_mask = np.zeros(1 << k, dtype=np.int64)
        for slot, b in enumerate(combinations(items, length)):
            mask = sum(1 << items.index(item) for item in b)
            slot_by_mask[mask] = slot
            block = x.block(b)
            if block is not None:
                vals[slot] = block
        weight = 1.0 / math.factorial(k - length + 1)
        for i in range(0, k - length + 1):
            j = i + length - 1
            kernels.window_accumulate(out, pwords, i, j, slot_by_mask, vals, weight)
    words = enumerate_rankings(a)
    return RankingFunction({w: float(v) for w, v in zip(words, out)})


def feature_marginal(x: WaveletCoefficients, a: Subset) -> WaveletCoefficients:
    """Keep exactly the blocks of subsets contained in a (the block filter)."""
    members = set(a)
    out = WaveletCoefficients()
    for b, vec in x.blocks():
        if members.issuperset(b):
            out.set_block(b, vec.copy())
    return out


def count_ops(f: RankingFunction, table: AlphaTable) -> int:
    """Exact multiply-add count of the transform of f."""
    counter = OpCounter()
    fwt(f, table, counter)
    return counter.total
