"""Permutation indexing used by the dense block representation.

A ranking of an item subset B is stored as the lexicographic rank of its index
permutation: the word obtained by replacing each item with its position within
sorted(B). Monotone relabeling preserves lexicographic order, so ranks agree
with the enumeration order of the words of B themselves.

All permutations here are 0-based tuples/arrays over {0..k-1}.
"""

from __future__ import annotations

import itertools
import math
from functools import cache

import numpy as np

MAX_PERM_SIZE = 10

# Sizes for which the full rank-composition table (k! x k!) is precomputed on
# demand; above this the table would not fit in memory and compositions are
# ranked row by row instead.
_COMPOSE_TABLE_MAX = 6


def factorial(k: int) -> int:
    return math.factorial(k)


@cache
def perms(k: int) -> np.ndarray:
    """All permutations of {0..k-1} in lexicographic order, shape (k!, k)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.permutations(range(k))), dtype=np.int64)


@cache
def inverse_perms(k: int) -> np.ndarray:
    """Row r holds the inverse of the rank-r permutation, shape (k!, k)."""
    p = perms(k)
    inv = np.empty_like(p)
    rows = np.arange(p.shape[0])[:, None]
    inv[rows, p] = np.arange(k)[None, :]
    return inv


@cache
def inverse_ranks(k: int) -> np.ndarray:
    """Map rank r to the rank of the inverse permutation."""
    return rank_words(inverse_perms(k))


@cache
def _rank_weights(k: int) -> np.ndarray:
    return np.array([factorial(k - 1 - i) for i in range(k)], dtype=np.int64)


def rank_words(words: np.ndarray) -> np.ndarray:
    """Lexicographic ranks of permutation rows, shape (m, k) -> (m,).

    Uses the Lehmer code: rank = sum_i c_i * (k-1-i)! with c_i the number of
    later entries smaller than entry i.
    """
    m, k = words.shape
    if k == 0:
        return np.zeros(m, dtype=np.int64)
    ranks = np.zeros(m, dtype=np.int64)
    w = _rank_weights(k)
    for i in range(k - 1):
        c = (words[:, i + 1 :] < words[:, i : i + 1]).sum(axis=1)
        ranks += c * w[i]
    return ranks


def rank_word(word: tuple[int, ...]) -> int:
    """Lexicographic rank of a single permutation tuple."""
    k = len(word)
    rank = 0
    for i in range(k - 1):
        c = sum(1 for x in word[i + 1 :] if x < word[i])
        rank += c * factorial(k - 1 - i)
    return rank


def unrank_word(k: int, rank: int) -> tuple[int, ...]:
    """Inverse of rank_word for permutations of {0..k-1}."""
    items = list(range(k))
    out = []
    for i in range(k):
        f = factorial(k - 1 - i)
        q, rank = divmod(rank, f)
        out.append(items.pop(q))
    return tuple(out)


@cache
def compose_rank_table(k: int) -> np.ndarray:
    """Table T with T[a, b] = rank(p_a o p_b), shape (k!, k!).

    Composition acts left-to-right on positions: (p_a o p_b)[i] = p_a[p_b[i]].
    Only built for k <= _COMPOSE_TABLE_MAX.
    """
    if k > _COMPOSE_TABLE_MAX:
        raise ValueError(f"composition table not precomputed for k={k}")
    p = perms(k)
    m = p.shape[0]
    table = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        table[a] = rank_words(p[a][p])
    return table


def compose_ranks(a: int, b: int, k: int) -> int:
    """rank(p_a o p_b) without the full table."""
    pa = perms(k)[a]
    pb = perms(k)[b]
    return rank_word(tuple(pa[pb]))


def index_word(word: tuple[int, ...], subset: tuple[int, ...]) -> tuple[int, ...]:
    """Replace each item of `word` by its 0-based position within `subset`."""
    pos = {item: i for i, item in enumerate(subset)}
    return tuple(pos[item] for item in word)


def word_from_index(index: tuple[int, ...], subset: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(subset[i] for i in index)


@cache
def insertion_rank_table(j: int, slot: int) -> np.ndarray:
    """Ranks of the j-permutations obtained by inserting a new symbol.

    Row r covers the (j-1)-permutation of rank r; column q gives the rank of
    the j-permutation built by shifting symbols >= slot up by one and inserting
    `slot` at position q. Shape ((j-1)!, j).
    """
    base = perms(j - 1)
    m = base.shape[0]
    shifted = base + (base >= slot)
    out = np.empty((m, j), dtype=np.int64)
    for q in range(j):
        words = np.empty((m, j), dtype=np.int64)
        words[:, :q] = shifted[:, :q]
        words[:, q] = slot
        words[:, q + 1 :] = shifted[:, q:]
        out[:, q] = rank_words(words)
    return out


@cache
def deletion_rank_table(j: int, slot: int) -> np.ndarray:
    """Rank of the (j-1)-permutation left after deleting symbol `slot`.

    Entry r maps the j-permutation of rank r to the rank of the word with
    `slot` removed and larger symbols shifted down. Shape (j!,).
    """
    p = perms(j)
    keep = p != slot
    reduced = (p - (p > slot))[keep].reshape(p.shape[0], j - 1)
    return rank_words(reduced)
