"""Injective words and item subsets.

An incomplete ranking a1 > a2 > ... > ak (best first) is an injective word: a
duplicate-free tuple of non-negative integer item ids. The empty word () is
allowed. Subsets are canonical sorted tuples; "smallest" always means
numerically least.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator

from .errors import DomainError

Word = tuple[int, ...]
Subset = tuple[int, ...]

EMPTY_WORD: Word = ()
EMPTY_SET: Subset = ()


def check_word(w: Iterable[int]) -> Word:
    """Validate and canonicalize a word: distinct non-negative integer items.

    Returns the word as a tuple. Raises DomainError on duplicates or bad items.
    """
    word = tuple(w)
    for item in word:
        if not isinstance(item, int) or isinstance(item, bool) or item < 0:
            raise DomainError(f"item {item!r} is not a non-negative integer")
    if len(set(word)) != len(word):
        raise DomainError(f"word {word} repeats an item")
    return word


def subset(items: Iterable[int]) -> Subset:
    """Canonical sorted tuple of distinct non-negative integer items."""
    s = tuple(sorted(set(items)))
    for item in s:
        if not isinstance(item, int) or isinstance(item, bool) or item < 0:
            raise DomainError(f"item {item!r} is not a non-negative integer")
    return s


def content(w: Word) -> Subset:
    """The set of items appearing in w, as a canonical sorted tuple."""
    return tuple(sorted(w))


def induce(w: Word, a: Subset) -> Word:
    """The induced ranking of w on a: the unique subword with content a.

    Args:
        w: an injective word.
        a: a subset of content(w).

    Raises:
        DomainError: if a is not contained in content(w).
    """
    members = set(a)
    if not members.issubset(w):
        missing = sorted(members.difference(w))
        raise DomainError(f"items {missing} not ranked by word {w}")
    return tuple(item for item in w if item in members)


def is_subword(sub: Word, w: Word) -> bool:
    """True iff sub appears in w in order (not necessarily contiguously)."""
    it = iter(w)
    return all(item in it for item in sub)


def contiguous_subwords(w: Word) -> list[tuple[int, int, Word]]:
    """All contiguous factors of w of length >= 2, with 1-based endpoints.

    Returns (i, j, w_i...w_j) for every 1 <= i < j <= |w|, ordered by
    increasing length then position.
    """
    if len(w) < 2:
        raise DomainError(f"word {w} has no contiguous factors of length >= 2")
    k = len(w)
    out = []
    for length in range(2, k + 1):
        for i in range(1, k - length + 2):
            j = i + length - 1
            out.append((i, j, w[i - 1 : j]))
    return out


def enumerate_rankings(a: Subset) -> list[Word]:
    """All rankings of subset a in lexicographic order.

    The empty set yields [()]; singletons are not rankings and are rejected.
    """
    if len(a) == 1:
        raise DomainError(f"subset {a} of size 1 carries no ranking")
    return [tuple(p) for p in itertools.permutations(sorted(a))]


def subsets_of(a: Subset, size: int) -> Iterator[Subset]:
    """All size-`size` subsets of a, in lexicographic order."""
    return itertools.combinations(sorted(a), size)


def nonempty_rankable_subsets(a: Subset) -> Iterator[Subset]:
    """All subsets of a of size >= 2, by increasing size."""
    for size in range(2, len(a) + 1):
        yield from itertools.combinations(sorted(a), size)


def downward_closure(design: Iterable[Subset]) -> set[Subset]:
    """Subsets of size >= 2 of members of the design, plus the empty set.

    Empty design, empty closure: the empty set is only reachable as a subset
    of an actual member.
    """
    closed: set[Subset] = set()
    for a in design:
        closed.add(EMPTY_SET)
        for size in range(2, len(a) + 1):
            closed.update(itertools.combinations(sorted(a), size))
    return closed


def storage_bound(design: Iterable[Subset], n_obs: int) -> int:
    """Parameter count needed to store a dataset: min(N, sum over A of |A|!)."""
    total = 0
    for a in set(design):
        total += math.factorial(len(a))
        if total >= n_obs:
            return n_obs
    return min(n_obs, total)


def derangement(k: int) -> int:
    """Number of fixed-point-free permutations of k elements (1 for k=0)."""
    if k < 0:
        raise DomainError("negative size")
    d = 1
    for i in range(1, k + 1):
        d = i * d + (-1) ** i
    return d
