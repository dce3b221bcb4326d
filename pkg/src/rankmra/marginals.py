"""Marginal operators and the classical empirical estimators.

The marginal of f on A aggregates f over all words inducing each ranking of A.
Also provides the linear-extension embedding used by earlier approaches, the
biased full-space empirical estimator, and its expectation matrix.
"""

from __future__ import annotations

import itertools
import math
from typing import Mapping

import numpy as np

from .datasets import Dataset
from .errors import DomainError, ResourceLimitError
from .functions import RankingFunction
from .words import EMPTY_WORD, Subset, Word, content, enumerate_rankings, induce

VALIDATION_MAX_UNIVERSE = 8


def marginal(f: RankingFunction, a: Subset) -> RankingFunction:
    """M_A f: aggregate f over the words that induce each ranking of A.

    A = empty returns the total mass on the empty word; singleton subsets are
    rejected. Only supp(f) is visited.
    """
    if len(a) == 1:
        raise DomainError(f"subset {a} of size 1 has no marginal")
    if len(a) == 0:
        mass = f.total_mass()
        return RankingFunction({EMPTY_WORD: mass} if mass else {})
    members = set(a)
    out: dict[Word, float] = {}
    for word, value in f.items():
        if members.issubset(word):
            key = tuple(item for item in word if item in members)
            out[key] = out.get(key, 0.0) + value
    return RankingFunction(out)


def naive_empirical_marginal(d: Dataset, a: Subset) -> RankingFunction:
    """Frequency histogram of the observations made exactly on subset a."""
    counts: dict[Word, int] = {}
    n_a = 0
    for obs_subset, word in d:
        if obs_subset == a:
            n_a += 1
            counts[word] = counts.get(word, 0) + 1
    if n_a == 0:
        raise DomainError(f"subset {a} never observed")
    return RankingFunction({w: c / n_a for w, c in counts.items()})


def marginal_based_estimator(d: Dataset, b: Subset) -> RankingFunction:
    """Average of the rankings induced on b by all observations covering b."""
    members = set(b)
    counts: dict[Word, int] = {}
    covered = 0
    for obs_subset, word in d:
        if members.issubset(obs_subset):
            covered += 1
            key = induce(word, b)
            counts[key] = counts.get(key, 0) + 1
    if covered == 0:
        raise DomainError(f"no observation covers subset {b}")
    return RankingFunction({w: c / covered for w, c in counts.items()})


def extensions(word: Word, a: Subset) -> list[Word]:
    """All rankings of a containing `word` as a subword, in generation order."""
    members = set(a)
    if not set(word).issubset(members):
        raise DomainError(f"word {word} not supported inside subset {a}")
    if len(a) > 10:
        raise ResourceLimitError(f"extension enumeration capped at 10 items, got {len(a)}")
    missing = sorted(members.difference(word))
    k, p = len(a), len(word)
    out = []
    for positions in itertools.combinations(range(k), p):
        taken = set(positions)
        rest = [i for i in range(k) if i not in taken]
        for filler in itertools.permutations(missing):
            full: list[int] = [0] * k
            for pos, item in zip(positions, word):
                full[pos] = item
            for pos, item in zip(rest, filler):
                full[pos] = item
            out.append(tuple(full))
    return out


def linear_extension_embed(f: RankingFunction, a: Subset) -> RankingFunction:
    """Spread each word uniformly over its extensions to full rankings of a.

    The Dirac at word p maps to (|p|!/|a|!) times the indicator of the
    rankings of a containing p; mass is preserved.
    """
    out = RankingFunction()
    fact_a = math.factorial(len(a))
    for word, value in f.items():
        weight = value * math.factorial(len(word)) / fact_a
        for sigma in extensions(word, a):
            out[sigma] = out[sigma] + weight
    return out


def biased_estimator(d: Dataset, universe: Subset) -> RankingFunction:
    """Average of the uniformly-extended observations over the universe.

    Not unbiased for the underlying model: its expectation is the similarity
    matrix of `similarity_matrix_Tnu` applied to it.
    """
    n = len(universe)
    if n > VALIDATION_MAX_UNIVERSE:
        raise ResourceLimitError(
            f"full-space estimator capped at {VALIDATION_MAX_UNIVERSE} items"
        )
    out = RankingFunction()
    n_obs = len(d)
    fact_n = math.factorial(n)
    for obs_subset, word in d:
        weight = math.factorial(len(obs_subset)) / (fact_n * n_obs)
        for sigma in extensions(word, universe):
            out[sigma] = out[sigma] + weight
    return out


def similarity_matrix_Tnu(
    nu: Mapping[Subset, float], universe: Subset
) -> np.ndarray:
    """Expectation matrix of the biased estimator over S_n x S_n.

    Entry (s, s') is sum over A of nu(A) * |A|!/n! * [s and s' agree on A].
    Rows and columns follow the lexicographic order of the full rankings.
    """
    n = len(universe)
    if n > VALIDATION_MAX_UNIVERSE:
        raise ResourceLimitError(
            f"similarity matrix capped at {VALIDATION_MAX_UNIVERSE} items"
        )
    weights = list(nu.values())
    if any(w < 0 for w in weights):
        raise DomainError("subset weights must be nonnegative")
    if abs(sum(weights) - 1.0) > 1e-9:
        raise DomainError(f"subset weights sum to {sum(weights)}, expected 1")
    perms = enumerate_rankings(universe)
    fact_n = math.factorial(n)
    t = np.zeros((len(perms), len(perms)))
    for a, weight in nu.items():
        if not set(a).issubset(universe):
            raise DomainError(f"design subset {a} outside universe {universe}")
        groups: dict[Word, list[int]] = {}
        for idx, sigma in enumerate(perms):
            groups.setdefault(induce(sigma, a), []).append(idx)
        factor = weight * math.factorial(len(a)) / fact_n
        for indices in groups.values():
            t[np.ix_(indices, indices)] += factor
    return t
