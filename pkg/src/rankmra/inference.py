"""Estimation from censored ranking data.

The wavelet empirical estimator averages the transforms of the observed
Dirac masses block by block, normalizing each block by the number of
observations whose censoring subset covers it. Identifiability of a design
and the affine solution set of a marginal-constraint problem are derived
from the same block structure.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from typing import Iterable, Mapping

import numpy as np

from .datasets import Dataset
from .errors import DomainError, ResourceLimitError
from .functions import RankingFunction
from .rng import make_rng
from .transform import (
    AlphaTable,
    WaveletCoefficients,
    default_table,
    feature_marginal,
    fwt_single,
    synthesize,
)
from .words import Subset, derangement, downward_closure, induce

GENERATE_MAX_UNIVERSE = 8


def wavelet_empirical_estimator(
    dataset: Dataset, table: AlphaTable
) -> WaveletCoefficients:
    """Unbiased block-wise estimator of the wavelet features.

    Block B is the average of the transforms of the observed Diracs over the
    observations whose subset contains B; blocks no observation covers are
    absent. Covered blocks are kept even when the average is exactly zero,
    so absence always means "not estimable", never "estimated zero".
    """
    if not dataset.observations:
        raise DomainError("empty dataset")
    coverage: Counter[Subset] = Counter()
    for a, count in Counter(a for a, _ in dataset.observations).items():
        for b in downward_closure([a]):
            coverage[b] += count
    sums: dict[Subset, np.ndarray] = {}
    for (a, word), count in Counter(dataset.observations).items():
        x = fwt_single(RankingFunction.dirac(word), a, table)
        for b, vec in x.blocks():
            if b in sums:
                sums[b] += count * vec
            else:
                sums[b] = count * vec
    out = WaveletCoefficients()
    for b, n_cover in coverage.items():
        vec = sums.get(b)
        if vec is None:
            vec = np.zeros(1 if len(b) == 0 else math.factorial(len(b)))
        out.set_block(b, vec / n_cover)
    return out


def estimate_marginal(x: WaveletCoefficients, a: Subset) -> RankingFunction:
    """Estimated marginal on the rankings of a: synthesize the blocks inside a.

    Blocks inside a that the estimator could not cover are treated as zero.
    """
    return synthesize(feature_marginal(x, a), a)


def identifiable_support(
    design: Iterable[Subset],
) -> tuple[list[Subset], int]:
    """Blocks determined by marginals on the design subsets, with their
    total dimension (the number of identifiable degrees of freedom)."""
    closure = downward_closure(design)
    support = sorted(closure, key=lambda b: (len(b), b))
    dof = sum(derangement(len(b)) for b in support)
    return support, dof


def solution_space(
    f0: RankingFunction, constraint_subsets: Iterable[Subset]
) -> tuple[RankingFunction, list[Subset], int]:
    """Affine solution set of {F on rankings of A : M_B F = M_B f0 for B in S}.

    Returns a particular solution (the synthesis of f0's blocks inside the
    closure of S), the free blocks (subsets of A outside that closure), and
    the dimension of the solution space.
    """
    a = f0.single_content()
    members = set(a)
    constraints = []
    for b in constraint_subsets:
        b = tuple(sorted(b))
        if len(b) < 2:
            raise DomainError(f"constraint subset {b} needs size >= 2")
        if not members.issuperset(b):
            raise DomainError(f"constraint subset {b} not inside {a}")
        constraints.append(b)
    closure = downward_closure(constraints)
    x = fwt_single(f0, a, default_table(max(len(a), 2)))
    pinned = WaveletCoefficients()
    for b in closure:
        pinned.set_block(b, x.block_or_zeros(b))
    particular = synthesize(pinned, a)
    free_blocks = sorted(
        (b for b in downward_closure([a]) if b not in closure),
        key=lambda b: (len(b), b),
    )
    dim = sum(derangement(len(b)) for b in free_blocks)
    return particular, free_blocks, dim


def _validate_probabilities(
    probs: np.ndarray, what: str, tol: float
) -> np.ndarray:
    if np.any(probs < 0):
        raise DomainError(f"negative {what} probability")
    total = float(probs.sum())
    if abs(total - 1.0) > tol:
        raise DomainError(f"{what} probabilities sum to {total!r}, expected 1")
    return probs / total


def generate_dataset(
    p: RankingFunction,
    nu: Mapping[Subset, float],
    n_obs: int,
    seed: int,
) -> Dataset:
    """Sample a censored dataset: full ranking from p, subset from nu,
    observation = the ranking induced on the subset."""
    universe = p.single_content()
    if len(universe) > GENERATE_MAX_UNIVERSE:
        raise ResourceLimitError(
            f"universe of size {len(universe)} exceeds {GENERATE_MAX_UNIVERSE}"
        )
    members = set(universe)
    words = sorted(p.support())
    word_probs = _validate_probabilities(
        np.array([p[w] for w in words]), "ranking", 1e-12
    )
    subsets = sorted(nu, key=lambda b: (len(b), b))
    for b in subsets:
        if len(b) < 2 or not members.issuperset(b):
            raise DomainError(f"censoring subset {b} invalid for universe {universe}")
    subset_probs = _validate_probabilities(
        np.array([nu[b] for b in subsets]), "censoring", 1e-9
    )
    rng = make_rng(seed)
    word_idx = rng.choice(len(words), size=n_obs, p=word_probs)
    subset_idx = rng.choice(len(subsets), size=n_obs, p=subset_probs)
    observations = []
    for wi, si in zip(word_idx, subset_idx):
        a = subsets[si]
        observations.append((a, induce(words[wi], a)))
    return Dataset(tuple(observations))


def per_group_features(
    groups: Mapping[str, Dataset], table: AlphaTable
) -> dict[str, WaveletCoefficients]:
    """Wavelet estimator per named group; empty groups are skipped with a
    warning."""
    out: dict[str, WaveletCoefficients] = {}
    for name in sorted(groups):
        dataset = groups[name]
        if not dataset.observations:
            warnings.warn(f"group {name!r} has no observations; skipped")
            continue
        out[name] = wavelet_empirical_estimator(dataset, table)
    return out
