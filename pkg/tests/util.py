"""Shared helpers for the test suite."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from rankmra import RankingFunction, WaveletCoefficients
from rankmra.validation import h_space_basis
from rankmra.words import enumerate_rankings

F = Fraction

# Exact alpha filter rows; the triple rows are indexed by the canonical word
# pattern (lexicographic order 123, 132, 213, 231, 312, 321).
ROW2 = (F(1, 2), F(-1, 2))
ROW3_ID = (F(1, 3), F(-1, 6), F(-1, 6), F(-1, 6), F(-1, 6), F(1, 3))
ROW3_132 = (F(-1, 6), F(1, 3), F(-1, 6), F(1, 3), F(-1, 6), F(-1, 6))
ROW3_213 = (F(-1, 6), F(-1, 6), F(1, 3), F(-1, 6), F(1, 3), F(-1, 6))
ALPHA2 = [[F(1, 2), F(-1, 2)], [F(-1, 2), F(1, 2)]]
ALPHA3 = [
    list(ROW3_ID),
    list(ROW3_132),
    list(ROW3_213),
    list(ROW3_132),
    list(ROW3_213),
    list(ROW3_ID),
]


def coeffs_from(blocks: dict) -> WaveletCoefficients:
    """Build a WaveletCoefficients from {subset: scalar-or-sequence}."""
    x = WaveletCoefficients()
    for b, vec in blocks.items():
        b = tuple(b)
        if b == ():
            x.set_block((), np.array([float(vec)]))
        else:
            x.set_block(b, np.array([float(v) for v in vec]))
    return x


def block_error(x: WaveletCoefficients, expected: dict) -> float:
    """Largest entry deviation between x and an expected block dict.

    Blocks present on either side only are compared against zero.
    """
    worst = 0.0
    keys = {tuple(b) for b in expected} | {b for b, _ in x.blocks()}
    for b in keys:
        got = x.block_or_zeros(b)
        want = expected.get(b, 0)
        if b == ():
            want_vec = np.array([float(want) if not hasattr(want, "__len__") else float(want[0])])
        elif hasattr(want, "__len__"):
            want_vec = np.array([float(v) for v in want])
        else:
            want_vec = np.zeros(math.factorial(len(b)))
        worst = max(worst, float(np.abs(got - want_vec).max()))
    return worst


# A fixed non-uniform distribution on the rankings of {1, 2, 3, 4} and its
# exact wavelet features, used by the estimator tests.
MODEL_P4 = {
    (1, 2, 3, 4): F(5, 24),
    (2, 1, 3, 4): F(4, 24),
    (3, 2, 1, 4): F(3, 24),
    (4, 3, 2, 1): F(3, 24),
    (1, 3, 2, 4): F(2, 24),
    (2, 3, 4, 1): F(2, 24),
    (1, 4, 3, 2): F(2, 24),
    (4, 1, 2, 3): F(1, 24),
    (3, 4, 1, 2): F(1, 24),
    (2, 4, 3, 1): F(1, 24),
}

TRUTH_P4 = {
    (): 1,
    (1, 2): (F(-1, 24), F(1, 24)),
    (1, 3): (F(1, 12), F(-1, 12)),
    (1, 4): (F(1, 6), F(-1, 6)),
    (2, 3): (F(1, 24), F(-1, 24)),
    (2, 4): (F(5, 24), F(-5, 24)),
    (3, 4): (F(5, 24), F(-5, 24)),
    (1, 2, 3): (F(1, 12), F(-1, 48), F(-1, 16), F(-1, 48), F(-1, 16), F(1, 12)),
    (1, 2, 4): (F(1, 24), F(-1, 16), F(1, 48), F(-1, 16), F(1, 48), F(1, 24)),
    (1, 3, 4): (F(7, 48), F(-1, 16), F(-1, 12), F(-1, 16), F(-1, 12), F(7, 48)),
    (2, 3, 4): (F(1, 6), F(-1, 8), F(-1, 24), F(-1, 8), F(-1, 24), F(1, 6)),
    (1, 2, 3, 4): (
        F(1, 144), F(1, 144), F(1, 32), F(-19, 288), F(1, 96), F(1, 288),
        F(1, 36), F(-1, 48), F(-1, 96), F(-7, 288), F(1, 96), F(1, 288),
        F(-13, 288), F(5, 96), F(1, 288), F(1, 96), F(1, 48), F(-1, 144),
        F(-7, 288), F(1, 32), F(-5, 288), F(1, 32), F(-1, 36), F(-1, 144),
    ),
}

# Observation design whose closure misses {1,2,4}, {2,3,4} and the top subset.
FIVE_DESIGN = ((1, 3), (2, 4), (3, 4), (1, 2, 3), (1, 3, 4))

# Censoring distribution over FIVE_DESIGN used by the estimator tests.
NU_FIVE = {
    (1, 3): 0.3,
    (2, 4): 0.1,
    (3, 4): 0.2,
    (1, 2, 3): 0.25,
    (1, 3, 4): 0.15,
}


def model_p4_function() -> RankingFunction:
    return RankingFunction({w: float(v) for w, v in MODEL_P4.items()})


def random_function(rng, a, size) -> RankingFunction:
    """Sparse random function on the rankings of a with `size` atoms."""
    words = enumerate_rankings(a)
    picks = rng.choice(len(words), size=min(size, len(words)), replace=False)
    values = rng.normal(size=len(picks))
    return RankingFunction({words[i]: float(v) for i, v in zip(picks, values)})


def random_feature(rng, a, scalar=True) -> WaveletCoefficients:
    """Random element of the feature space over a: every block drawn in its
    own marginal-free space, plus an optional scalar block."""
    x = WaveletCoefficients()
    if scalar:
        x.set_block((), np.array([float(rng.normal())]))
    items = tuple(sorted(a))
    for size in range(2, len(items) + 1):
        for b in combinations(items, size):
            basis = h_space_basis(b)
            coef = rng.normal(size=basis.shape[1])
            x.set_block(b, basis @ coef)
    return x


def relabel_word(word, mapping):
    return tuple(mapping[i] for i in word)


def relabel_function(f: RankingFunction, mapping) -> RankingFunction:
    return RankingFunction({relabel_word(w, mapping): v for w, v in f.items()})


def relabel_block(vec, b, mapping):
    """Image of a block under an item relabeling: value at the mapped word."""
    target = tuple(sorted(mapping[i] for i in b))
    words = enumerate_rankings(target)
    index = {w: i for i, w in enumerate(words)}
    out = np.zeros(len(words))
    for w, v in zip(enumerate_rankings(b), vec):
        out[index[relabel_word(w, mapping)]] = v
    return target, out
