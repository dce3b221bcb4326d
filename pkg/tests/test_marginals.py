"""Marginal operators, classical estimators, and the similarity matrix."""

import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankmra import (
    Dataset,
    DomainError,
    RankingFunction,
    biased_estimator,
    enumerate_rankings,
    generate_dataset,
    induce,
    linear_extension_embed,
    marginal,
    marginal_based_estimator,
    naive_empirical_marginal,
    similarity_matrix_Tnu,
)
from util import random_function

UNIVERSE3 = (1, 2, 3)
UNIVERSE4 = (1, 2, 3, 4)


def test_marginal_pair_from_triple():
    p = RankingFunction(
        {w: v for w, v in zip(enumerate_rankings(UNIVERSE3), (0.1, 0.2, 0.15, 0.25, 0.05, 0.25))}
    )
    m = marginal(p, (1, 3))
    assert m[(3, 1)] == pytest.approx(p[(2, 3, 1)] + p[(3, 2, 1)] + p[(3, 1, 2)])
    assert m[(1, 3)] == pytest.approx(1.0 - m[(3, 1)])


def test_marginal_of_dirac():
    assert marginal(RankingFunction.dirac((1, 2, 3)), (1, 2)) == RankingFunction.dirac((1, 2))


def test_marginal_of_uniform():
    m = marginal(RankingFunction.uniform(UNIVERSE3), (2, 3))
    assert m[(2, 3)] == pytest.approx(0.5)
    assert m[(3, 2)] == pytest.approx(0.5)


def test_marginal_empty_subset_is_mass():
    f = RankingFunction({(1, 2): 0.25, (2, 1, 3): 0.5})
    assert marginal(f, ())[()] == pytest.approx(0.75)


def test_marginal_rejects_singleton():
    with pytest.raises(DomainError):
        marginal(RankingFunction.dirac((1, 2)), (1,))


@settings(max_examples=50, deadline=None)
@given(
    st.integers(0, 2**32 - 1),
    st.sampled_from([((1, 2, 4), (1, 4)), ((1, 2, 3), (2, 3)), ((2, 3, 4), (2, 4)), ((1, 2, 3, 4), (1, 3))]),
)
def test_marginal_projectivity(seed, nested):
    # marginal(marginal(f, a), b) == marginal(f, b) for b inside a
    a, b = nested
    f = random_function(np.random.default_rng(seed), (1, 2, 3, 4), 8)
    lhs = marginal(marginal(f, a), b)
    rhs = marginal(f, b)
    assert lhs.max_abs_diff(rhs) < 1e-12


def test_naive_empirical_marginal_counts():
    d = Dataset.from_words([(1, 2), (1, 2), (2, 1)])
    m = naive_empirical_marginal(d, (1, 2))
    assert m[(1, 2)] == pytest.approx(2 / 3)
    assert m[(2, 1)] == pytest.approx(1 / 3)


def test_naive_empirical_marginal_single_observation():
    d = Dataset.from_words([(3, 1, 2)])
    assert naive_empirical_marginal(d, (1, 2, 3)) == RankingFunction.dirac((3, 1, 2))


def test_naive_empirical_marginal_filters_other_subsets():
    d = Dataset.from_words([(1, 2), (1, 3, 2), (2, 1), (1, 2)])
    m = naive_empirical_marginal(d, (1, 2))
    assert m[(1, 2)] == pytest.approx(2 / 3)


def test_naive_empirical_marginal_unobserved():
    with pytest.raises(DomainError, match="never observed"):
        naive_empirical_marginal(Dataset.from_words([(1, 2)]), (1, 3))


def test_marginal_based_estimator_single_cover():
    d = Dataset.from_words([(1, 2, 3)])
    assert marginal_based_estimator(d, (1, 3)) == RankingFunction.dirac((1, 3))


def test_marginal_based_estimator_mixes_covering_rows():
    d = Dataset.from_words([(1, 2, 3), (3, 1)])
    m = marginal_based_estimator(d, (1, 3))
    assert m[(1, 3)] == pytest.approx(0.5)
    assert m[(3, 1)] == pytest.approx(0.5)


def test_marginal_based_reduces_to_naive_on_exact_subset():
    d = Dataset.from_words([(1, 2), (2, 1), (1, 2)])
    assert marginal_based_estimator(d, (1, 2)) == naive_empirical_marginal(d, (1, 2))


def test_marginal_based_estimator_uncovered():
    with pytest.raises(DomainError, match="covers"):
        marginal_based_estimator(Dataset.from_words([(1, 2)]), (1, 3))


# The published expansion of the uniform extension of the word 4>2 to four
# items: twelve full rankings, weight 1/12 each.
EMBED_42_SUPPORT = {
    (1, 3, 4, 2), (3, 1, 4, 2), (1, 4, 2, 3), (3, 4, 2, 1), (4, 2, 1, 3),
    (4, 2, 3, 1), (1, 4, 3, 2), (3, 4, 1, 2), (4, 1, 3, 2), (4, 3, 1, 2),
    (4, 1, 2, 3), (4, 3, 2, 1),
}


def test_linear_extension_embed_pair():
    e = linear_extension_embed(RankingFunction.dirac((4, 2)), UNIVERSE4)
    assert e.support() == EMBED_42_SUPPORT
    for w in EMBED_42_SUPPORT:
        assert e[w] == pytest.approx(1 / 12)


def test_linear_extension_embed_identity_on_own_content():
    f = RankingFunction.dirac((2, 1, 3))
    assert linear_extension_embed(f, (1, 2, 3)) == f


def test_linear_extension_embed_preserves_mass(rng):
    f = random_function(rng, (1, 3), 2) + random_function(rng, (2, 4), 2)
    e = linear_extension_embed(f, UNIVERSE4)
    assert e.total_mass() == pytest.approx(f.total_mass())


def test_linear_extension_embed_content_violation():
    with pytest.raises(DomainError):
        linear_extension_embed(RankingFunction.dirac((1, 5)), UNIVERSE4)


def test_biased_estimator_full_observation_is_dirac():
    d = Dataset.from_words([(2, 1, 3)])
    assert biased_estimator(d, UNIVERSE3) == RankingFunction.dirac((2, 1, 3))


def test_biased_estimator_pair_observation():
    d = Dataset.from_words([(1, 2)])
    e = biased_estimator(d, UNIVERSE3)
    assert e.support() == {(1, 2, 3), (1, 3, 2), (3, 1, 2)}
    for w in e.support():
        assert e[w] == pytest.approx(1 / 3)


def test_similarity_matrix_full_design_is_identity():
    t = similarity_matrix_Tnu({UNIVERSE3: 1.0}, UNIVERSE3)
    np.testing.assert_allclose(t, np.eye(6))


def test_similarity_matrix_uniform_pairs_is_affine_kendall():
    pairs = {(1, 2): 1 / 3, (1, 3): 1 / 3, (2, 3): 1 / 3}
    t = similarity_matrix_Tnu(pairs, UNIVERSE3)
    perms = enumerate_rankings(UNIVERSE3)
    for i, s in enumerate(perms):
        for j, sp in enumerate(perms):
            kendall = sum(
                induce(s, pair) != induce(sp, pair) for pair in pairs
            )
            assert t[i, j] == pytest.approx((3 - kendall) / 9)


def test_similarity_matrix_rows_sum_to_one():
    nu = {(1, 3): 0.5, (2, 4): 0.3, (1, 3, 4): 0.2}
    t = similarity_matrix_Tnu(nu, UNIVERSE4)
    np.testing.assert_allclose(t.sum(axis=1), np.ones(24))


def test_similarity_matrix_2134_row():
    # Row of the permutation 2134 for a design on {1,3}, {2,4}, {1,3,4}:
    # each column collects nu(A) |A|!/4! over the subsets on which the two
    # permutations agree.
    w1, w2, w3 = 0.5, 0.3, 0.2
    nu = {(1, 3): w1, (2, 4): w2, (1, 3, 4): w3}
    t = similarity_matrix_Tnu(nu, UNIVERSE4)
    perms = enumerate_rankings(UNIVERSE4)
    row = t[perms.index((2, 1, 3, 4))]
    sigma = (2, 1, 3, 4)
    for j, sp in enumerate(perms):
        expected = (
            w1 / 12 * (induce(sp, (1, 3)) == induce(sigma, (1, 3)))
            + w2 / 12 * (induce(sp, (2, 4)) == induce(sigma, (2, 4)))
            + w3 / 4 * (induce(sp, (1, 3, 4)) == induce(sigma, (1, 3, 4)))
        )
        assert row[j] == pytest.approx(expected)
    # spot values: full agreement, and agreement on {1,3} and {1,3,4} only
    assert row[perms.index((2, 1, 3, 4))] == pytest.approx(w1 / 12 + w2 / 12 + w3 / 4)
    assert row[perms.index((1, 3, 4, 2))] == pytest.approx(w1 / 12 + w3 / 4)
    assert row[perms.index((1, 2, 3, 4))] == pytest.approx(w1 / 12 + w2 / 12 + w3 / 4)


def fixed_model_p4():
    values = {
        (1, 2, 3, 4): 5, (2, 1, 3, 4): 4, (3, 2, 1, 4): 3, (4, 3, 2, 1): 3,
        (1, 3, 2, 4): 2, (2, 3, 4, 1): 2, (1, 4, 3, 2): 2, (4, 1, 2, 3): 1,
        (3, 4, 1, 2): 1, (2, 4, 3, 1): 1,
    }
    return RankingFunction({w: v / 24 for w, v in values.items()})


def test_biased_estimator_expectation_is_Tnu_p():
    # exact: enumerate the censoring process instead of sampling it
    p = fixed_model_p4()
    nu = {(1, 3): 0.5, (2, 4): 0.3, (1, 3, 4): 0.2}
    expectation = RankingFunction()
    for a, weight in nu.items():
        for sigma in permutations(UNIVERSE4):
            prob = p[sigma]
            if prob == 0:
                continue
            piece = linear_extension_embed(
                RankingFunction.dirac(induce(sigma, a)), UNIVERSE4
            )
            expectation.add_scaled(piece, weight * prob)
    t = similarity_matrix_Tnu(nu, UNIVERSE4)
    perms = enumerate_rankings(UNIVERSE4)
    p_vec = np.array([p[w] for w in perms])
    target = t @ p_vec
    for j, w in enumerate(perms):
        assert expectation[w] == pytest.approx(target[j], abs=1e-12)


def test_biased_estimator_monte_carlo_matches_Tnu_p():
    p = fixed_model_p4()
    nu = {(1, 3): 0.5, (2, 4): 0.3, (1, 3, 4): 0.2}
    d = generate_dataset(p, nu, 20000, seed=99)
    est = biased_estimator(d, UNIVERSE4)
    t = similarity_matrix_Tnu(nu, UNIVERSE4)
    perms = enumerate_rankings(UNIVERSE4)
    target = t @ np.array([p[w] for w in perms])
    worst = max(abs(est[w] - target[j]) for j, w in enumerate(perms))
    assert worst < 0.01  # ~5 standard errors at this sample size
