"""Estimation from censored data, identifiability, and sampling."""

import math
from collections import Counter

import numpy as np
import pytest

from rankmra import (
    Dataset,
    DomainError,
    RankingFunction,
    ResourceLimitError,
    build_alpha_table,
    downward_closure,
    estimate_marginal,
    fwt,
    fwt_single,
    generate_dataset,
    identifiable_support,
    marginal,
    naive_empirical_marginal,
    per_group_features,
    solution_space,
    synthesize,
    wavelet_empirical_estimator,
)
from rankmra.linalg import matrix_rank
from rankmra.transform import WaveletCoefficients
from rankmra.validation import h_space_basis
from rankmra.words import enumerate_rankings, induce
from util import (
    FIVE_DESIGN,
    NU_FIVE,
    TRUTH_P4,
    block_error,
    model_p4_function,
    random_function,
)


# ---------------------------------------------------------------------------
# Wavelet empirical estimator


def test_estimator_single_pair_observation(table):
    est = wavelet_empirical_estimator(Dataset.from_words([(1, 2)]), table)
    assert est.subsets() == [(), (1, 2)]
    assert est.scalar == 1.0
    assert est.block((1, 2)) == pytest.approx([0.5, -0.5])


def test_estimator_keeps_covered_blocks_that_average_to_zero(table):
    est = wavelet_empirical_estimator(Dataset.from_words([(1, 2), (2, 1)]), table)
    assert (1, 2) in est
    assert not est.block((1, 2)).any()
    assert est.scalar == 1.0


def test_estimator_normalizes_each_block_by_its_coverage(table):
    data = Dataset.from_words([(1, 2, 3), (2, 1)])
    est = wavelet_empirical_estimator(data, table)
    # The pair {1,2} is covered by both observations and their contributions
    # cancel; the other blocks are covered by the full observation alone.
    assert est.scalar == 1.0
    assert not est.block((1, 2)).any()
    assert est.block((1, 3)) == pytest.approx([0.5, -0.5])
    assert est.block((2, 3)) == pytest.approx([0.5, -0.5])
    assert est.block((1, 2, 3)) == pytest.approx(
        [1 / 3, -1 / 6, -1 / 6, -1 / 6, -1 / 6, 1 / 3]
    )
    assert (1, 2, 3) in est.subsets()


def test_estimator_rejects_empty_dataset(table):
    with pytest.raises(DomainError):
        wavelet_empirical_estimator(Dataset(()), table)


def test_estimator_respects_table_capacity():
    with pytest.raises(ResourceLimitError):
        wavelet_empirical_estimator(
            Dataset.from_words([(1, 2, 3)]), build_alpha_table(2)
        )


def test_estimate_marginal_matches_empirical_when_fully_observed(table):
    words = [(1, 2, 3), (1, 2, 3), (2, 1, 3), (3, 2, 1), (2, 3, 1), (1, 2, 3)]
    data = Dataset.from_words(words)
    est = wavelet_empirical_estimator(data, table)
    naive = naive_empirical_marginal(data, (1, 2, 3))
    assert estimate_marginal(est, (1, 2, 3)).max_abs_diff(naive) <= 1e-12
    assert estimate_marginal(est, (1, 2)).max_abs_diff(marginal(naive, (1, 2))) <= 1e-12


def test_estimate_marginal_of_uncovered_subset_spreads_mass_uniformly(table):
    est = wavelet_empirical_estimator(
        Dataset.from_words([(1, 2), (2, 1), (1, 2)]), table
    )
    out = estimate_marginal(est, (1, 3))
    assert out[(1, 3)] == pytest.approx(0.5)
    assert out[(3, 1)] == pytest.approx(0.5)


# ---------------------------------------------------------------------------
# Identifiability and solution spaces


def test_identifiable_support_of_the_five_subset_design():
    support, dof = identifiable_support(FIVE_DESIGN)
    assert dof == 11
    assert support == [
        (),
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
        (1, 2, 3), (1, 3, 4),
    ]


def test_identifiable_support_extremes():
    _, dof_full = identifiable_support([(1, 2, 3, 4)])
    assert dof_full == math.factorial(4)
    pairs = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    _, dof_pairs = identifiable_support(pairs)
    assert dof_pairs == 11
    assert identifiable_support([]) == ([], 0)


def test_solution_space_fully_constrained(rng):
    f0 = random_function(rng, (1, 2, 3), 6)
    particular, free, dim = solution_space(f0, [(1, 2, 3)])
    assert free == [] and dim == 0
    assert particular.max_abs_diff(f0) <= 1e-9


def test_solution_space_single_pair_constraint(rng):
    f0 = random_function(rng, (1, 2, 3), 6)
    _, free, dim = solution_space(f0, [(1, 2)])
    assert free == [(1, 3), (2, 3), (1, 2, 3)]
    assert dim == 4


def test_solution_space_five_design_dimension():
    _, free, dim = solution_space(model_p4_function(), FIVE_DESIGN)
    assert dim == 13
    assert free == [(1, 2, 4), (2, 3, 4), (1, 2, 3, 4)]


def test_solution_space_rejects_bad_constraints(rng):
    f0 = random_function(rng, (1, 2, 3), 4)
    with pytest.raises(DomainError):
        solution_space(f0, [(1, 4)])
    with pytest.raises(DomainError):
        solution_space(f0, [(2,)])


def test_solution_space_members_reproduce_the_pinned_marginals(rng):
    p = model_p4_function()
    particular, free, _ = solution_space(p, FIVE_DESIGN)
    perturb = WaveletCoefficients()
    for b in free:
        basis = h_space_basis(b)
        perturb.set_block(b, basis @ rng.normal(size=basis.shape[1]))
    member = particular + synthesize(perturb, (1, 2, 3, 4))
    assert member.max_abs_diff(p) > 1e-6  # genuinely a different function
    for b in sorted(downward_closure(FIVE_DESIGN), key=lambda s: (len(s), s)):
        if not b:
            continue
        for candidate in (particular, member):
            assert marginal(candidate, b).max_abs_diff(marginal(p, b)) <= 1e-9


def _marginal_operator(a, subsets):
    """Stacked 0/1 marginalization matrix over the rankings of a."""
    cols = enumerate_rankings(a)
    rows = []
    for b in subsets:
        for w in enumerate_rankings(b):
            rows.append([1.0 if induce(c, b) == w else 0.0 for c in cols])
    return np.array(rows)


@pytest.mark.parametrize(
    "a, subsets",
    [
        ((1, 2, 3), [(1, 2)]),
        ((1, 2, 3, 4), [(1, 2), (3, 4)]),
        ((1, 2, 3, 4), list(FIVE_DESIGN)),
        ((1, 2, 3, 4, 5), [(1, 2, 3), (3, 4, 5)]),
    ],
)
def test_solution_space_dimension_matches_constraint_rank(rng, a, subsets):
    f0 = random_function(rng, a, 8)
    _, _, dim = solution_space(f0, subsets)
    rank = matrix_rank(_marginal_operator(a, subsets))
    assert dim == math.factorial(len(a)) - rank


# ---------------------------------------------------------------------------
# Sampling


def test_generate_dataset_censors_a_deterministic_ranking():
    p = RankingFunction.dirac((1, 2, 3, 4, 5))
    nu = {(1, 2, 3): 1 / 3, (3, 4): 1 / 3, (4, 5): 1 / 3}
    data = generate_dataset(p, nu, 60, seed=7)
    assert len(data) == 60
    assert set(data.observations) <= {
        ((1, 2, 3), (1, 2, 3)),
        ((3, 4), (3, 4)),
        ((4, 5), (4, 5)),
    }
    assert data.design() == set(nu)


def test_generate_dataset_is_seed_deterministic():
    p = RankingFunction.uniform((1, 2, 3))
    nu = {(1, 2): 0.5, (2, 3): 0.5}
    a = generate_dataset(p, nu, 50, seed=3)
    assert a.observations == generate_dataset(p, nu, 50, seed=3).observations
    assert a.observations != generate_dataset(p, nu, 50, seed=4).observations


def test_generate_dataset_validates_inputs():
    good_nu = {(1, 2): 1.0}
    with pytest.raises(DomainError):
        generate_dataset(
            RankingFunction({(1, 2, 3): 0.9}), good_nu, 5, seed=1
        )
    with pytest.raises(DomainError):
        generate_dataset(
            RankingFunction({(1, 2, 3): 1.5, (2, 1, 3): -0.5}), good_nu, 5, seed=1
        )
    with pytest.raises(DomainError):
        generate_dataset(RankingFunction.uniform((1, 2, 3)), {(1, 4): 1.0}, 5, seed=1)
    with pytest.raises(DomainError):
        generate_dataset(RankingFunction.uniform((1, 2, 3)), {(2,): 1.0}, 5, seed=1)
    with pytest.raises(ResourceLimitError):
        generate_dataset(
            RankingFunction.dirac(tuple(range(1, 10))), {(1, 2): 1.0}, 5, seed=1
        )


def test_generate_dataset_respects_censoring_frequencies():
    p = RankingFunction.uniform((1, 2, 3))
    nu = {(1, 2): 0.7, (2, 3): 0.3}
    data = generate_dataset(p, nu, 2000, seed=11)
    share = sum(1 for a, _ in data if a == (1, 2)) / 2000
    assert abs(share - 0.7) < 0.05


def test_per_group_features(table):
    ds = Dataset.from_words([(1, 2), (2, 1, 3)])
    features = per_group_features({"b": ds, "a": ds}, table)
    assert list(features) == ["a", "b"]
    assert features["a"].max_abs_diff(features["b"]) == 0.0
    assert features["a"].max_abs_diff(wavelet_empirical_estimator(ds, table)) == 0.0
    with pytest.warns(UserWarning):
        out = per_group_features({"a": ds, "empty": Dataset(())}, table)
    assert list(out) == ["a"]


# ---------------------------------------------------------------------------
# Unbiasedness on one large sample


def test_estimator_is_unbiased_within_monte_carlo_error(table):
    p = model_p4_function()
    n_obs = 50_000
    data = generate_dataset(p, NU_FIVE, n_obs, seed=20260823)
    est = wavelet_empirical_estimator(data, table)

    transforms = {}
    for (a, word), count in Counter(data.observations).items():
        transforms[(a, word)] = (fwt_single(RankingFunction.dirac(word), a, table), count)

    for b in est.subsets():
        mean = est.block_or_zeros(b)
        total = np.zeros_like(mean)
        sq = np.zeros_like(mean)
        n_cover = 0
        for (a, _), (x, count) in transforms.items():
            if set(b) <= set(a):
                vec = x.block_or_zeros(b)
                total += count * vec
                sq += count * vec ** 2
                n_cover += count
        assert mean == pytest.approx(total / n_cover, abs=1e-12)
        variance = np.maximum(sq / n_cover - mean ** 2, 0.0)
        se = np.sqrt(variance / n_cover)
        truth = np.array([float(v) for v in np.atleast_1d(TRUTH_P4[b])], dtype=float)
        assert np.all(np.abs(mean - truth) <= 4.0 * se + 1e-12)


def test_estimator_truth_blocks_are_the_transform_of_the_model(table):
    x = fwt(model_p4_function(), table)
    assert block_error(x, TRUTH_P4) <= 1e-12
