"""Dense elimination-based rank, nullspace, solve, and Jacobi eigenvalues."""

import numpy as np
import pytest

from rankmra import AuditFailure
from rankmra.linalg import (
    matrix_rank,
    min_eigenvalue,
    nullspace,
    solve_exact,
    sym_eigenvalues,
)


def test_rank_of_known_matrices():
    assert matrix_rank(np.eye(5)) == 5
    assert matrix_rank(np.zeros((3, 4))) == 0
    assert matrix_rank(np.array([[1.0, 2.0], [2.0, 4.0]])) == 1
    assert matrix_rank(np.array([1.0, 0.0, 0.0])) == 1


def test_rank_matches_numpy_on_random_low_rank(rng):
    for rows, cols, r in [(8, 6, 3), (10, 10, 5), (5, 9, 2)]:
        m = rng.normal(size=(rows, r)) @ rng.normal(size=(r, cols))
        assert matrix_rank(m) == np.linalg.matrix_rank(m)
        assert matrix_rank(m) == r


def test_rank_tolerance_scales_with_the_matrix():
    # The cutoff is relative to the infinity norm, so rescaling the whole
    # matrix never changes the decision, in either direction.
    below = np.diag([1.0, 1e-12])
    assert matrix_rank(below) == 1
    assert matrix_rank(1e12 * below) == 1
    above = np.diag([1.0, 1e-7])
    assert matrix_rank(above) == 2
    assert matrix_rank(1e12 * above) == 2


def test_nullspace_dimension_and_residual(rng):
    for rows, cols, r in [(4, 7, 2), (6, 6, 4), (9, 5, 5)]:
        m = rng.normal(size=(rows, r)) @ rng.normal(size=(r, cols))
        ns = nullspace(m)
        assert ns.shape == (cols, cols - min(r, cols))
        if ns.shape[1]:
            assert np.abs(m @ ns).max() <= 1e-8 * np.abs(m).sum(axis=1).max()
            assert matrix_rank(ns) == ns.shape[1]


def test_nullspace_of_full_rank_matrix_is_empty():
    assert nullspace(np.eye(3)).shape == (3, 0)


def test_nullspace_known_direction():
    ns = nullspace(np.array([[1.0, 1.0]]))
    assert ns.shape == (2, 1)
    vec = ns[:, 0] / ns[1, 0]
    assert vec == pytest.approx([-1.0, 1.0])


def test_solve_exact_known_system(rng):
    m = np.array([[2.0, 1.0], [1.0, 3.0]])
    rhs = np.array([5.0, 10.0])
    x = solve_exact(m, rhs)
    assert m @ x == pytest.approx(rhs, abs=1e-12)
    x2 = solve_exact(m, np.column_stack([rhs, 2 * rhs]))
    assert x2.shape == (2, 2)
    assert m @ x2[:, 1] == pytest.approx(2 * rhs, abs=1e-12)
    big = rng.normal(size=(12, 12)) + 12 * np.eye(12)
    b = rng.normal(size=12)
    assert solve_exact(big, b) == pytest.approx(np.linalg.solve(big, b), abs=1e-9)


def test_solve_exact_rejects_singular_and_nonsquare():
    with pytest.raises(AuditFailure, match="singular"):
        solve_exact(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 2.0]))
    with pytest.raises(AuditFailure, match="square"):
        solve_exact(np.ones((2, 3)), np.ones(2))


def test_sym_eigenvalues_known_two_by_two():
    vals = sym_eigenvalues(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert vals == pytest.approx([1.0, 3.0], abs=1e-12)


def test_sym_eigenvalues_match_numpy_on_random_symmetric(rng):
    for n in [3, 6, 12]:
        m = rng.normal(size=(n, n))
        m = (m + m.T) / 2
        got = sym_eigenvalues(m)
        want = np.linalg.eigvalsh(m)
        assert np.all(np.diff(got) >= -1e-12)
        assert got == pytest.approx(want, abs=1e-9)


def test_sym_eigenvalues_edge_cases():
    assert sym_eigenvalues(np.zeros((4, 4))) == pytest.approx(np.zeros(4))
    assert sym_eigenvalues(np.array([[7.0]])) == pytest.approx([7.0])
    with pytest.raises(ValueError):
        sym_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        sym_eigenvalues(np.ones((2, 3)))


def test_min_eigenvalue_detects_indefiniteness(rng):
    assert min_eigenvalue(np.diag([3.0, -2.0, 5.0])) == pytest.approx(-2.0)
    psd = rng.normal(size=(5, 5))
    psd = psd @ psd.T
    assert min_eigenvalue(psd) >= -1e-10
