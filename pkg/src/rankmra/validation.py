"""Structural validation suite.

Independent oracles for the transform (explicit block bases and a dense
change-of-basis solve), shuffle matrices and their null spaces, the exact
pairwise-comparison space with its gradient/curl split, tableau-based
dimension accounting, and the alternative linear-extension embedding. Each
audit returns a machine-readable report; the oracles deliberately avoid the
filter-bank code paths they are meant to check.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cache
from itertools import combinations

import numpy as np

from . import _perm, linalg
from .errors import DomainError, ResourceLimitError
from .functions import RankingFunction
from .marginals import linear_extension_embed, marginal
from .rng import make_rng
from .transform import (
    AlphaTable,
    WaveletCoefficients,
    block_to_function,
    count_ops,
    default_table,
    feature_marginal,
    function_to_block,
    fwt,
    fwt_single,
    synthesize,
)
from .words import (
    EMPTY_SET,
    EMPTY_WORD,
    Subset,
    Word,
    content,
    derangement,
    downward_closure,
    enumerate_rankings,
    induce,
    nonempty_rankable_subsets,
)

KENDALL_MAX_N = 8
SHUFFLE_MAX_N = 6
EMBED_MAX_N = 5
MRA_AUDIT_MAX_N = 5
H2_AUDIT_MAX_N = 8
SYT_MAX_N = 8

PSD_TOL = 1e-10
KERNEL_TOL = 1e-10
ROUNDTRIP_TOL = 1e-9
CROSSCHECK_TOL = 1e-8


@dataclass
class AuditCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class AuditReport:
    """Outcome of one validation suite run."""

    suite: str
    n: int | None = None
    checks: list[AuditCheck] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(AuditCheck(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# Brute-force transform oracle


def h_space_basis(b: Subset) -> np.ndarray:
    """Basis of the block space of b: functions on the rankings of b whose
    marginals on every strict subset (and total mass) vanish. One column per
    basis vector; the column count is the derangement number of |b|."""
    k = len(b)
    if k < 2:
        raise DomainError(f"block space needs |b| >= 2, got {b}")
    words = enumerate_rankings(b)
    rows = [np.ones(len(words))]
    for c in sorted(downward_closure([b]) - {tuple(sorted(b)), EMPTY_SET}):
        for wc in enumerate_rankings(c):
            rows.append(
                np.array([1.0 if induce(w, c) == wc else 0.0 for w in words])
            )
    return linalg.nullspace(np.vstack(rows))


@cache
def _synthesis_system(a: Subset) -> tuple[np.ndarray, list[tuple[Subset, np.ndarray]]]:
    """Dense change-of-basis matrix whose columns are the synthesized images
    of the block-space basis vectors, plus the (subset, vector) column key."""
    col_keys: list[tuple[Subset, np.ndarray]] = []
    columns = []
    for b in [EMPTY_SET] + list(nonempty_rankable_subsets(a)):
        basis = np.ones((1, 1)) if b == EMPTY_SET else h_space_basis(b)
        for j in range(basis.shape[1]):
            vec = basis[:, j]
            x = WaveletCoefficients()
            x.set_block(b, vec)
            columns.append(function_to_block(synthesize(x, a), a))
            col_keys.append((b, vec))
    return np.column_stack(columns), col_keys


def brute_force_wavelet(f: RankingFunction) -> WaveletCoefficients:
    """Transform by explicit basis solve, no filter bank involved.

    Builds bases of every block space from marginal-constraint null spaces,
    synthesizes each basis vector, and solves the resulting dense system for
    the coordinates of f. Raises an audit failure if the system is singular
    (it never should be: synthesis is a bijection onto the block spaces).
    """
    a = f.single_content()
    if len(a) == 0:
        out = WaveletCoefficients()
        mass = f[EMPTY_WORD]
        if mass:
            out.set_block(EMPTY_SET, [mass])
        return out
    if len(a) == 1:
        raise DomainError("size-1 subsets carry no ranking")
    matrix, col_keys = _synthesis_system(a)
    coords = linalg.solve_exact(matrix, function_to_block(f, a))
    acc: dict[Subset, np.ndarray] = {}
    for (b, vec), coef in zip(col_keys, coords):
        size = 1 if b == EMPTY_SET else math.factorial(len(b))
        if b not in acc:
            acc[b] = np.zeros(size)
        acc[b] += coef * vec
    out = WaveletCoefficients(acc)
    return out.drop_zero_blocks()


# ---------------------------------------------------------------------------
# Shuffle matrices


def generalized_kendall(sigma: Word, sigma_prime: Word, k: int) -> int:
    """Number of size-k subsets on which the two rankings disagree."""
    if content(sigma) != content(sigma_prime):
        raise DomainError("rankings must order the same items")
    n = len(sigma)
    if n > KENDALL_MAX_N:
        raise ResourceLimitError(f"{n} items exceeds the {KENDALL_MAX_N} cap")
    if not 2 <= k <= n:
        raise DomainError(f"subset size {k} outside [2, {n}]")
    items = sorted(sigma)
    return sum(
        induce(sigma, c) != induce(sigma_prime, c) for c in combinations(items, k)
    )


def shuffle_matrix(n: int, k: int) -> np.ndarray:
    """Dense similarity matrix of scale k on full rankings of {1..n}.

    Entry (i, j) depends only on the size-k disagreement count of the two
    rankings; rows and columns follow lexicographic order.
    """
    if not 2 <= k <= n:
        raise DomainError(f"scale {k} outside [2, {n}]")
    if n > SHUFFLE_MAX_N:
        raise ResourceLimitError(f"{n} items exceeds the {SHUFFLE_MAX_N} cap")
    pwords = _perm.perms(n)
    identity = tuple(range(1, n + 1))
    profile = np.array(
        [
            generalized_kendall(identity, tuple(int(v) + 1 for v in row), k)
            for row in pwords
        ],
        dtype=float,
    )
    # disagreement counts are left-translation invariant, so the full matrix
    # is the profile evaluated at rank(p_i^-1 o p_j)
    idx = _perm.compose_rank_table(n)[_perm.inverse_ranks(n)]
    scale = math.factorial(n - k) * (math.factorial(k) / math.factorial(n)) ** 2
    return scale * (math.comb(n, k) - profile[idx])


def _embedded_block_basis(b: Subset, universe: Subset) -> np.ndarray:
    """Columns: the block-space basis of b pushed up to full rankings of the
    universe through the linear-extension embedding."""
    basis = h_space_basis(b)
    cols = []
    for j in range(basis.shape[1]):
        f = block_to_function(basis[:, j], b)
        cols.append(function_to_block(linear_extension_embed(f, universe), universe))
    return np.column_stack(cols) if cols else np.zeros((0, 0))


def null_space_check(n: int, k: int) -> AuditReport:
    """Audit one shuffle matrix: symmetry, positive semidefiniteness, and the
    identification of its null space with the high-scale embedded blocks."""
    report = AuditReport(f"shuffle[k={k}]", n)
    r = shuffle_matrix(n, k)
    universe = tuple(range(1, n + 1))
    report.add(
        "symmetric",
        float(np.abs(r - r.T).max()) == 0.0,
        f"max asymmetry {float(np.abs(r - r.T).max()):.3e}",
    )
    min_eig = linalg.min_eigenvalue(r)
    report.add("positive-semidefinite", min_eig >= -PSD_TOL, f"min eig {min_eig:.3e}")
    rank = linalg.matrix_rank(r)
    expected_rank = 1 + sum(
        math.comb(n, j) * derangement(j) for j in range(2, k + 1)
    )
    report.add(
        "rank",
        rank == expected_rank,
        f"rank {rank}, expected {expected_rank}",
    )
    nullity = math.factorial(n) - rank
    expected_nullity = sum(
        math.comb(n, j) * derangement(j) for j in range(k + 1, n + 1)
    )
    report.add(
        "nullity",
        nullity == expected_nullity,
        f"nullity {nullity}, expected {expected_nullity}",
    )
    worst = 0.0
    for j in range(k + 1, n + 1):
        for b in combinations(universe, j):
            embedded = _embedded_block_basis(b, universe)
            if embedded.size:
                worst = max(worst, float(np.abs(r @ embedded).max()))
    report.add(
        "kernel-contains-high-scales",
        worst <= KERNEL_TOL,
        f"max |R v| over embedded high-scale bases {worst:.3e}",
    )
    return report


def shuffle_audit(n: int, workers: int = 1) -> AuditReport:
    """Full shuffle suite: every scale's null-space audit plus pairwise
    commutation. Per-scale audits are independent and can run on a bounded
    worker pool; results keep scale order either way."""
    report = AuditReport("shuffle", n)
    scales = list(range(2, n))
    if workers > 1 and len(scales) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            subreports = list(pool.map(lambda k: null_space_check(n, k), scales))
    else:
        subreports = [null_space_check(n, k) for k in scales]
    matrices = {k: shuffle_matrix(n, k) for k in scales}
    for k, sub in zip(scales, subreports):
        for check in sub.checks:
            report.add(f"k={k}:{check.name}", check.passed, check.detail)
    for j, k in combinations(scales, 2):
        comm = float(
            np.abs(matrices[j] @ matrices[k] - matrices[k] @ matrices[j]).max()
        )
        report.add(f"commute[{j},{k}]", comm < PSD_TOL, f"max |[R_j,R_k]| {comm:.3e}")
    return report


# ---------------------------------------------------------------------------
# Exact pairwise-comparison space


def _pairs(universe: Subset) -> list[Subset]:
    return list(combinations(tuple(sorted(universe)), 2))


def h2_basis(universe: Subset) -> dict:
    """Integer coordinates for the pair-comparison space.

    Elements are vectors over the ordered pairs (a, b), a < b, holding the
    coefficient of the elementary comparison "a over b" (whose word block is
    (+c, -c)). Returns the score vectors, one per item, and the cyclic
    vectors, one per pair; all entries are exact integers.
    """
    items = tuple(sorted(universe))
    n = len(items)
    if n < 3:
        raise DomainError("pair-space structure needs at least 3 items")
    pairs = _pairs(items)
    index = {pair: i for i, pair in enumerate(pairs)}
    scores = np.zeros((n, len(pairs)), dtype=np.int64)
    for ai, a in enumerate(items):
        for b in items:
            if b == a:
                continue
            u, v = min(a, b), max(a, b)
            scores[ai, index[(u, v)]] += 1 if a == u else -1
    cyclics = np.zeros((len(pairs), len(pairs)), dtype=np.int64)
    for pi, (a, b) in enumerate(pairs):
        row = n * np.eye(1, len(pairs), pi, dtype=np.int64)[0]
        row += scores[items.index(b)] - scores[items.index(a)]
        cyclics[pi] = row
    return {"items": items, "pairs": pairs, "scores": scores, "cyclics": cyclics}


def h2_inner(u: np.ndarray, v: np.ndarray) -> int | float:
    """Inner product in pair coordinates (half the stacked word-block dot)."""
    return (np.asarray(u) * np.asarray(v)).sum()


def pair_coordinates(x: WaveletCoefficients, universe: Subset) -> np.ndarray:
    """Pair coordinates of the size-2 blocks of a feature element."""
    coords = []
    for a, b in _pairs(universe):
        vec = x.block_or_zeros((a, b))
        coords.append(0.5 * (vec[0] - vec[1]))
    return np.array(coords)


def hodge_decompose(
    v: np.ndarray, universe: Subset
) -> tuple[np.ndarray, np.ndarray]:
    """Split a pair-coordinate vector into its score-induced part and the
    cyclic remainder (orthogonal to every score vector)."""
    basis = h2_basis(universe)
    scores = basis["scores"].astype(float)
    independent = scores[:-1]  # score vectors sum to zero; drop one
    gram = independent @ independent.T
    coef = linalg.solve_exact(gram, independent @ np.asarray(v, dtype=float))
    gradient = independent.T @ coef
    return gradient, np.asarray(v, dtype=float) - gradient


def h2_audit(n: int) -> AuditReport:
    """Exact integer audit of the pair-space geometry."""
    if not 3 <= n <= H2_AUDIT_MAX_N:
        raise ResourceLimitError(f"pair-space audit supports 3 <= n <= {H2_AUDIT_MAX_N}")
    universe = tuple(range(1, n + 1))
    basis = h2_basis(universe)
    scores, cyclics = basis["scores"], basis["cyclics"]
    report = AuditReport("h2", n)
    diag_ok = all(
        h2_inner(scores[a], scores[a]) == n - 1 for a in range(n)
    )
    report.add("score-norms", diag_ok, f"<e,e> == {n - 1} for all items")
    cross_ok = all(
        h2_inner(scores[a], scores[b]) == -1
        for a in range(n)
        for b in range(a + 1, n)
    )
    report.add("score-cross-products", cross_ok, "<e,e'> == -1 for all pairs")
    ortho_ok = all(
        h2_inner(cyclics[p], scores[a]) == 0
        for p in range(len(cyclics))
        for a in range(n)
    )
    report.add("cyclic-orthogonal-to-scores", ortho_ok, "exact integer zeros")
    score_rank = linalg.matrix_rank(scores.astype(float))
    report.add("score-rank", score_rank == n - 1, f"rank {score_rank}")
    cyclic_rank = linalg.matrix_rank(cyclics.astype(float))
    expected = math.comb(n, 2) - n + 1
    report.add("cyclic-rank", cyclic_rank == expected, f"rank {cyclic_rank}")
    stacked = np.vstack([scores, cyclics]).astype(float)
    report.add(
        "direct-sum",
        linalg.matrix_rank(stacked) == math.comb(n, 2),
        "scores + cyclics span the whole pair space",
    )
    rng = make_rng(2026)
    v = rng.integers(-5, 6, size=math.comb(n, 2)).astype(float)
    gradient, residual = hodge_decompose(v, universe)
    recomposed = float(np.abs(gradient + residual - v).max())
    report.add("decomposition-recomposes", recomposed < 1e-9, f"max err {recomposed:.3e}")
    residual_proj = float(np.abs(scores.astype(float) @ residual).max())
    report.add(
        "residual-orthogonal", residual_proj < 1e-9, f"max score overlap {residual_proj:.3e}"
    )
    return report


# ---------------------------------------------------------------------------
# Standard Young tableaux accounting


def partitions(n: int) -> list[tuple[int, ...]]:
    """Integer partitions of n, weakly decreasing, lexicographically
    descending."""

    def rec(remaining: int, cap: int) -> list[tuple[int, ...]]:
        if remaining == 0:
            return [()]
        out = []
        for part in range(min(cap, remaining), 0, -1):
            out.extend((part,) + rest for rest in rec(remaining - part, part))
        return out

    return rec(n, n)


def hook_length_count(shape: tuple[int, ...]) -> int:
    """Number of standard fillings of a shape via the hook product."""
    n = sum(shape)
    cols = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    product = 1
    for i, row_len in enumerate(shape):
        for j in range(row_len):
            product *= (row_len - j) + (cols[j] - i) - 1
    return math.factorial(n) // product


def standard_tableaux(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """All standard fillings of a shape, by backtracking over entry placement."""
    n = sum(shape)
    rows: list[list[int]] = [[] for _ in shape]
    out: list[tuple[tuple[int, ...], ...]] = []

    def place(entry: int) -> None:
        if entry > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, row in enumerate(rows):
            if len(row) >= shape[i]:
                continue
            if i > 0 and len(rows[i - 1]) <= len(row):
                continue
            row.append(entry)
            place(entry + 1)
            row.pop()

    place(1)
    return out


def level_statistic(tableau: tuple[tuple[int, ...], ...]) -> int:
    """Scale level of a standard filling.

    l is the longest initial run 1..l along the first row; the entries
    l+1, l+2, ... may continue down the first column for m further cells.
    The level is l when m is even and l-1 when m is odd.
    """
    row0 = tableau[0]
    l = 0
    while l < len(row0) and row0[l] == l + 1:
        l += 1
    m = 0
    while (
        m + 1 < len(tableau)
        and len(tableau[m + 1]) > 0
        and tableau[m + 1][0] == l + m + 1
    ):
        m += 1
    return l if m % 2 == 0 else l - 1


def _involutions(n: int) -> int:
    a, b = 1, 1  # counts for 0 and 1
    if n == 0:
        return 1
    for i in range(2, n + 1):
        a, b = b, b + (i - 1) * a
    return b


def level_multiplicities(shape: tuple[int, ...]) -> dict[int, int]:
    """Per level, the number of standard fillings of the shape with it."""
    out: dict[int, int] = {}
    for t in standard_tableaux(shape):
        level = level_statistic(t)
        out[level] = out.get(level, 0) + 1
    return out


def syt_dimension_audit(n: int) -> AuditReport:
    """Check the block-space dimension accounting against tableau counts."""
    if not 2 <= n <= SYT_MAX_N:
        raise ResourceLimitError(f"tableau audit supports 2 <= n <= {SYT_MAX_N}")
    report = AuditReport("syt", n)
    level_totals: dict[int, int] = {}
    shape_counts: dict[tuple[int, ...], int] = {}
    counts_match = True
    single_per_scale = True
    vanishing_ok = True
    for shape in partitions(n):
        count = len(standard_tableaux(shape))
        shape_counts[shape] = count
        if count != hook_length_count(shape):
            counts_match = False
        multiplicities = level_multiplicities(shape)
        for level, mult in multiplicities.items():
            # each filling at this level contributes the full shape count
            # to the detected dimension of its scale
            level_totals[level] = level_totals.get(level, 0) + count * mult
            if shape[0] < level:
                vanishing_ok = False
        if shape == (n - 1, 1):
            if sorted(multiplicities) != list(range(0, n - 1)) or set(
                multiplicities.values()
            ) != {1}:
                single_per_scale = False
    report.add("backtracking-matches-hook-counts", counts_match)
    square_sum = sum(c * c for c in shape_counts.values())
    report.add(
        "squared-counts-sum",
        square_sum == math.factorial(n),
        f"sum of squared counts {square_sum} == {n}!",
    )
    total = sum(shape_counts.values())
    report.add(
        "total-fillings",
        total == _involutions(n),
        f"{total} fillings == involutions({n})",
    )
    dims_ok = True
    details = []
    for k in range(0, n + 1):
        detected = level_totals.get(n - k, 0)
        expected = math.comb(n, k) * derangement(k)
        if detected != expected:
            dims_ok = False
        details.append(f"k={k}:{detected}")
    report.add(
        "scale-dimensions",
        dims_ok,
        "; ".join(details) + "; expected C(n,k)*derangement(k)",
    )
    report.add(
        "dimensions-sum-to-n!",
        sum(math.comb(n, k) * derangement(k) for k in range(0, n + 1))
        == math.factorial(n),
    )
    report.add("hook-shape-one-per-scale", single_per_scale)
    report.add("level-bounded-by-first-row", vanishing_ok)
    return report


# ---------------------------------------------------------------------------
# Alternative embedding


def embedding_audit(n: int, seed: int = 7) -> AuditReport:
    """Audit the linear-extension embedding on full rankings of {1..n}."""
    if not 2 <= n <= EMBED_MAX_N:
        raise ResourceLimitError(f"embedding audit supports 2 <= n <= {EMBED_MAX_N}")
    universe = tuple(range(1, n + 1))
    report = AuditReport("embedding", n)
    rng = make_rng(seed)
    chain_worst = 0.0
    recover_worst = 0.0
    mass_worst = 0.0
    cases = 0
    for size in range(2, n):
        for b in combinations(universe, size):
            for word in enumerate_rankings(b):
                f = RankingFunction.dirac(word)
                direct = linear_extension_embed(f, universe)
                mass_worst = max(mass_worst, abs(direct.total_mass() - 1.0))
                recover_worst = max(
                    recover_worst, marginal(direct, b).max_abs_diff(f)
                )
                mids = [
                    tuple(sorted(b + extra))
                    for extra in combinations(set(universe) - set(b), 1)
                ]
                if mids:
                    mid = mids[int(rng.integers(0, len(mids)))]
                    chained = linear_extension_embed(
                        linear_extension_embed(f, mid), universe
                    )
                    chain_worst = max(chain_worst, chained.max_abs_diff(direct))
                cases += 1
    report.add(
        "marginal-recovers-dirac",
        recover_worst < 1e-12,
        f"max err {recover_worst:.3e} over {cases} cases",
    )
    report.add("mass-preserved", mass_worst < 1e-12, f"max err {mass_worst:.3e}")
    report.add(
        "chained-embedding-consistent",
        chain_worst < 1e-12,
        f"max err {chain_worst:.3e}",
    )
    partition_worst = 0.0
    for size in range(2, n):
        for b in combinations(universe, size):
            acc = RankingFunction()
            for word in enumerate_rankings(b):
                for sigma in enumerate_rankings(universe):
                    if induce(sigma, b) == word:
                        acc = acc + RankingFunction.dirac(sigma)
            uniform_one = RankingFunction(
                {sigma: 1.0 for sigma in enumerate_rankings(universe)}
            )
            partition_worst = max(partition_worst, acc.max_abs_diff(uniform_one))
    report.add(
        "extension-sets-partition",
        partition_worst == 0.0,
        "each full ranking extends exactly one word per subset",
    )
    rank_ok = True
    details = []
    for j in range(2, n + 1):
        cols = []
        for b in combinations(universe, j):
            embedded = _embedded_block_basis(b, universe)
            if embedded.size:
                cols.append(embedded)
        stacked = np.hstack(cols)
        rank = linalg.matrix_rank(stacked)
        expected = math.comb(n, j) * derangement(j)
        details.append(f"j={j}:{rank}")
        if rank != expected:
            rank_ok = False
    report.add(
        "embedded-block-dimensions",
        rank_ok,
        "; ".join(details) + "; expected C(n,j)*derangement(j)",
    )
    span_ok = True
    for k in range(2, n + 1):
        cols = []
        for b in combinations(universe, k):
            for word in enumerate_rankings(b):
                indicator = np.array(
                    [
                        1.0 if induce(sigma, b) == word else 0.0
                        for sigma in enumerate_rankings(universe)
                    ]
                )
                cols.append(indicator)
        rank = linalg.matrix_rank(np.column_stack(cols))
        expected = 1 + sum(
            math.comb(n, j) * derangement(j) for j in range(2, k + 1)
        )
        if rank != expected:
            span_ok = False
    report.add(
        "indicator-span-dimensions",
        span_ok,
        "span of extension-set indicators matches the scale filtration",
    )
    return report


# ---------------------------------------------------------------------------
# Transform audit (round trips, diagram, cross-check, bounds)


def fwt_bound(f: RankingFunction) -> int:
    """Support-based ceiling on the transform's multiply-add count."""
    total = 0.0
    for a in f.global_support():
        k = len(a)
        nnz = len(list(f.restrict_content(a).items()))
        total += (math.e * math.factorial(k) + k * (2 ** (k - 1) - 1)) * nnz
    return int(math.ceil(total))


def alpha_build_bound(k_max: int) -> int:
    """Ceiling on the alpha-table construction term count."""
    return (k_max * k_max * math.factorial(k_max)) // 2


def _random_function(a: Subset, rng, sparsity: float = 1.0) -> RankingFunction:
    words = enumerate_rankings(a)
    keep = rng.random(len(words)) < sparsity
    values = rng.normal(size=len(words))
    entries = {w: float(v) for w, v, kp in zip(words, values, keep) if kp}
    return RankingFunction(entries)


def mra_audit(n: int, seed: int = 11, table: AlphaTable | None = None) -> AuditReport:
    """Audit the transform itself on random functions over {1..n}."""
    if not 2 <= n <= MRA_AUDIT_MAX_N:
        raise ResourceLimitError(f"transform audit supports 2 <= n <= {MRA_AUDIT_MAX_N}")
    table = table if table is not None else default_table(max(n, 2))
    universe = tuple(range(1, n + 1))
    rng = make_rng(seed)
    report = AuditReport("mra", n)

    roundtrip_worst = 0.0
    for size in range(2, n + 1):
        for b in combinations(universe, size):
            f = _random_function(b, rng)
            x = fwt_single(f, b, table)
            back = synthesize(x, b)
            roundtrip_worst = max(roundtrip_worst, back.max_abs_diff(f))
    report.add(
        "analysis-synthesis-round-trip",
        roundtrip_worst < ROUNDTRIP_TOL,
        f"max err {roundtrip_worst:.3e}",
    )

    uniform = RankingFunction.uniform(universe)
    x_uniform = fwt_single(uniform, universe, table)
    residue = max(
        (
            float(np.abs(vec).max())
            for b, vec in x_uniform.blocks()
            if b != EMPTY_SET
        ),
        default=0.0,
    )
    # at n <= 3 the cancellation is exact even in floats; beyond that the
    # higher blocks only vanish to rounding
    uniform_ok = abs(x_uniform.scalar - 1.0) < 1e-14 and (
        residue == 0.0 if n <= 3 else residue < 1e-14
    )
    report.add(
        "uniform-collapses-to-mass",
        uniform_ok,
        f"scalar {x_uniform.scalar!r}, max other-block residue {residue:.3e}",
    )

    diagram_worst = 0.0
    f = _random_function(universe, rng)
    x = fwt_single(f, universe, table)
    for size in range(2, n):
        for b in combinations(universe, size):
            direct = marginal(f, b)
            via_blocks = synthesize(feature_marginal(x, b), b)
            diagram_worst = max(diagram_worst, via_blocks.max_abs_diff(direct))
    report.add(
        "marginal-block-diagram",
        diagram_worst < ROUNDTRIP_TOL,
        f"max err {diagram_worst:.3e}",
    )

    cross_worst = 0.0
    for _ in range(5):
        f = _random_function(universe, rng, sparsity=0.7)
        if not list(f.items()):
            continue
        cross_worst = max(
            cross_worst, fwt(f, table).max_abs_diff(brute_force_wavelet(f))
        )
    report.add(
        "filter-bank-matches-basis-solve",
        cross_worst < CROSSCHECK_TOL,
        f"max err {cross_worst:.3e}",
    )

    bound_ok = True
    worst_ratio = 0.0
    for _ in range(20):
        f = _random_function(universe, rng, sparsity=float(rng.random()))
        if not list(f.items()):
            continue
        ops = count_ops(f, table)
        bound = fwt_bound(f)
        worst_ratio = max(worst_ratio, ops / bound if bound else 0.0)
        if ops > bound:
            bound_ok = False
    report.add(
        "operation-count-within-bound",
        bound_ok,
        f"worst ops/bound ratio {worst_ratio:.3f}",
    )
    report.add(
        "alpha-construction-within-bound",
        table.construction_ops <= alpha_build_bound(table.k_max),
        f"{table.construction_ops} <= {alpha_build_bound(table.k_max)}",
    )
    return report
