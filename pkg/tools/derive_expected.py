#!/usr/bin/env python3
"""Independent derivations of expected values frozen into the test suite.

Standard library only, exact rational arithmetic, and no imports from the
package under test: the block decompositions below are computed by solving
the defining linear system (block bases from marginal constraints, synthesis
columns from the window formula) rather than by any filter cascade. Run

    python3 tools/derive_expected.py

and copy the printed literals into tests where they are asserted.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations

EMPTY = ()


def words_of(items):
    return sorted(permutations(sorted(items)))


def induce(word, subset):
    members = set(subset)
    return tuple(x for x in word if x in members)


# --- exact linear algebra -------------------------------------------------


def rref(matrix):
    rows = [list(r) for r in matrix]
    n_rows, n_cols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1, 1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def nullspace(matrix):
    reduced, pivots = rref(matrix)
    n_cols = len(matrix[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def solve(matrix, rhs):
    augmented = [list(row) + [val] for row, val in zip(matrix, rhs)]
    reduced, pivots = rref(augmented)
    n = len(matrix[0])
    assert pivots == list(range(n)), "singular system"
    return [reduced[i][n] for i in range(n)]


# --- block spaces and synthesis from the definitions ----------------------


def h_basis(b):
    """Exact basis of the block space of b (vanishing marginals below)."""
    ws = words_of(b)
    rows = [[Fraction(1)] * len(ws)]
    for size in range(2, len(b)):
        for c in combinations(sorted(b), size):
            for wc in words_of(c):
                rows.append(
                    [Fraction(1) if induce(w, c) == wc else Fraction(0) for w in ws]
                )
    return nullspace(rows)


def synthesize(blocks, a):
    """Evaluate the window formula exactly: scalar at 1/k!, each contiguous
    window of length L at 1/(k-L+1)!."""
    k = len(a)
    ws = words_of(a)
    out = {}
    for sigma in ws:
        val = blocks.get(EMPTY, {}).get(EMPTY, Fraction(0)) * Fraction(
            1, math.factorial(k)
        )
        for i in range(k):
            for j in range(i + 1, k):
                window = sigma[i : j + 1]
                b = tuple(sorted(window))
                if b in blocks:
                    val += blocks[b].get(window, Fraction(0)) * Fraction(
                        1, math.factorial(k - (j - i + 1) + 1)
                    )
        out[sigma] = val
    return out


def transform(f, a):
    """Exact block decomposition of a function on the rankings of a, by
    solving against the synthesized block-basis columns."""
    ws = words_of(a)
    subsets = [EMPTY] + [
        c for size in range(2, len(a) + 1) for c in combinations(sorted(a), size)
    ]
    columns = []
    keys = []
    for b in subsets:
        if b == EMPTY:
            basis = [[Fraction(1)]]
        else:
            basis = h_basis(b)
        for vec in basis:
            entry = {b: dict(zip(words_of(b) if b else [EMPTY], vec))}
            col = synthesize(entry, a)
            columns.append([col[w] for w in ws])
            keys.append((b, vec))
    matrix = [[columns[c][r] for c in range(len(columns))] for r in range(len(ws))]
    coords = solve(matrix, [f.get(w, Fraction(0)) for w in ws])
    blocks = {}
    for (b, vec), coef in zip(keys, coords):
        if coef == 0:
            continue
        bw = words_of(b) if b else [EMPTY]
        target = blocks.setdefault(b, {w: Fraction(0) for w in bw})
        for w, v in zip(bw, vec):
            target[w] += coef * v
    return {
        b: entries
        for b, entries in blocks.items()
        if any(v != 0 for v in entries.values())
    }


def merge(into, blocks):
    for b, entries in blocks.items():
        target = into.setdefault(b, {})
        for w, v in entries.items():
            target[w] = target.get(w, Fraction(0)) + v
    return into


def show(label, blocks):
    print(f"# {label}")
    for b in sorted(blocks, key=lambda s: (len(s), s)):
        entries = {
            w: str(v) for w, v in sorted(blocks[b].items()) if v != 0
        }
        if entries:
            print(f"  {b}: {entries}")
    print()


# --- smoothing by explicit bijection average ------------------------------


def transport(entries, b, b_prime):
    """Average over item bijections b -> b_prime fixing the overlap."""
    b, b_prime = tuple(sorted(b)), tuple(sorted(b_prime))
    movers_src = sorted(set(b) - set(b_prime))
    movers_dst = sorted(set(b_prime) - set(b))
    out = {w: Fraction(0) for w in words_of(b_prime)}
    images = list(permutations(movers_dst))
    for image in images:
        mapping = {x: x for x in set(b) & set(b_prime)}
        mapping.update(zip(movers_src, image))
        for w, v in entries.items():
            out[tuple(mapping[x] for x in w)] += v * Fraction(1, len(images))
    return out


def kernel_smooth_scale(blocks, universe, k, h):
    n = len(universe)
    h_eff = min(h, k, n - k)
    weights = {
        j: Fraction(1, (h_eff + 1) * math.comb(k, j) * math.comb(n - k, j))
        for j in range(h_eff + 1)
    }
    out = {}
    for target in combinations(sorted(universe), k):
        acc = {w: Fraction(0) for w in words_of(target)}
        hit = False
        for b, entries in blocks.items():
            dist = len(set(b) - set(target))
            if dist not in weights:
                continue
            hit = True
            for w, v in transport(entries, b, target).items():
                acc[w] += weights[dist] * v
        if hit and any(v != 0 for v in acc.values()):
            out[target] = acc
    return out


def main() -> None:
    # transforms of every Dirac on the rankings of {1,2,3}
    tri = (1, 2, 3)
    for word in words_of(tri):
        show(f"dirac {word} over {tri}", transform({word: Fraction(1)}, tri))

    # one size-4 Dirac
    quad = (1, 2, 3, 4)
    show("dirac (2,4,1,3) over ⟦4⟧", transform({(2, 4, 1, 3): Fraction(1)}, quad))

    # mixed-content function: Dirac on 1>2 plus Dirac on 1>2>3
    mixed = merge(
        transform({(1, 2): Fraction(1)}, (1, 2)),
        transform({(1, 2, 3): Fraction(1)}, tri),
    )
    show("delta_12 + delta_123", mixed)

    # the CLI toy file: 1>2>3, 2>1>3, 3>1
    toy = merge(
        transform({(1, 2, 3): Fraction(1), (2, 1, 3): Fraction(1)}, tri),
        transform({(3, 1): Fraction(1)}, (1, 3)),
    )
    show("toy file delta_123 + delta_213 + delta_31", toy)

    # fixed model for the unbiasedness criterion: exact feature blocks
    p = {
        (1, 2, 3, 4): Fraction(5, 24),
        (2, 1, 3, 4): Fraction(4, 24),
        (3, 2, 1, 4): Fraction(3, 24),
        (4, 3, 2, 1): Fraction(3, 24),
        (1, 3, 2, 4): Fraction(2, 24),
        (2, 3, 4, 1): Fraction(2, 24),
        (1, 4, 3, 2): Fraction(2, 24),
        (4, 1, 2, 3): Fraction(1, 24),
        (3, 4, 1, 2): Fraction(1, 24),
        (2, 4, 3, 1): Fraction(1, 24),
    }
    assert sum(p.values()) == 1
    show("unbiasedness model blocks", transform(p, quad))

    # smoothing example: single pair block {1,2} holding the comparison
    # vector (1, -1), universe {1,2,3,4}, bandwidth 1
    blocks2 = {(1, 2): {(1, 2): Fraction(1), (2, 1): Fraction(-1)}}
    show(
        "smooth n=4 h=1 of comparison on {1,2}",
        kernel_smooth_scale(blocks2, quad, 2, 1),
    )


if __name__ == "__main__":
    main()
