"""Independent reference computations used to freeze expected values.

Nothing here imports the elimination code under test: ranks are computed by
plain dense Gaussian elimination over Fractions or residues.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def dense_rank(matrix, p: int = 0) -> int:
    """Rank of a list-of-rows matrix over Q (p = 0) or F_p."""
    rows = [[(Fraction(x) if p == 0 else int(x) % p) for x in r] for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = (1 / rows[rank][col]) if p == 0 else pow(rows[rank][col], p - 2, p)
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] * inv
                rows[r] = [(a - f * b) if p == 0 else (a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def is_free_brute(action, order: int, identity: int = 0) -> bool:
    """x.g = x only for g = e, by scanning every pair."""
    return all(action[x][g] != x or g == identity for x in range(len(action)) for g in range(order))


def orbit_count(action) -> int:
    seen, count = set(), 0
    for x in range(len(action)):
        if x not in seen:
            count += 1
            seen.update(action[x])
    return count


def can_matrix_gset(action, table, identity: int = 0) -> list:
    """x (x) y -> (x (x) 1) delta(y) on Map(X) (x) Map(X), written out pointwise.

    (x (x) 1) delta(e_y) evaluated at (z, g) is e_x(z) e_y(z g), so the
    column for e_x (x) e_y has a 1 at (x, g) whenever x.g = y.
    """
    n, d = len(action), len(table)
    rows = [[0] * (n * n) for _ in range(n * d)]
    for x, y in product(range(n), repeat=2):
        for g in range(d):
            if action[x][g] == y:
                rows[x * d + g][x * n + y] = 1
    return rows


def can_matrix_extension(mult, automorphisms) -> list:
    """x (x) y -> sum_g x g(y) (x) delta_g from dense structure constants.

    ``mult[k][i * n + j]`` is the coefficient of e_k in e_i e_j and
    ``automorphisms[g][k][j]`` the coefficient of e_k in g(e_j).
    """
    n, d = len(mult), len(automorphisms)
    rows = [[0] * (n * n) for _ in range(n * d)]
    for i, j in product(range(n), repeat=2):
        for g, aut in enumerate(automorphisms):
            for k in range(n):
                c = aut[k][j]
                if c == 0:
                    continue
                for r in range(n):
                    rows[r * d + g][i * n + j] += c * mult[r][i * n + k]
    return rows
