"""Smith normal form of integer matrices, with unimodular transforms.

``smith_normal_form(A)`` returns ``(D, U, V)`` with ``U @ A @ V == D``, ``U``
and ``V`` unimodular, and the nonzero diagonal of ``D`` positive with each
entry dividing the next. Entries are Python ints, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Diagonalize ``a`` (m x n). ``ncols`` is required when ``a`` has no rows."""
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    d = [list(map(int, row)) for row in a]
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        if k:
            for row in d:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = d[i][t] // p
                add_row(t, i, -q)
                if d[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = d[t][j] // p
                add_col(t, j, -q)
                if d[t][j]:
                    dirty = True
            if dirty:
                # a smaller remainder exists in row/column t; move it to the pivot
                best = min(
                    [(abs(d[i][t]), i, t) for i in range(t + 1, m) if d[i][t]]
                    + [(abs(d[t][j]), t, j) for j in range(t + 1, n) if d[t][j]]
                )
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # divisibility: pull in any entry the pivot does not divide
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return d, u, v


def invariant_factors(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    d, _, _ = smith_normal_form(a, ncols)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + sum of Z/t for t in torsion (each t > 1)."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.torsion) <= 1

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def cokernel(relations: Sequence[Sequence[int]], ncols: int) -> AbelianGroup:
    """Z^ncols modulo the row lattice of ``relations``."""
    factors = invariant_factors(relations, ncols) if relations else []
    return AbelianGroup(ncols - len(factors), tuple(f for f in factors if f > 1))
