"""Smith normal form over the integers, enough to read off finitely generated abelian groups."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank`` plus cyclic factors ``Z/d`` with ``d_1 | d_2 | ...`` and every ``d > 1``."""

    rank: int
    torsion: tuple[int, ...]

    @property
    def order(self) -> int | None:
        """``None`` for infinite groups."""
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.rank
        return " + ".join(parts) if parts else "0"


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Diagonal entries (non-negative, divisibility chain) of the Smith form."""
    a = [list(r) for r in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pick the smallest non-zero entry in the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    done = False
            if not done:
                # a remainder is smaller than the pivot: move it in and repeat
                i, j = min(
                    ((i, t) for i in range(t + 1, rows) if a[i][t]),
                    default=None,
                    key=lambda ij: abs(a[ij[0]][ij[1]]),
                ) or (t, min((j for j in range(t + 1, cols) if a[t][j]), key=lambda j: abs(a[t][j])))
                if j == t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for r in a:
                        r[t], r[j] = r[j], r[t]
                continue
            # the pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def cokernel(matrix: list[list[int]]) -> AbelianGroup:
    """The group ``Z^rows / (column span)``."""
    rows = len(matrix)
    diag = smith_diagonal(matrix)
    rank = rows - sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroup(rank, torsion)
