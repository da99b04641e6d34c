"""Sparse linear algebra over F2.

Vectors are Python ints used as bitsets: bit ``i`` set means coordinate ``i``
is 1.  Matrices are lists of such ints, one per row.
"""
from __future__ import annotations

from dataclasses import dataclass


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m ^= 1 << i
    return m


def parity(mask: int) -> int:
    return mask.bit_count() & 1


@dataclass(frozen=True)
class Solution:
    """Outcome of :func:`solve`.

    Exactly one of ``x`` (a solution of ``A x = b``) and ``certificate``
    (a row combination ``y`` with ``y A = 0`` and ``y b = 1``) is set.
    """

    x: int | None
    certificate: int | None

    @property
    def feasible(self) -> bool:
        return self.x is not None


def solve(rows: list[int], rhs: int) -> Solution:
    """Solve ``A x = b`` over F2 by Gaussian elimination.

    ``rows[r]`` is the bitset of unknowns appearing in equation ``r`` and bit
    ``r`` of ``rhs`` is its right-hand side.  Free unknowns are set to zero,
    so the returned solution depends only on the input order.
    """
    # each working row carries (coefficients, rhs bit, combination of input rows)
    pivots: dict[int, tuple[int, int, int]] = {}
    for r, row in enumerate(rows):
        coeffs, b, combo = row, (rhs >> r) & 1, 1 << r
        while coeffs:
            col = coeffs.bit_length() - 1
            hit = pivots.get(col)
            if hit is None:
                break
            coeffs ^= hit[0]
            b ^= hit[1]
            combo ^= hit[2]
        if coeffs:
            pivots[coeffs.bit_length() - 1] = (coeffs, b, combo)
        elif b:
            return Solution(None, combo)
    x = 0
    for col in sorted(pivots):
        coeffs, b, _ = pivots[col]
        # lower columns of this row are already decided
        if parity(coeffs & x & ~(1 << col)) ^ b:
            x |= 1 << col
    return Solution(x, None)


def rank(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in basis:
                basis[top] = row
                break
            row ^= basis[top]
    return len(basis)


def apply(columns: list[int], x: int) -> int:
    """Compute ``A x`` where ``columns[j]`` is column ``j`` of ``A``."""
    out = 0
    for j in bits(x):
        out ^= columns[j]
    return out


def transpose(vectors: list[int], size: int) -> list[int]:
    """Transpose a list of bitsets of length ``size``."""
    out = [0] * size
    for j, v in enumerate(vectors):
        for i in bits(v):
            out[i] |= 1 << j
    return out


def nullspace(rows: list[int], ncols: int) -> list[int]:
    """A basis of ``{x : A x = 0}``."""
    pivots: dict[int, int] = {}
    for row in rows:
        for col, prow in pivots.items():
            if (row >> col) & 1:
                row ^= prow
        if row:
            top = row.bit_length() - 1
            # keep the basis fully reduced so back substitution is trivial
            for k, other in pivots.items():
                if (other >> top) & 1:
                    pivots[k] = other ^ row
            pivots[top] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x = 1 << free
        for col, row in pivots.items():
            if (row >> free) & 1:
                x |= 1 << col
        basis.append(x)
    return basis
