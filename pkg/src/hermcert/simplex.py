"""Dense tableau simplex over exact rationals with Bland's rule."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class LPError(RuntimeError):
    pass


def simplex_min(A: Sequence[Sequence], b: Sequence, c: Sequence, basis: Sequence[int],
                max_pivots: int = 100_000) -> tuple[list[Fraction], Fraction]:
    """Minimize c.x subject to A x = b, x >= 0.

    ``b`` must be nonnegative and the columns listed in ``basis`` must form an
    identity matrix in ``A``, so the starting basis is feasible. Bland's rule
    (smallest entering index, smallest leaving basic index among ties) rules
    out cycling.
    """
    m = len(A)
    nvar = len(c)
    if len(b) != m or len(basis) != m:
        raise ValueError("shape mismatch")
    if any(x < 0 for x in b):
        raise ValueError("right-hand side must be nonnegative")
    T = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    basis = list(basis)
    for i, j in enumerate(basis):
        if any(T[r][j] != (1 if r == i else 0) for r in range(m)):
            raise ValueError(f"column {j} is not a unit column for row {i}")
    cost = [Fraction(v) for v in c] + [Fraction(0)]
    red = cost[:]
    for i, j in enumerate(basis):
        cb = cost[j]
        if cb:
            row = T[i]
            for k in range(nvar + 1):
                if row[k]:
                    red[k] -= cb * row[k]

    for _ in range(max_pivots):
        enter = next((j for j in range(nvar) if red[j] < 0), None)
        if enter is None:
            x = [Fraction(0)] * nvar
            for i, j in enumerate(basis):
                x[j] = T[i][nvar]
            return x, -red[nvar]
        leave, best = -1, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][nvar] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave < 0:
            raise LPError("objective unbounded below")
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv if v else v for v in prow]
            T[leave] = prow
        nz = [k for k in range(nvar + 1) if prow[k]]
        for i in range(m):
            if i != leave:
                row = T[i]
                factor = row[enter]
                if factor:
                    for k in nz:
                        row[k] -= factor * prow[k]
        factor = red[enter]
        for k in nz:
            red[k] -= factor * prow[k]
        basis[leave] = enter
    raise LPError(f"no optimum after {max_pivots} pivots")
