"""Revised two-phase simplex over Fractions with Bland's anti-cycling rule.

Solves  min c.z  s.t.  A z = b,  z >= 0.  Meant for few rows and many
columns; the nucleolus hands it the dual of each stage problem, which has
one row per weight class plus one.  The basis inverse is kept exactly and
columns are priced in integer arithmetic, stopping at the first improving
column (which is all Bland's rule needs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class LPError(RuntimeError):
    pass


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple[Fraction, ...] | None
    value: Fraction | None


def _integer_scale(values: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values]


class _Revised:
    def __init__(self, cols: list[list[int]], rhs: list[Fraction]):
        # cols[k] is column k of the integer constraint matrix; artificials
        # occupy the last m columns
        self.cols = cols
        m = len(rhs)
        self.m = m
        self.binv = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
        self.xb = list(rhs)
        self.basis = [len(cols) - m + i for i in range(m)]

    def column(self, k: int) -> list[Fraction]:
        a = self.cols[k]
        nz = [(j, v) for j, v in enumerate(a) if v]
        return [sum((row[j] * v for j, v in nz), ZERO) for row in self.binv]

    def duals(self, cost: Sequence[int]) -> tuple[list[int], int]:
        y = [ZERO] * self.m
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.binv[i]
                for j in range(self.m):
                    if row[j]:
                        y[j] += cb * row[j]
        den = 1
        for v in y:
            den = den * v.denominator // math.gcd(den, v.denominator)
        return [int(v * den) for v in y], den

    def pivot(self, r: int, k: int, u: list[Fraction]) -> None:
        inv = 1 / u[r]
        prow = [v * inv for v in self.binv[r]]
        self.binv[r] = prow
        self.xb[r] *= inv
        for i in range(self.m):
            f = u[i]
            if i != r and f:
                row = self.binv[i]
                self.binv[i] = [a - f * b for a, b in zip(row, prow)]
                self.xb[i] -= f * self.xb[r]
        self.basis[r] = k

    def run(self, cost: Sequence[int], allowed: int, max_iter: int) -> str:
        for _ in range(max_iter):
            Y, den = self.duals(cost)
            nzY = [(j, v) for j, v in enumerate(Y) if v]
            basic = set(self.basis)
            entering = None
            for k in range(allowed):
                if k in basic:
                    continue
                a = self.cols[k]
                d = cost[k] * den - sum(v * a[j] for j, v in nzY)
                if d < 0:
                    entering = k
                    break
            if entering is None:
                return "optimal"
            u = self.column(entering)
            best = None
            for i, ui in enumerate(u):
                if ui > 0:
                    key = (self.xb[i] / ui, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering, u)
        raise LPError("simplex iteration limit reached")


def solve_standard(
    c: Sequence, A: Sequence[Sequence], b: Sequence, max_iter: int = 100_000
) -> LPResult:
    m = len(A)
    n = len(c)
    cost = [Fraction(v) for v in c]
    rows, rhs = [], []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        if len(row) != n:
            raise ValueError("constraint row length does not match the cost vector")
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        # scaling a row by a positive constant leaves the program unchanged
        scaled = _integer_scale(row + [bi])
        rows.append(scaled[:n])
        rhs.append(Fraction(scaled[n]))
    cols = [[rows[i][k] for i in range(m)] for k in range(n)]
    cols += [[1 if i == j else 0 for i in range(m)] for j in range(m)]
    lp = _Revised(cols, rhs)

    lp.run([0] * n + [1] * m, n + m, max_iter)
    if any(bcol >= n and lp.xb[i] > 0 for i, bcol in enumerate(lp.basis)):
        return LPResult("infeasible", None, None)

    # swap zero-level artificials for real columns; an artificial that cannot
    # leave marks a redundant row and stays basic at zero for good
    for i in range(m):
        if lp.basis[i] < n:
            continue
        for k in range(n):
            if k in lp.basis:
                continue
            u = lp.column(k)
            if u[i] != 0:
                lp.pivot(i, k, u)
                break

    status = lp.run(_integer_scale(cost) + [0] * m, n, max_iter)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = [ZERO] * n
    for i, bcol in enumerate(lp.basis):
        if bcol < n:
            x[bcol] = lp.xb[i]
    value = sum((ci * xi for ci, xi in zip(cost, x)), ZERO)
    return LPResult("optimal", tuple(x), value)
