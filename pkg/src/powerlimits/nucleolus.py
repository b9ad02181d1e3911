"""Exact nucleolus of small weighted games.

Players of equal weight are symmetric, and the nucleolus is symmetric, so the
stage programs run on one variable per weight and one constraint per
coalition *type* (how many players of each weight it holds).  Each stage
minimizes the largest free excess; coalitions carrying positive dual weight
are tight in every optimum and get fixed.  Stages repeat until the fixed
coalitions pin the allocation down.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .core import PowerVector, to_fraction
from .counting import WeightedGame
from .lp import LPError, solve_standard

MAX_PLAYERS = 12


class GameTooLarge(ValueError):
    pass


def _check_size(game: WeightedGame) -> None:
    if game.n > MAX_PLAYERS:
        raise GameTooLarge(f"nucleolus is capped at {MAX_PLAYERS} players, got {game.n}")


def excess_vector(game: WeightedGame, x) -> tuple[Fraction, ...]:
    """Sorted (nonincreasing) excesses v(S) - x(S) over proper nonempty S."""
    _check_size(game)
    xs = [to_fraction(v) for v in x]
    n = game.n
    if len(xs) != n:
        raise ValueError("allocation has the wrong length")
    if sum(xs) != 1:
        raise ValueError("allocation must sum to 1")
    w = game.player_int_weights
    Q = game.int_quota
    full = (1 << n) - 1
    wsum = [0] * (1 << n)
    xsum = [Fraction(0)] * (1 << n)
    out = []
    for mask in range(1, full):
        low = mask & -mask
        i = low.bit_length() - 1
        wsum[mask] = wsum[mask ^ low] + w[i]
        xsum[mask] = xsum[mask ^ low] + xs[i]
        out.append((1 if wsum[mask] >= Q else 0) - xsum[mask])
    out.sort(reverse=True)
    return tuple(out)


def lex_compare(a, b) -> int:
    """-1, 0 or 1 as a is lexicographically less than, equal to, or greater than b."""
    if len(a) != len(b):
        raise ValueError("excess vectors differ in length")
    for u, v in zip(a, b):
        if u != v:
            return -1 if u < v else 1
    return 0


def lex_less(a, b) -> bool:
    return lex_compare(a, b) < 0


class _Span:
    """Span of integer type vectors, tested through an integer basis of its
    orthogonal complement: a is in the span iff z.a = 0 for every z kept."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rank = 0
        self.perp = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]

    def contains(self, vec) -> bool:
        return all(not sum(z * a for z, a in zip(zs, vec)) for zs in self.perp)

    def add(self, vec) -> bool:
        dots = [sum(z * a for z, a in zip(zs, vec)) for zs in self.perp]
        k = next((i for i, d in enumerate(dots) if d), None)
        if k is None:
            return False
        z0, d0 = self.perp[k], dots[k]
        perp = []
        for zs, d in zip(self.perp, dots):
            if zs is z0:
                continue
            if d:
                zs = [d0 * a - d * b for a, b in zip(zs, z0)]
                g = math.gcd(*zs)
                zs = [a // g for a in zs]
            perp.append(zs)
        self.perp = perp
        self.rank += 1
        return True


def _solve_square(rows: list[tuple[int, ...]], rhs: list[Fraction]) -> list[Fraction]:
    k = len(rows)
    M = [[Fraction(a) for a in r] + [b] for r, b in zip(rows, rhs)]
    for col in range(k):
        piv = next(r for r in range(col, k) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [a * inv for a in M[col]]
        for r in range(k):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][k] for r in range(k)]


def nucleolus(game: WeightedGame, imputations: bool | None = None) -> PowerVector:
    """Nucleolus over the imputation set.

    ``imputations=None`` imposes x_i >= v({i}) whenever the imputation set is
    nonempty and falls back to the prenucleolus otherwise; True/False force
    the choice (True raises if there are no imputations).
    """
    _check_size(game)
    Q = game.int_quota

    weights = sorted(set(game.int_weights), reverse=True)
    counts = [0] * len(weights)
    for w, c in zip(game.int_weights, game.counts):
        counts[weights.index(w)] += c
    K = len(weights)

    def v(a) -> int:
        return 1 if sum(x * w for x, w in zip(a, weights)) >= Q else 0

    singles = [v(tuple(1 if k == j else 0 for k in range(K))) for j in range(K)]
    feasible_floor = sum(s * c for s, c in zip(singles, counts)) <= 1
    if imputations is None:
        imputations = feasible_floor
    elif imputations and not feasible_floor:
        raise ValueError("the game has no imputations")
    lower = [Fraction(s) if imputations else Fraction(0) for s in singles]

    grand = tuple(counts)
    types = [
        a
        for a in itertools.product(*(range(c + 1) for c in counts))
        if any(a) and a != grand
    ]
    value = {a: v(a) for a in types}
    value[grand] = 1

    span = _Span(K)
    span.add(grand)
    fixed: list[tuple[tuple[int, ...], Fraction]] = [(grand, Fraction(0))]
    free = [a for a in types if not span.contains(a)]

    def dot(a, y):
        return sum((ai * yi for ai, yi in zip(a, y)), Fraction(0))

    while span.rank < K:
        n_free, n_fixed = len(free), len(fixed)
        bounded = [j for j in range(K) if imputations]
        ncols = n_free + 2 * n_fixed + len(bounded)
        A = [[Fraction(0)] * ncols for _ in range(K + 1)]
        cost = [Fraction(0)] * ncols
        for col, a in enumerate(free):
            for j in range(K):
                A[j][col] = Fraction(a[j])
            A[K][col] = Fraction(1)
            cost[col] = -(value[a] - dot(a, lower))
        for f, (a, e) in enumerate(fixed):
            plus, minus = n_free + 2 * f, n_free + 2 * f + 1
            s = value[a] - e - dot(a, lower)
            for j in range(K):
                A[j][plus] = Fraction(a[j])
                A[j][minus] = Fraction(-a[j])
            cost[plus], cost[minus] = -s, s
        for k, j in enumerate(bounded):
            A[j][n_free + 2 * n_fixed + k] = Fraction(1)
        b = [Fraction(0)] * K + [Fraction(1)]
        res = solve_standard(cost, A, b)
        if res.status != "optimal":
            raise LPError(f"stage program ended {res.status}")
        t_star = -res.value
        newly = [a for col, a in enumerate(free) if res.x[col] > 0]
        for a in newly:
            if span.add(a):
                fixed.append((a, t_star))
        free = [a for a in free if not span.contains(a)]

    # fixed rows are linearly independent by construction
    rows = [a for a, _ in fixed]
    rhs = [value[a] - e for a, e in fixed]
    y = _solve_square(rows, rhs)
    by_weight = dict(zip(weights, y))
    return PowerVector(game.expand([by_weight[w] for w in game.int_weights]), "nucleolus")


def random_imputation(game: WeightedGame, rng, denominator: int = 1000) -> tuple[Fraction, ...]:
    """A random rational point of the simplex (used to challenge the nucleolus)."""
    n = game.n
    cuts = sorted(rng.randint(0, denominator) for _ in range(n - 1))
    pts = [0, *cuts, denominator]
    return tuple(Fraction(pts[i + 1] - pts[i], denominator) for i in range(n))


