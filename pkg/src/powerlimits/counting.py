"""Weighted games and exact swing counting.

Games are stored as weight classes with multiplicities.  Counting works on
the integerized form only: coalition-weight profiles are built class by
class with binomial convolution, so the cost depends on the number of
classes and the total integer weight, never on 2^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .core import PowerVector, WeightVector, to_fraction

BRUTE_FORCE_MAX_PLAYERS = 22


@lru_cache(maxsize=256)
def binomial_row(n: int) -> tuple[int, ...]:
    """(C(n,0), ..., C(n,n)) in exact integers."""
    row = [1] * (n + 1)
    for k in range(n):
        row[k + 1] = row[k] * (n - k) // (k + 1)
    return tuple(row)


def binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class WeightedGame:
    """[q; w] with players listed class by class.

    ``quota`` and ``classes`` keep the rational data as given; ``int_quota``
    and ``int_weights`` are the equivalent integer representation used for
    counting (w(S) >= q  iff  int weight of S >= int_quota).
    """

    quota: Fraction
    classes: tuple[tuple[Fraction, int], ...]
    int_quota: int
    int_weights: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(c for _, c in self.classes)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.classes)

    @property
    def total_weight(self) -> Fraction:
        return sum((w * c for w, c in self.classes), Fraction(0))

    @property
    def int_total(self) -> int:
        return sum(w * c for w, c in zip(self.int_weights, self.counts))

    @property
    def relative_quota(self) -> Fraction:
        return self.quota / self.total_weight

    @cached_property
    def player_class(self) -> tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.counts) for _ in range(c))

    @cached_property
    def player_int_weights(self) -> tuple[int, ...]:
        return tuple(self.int_weights[j] for j in self.player_class)

    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, c in self.classes for _ in range(c))

    def relative_weights(self) -> WeightVector:
        total = self.total_weight
        return WeightVector(w / total for w in self.weights())

    def expand(self, per_class: Sequence) -> tuple:
        """Spread one value per class over the players, class-major."""
        return tuple(v for v, c in zip(per_class, self.counts) for _ in range(c))


def make_game(quota, classes: Iterable[tuple[object, int]]) -> WeightedGame:
    """Build [quota; weights] from (weight, multiplicity) pairs."""
    q = to_fraction(quota)
    cls = tuple((to_fraction(w), int(c)) for w, c in classes)
    if not cls:
        raise ValueError("a game needs at least one player")
    for w, c in cls:
        if w < 0:
            raise ValueError(f"negative weight {w}")
        if c < 1:
            raise ValueError(f"class multiplicity must be >= 1, got {c}")
    if q <= 0:
        raise ValueError("quota must be positive so that the empty coalition loses")
    total = sum((w * c for w, c in cls), Fraction(0))
    if q > total:
        raise ValueError("quota exceeds the total weight: v(N) would be 0")

    scale = math.lcm(q.denominator, *(w.denominator for w, _ in cls))
    ints = [int(w * scale) for w, _ in cls]
    qint = int(q * scale)
    g = math.gcd(*ints)
    ints = [w // g for w in ints]
    # w(S)/g >= Q/g  iff  w(S)/g >= ceil(Q/g) because w(S)/g is an integer
    qint = -(-qint // g)
    return WeightedGame(quota=q, classes=cls, int_quota=qint, int_weights=tuple(ints))


def game_from_weights(quota, weights: Iterable) -> WeightedGame:
    """Like make_game, grouping consecutive equal weights; player order is kept."""
    classes: list[list] = []
    for w in weights:
        w = to_fraction(w)
        if classes and classes[-1][0] == w:
            classes[-1][1] += 1
        else:
            classes.append([w, 1])
    return make_game(quota, [(w, c) for w, c in classes])


def is_winning(game: WeightedGame, coalition: Iterable[int]) -> bool:
    members = set(coalition)
    n = game.n
    for i in members:
        if not 0 <= i < n:
            raise IndexError(f"player {i} out of range 0..{n - 1}")
    weights = game.player_int_weights
    return sum(weights[i] for i in members) >= game.int_quota


def dual_game(game: WeightedGame) -> WeightedGame:
    """[w(N) - Q + 1; w] on the integer representation."""
    classes = [(Fraction(w), c) for w, c in zip(game.int_weights, game.counts)]
    return make_game(game.int_total - game.int_quota + 1, classes)


@dataclass(frozen=True)
class WeightProfile:
    """Number of coalitions of the scope players per integer weight."""

    counts: dict[int, int]
    scope: tuple[int, ...]

    @property
    def players(self) -> int:
        return sum(self.scope)

    def window(self, lo: int, hi: int) -> int:
        """Coalitions with weight in [lo, hi]."""
        return sum(v for t, v in self.counts.items() if lo <= t <= hi)


def _scope(game: WeightedGame, exclude: Sequence[int] | None) -> tuple[int, ...]:
    counts = game.counts
    if exclude is None:
        return counts
    if len(exclude) != len(counts):
        raise ValueError("exclude needs one entry per class")
    scope = tuple(c - e for c, e in zip(counts, exclude))
    if any(s < 0 for s in scope) or any(e < 0 for e in exclude):
        raise ValueError("cannot exclude more players than a class holds")
    return scope


def _convolution_order(weights, scope):
    # biggest classes first keeps the sparse dict small for as long as possible
    return sorted(
        ((w, c) for w, c in zip(weights, scope) if c > 0), key=lambda wc: -wc[1]
    )


def weight_profile(game: WeightedGame, exclude: Sequence[int] | None = None) -> WeightProfile:
    scope = _scope(game, exclude)
    profile = {0: 1}
    for w, c in _convolution_order(game.int_weights, scope):
        row = binomial_row(c)
        nxt: dict[int, int] = {}
        for t, v in profile.items():
            for k, b in enumerate(row):
                key = t + k * w
                nxt[key] = nxt.get(key, 0) + v * b
        profile = nxt
    return WeightProfile(counts=profile, scope=scope)


def size_weight_profile(
    game: WeightedGame, exclude: Sequence[int] | None = None
) -> dict[tuple[int, int], int]:
    """Coalition counts keyed by (size, integer weight)."""
    scope = _scope(game, exclude)
    profile = {(0, 0): 1}
    for w, c in _convolution_order(game.int_weights, scope):
        row = binomial_row(c)
        nxt: dict[tuple[int, int], int] = {}
        for (s, t), v in profile.items():
            for k, b in enumerate(row):
                key = (s + k, t + k * w)
                nxt[key] = nxt.get(key, 0) + v * b
        profile = nxt
    return profile


def _leave_one_out(game: WeightedGame, j: int) -> list[int]:
    ex = [0] * len(game.counts)
    ex[j] = 1
    return ex


@dataclass(frozen=True)
class SwingCounts:
    per_class: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(e * c for e, c in zip(self.per_class, self.counts))

    @property
    def per_player(self) -> tuple[int, ...]:
        return tuple(e for e, c in zip(self.per_class, self.counts) for _ in range(c))


def swing_counts(game: WeightedGame) -> SwingCounts:
    Q = game.int_quota
    eta = []
    for j, k in enumerate(game.int_weights):
        if k == 0:
            eta.append(0)
            continue
        prof = weight_profile(game, _leave_one_out(game, j))
        eta.append(prof.window(Q - k, Q - 1))
    return SwingCounts(per_class=tuple(eta), counts=game.counts)


def banzhaf(game: WeightedGame, swings: SwingCounts | None = None) -> PowerVector:
    swings = swings or swing_counts(game)
    total = swings.total
    return PowerVector(game.expand([Fraction(e, total) for e in swings.per_class]), "banzhaf")


def _ssi_weighted_sum(game: WeightedGame, j: int) -> int:
    """sum over swings S of player in class j of |S|! (n-|S|-1)!"""
    Q, k, n = game.int_quota, game.int_weights[j], game.n
    if k == 0:
        return 0
    by_size: dict[int, int] = {}
    for (s, t), v in size_weight_profile(game, _leave_one_out(game, j)).items():
        if Q - k <= t <= Q - 1:
            by_size[s] = by_size.get(s, 0) + v
    fact = math.factorial
    return sum(v * fact(s) * fact(n - s - 1) for s, v in by_size.items())


def shapley_shubik(game: WeightedGame) -> PowerVector:
    denom = math.factorial(game.n)
    per_class = [Fraction(_ssi_weighted_sum(game, j), denom) for j in range(len(game.counts))]
    return PowerVector(game.expand(per_class), "shapley-shubik")


def brute_force_indices(game: WeightedGame) -> tuple[SwingCounts, PowerVector, PowerVector]:
    """Literal 2^n enumeration: (per-player swing counts, BZI, SSI)."""
    n = game.n
    if n > BRUTE_FORCE_MAX_PLAYERS:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_MAX_PLAYERS} players, got {n}")
    w = game.player_int_weights
    Q = game.int_quota
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + w[low.bit_length() - 1]
    eta = [0] * n
    by_size = [[0] * n for _ in range(n)]
    for mask in range(1 << n):
        t = sums[mask]
        if t >= Q:
            continue
        size = bin(mask).count("1")
        for i in range(n):
            if not mask >> i & 1 and t + w[i] >= Q:
                eta[i] += 1
                by_size[i][size] += 1
    total = sum(eta)
    bzi = PowerVector([Fraction(e, total) for e in eta], "banzhaf")
    fact = math.factorial
    ssi = PowerVector(
        [
            Fraction(sum(c * fact(s) * fact(n - s - 1) for s, c in enumerate(row)), fact(n))
            for row in by_size
        ],
        "shapley-shubik",
    )
    return SwingCounts(per_class=tuple(eta), counts=(1,) * n), bzi, ssi


def eta_one_big(k: int, m: int, Q: int) -> tuple[int, int]:
    """Swing counts in [Q; k, 1 x m] for the big player and for one unit player."""
    if not 0 < Q <= k + m:
        raise ValueError("need 0 < Q <= k + m")
    big = sum(binom(m, Q - i) for i in range(1, k + 1))
    small = binom(m - 1, Q - 1) + binom(m - 1, Q - k - 1)
    return big, small


def two_class_eta(k: int, n_big: int, n_small: int, Q: int) -> tuple[int, int]:
    """Swing counts in [Q; k x n_big, 1 x n_small] for one big and one unit player."""
    big = 0
    for j in range(n_big):
        cj = binom(n_big - 1, j)
        big += cj * sum(binom(n_small, Q - j * k - i) for i in range(1, k + 1))
    small = sum(binom(n_big, j) * binom(n_small - 1, Q - j * k - 1) for j in range(n_big + 1))
    return big, small

