"""Weight vectors, power vectors, norms and the deviation inequalities.

Everything here works on exact ``Fraction`` values.  Only the general
p-norm leaves exact arithmetic; it is evaluated with mpmath at a
configurable number of significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable

import mpmath

DEFAULT_PRECISION = 50

INDEX_KINDS = ("banzhaf", "shapley-shubik", "nucleolus", "raw-weights")

# (13/5)^n stands in for 2.6^n wherever a bound is asserted
TWO_POINT_SIX = Fraction(13, 5)


class HypothesisViolated(ValueError):
    """An inequality check was called on inputs outside its hypotheses."""


def to_fraction(value) -> Fraction:
    """Exact conversion; floats go through their shortest repr so 0.42 -> 21/50."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, (Decimal, str)):
        return Fraction(str(value).strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


@dataclass(frozen=True)
class WeightVector:
    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable):
        values = tuple(to_fraction(e) for e in entries)
        if any(v < 0 for v in values):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "entries", values)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    @property
    def is_normalized(self) -> bool:
        return self.total == 1


@dataclass(frozen=True)
class PowerVector:
    values: tuple[Fraction, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in INDEX_KINDS:
            raise ValueError(f"unknown index kind {self.kind!r}")
        object.__setattr__(self, "values", tuple(to_fraction(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _entries(x) -> tuple[Fraction, ...]:
    if isinstance(x, WeightVector):
        return x.entries
    if isinstance(x, PowerVector):
        return x.values
    return tuple(to_fraction(v) for v in x)


def normalize(w) -> WeightVector:
    w = w if isinstance(w, WeightVector) else WeightVector(w)
    total = w.total
    if total == 0:
        raise ValueError("degenerate weights: all entries are zero")
    return WeightVector(e / total for e in w.entries)


def distance(x, y, norm="l1", precision: int = DEFAULT_PRECISION):
    """d(x, y) = ||x - y|| for norm in {"l1", "linf"} or a number p >= 1.

    L1 and Linf come back as exact Fractions, general p as an mpmath float.
    """
    a, b = _entries(x), _entries(y)
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    diffs = [abs(u - v) for u, v in zip(a, b)]
    if norm in ("l1", "L1", 1):
        return sum(diffs, Fraction(0))
    if norm in ("linf", "Linf", "inf", math.inf):
        return max(diffs, default=Fraction(0))
    p = to_fraction(norm)
    if p < 1:
        raise ValueError("p-norms need p >= 1")
    with mpmath.workdps(precision):
        pp = mpmath.mpf(p.numerator) / p.denominator
        total = mpmath.fsum(
            mpmath.power(mpmath.mpf(d.numerator) / d.denominator, pp) for d in diffs
        )
        return total ** (1 / pp)


@dataclass(frozen=True)
class WeightStats:
    delta: Fraction
    span: Fraction
    laakso: Fraction
    alpha: Fraction


def weight_stats(w) -> WeightStats:
    """Maximum weight, span, Laakso-Taagepera index and 1/delta - floor(1/delta)."""
    e = _entries(w)
    if sum(e) != 1:
        raise ValueError("weight_stats expects normalized weights")
    positive = [v for v in e if v > 0]
    delta = max(e)
    span = max(positive) / min(positive)
    laakso = 1 / sum(v * v for v in e)
    inv = 1 / delta
    alpha = inv - math.floor(inv)
    return WeightStats(delta=delta, span=span, laakso=laakso, alpha=alpha)


@dataclass(frozen=True)
class LTBoundReport:
    """The chain 1/D <= 1/(D(1-a(1-a)D)) <= L <= 1/(D^2+(1-D)^2/(n-1)) <= 1/D^2."""

    chain: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    holds: tuple[bool, bool, bool, bool]
    slack: tuple[Fraction, Fraction, Fraction, Fraction]

    @property
    def all_hold(self) -> bool:
        return all(self.holds)


def check_lt_bounds(w) -> LTBoundReport:
    e = _entries(w)
    n = len(e)
    stats = weight_stats(e)
    d, a, lt = stats.delta, stats.alpha, stats.laakso
    if n == 1:
        one = Fraction(1)
        chain = (one, one, lt, one, one)
    else:
        chain = (
            1 / d,
            1 / (d * (1 - a * (1 - a) * d)),
            lt,
            1 / (d * d + (1 - d) ** 2 / (n - 1)),
            1 / (d * d),
        )
    slack = tuple(chain[k + 1] - chain[k] for k in range(4))
    return LTBoundReport(chain=chain, holds=tuple(s >= 0 for s in slack), slack=slack)


@dataclass(frozen=True)
class DeviationReport:
    l1: Fraction
    linf: Fraction
    ratios: tuple[Fraction | None, ...]
    alphas: tuple[Fraction, ...]


def weight_classes(w) -> list[list[int]]:
    """Groups of player indices sharing a weight, in order of first appearance."""
    groups: dict[Fraction, list[int]] = {}
    for i, v in enumerate(_entries(w)):
        groups.setdefault(v, []).append(i)
    return list(groups.values())


def deviation(x, w) -> DeviationReport:
    """Norm distances plus per-class ratio x_i/w_i and class mass alpha_i."""
    xs, ws = _entries(x), _entries(w)
    classes = weight_classes(ws)
    ratios, alphas = [], []
    for members in classes:
        i = members[0]
        wi = ws[i]
        alphas.append(wi * len(members))
        ratios.append(xs[i] / wi if wi > 0 else None)
    return DeviationReport(
        l1=distance(xs, ws, "l1"),
        linf=distance(xs, ws, "linf"),
        ratios=tuple(ratios),
        alphas=tuple(alphas),
    )


@dataclass(frozen=True)
class RatioClassVerdict:
    members: tuple[int, ...]
    alpha: Fraction
    ratio: Fraction
    lower: Fraction
    upper: Fraction

    @property
    def holds(self) -> bool:
        return self.lower <= self.ratio <= self.upper


@dataclass(frozen=True)
class RatioReport:
    eps: Fraction
    classes: tuple[RatioClassVerdict, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.classes)


def ratio_bounds(x, w) -> RatioReport:
    """1 - eps/alpha_i <= x_i/w_i <= 1 + eps/alpha_i with eps = ||x - w||_1.

    Requires x to be constant on every class of equal weights.
    """
    xs, ws = _entries(x), _entries(w)
    if len(xs) != len(ws):
        raise ValueError("dimension mismatch")
    if any(v < 0 for v in xs) or any(v < 0 for v in ws):
        raise HypothesisViolated("hypothesis violated: vectors must be nonnegative")
    eps = distance(xs, ws, "l1")
    verdicts = []
    for members in weight_classes(ws):
        values = {xs[j] for j in members}
        if len(values) > 1:
            raise HypothesisViolated(
                f"hypothesis violated: players {members} share a weight but not a value"
            )
        i = members[0]
        if ws[i] == 0:
            continue
        alpha = ws[i] * len(members)
        verdicts.append(
            RatioClassVerdict(
                members=tuple(members),
                alpha=alpha,
                ratio=xs[i] / ws[i],
                lower=1 - eps / alpha,
                upper=1 + eps / alpha,
            )
        )
    return RatioReport(eps=eps, classes=tuple(verdicts))


@dataclass(frozen=True)
class CombinedBounds:
    lower: Fraction
    upper: Fraction
    additive: Fraction


def combine_ratio_bounds(eps_i, eps_j) -> CombinedBounds:
    """Interval for (w_i/w_j)*(x_j/x_i) and the bound on |x_i/w_i - x_j/w_j|."""
    ei, ej = to_fraction(eps_i), to_fraction(eps_j)
    for e in (ei, ej):
        if not 0 <= e < 1:
            raise ValueError(f"relative deviations must lie in [0, 1), got {e}")
    return CombinedBounds(lower=(1 - ei) / (1 + ej), upper=(1 + ei) / (1 - ej), additive=ei + ej)


@dataclass(frozen=True)
class PairRatioVerdict:
    eps_i: Fraction
    eps_j: Fraction
    scaled_ratio: Fraction
    gap: Fraction
    bounds: CombinedBounds

    @property
    def holds(self) -> bool:
        b = self.bounds
        return b.lower <= self.scaled_ratio <= b.upper and self.gap <= b.additive


def pair_ratio_check(x, w, i: int, j: int, eps_i=None, eps_j=None) -> PairRatioVerdict:
    """Compare (x_i/w_i)/(x_j/w_j) and |x_i/w_i - x_j/w_j| with the combined bounds.

    The interval [(1-e_i)/(1+e_j), (1+e_i)/(1-e_j)] bounds (x_i/w_i)/(x_j/w_j),
    i.e. (w_j/w_i)(x_i/x_j); its reciprocal (w_i/w_j)(x_j/x_i) can leave it when
    e_i != e_j.  Without explicit eps values the tightest ones, |x/w - 1|, are used.
    """
    xs, ws = _entries(x), _entries(w)
    if 0 in (xs[i], xs[j], ws[i], ws[j]):
        raise HypothesisViolated("hypothesis violated: x_i, x_j, w_i, w_j must be nonzero")
    ri, rj = xs[i] / ws[i], xs[j] / ws[j]
    ei = abs(ri - 1) if eps_i is None else to_fraction(eps_i)
    ej = abs(rj - 1) if eps_j is None else to_fraction(eps_j)
    if not (1 - ei <= ri <= 1 + ei and 1 - ej <= rj <= 1 + ej):
        raise HypothesisViolated("hypothesis violated: relative deviation exceeds eps")
    if ei >= 1 or ej >= 1:
        raise HypothesisViolated("hypothesis violated: eps must lie in [0, 1)")
    return PairRatioVerdict(
        eps_i=ei,
        eps_j=ej,
        scaled_ratio=ri / rj,
        gap=abs(ri - rj),
        bounds=combine_ratio_bounds(ei, ej),
    )


@dataclass(frozen=True)
class RelativeL1Verdict:
    l1: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.l1 <= self.bound


def l1_from_relative(x, w, subset: Iterable[int], eps_hat, eps_tilde, eps) -> RelativeL1Verdict:
    """Check ||x - w||_1 <= eps_hat + eps_tilde + eps after validating every hypothesis."""
    xs, ws = _entries(x), _entries(w)
    if len(xs) != len(ws):
        raise ValueError("dimension mismatch")
    eh, et, e = to_fraction(eps_hat), to_fraction(eps_tilde), to_fraction(eps)
    inside = set(subset)
    if any(not 0 <= i < len(ws) for i in inside):
        raise ValueError("subset contains an out-of-range player")
    outside = [i for i in range(len(ws)) if i not in inside]
    if sum(ws) > 1:
        raise HypothesisViolated("hypothesis violated: w(N) <= 1")
    if sum((ws[i] for i in outside), Fraction(0)) > eh:
        raise HypothesisViolated("hypothesis violated: w(N\\S) <= eps_hat")
    if sum((xs[i] for i in outside), Fraction(0)) > et:
        raise HypothesisViolated("hypothesis violated: x(N\\S) <= eps_tilde")
    for i in sorted(inside):
        if ws[i] <= 0:
            raise HypothesisViolated(f"hypothesis violated: w_{i} must be positive on S")
        if not 1 - e <= xs[i] / ws[i] <= 1 + e:
            raise HypothesisViolated(f"hypothesis violated: relative deviation at player {i}")
    return RelativeL1Verdict(l1=distance(xs, ws, "l1"), bound=eh + et + e)


def small_term_bound_holds(n: int) -> bool:
    """2 n^3 / 2.6^n <= 1/n, decided exactly."""
    return Fraction(2 * n**3) / TWO_POINT_SIX**n <= Fraction(1, n)


def as_decimal_string(value: Fraction, digits: int = 12) -> str:
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpf(value.numerator) / value.denominator, digits)


def fraction_string(value: Fraction) -> str:
    return str(Fraction(value))


__all__ = [
    "CombinedBounds",
    "DeviationReport",
    "HypothesisViolated",
    "LTBoundReport",
    "PairRatioVerdict",
    "PowerVector",
    "RatioReport",
    "RelativeL1Verdict",
    "TWO_POINT_SIX",
    "WeightStats",
    "WeightVector",
    "as_decimal_string",
    "check_lt_bounds",
    "combine_ratio_bounds",
    "deviation",
    "distance",
    "fraction_string",
    "l1_from_relative",
    "normalize",
    "pair_ratio_check",
    "ratio_bounds",
    "small_term_bound_holds",
    "to_fraction",
    "weight_classes",
    "weight_stats",
]

