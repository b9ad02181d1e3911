"""Parametric game families, the finite-n f-curve, and the conjecture scanners."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .core import DEFAULT_PRECISION, TWO_POINT_SIX, PowerVector, to_fraction, weight_stats
from .counting import (
    WeightedGame,
    binom,
    eta_one_big,
    make_game,
    shapley_shubik,
    swing_counts,
    two_class_eta,
)

# bounds for the two headline families are theorems only from this n on
ASSERT_FROM_N = 11


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: Fraction
    bound: Fraction
    asserted: bool

    @property
    def holds(self) -> bool:
        return self.value >= self.bound


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    params: dict
    game: WeightedGame
    bzi_per_class: tuple[Fraction, ...]
    weights_per_class: tuple[Fraction, ...]
    l1: Fraction
    linf: Fraction
    bounds: tuple[BoundCheck, ...] = ()

    @property
    def relative_weights(self):
        return self.game.relative_weights()

    @property
    def bzi(self) -> PowerVector:
        return PowerVector(self.game.expand(self.bzi_per_class), "banzhaf")

    @property
    def all_asserted_hold(self) -> bool:
        return all(b.holds for b in self.bounds if b.asserted)


def class_distances(game: WeightedGame, x: Sequence[Fraction], w: Sequence[Fraction]):
    """(L1, Linf) between two class-constant vectors given per class."""
    diffs = [abs(a - b) for a, b in zip(x, w)]
    l1 = sum((d * c for d, c in zip(diffs, game.counts)), Fraction(0))
    return l1, max(diffs)


def _relative_per_class(game: WeightedGame) -> tuple[Fraction, ...]:
    total = game.total_weight
    return tuple(w / total for w, _ in game.classes)


def _bzi_from_class_eta(game: WeightedGame, eta: Sequence[int]) -> tuple[Fraction, ...]:
    total = sum(e * c for e, c in zip(eta, game.counts))
    return tuple(Fraction(e, total) for e in eta)


def prop1_game(n: int) -> WeightedGame:
    return make_game(n**3 + n**2, [(2 * n * n, 1), (1, 2 * n**3)])


def prop1_instance(n: int) -> FamilyInstance:
    """[n^3+n^2; 2n^2, 1 x 2n^3]: one heavy player who takes almost all power."""
    if n < 2:
        raise ValueError("n must be at least 2")
    game = prop1_game(n)
    k, m, Q = 2 * n * n, 2 * n**3, n**3 + n**2
    eta_big, eta_small = eta_one_big(k, m, Q)
    bzi = _bzi_from_class_eta(game, (eta_big, eta_small))
    w = _relative_per_class(game)
    l1, linf = class_distances(game, bzi, w)
    asserted = n >= ASSERT_FROM_N
    decay = TWO_POINT_SIX**n
    bounds = (
        BoundCheck("bzi_1 >= 1 - 2n^3/2.6^n", bzi[0], 1 - Fraction(2 * n**3) / decay, asserted),
        BoundCheck("linf >= 1 - 2/n", linf, 1 - Fraction(2, n), asserted),
        BoundCheck("l1 >= 2 - 4/n", l1, 2 - Fraction(4, n), asserted),
        BoundCheck("eta_1/eta_2 >= 2.6^n", Fraction(eta_big, eta_small), decay, asserted),
    )
    return FamilyInstance("prop1", {"n": n}, game, bzi, w, l1, linf, bounds)


def prop2_game(n: int) -> WeightedGame:
    return make_game(3 * n**3 + n**2, [(2 * n * n, 2 * n + 1), (1, 2 * n**3)])


def prop2_instance(n: int) -> FamilyInstance:
    """[3n^3+n^2; 2n^2 x (2n+1), 1 x 2n^3]: heavy players outgrow their weight ratio."""
    if n < 2:
        raise ValueError("n must be at least 2")
    game = prop2_game(n)
    eta_big, eta_small = two_class_eta(2 * n * n, 2 * n + 1, 2 * n**3, 3 * n**3 + n**2)
    bzi = _bzi_from_class_eta(game, (eta_big, eta_small))
    w = _relative_per_class(game)
    l1, linf = class_distances(game, bzi, w)
    asserted = n >= ASSERT_FROM_N
    bounds = (
        BoundCheck(
            "bzi_1/bzi_(2n+2) >= 2.6^n/(2n+1)",
            Fraction(eta_big, eta_small),
            TWO_POINT_SIX**n / (2 * n + 1),
            asserted,
        ),
        BoundCheck("l1 >= 1/5", l1, Fraction(1, 5), asserted),
        BoundCheck("bzi_1 - w_1 >= 1/(5(2n+1))", bzi[0] - w[0], Fraction(1, 5 * (2 * n + 1)), asserted),
    )
    return FamilyInstance("prop2", {"n": n}, game, bzi, w, l1, linf, bounds)


def vnq_quota(n: int, q) -> int:
    """ceil(3nq), with q = 0 mapped to quota 1 so the empty coalition still loses."""
    q = to_fraction(q)
    if not 0 <= q <= 1:
        raise ValueError("relative quota must lie in [0, 1]")
    return max(1, math.ceil(q * 3 * n))


def vnq_game(n: int, quota: int) -> WeightedGame:
    return make_game(quota, [(2, n), (1, n)])


@dataclass(frozen=True)
class CurvePoint:
    q: Fraction
    n: int
    quota: int
    f: Fraction

    def decimal(self, digits: int = DEFAULT_PRECISION) -> str:
        with mpmath.workdps(digits + 5):
            return mpmath.nstr(mpmath.mpf(self.f.numerator) / self.f.denominator, digits)


@lru_cache(maxsize=4096)
def _vnq_f(n: int, quota: int) -> tuple[Fraction, tuple[int, int]]:
    game = vnq_game(n, quota)
    eta = swing_counts(game).per_class
    bzi = _bzi_from_class_eta(game, eta)
    l1, _ = class_distances(game, bzi, (Fraction(2, 3 * n), Fraction(1, 3 * n)))
    return l1, eta


def vnq_instance(n: int, q) -> tuple[FamilyInstance, CurvePoint]:
    """[ceil(3nq); 2 x n, 1 x n] and its distance f_n(q) from the relative weights."""
    if n < 1:
        raise ValueError("n must be at least 1")
    q = to_fraction(q)
    quota = vnq_quota(n, q)
    game = vnq_game(n, quota)
    f, eta = _vnq_f(n, quota)
    bzi = _bzi_from_class_eta(game, eta)
    w = (Fraction(2, 3 * n), Fraction(1, 3 * n))
    _, linf = class_distances(game, bzi, w)
    inst = FamilyInstance("vnq", {"n": n, "q": q}, game, bzi, w, f, linf)
    return inst, CurvePoint(q=q, n=n, quota=quota, f=f)


def vnq_f_at_quota(n: int, quota: int) -> Fraction:
    return _vnq_f(n, quota)[0]


@dataclass(frozen=True)
class PrintedEtaReport:
    """Closed-form sums as printed next to the engine's swing counts.

    ``printed_heavy`` is the sum labelled as the weight-2 player's count and
    ``printed_light`` the one labelled as the weight-1 player's count.
    """

    n: int
    q: Fraction
    quota: int
    printed_heavy: int
    printed_light: int
    dp_heavy: int
    dp_light: int

    @property
    def heavy_agrees(self) -> bool:
        return self.printed_heavy == self.dp_heavy

    @property
    def light_agrees(self) -> bool:
        return self.printed_light == self.dp_light

    @property
    def labels_swapped(self) -> bool:
        return self.printed_heavy == self.dp_light and self.printed_light == self.dp_heavy


def printed_heavy_summand(n: int, quota: int, i: int) -> int:
    return binom(n, i) * binom(n - 1, quota - 2 * i - 1)


def vnq_eta_printed(n: int, q) -> PrintedEtaReport:
    """Evaluate the printed sums verbatim; equality with the engine is not assumed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    q = to_fraction(q)
    Q = math.ceil(q * 3 * n)
    heavy = sum(printed_heavy_summand(n, Q, i) for i in range(n + 1))
    light = sum(binom(n - 1, i) * binom(n + 1, Q - 2 * i - 1) for i in range(n))
    _, (dp_heavy, dp_light) = _vnq_f(n, vnq_quota(n, q))
    return PrintedEtaReport(n, q, Q, heavy, light, dp_heavy, dp_light)


@dataclass(frozen=True)
class AnalyticValues:
    q: object
    g_tilde: object
    g: object
    entropy: object
    cand_cubic: object
    cand_entropy: object


def _mpf(q):
    if isinstance(q, (Fraction, int, str)):
        q = to_fraction(q)
        return mpmath.mpf(q.numerator) / q.denominator
    return mpmath.mpf(q)


def _radicand(q):
    return 972 * q**4 - 1944 * q**3 + 864 * q**2 + 108 * q + 6


@lru_cache(maxsize=None)
def radicand_is_positive(steps: int = 2000, precision: int = DEFAULT_PRECISION) -> bool:
    with mpmath.workdps(precision):
        return all(_radicand(mpmath.mpf(k) / steps) > 0 for k in range(steps + 1))


def binary_entropy(p):
    if p == 0 or p == 1:
        return mpmath.mpf(0)
    return -p * mpmath.log(p, 2) - (1 - p) * mpmath.log(1 - p, 2)


def analytic_curves(q, precision: int = DEFAULT_PRECISION) -> AnalyticValues:
    """g~, g, binary entropy and the two candidate shapes for f at q in [0, 1]."""
    if not radicand_is_positive():
        raise ArithmeticError("negative radicand inside [0, 1]")
    with mpmath.workdps(precision):
        x = _mpf(q)
        if not 0 <= x <= 1:
            raise ValueError("q must lie in [0, 1]")
        gt = -216 * x**3 + 324 * x**2 - 108 * x + 6 * mpmath.sqrt(_radicand(x))
        root = mpmath.cbrt(gt)
        g = root / 12 - (-3 * x**2 + 3 * x + mpmath.mpf(1) / 2) / root + x
        h = binary_entropy(x)
        return AnalyticValues(
            q=x,
            g_tilde=+gt,
            g=+g,
            entropy=+h,
            cand_cubic=candidate_cubic(q),
            cand_entropy=candidate_entropy(q),
        )


def _exact_or_none(q):
    if isinstance(q, (Fraction, int, str)):
        return to_fraction(q)
    return None


def candidate_cubic(q):
    """(8/3)|q - 1/2|^3; exact for rational q."""
    r = _exact_or_none(q)
    if r is not None:
        return Fraction(8, 3) * abs(r - Fraction(1, 2)) ** 3
    x = mpmath.mpf(q)
    return mpmath.mpf(8) / 3 * abs(x - mpmath.mpf(1) / 2) ** 3


def candidate_entropy(q):
    """1/3 - H(q)/3; exact where H(q) is rational (q in {0, 1/2, 1})."""
    r = _exact_or_none(q)
    if r is not None and r in (0, Fraction(1, 2), 1):
        return Fraction(1, 3) - (Fraction(1) if r == Fraction(1, 2) else Fraction(0)) / 3
    return (1 - binary_entropy(_mpf(q))) / 3


@dataclass(frozen=True)
class FCurveReport:
    n: int
    points: tuple[CurvePoint, ...]
    nondecreasing_upper_half: bool
    strictly_increasing_upper_half: bool
    duality_holds: bool
    candidates: tuple[AnalyticValues, ...]
    max_error_cubic: object
    max_error_entropy: object


def f_curve(n: int, grid: Sequence, precision: int = DEFAULT_PRECISION) -> FCurveReport:
    qs = sorted({to_fraction(q) for q in grid})
    if any(not 0 <= q <= 1 for q in qs):
        raise ValueError("grid must lie in [0, 1]")
    points = tuple(vnq_instance(n, q)[1] for q in qs)

    upper = [p for p in points if p.q >= Fraction(1, 2)]
    distinct: list[CurvePoint] = []
    for p in upper:
        if not distinct or distinct[-1].quota != p.quota:
            distinct.append(p)
    pairs = list(zip(distinct, distinct[1:]))
    nondecreasing = all(a.f <= b.f for a, b in pairs)
    strictly = all(a.f < b.f for a, b in pairs)

    duality = all(vnq_f_at_quota(n, p.quota) == vnq_f_at_quota(n, 3 * n + 1 - p.quota) for p in points)

    cands = tuple(analytic_curves(p.q, precision) for p in points)
    with mpmath.workdps(precision):
        fvals = [mpmath.mpf(p.f.numerator) / p.f.denominator for p in points]
        err_cubic = max((abs(_mpf(c.cand_cubic) - f) for c, f in zip(cands, fvals)), default=mpmath.mpf(0))
        err_ent = max((abs(_mpf(c.cand_entropy) - f) for c, f in zip(cands, fvals)), default=mpmath.mpf(0))
    return FCurveReport(n, points, nondecreasing, strictly, duality, cands, err_cubic, err_ent)


@dataclass(frozen=True)
class ArgmaxReport:
    n: int
    q: Fraction
    i_star: int
    n_times_g: object
    relative_gap: object


def argmax_summand(n: int, q, precision: int = DEFAULT_PRECISION) -> ArgmaxReport:
    """Exact argmax over i of C(n,i) C(n-1, ceil(3nq)-2i-1) against n*g(q)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    q = to_fraction(q)
    Q = math.ceil(q * 3 * n)
    summands = [printed_heavy_summand(n, Q, i) for i in range(n + 1)]
    i_star = max(range(n + 1), key=lambda i: (summands[i], -i))
    with mpmath.workdps(precision):
        ng = n * analytic_curves(q, precision).g
        gap = abs(i_star - ng) / n
    return ArgmaxReport(n, q, i_star, ng, gap)


@dataclass(frozen=True)
class UniformInt:
    max_weight: int = 9
    min_weight: int = 1


@dataclass(frozen=True)
class TwoClass:
    n_large: int
    w_large: int
    n_small: int
    w_small: int = 1


def sample_rng(seed: int, index: int) -> random.Random:
    """Independent stream per sample so parallel runs see the same draws."""
    return random.Random(f"powerlimits/{seed}/{index}")


def random_game(n: int, q, seed: int, dist=UniformInt()) -> WeightedGame:
    """[q * w(N); w] with weights drawn from ``dist``; deterministic in the seed."""
    q = to_fraction(q)
    if not 0 < q <= 1:
        raise ValueError("relative quota must lie in (0, 1]")
    if isinstance(dist, TwoClass):
        classes = [(dist.w_large, dist.n_large), (dist.w_small, dist.n_small)]
        if min(dist.n_large, dist.n_small) < 1 or min(dist.w_large, dist.w_small) < 0:
            raise ValueError("two-class parameters must be positive")
    elif isinstance(dist, UniformInt):
        if n < 1:
            raise ValueError("need at least one player")
        if not 0 <= dist.min_weight <= dist.max_weight or dist.max_weight < 1:
            raise ValueError("invalid weight range")
        rng = random.Random(f"powerlimits/game/{seed}")
        ws = sorted((rng.randint(dist.min_weight, dist.max_weight) for _ in range(n)), reverse=True)
        if not any(ws):
            ws[0] = dist.max_weight
        classes = []
        for w in ws:
            if classes and classes[-1][0] == w:
                classes[-1][1] += 1
            else:
                classes.append([w, 1])
    else:
        raise ValueError(f"unknown weight distribution {dist!r}")
    total = sum(w * c for w, c in classes)
    return make_game(q * total, [(w, c) for w, c in classes])


def normalized_game(game: WeightedGame) -> WeightedGame:
    """Same game written with relative weights and relative quota."""
    total = game.total_weight
    return make_game(game.quota / total, [(w / total, c) for w, c in game.classes])


@dataclass(frozen=True)
class ScanConfig:
    n_min: int = 2
    n_max: int = 10
    samples: int = 500
    seed: int = 0
    max_weight: int = 9
    q_grid: tuple[Fraction, ...] = tuple(Fraction(k, 10) for k in range(1, 10))
    family_n: int = ASSERT_FROM_N
    include_families: bool = True


@dataclass
class ScanRow:
    label: str
    game: WeightedGame
    q: Fraction
    lhs: Fraction
    bound: Fraction  # for the report-only scan this is Delta * Lambda
    seed: int | None = None

    @property
    def ratio(self) -> Fraction:
        return self.lhs / self.bound if self.bound else Fraction(0)

    @property
    def violated(self) -> bool:
        return self.lhs > self.bound


@dataclass
class ScanReport:
    kind: str
    config: ScanConfig
    rows: list[ScanRow] = field(default_factory=list)

    @property
    def worst(self) -> ScanRow:
        return max(self.rows, key=lambda r: r.ratio)

    @property
    def violations(self) -> list[ScanRow]:
        return [r for r in self.rows if r.violated]


def _sample_params(config: ScanConfig, index: int, fixed_q: Fraction | None):
    rng = sample_rng(config.seed, index)
    n = rng.randint(config.n_min, config.n_max)
    q = fixed_q if fixed_q is not None else rng.choice(config.q_grid)
    return n, q, rng.randrange(2**63)


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=16))


def _bzi_row(args) -> ScanRow:
    label, game, seed = args
    eta = swing_counts(game).per_class
    bzi = _bzi_from_class_eta(game, eta)
    w = _relative_per_class(game)
    l1, _ = class_distances(game, bzi, w)
    stats = weight_stats(game.relative_weights())
    return ScanRow(label, game, game.relative_quota, l1, stats.delta * stats.span, seed)


def conjecture_bzi_scan(config: ScanConfig = ScanConfig(), workers: int = 1) -> ScanReport:
    """||BZI([1/2; w]) - w||_1 against Delta(w) * Lambda(w); report only."""
    half = Fraction(1, 2)
    jobs = []
    for k in range(config.samples):
        n, _, game_seed = _sample_params(config, k, half)
        jobs.append((f"random[{k}]", random_game(n, half, game_seed, UniformInt(config.max_weight)), game_seed))
    for n in range(max(config.n_min, 1), config.n_max + 1):
        jobs.append((f"uniform[n={n}]", make_game(Fraction(n, 2), [(1, n)]), None))
    if config.include_families:
        fn = config.family_n
        jobs.append((f"prop1[n={fn}]", prop1_game(fn), None))
        jobs.append((f"prop2[n={fn}]", prop2_game(fn), None))
        jobs.append((f"vnq[n={fn},q=1/2]", vnq_game(fn, vnq_quota(fn, half)), None))
    return ScanReport("bzi", config, _map(_bzi_row, jobs, workers))


def ssi_distance(game: WeightedGame) -> Fraction:
    ssi = shapley_shubik(game)
    total = game.total_weight
    # per class: one representative value per class
    firsts = []
    i = 0
    for w, c in game.classes:
        firsts.append(ssi.values[i])
        i += c
    l1, _ = class_distances(game, firsts, [w / total for w, _ in game.classes])
    return l1


def _ssi_row(args) -> ScanRow:
    label, game, q, seed = args
    lhs = ssi_distance(game)
    delta = weight_stats(game.relative_weights()).delta
    return ScanRow(label, game, q, lhs, 5 * delta / min(q, 1 - q), seed)


def conjecture_ssi_scan(config: ScanConfig = ScanConfig(), workers: int = 1) -> ScanReport:
    """||SSI([q; w]) - w||_1 against 5 Delta(w)/min(q, 1-q) on positive weights."""
    if any(not 0 < q < 1 for q in config.q_grid):
        raise ValueError("conjecture scan needs q in (0, 1)")
    jobs = []
    for k in range(config.samples):
        n, q, game_seed = _sample_params(config, k, None)
        dist = UniformInt(config.max_weight, min_weight=1)
        jobs.append((f"random[{k}]", random_game(n, q, game_seed, dist), q, game_seed))
    if config.include_families:
        fn = config.family_n
        half = Fraction(1, 2)
        jobs.append((f"prop1[n={fn}]", prop1_game(fn), half, None))
        jobs.append((f"prop2[n={fn}]", prop2_game(fn), half, None))
        for q in config.q_grid:
            jobs.append((f"vnq[n={fn},q={q}]", vnq_game(fn, vnq_quota(fn, q)), q, None))
    return ScanReport("ssi", config, _map(_ssi_row, jobs, workers))


@dataclass(frozen=True)
class NucleolusScanConfig:
    samples: int = 200
    seed: int = 2024
    n_min: int = 1
    n_max: int = 10
    max_weight: int = 6
    quota_denominator: int = 100


def _nuc_row(args) -> ScanRow:
    from .nucleolus import nucleolus

    label, game, q, seed = args
    w = game.relative_weights()
    nuc = nucleolus(game).values
    lhs = sum((abs(a - b) for a, b in zip(nuc, w)), Fraction(0))
    delta = weight_stats(w).delta
    return ScanRow(label, game, q, lhs, 2 * delta / min(q, 1 - q), seed)


def nucleolus_bound_scan(config: NucleolusScanConfig = NucleolusScanConfig(), workers: int = 1) -> ScanReport:
    """||Nuc([q; w]) - w||_1 against 2 Delta(w)/min(q, 1-q) on normalized random games."""
    if config.n_max > 12:
        raise ValueError("nucleolus scan is capped at 12 players")
    d = config.quota_denominator
    jobs = []
    for k in range(config.samples):
        rng = sample_rng(config.seed, k)
        n = rng.randint(config.n_min, config.n_max)
        q = Fraction(rng.randint(1, d - 1), d)
        game_seed = rng.randrange(2**63)
        game = normalized_game(random_game(n, q, game_seed, UniformInt(config.max_weight)))
        jobs.append((f"random[{k}]", game, q, game_seed))
    return ScanReport("nucleolus", config, _map(_nuc_row, jobs, workers))
