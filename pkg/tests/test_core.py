from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from powerlimits.core import (
    HypothesisViolated,
    PowerVector,
    WeightVector,
    check_lt_bounds,
    combine_ratio_bounds,
    deviation,
    distance,
    l1_from_relative,
    normalize,
    pair_ratio_check,
    ratio_bounds,
    small_term_bound_holds,
    to_fraction,
    weight_stats,
)

SHARES = (F("0.42"), F("0.40"), F("0.09"), F("0.09"))
BZI_INTRO = (F(1, 2), F(1, 6), F(1, 6), F(1, 6))


def rationals(max_den=60):
    return st.builds(F, st.integers(0, 200), st.integers(1, max_den))


def normalized_vectors(min_size=1, max_size=8):
    return (
        st.lists(st.integers(0, 50), min_size=min_size, max_size=max_size)
        .filter(any)
        .map(lambda xs: normalize(xs).entries)
    )


def test_to_fraction_reads_decimals_exactly():
    assert to_fraction(0.42) == F(21, 50)
    assert to_fraction("0.09") == F(9, 100)
    assert to_fraction("3/7") == F(3, 7)


def test_normalize_examples():
    assert normalize([2, 1, 1, 1]).entries == (F(2, 5), F(1, 5), F(1, 5), F(1, 5))
    assert normalize(SHARES).entries == SHARES
    assert normalize([7]).entries == (F(1),)
    with pytest.raises(ValueError, match="degenerate"):
        normalize([0, 0])


def test_weight_vector_rejects_negative():
    with pytest.raises(ValueError):
        WeightVector([1, -1])


def test_distance_intro_example():
    # cross-check: the four absolute differences summed by hand
    by_hand = F("0.08") + (F("0.40") - F(1, 6)) + 2 * (F(1, 6) - F("0.09"))
    assert distance(BZI_INTRO, SHARES, "l1") == by_hand == F(7, 15)
    assert distance(BZI_INTRO, SHARES, "linf") == F(7, 30)


@pytest.mark.parametrize("norm", ["l1", "linf", 2, F(3, 2)])
def test_distance_identity(norm):
    assert distance(SHARES, SHARES, norm) == 0


def test_distance_disjoint():
    assert distance((1, 0), (0, 1), "linf") == 1
    assert distance((1, 0), (0, 1), "l1") == 2
    with mpmath.workdps(60):
        assert abs(distance((1, 0), (0, 1), 2) - mpmath.sqrt(2)) < mpmath.mpf(10) ** -45


def test_distance_errors():
    with pytest.raises(ValueError, match="dimension"):
        distance((1,), (1, 0))
    with pytest.raises(ValueError):
        distance((1, 0), (0, 1), F(1, 2))


def test_weight_stats_examples():
    s = weight_stats(SHARES)
    assert s.delta == F(21, 50)
    assert s.span == F(14, 3)
    assert s.laakso == 1 / F("0.3526")
    assert float(s.laakso) == pytest.approx(2.8361, abs=1e-4)

    u = weight_stats([F(1, 5)] * 5)
    assert (u.delta, u.span, u.laakso, u.alpha) == (F(1, 5), 1, 5, 0)

    d = weight_stats([1, 0, 0])
    assert (d.delta, d.span, d.laakso) == (1, 1, 1)


def test_lt_bounds_examples():
    rep = check_lt_bounds([F(1, 4)] * 4)
    assert rep.chain == (4, 4, 4, 4, 16)
    assert rep.all_hold
    assert check_lt_bounds(SHARES).all_hold


@pytest.mark.parametrize("k,n", [(1, 3), (2, 5), (3, 3), (4, 9)])
def test_lt_lower_bound_is_attained(k, n):
    w = [F(1, k)] * k + [F(0)] * (n - k)
    rep = check_lt_bounds(w)
    assert rep.chain[2] == rep.chain[0] == k


def test_lt_single_player():
    rep = check_lt_bounds([1])
    assert rep.chain == (1, 1, 1, 1, 1)


@given(normalized_vectors(min_size=2))
def test_lt_chain_always_holds(w):
    assert check_lt_bounds(w).all_hold


@given(normalized_vectors(), st.data())
def test_improved_infinity_bound(w, data):
    w2 = data.draw(normalized_vectors(min_size=len(w), max_size=len(w)))
    assert distance(w, w2, "linf") <= distance(w, w2, "l1") / 2


@given(
    st.lists(rationals(), min_size=1, max_size=6),
    st.sampled_from([1, F(3, 2), 2, 3, 7]),
    st.sampled_from([F(3, 2), 2, F(5, 2), 4, 10]),
)
def test_norm_chain(x, p, p_prime):
    assume(p <= p_prime)
    zero = [0] * len(x)

    def as_mp(v):
        return mpmath.mpf(v.numerator) / v.denominator if isinstance(v, F) else v

    with mpmath.workdps(50):
        tol = mpmath.mpf(10) ** -40
        linf, l1 = as_mp(distance(x, zero, "linf")), as_mp(distance(x, zero, "l1"))
        big, small = as_mp(distance(x, zero, p_prime)), as_mp(distance(x, zero, p))
        assert linf <= big + tol
        assert big <= small + tol
        assert small <= l1 + tol


def test_ratio_bounds_identity():
    rep = ratio_bounds(SHARES, SHARES)
    assert rep.eps == 0
    assert all(c.ratio == 1 for c in rep.classes) and rep.all_hold


def test_ratio_bounds_intro_example():
    rep = ratio_bounds(BZI_INTRO, SHARES)
    assert rep.eps == F(7, 15)
    second = next(c for c in rep.classes if c.members == (1,))
    assert second.alpha == F(2, 5)
    assert second.ratio == F(5, 12)
    assert (second.lower, second.upper) == (F(-1, 6), F(13, 6))
    assert rep.all_hold


def test_ratio_bounds_needs_symmetry():
    with pytest.raises(HypothesisViolated):
        ratio_bounds([F(3, 10), F(3, 10), F(1, 5), F(1, 5)], [F(1, 4)] * 4)


@st.composite
def symmetric_pairs(draw):
    """(x, w): nonnegative, x constant on each class of equal w."""
    classes = draw(st.lists(st.tuples(st.integers(1, 40), st.integers(1, 4)), min_size=1, max_size=5, unique_by=lambda t: t[0]))
    xvals = draw(st.lists(st.integers(0, 40), min_size=len(classes), max_size=len(classes)).filter(any))
    w = normalize([wt for wt, c in classes for _ in range(c)]).entries
    x = normalize([xv for xv, (_, c) in zip(xvals, classes) for _ in range(c)]).entries
    return x, w


@given(symmetric_pairs())
def test_ratio_bounds_always_hold_under_symmetry(pair):
    x, w = pair
    assert ratio_bounds(x, w).all_hold


def test_combine_ratio_bounds_examples():
    b = combine_ratio_bounds(0, 0)
    assert (b.lower, b.upper, b.additive) == (1, 1, 0)
    b = combine_ratio_bounds(F(1, 10), F(1, 10))
    assert (b.lower, b.upper, b.additive) == (F(9, 11), F(11, 9), F(1, 5))
    b = combine_ratio_bounds(F(1, 2), 0)
    assert (b.lower, b.upper, b.additive) == (F(1, 2), F(3, 2), F(1, 2))
    with pytest.raises(ValueError):
        combine_ratio_bounds(1, 0)


def test_pair_ratio_reciprocal_orientation_can_escape():
    # e_i = 0, x_j/w_j = 1/2: (w_i/w_j)(x_j/x_i) = 1/2 is below (1-e_i)/(1+e_j) = 2/3
    w = (F(1, 2), F(1, 2))
    x = (F(1, 2), F(1, 4))
    v = pair_ratio_check(x, w, 0, 1)
    reciprocal = (w[0] / w[1]) * (x[1] / x[0])
    assert reciprocal < v.bounds.lower
    assert v.holds


@given(symmetric_pairs(), st.data())
def test_pair_ratio_holds(pair, data):
    x, w = pair
    i = data.draw(st.integers(0, len(w) - 1))
    j = data.draw(st.integers(0, len(w) - 1))
    assume(x[i] > 0 and x[j] > 0)
    assume(abs(x[i] / w[i] - 1) < 1 and abs(x[j] / w[j] - 1) < 1)
    assert pair_ratio_check(x, w, i, j).holds


def test_l1_from_relative_examples():
    assert l1_from_relative(SHARES, SHARES, range(4), 0, 0, 0).holds
    v = l1_from_relative((F("0.55"), F("0.45")), (F(1, 2), F(1, 2)), [0, 1], 0, 0, F(1, 10))
    assert v.l1 == F(1, 10) == v.bound and v.holds
    v = l1_from_relative(BZI_INTRO, SHARES, [], 1, 1, 0)
    assert v.holds and v.l1 <= 2


def test_l1_from_relative_names_the_broken_hypothesis():
    with pytest.raises(HypothesisViolated, match="eps_hat"):
        l1_from_relative(SHARES, SHARES, [0], 0, 1, 0)
    with pytest.raises(HypothesisViolated, match="relative deviation"):
        l1_from_relative((F("0.55"), F("0.45")), (F(1, 2), F(1, 2)), [0, 1], 0, 0, F(1, 20))


@given(symmetric_pairs(), st.data())
def test_l1_from_relative_holds(pair, data):
    x, w = pair
    subset = [i for i in range(len(w)) if data.draw(st.booleans())]
    outside = [i for i in range(len(w)) if i not in subset]
    eps = max((abs(x[i] / w[i] - 1) for i in subset), default=F(0))
    v = l1_from_relative(
        x, w, subset, sum((w[i] for i in outside), F(0)), sum((x[i] for i in outside), F(0)), eps
    )
    assert v.holds


def test_deviation_report():
    rep = deviation(BZI_INTRO, SHARES)
    assert rep.l1 == F(7, 15) and rep.linf == F(7, 30)
    assert rep.linf <= rep.l1 / 2
    assert rep.alphas == (F("0.42"), F("0.40"), F("0.18"))
    assert rep.ratios[2] == F(1, 6) / F("0.09")


def test_power_vector_kind_checked():
    with pytest.raises(ValueError):
        PowerVector((1,), "owen")


def test_small_term_bound():
    assert all(small_term_bound_holds(n) for n in range(11, 101))
    # the bound is not a theorem below 11
    assert not small_term_bound_holds(10)
