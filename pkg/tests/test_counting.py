import itertools
import math
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powerlimits.counting import (
    banzhaf,
    binom,
    binomial_row,
    brute_force_indices,
    dual_game,
    eta_one_big,
    game_from_weights,
    is_winning,
    make_game,
    shapley_shubik,
    size_weight_profile,
    swing_counts,
    two_class_eta,
    weight_profile,
)


def enumerate_profile(weights):
    """Subset-weight histogram by listing every subset."""
    hist = Counter()
    for r in range(len(weights) + 1):
        for sub in itertools.combinations(weights, r):
            hist[sum(sub)] += 1
    return dict(hist)


def pivot_shares(game):
    """SSI by walking all n! orders; only for tiny games."""
    n = game.n
    w = game.player_int_weights
    piv = [0] * n
    for order in itertools.permutations(range(n)):
        t = 0
        for i in order:
            t += w[i]
            if t >= game.int_quota:
                piv[i] += 1
                break
    return tuple(F(p, math.factorial(n)) for p in piv)


def test_binomial_rows():
    assert binomial_row(4) == (1, 4, 6, 4, 1)
    assert binomial_row(30) == tuple(math.comb(30, k) for k in range(31))
    assert binom(5, -1) == binom(5, 6) == 0


def test_make_game_integerizes(intro):
    assert intro.int_quota == 50
    assert intro.player_int_weights == (42, 40, 9, 9)
    g = make_game(11**3 + 11**2, [(2 * 121, 1), (1, 2 * 11**3)])
    assert (g.int_quota, g.int_weights, g.counts) == (1452, (242, 1), (1, 2662))


@pytest.mark.parametrize(
    "quota,classes,match",
    [(0, [(1, 2)], "positive"), (3, [(1, 2)], "exceeds"), (1, [(-1, 1), (3, 1)], "negative")],
)
def test_make_game_errors(quota, classes, match):
    with pytest.raises(ValueError, match=match):
        make_game(quota, classes)


def test_gcd_reduction_keeps_the_game():
    g = make_game(5, [(4, 2), (2, 1)])
    assert g.int_weights == (2, 1) and g.int_quota == 3
    for S in itertools.chain.from_iterable(itertools.combinations(range(3), r) for r in range(4)):
        assert is_winning(g, S) == (sum([4, 4, 2][i] for i in S) >= 5)


def test_is_winning(intro):
    assert is_winning(intro, [1, 2, 3])
    assert not is_winning(intro, [])
    assert is_winning(intro, range(4))
    with pytest.raises(IndexError):
        is_winning(intro, [4])


def test_weight_profile_examples():
    assert weight_profile(make_game(1, [(1, 3)])).counts == {0: 1, 1: 3, 2: 3, 3: 1}
    assert weight_profile(make_game(1, [(2, 1), (1, 2)])).counts == {0: 1, 1: 2, 2: 2, 3: 2, 4: 1}
    g = make_game(1, [(2, 2), (1, 2)])
    prof = weight_profile(g, exclude=[1, 0])
    assert prof.counts == enumerate_profile([2, 1, 1])
    assert prof.scope == (1, 2)


def test_weight_profile_rejects_over_exclusion():
    with pytest.raises(ValueError):
        weight_profile(make_game(1, [(2, 1)]), exclude=[2])


@given(st.lists(st.integers(0, 7), min_size=1, max_size=9).filter(any))
def test_profile_matches_enumeration(weights):
    g = game_from_weights(1, weights)
    prof = weight_profile(g)
    assert {k: v for k, v in prof.counts.items() if v} == enumerate_profile(g.player_int_weights)
    assert sum(prof.counts.values()) == 2 ** len(weights)
    assert prof.counts[0] >= 1


def test_size_weight_profile_marginals():
    g = make_game(3, [(3, 2), (2, 3), (1, 1)])
    sw = size_weight_profile(g)
    by_weight = Counter()
    for (s, t), v in sw.items():
        by_weight[t] += v
    assert dict(by_weight) == weight_profile(g).counts


def test_swing_examples():
    assert swing_counts(make_game(3, [(2, 1), (1, 3)])).per_player == (6, 2, 2, 2)
    assert swing_counts(make_game(3, [(2, 1), (1, 3)])).total == 12
    dictator = make_game(1, [(1, 1), (0, 2)])
    assert swing_counts(dictator).per_player == (4, 0, 0)
    assert banzhaf(dictator).values == (1, 0, 0)
    for n in (1, 3, 6):
        assert swing_counts(make_game(n, [(1, n)])).per_player == (1,) * n


def test_banzhaf_examples(intro):
    sixth = F(1, 6)
    assert banzhaf(intro).values == (F(1, 2), sixth, sixth, sixth)
    assert banzhaf(make_game(2, [(1, 3)])).values == (F(1, 3),) * 3
    assert banzhaf(make_game(3, [(2, 1), (1, 3)])).values == (F(1, 2), sixth, sixth, sixth)


def test_shapley_shubik_examples(intro):
    sixth = F(1, 6)
    assert shapley_shubik(intro).values == (F(1, 2), sixth, sixth, sixth)
    small = make_game(3, [(2, 1), (1, 2)])
    assert pivot_shares(small) == (F(2, 3), sixth, sixth)
    assert shapley_shubik(small).values == (F(2, 3), sixth, sixth)
    assert shapley_shubik(make_game(1, [(1, 1), (0, 2)])).values == (1, 0, 0)


def test_brute_force_examples(intro):
    eta, bzi, ssi = brute_force_indices(make_game(3, [(2, 1), (1, 3)]))
    assert eta.per_player == (6, 2, 2, 2)
    assert brute_force_indices(intro)[0].per_player == (6, 2, 2, 2)
    assert brute_force_indices(make_game(5, [(1, 5)]))[0].per_player == (1,) * 5
    with pytest.raises(ValueError):
        brute_force_indices(make_game(1, [(1, 23)]))


@given(st.lists(st.integers(0, 6), min_size=1, max_size=6).filter(any), st.data())
def test_ssi_matches_player_orders(weights, data):
    quota = data.draw(st.integers(1, sum(weights)))
    g = game_from_weights(quota, weights)
    assert shapley_shubik(g).values == pivot_shares(g)


def test_oracle_equivalence_on_suite(suite):
    for g in suite:
        eta, bzi, ssi = brute_force_indices(g)
        assert swing_counts(g).per_player == eta.per_player
        assert banzhaf(g).values == bzi.values
        assert shapley_shubik(g).values == ssi.values


def test_efficiency_and_symmetry_on_suite(suite):
    for g in suite:
        for pv in (banzhaf(g), shapley_shubik(g)):
            assert sum(pv.values) == 1
            assert all(v >= 0 for v in pv.values)
            by_weight = {}
            for w, v in zip(g.player_int_weights, pv.values):
                assert by_weight.setdefault(w, v) == v


def test_swing_monotone_in_weight(suite):
    for g in suite:
        eta = swing_counts(g).per_player
        w = g.player_int_weights
        for i in range(g.n):
            for j in range(g.n):
                if w[i] >= w[j]:
                    assert eta[i] >= eta[j]


def test_duality_examples():
    g = make_game(3, [(2, 1), (1, 3)])
    d = dual_game(g)
    assert (d.int_quota, d.player_int_weights) == (3, (2, 1, 1, 1))
    assert d.int_quota == g.int_total - g.int_quota + 1
    assert swing_counts(d).per_player == brute_force_indices(d)[0].per_player == (6, 2, 2, 2)
    maj = make_game(2, [(1, 3)])
    assert dual_game(maj).int_quota == 2
    una = make_game(4, [(1, 4)])
    assert dual_game(una).int_quota == 1
    assert swing_counts(dual_game(una)).per_player == (1,) * 4


def test_duality_on_suite(suite):
    for g in suite:
        assert swing_counts(g) == swing_counts(dual_game(g))


def test_eta_one_big_examples():
    assert eta_one_big(2, 3, 3) == (6, 2)
    n = 11
    k, m, Q = 2 * n * n, 2 * n**3, n**3 + n**2
    big, small = eta_one_big(k, m, Q)
    assert big >= math.comb(2 * n**3, n**3)
    assert small == math.comb(2 * n**3, n**3 + n**2)


def test_eta_one_big_matches_dp_grid():
    for k in range(1, 7):
        for m in range(1, 15):
            for Q in range(1, k + m + 1):
                sc = swing_counts(make_game(Q, [(k, 1), (1, m)]))
                assert eta_one_big(k, m, Q) == sc.per_class, (k, m, Q)


def test_two_class_eta_matches_dp():
    for k in (1, 2, 3, 5):
        for nb in (1, 2, 4):
            for ns in (1, 3, 6):
                for Q in range(1, k * nb + ns + 1):
                    sc = swing_counts(make_game(Q, [(k, nb), (1, ns)]))
                    assert two_class_eta(k, nb, ns, Q) == sc.per_class
