"""Four shareholders with 42%, 40%, 9%, 9% and a simple-majority quota."""

from powerlimits.core import check_lt_bounds, deviation, weight_stats
from powerlimits.counting import banzhaf, game_from_weights, shapley_shubik
from powerlimits.nucleolus import nucleolus


def main():
    game = game_from_weights("1/2", ["0.42", "0.40", "0.09", "0.09"])
    w = game.relative_weights()
    print("integer form:", game.int_quota, game.player_int_weights)
    for index in (banzhaf, shapley_shubik, nucleolus):
        pv = index(game)
        dev = deviation(pv.values, w)
        print(f"{pv.kind:15s}", " ".join(str(v) for v in pv.values), f" l1={dev.l1} linf={dev.linf}")
    stats = weight_stats(w)
    print(f"delta={stats.delta} span={stats.span} L(w)={stats.laakso} ~ {float(stats.laakso):.4f}")
    print("LT chain:", [str(v) for v in check_lt_bounds(w).chain])


if __name__ == "__main__":
    main()
