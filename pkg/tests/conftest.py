import random
from fractions import Fraction
from functools import lru_cache

import hypothesis
import pytest

from powerlimits.counting import game_from_weights

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")

SUITE_SIZE = 500


@lru_cache(maxsize=None)
def random_suite(size=SUITE_SIZE, seed=20240601):
    """Seeded games with n <= 12, integer weights in [0, 20], quota in [1, w(N)]."""
    games = []
    for k in range(size):
        rng = random.Random(f"suite/{seed}/{k}")
        n = rng.randint(1, 12)
        weights = [rng.randint(0, 20) for _ in range(n)]
        if not any(weights):
            weights[rng.randrange(n)] = rng.randint(1, 20)
        quota = rng.randint(1, sum(weights))
        games.append(game_from_weights(quota, weights))
    return tuple(games)


@pytest.fixture(scope="session")
def suite():
    return random_suite()


@pytest.fixture(scope="session")
def suite_nucleoli(suite):
    from powerlimits.nucleolus import nucleolus

    return [nucleolus(g).values for g in suite]


def intro_game():
    return game_from_weights(Fraction(1, 2), ["0.42", "0.40", "0.09", "0.09"])


@pytest.fixture
def intro():
    return intro_game()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
