from fractions import Fraction

import pytest

from chaincore import GroundSet, SetFunction


def quadratic_capacity(n: int = 3) -> SetFunction:
    """v(S) = 2p - p**2 with p = |S|/n: strictly submodular, symmetric."""
    ground = GroundSet(n)

    def value(mask: int) -> Fraction:
        p = Fraction(mask.bit_count(), n)
        return 2 * p - p * p

    return SetFunction.from_callable(ground, value)


def additive_capacity(weights) -> SetFunction:
    ground = GroundSet(len(weights))
    weights = [Fraction(w) for w in weights]
    return SetFunction.from_callable(
        ground, lambda m: sum(weights[i] for i in range(ground.n) if m >> i & 1)
    )


def convex_game_2() -> SetFunction:
    """n=2: worth 1 only for the grand coalition; strictly supermodular."""
    ground = GroundSet(2)
    return SetFunction(ground, (Fraction(0), Fraction(0), Fraction(0), Fraction(1)))


@pytest.fixture
def v3():
    return quadratic_capacity(3)


@pytest.fixture
def convex2():
    return convex_game_2()
