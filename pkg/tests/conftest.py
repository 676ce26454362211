import itertools
import math

import numpy as np
import pytest

from tomolines.grid import from_rows

EXAMPLE_ROWS = [5, 4, 3, 2, 1]
EXAMPLE_COLS = [4, 4, 3, 2, 1, 1]

# 30 * f0 for the 6x5 example, row j = 0 first
EXAMPLE_F0_X30 = [
    [34, 34, 28, 22, 16, 16],
    [29, 29, 23, 17, 11, 11],
    [24, 24, 18, 12, 6, 6],
    [19, 19, 13, 7, 1, 1],
    [14, 14, 8, 2, -4, -4],
]
EXAMPLE_F = [
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 0, 0],
    [1, 1, 1, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
]
VAN_DALEN_1 = [
    [1, 1, 1, 1, 0, 1],
    [1, 1, 1, 0, 1, 0],
    [1, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
]
VAN_DALEN_2 = [
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 0, 0],
    [1, 1, 1, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
]

SIMPLE = ((1, 0), (0, 1))


def small_directions(max_a=5, max_b=5):
    """Normalised primitive directions with a <= max_a and |b| <= max_b."""
    out = [(0, 1)]
    out += [(a, b) for a in range(1, max_a + 1) for b in range(-max_b, max_b + 1) if math.gcd(a, b) == 1]
    return out


def small_direction_sets(max_k=3, max_dim=6):
    """Every set of at most ``max_k`` directions valid for some grid up to max_dim x max_dim."""
    sets = []
    for k in range(1, max_k + 1):
        for combo in itertools.combinations(small_directions(max_dim - 1, max_dim - 1), k):
            M = sum(a for a, _ in combo)
            N = sum(abs(b) for _, b in combo)
            if M < max_dim and N < max_dim:
                sets.append(combo)
    return sets


def valid_shapes(S, max_dim=6):
    M = sum(a for a, _ in S)
    N = sum(abs(b) for _, b in S)
    return [(m, n) for m in range(M + 1, max_dim + 1) for n in range(N + 1, max_dim + 1)]


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def example_f():
    return from_rows(EXAMPLE_F)
