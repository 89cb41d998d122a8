import random
from itertools import accumulate

import pytest

from errors import ArithmeticOverflowError, BudgetExceededError, UnsupportedParameterError
from lattice_core import (
    CountMethod,
    dim_su3,
    divisor_summatory,
    euler_transform,
    icbrt,
    max_n_for_m,
    rep_count_r,
    rho,
    rho_table,
    summatory,
    summatory_brute,
    summatory_hyperbola,
)


@pytest.mark.parametrize("j,k,expected", [(1, 1, 1), (1, 2, 3), (2, 1, 3), (2, 2, 8), (1, 3, 6), (2, 3, 15)])
def test_dim_su3(j, k, expected):
    assert dim_su3(j, k).value == expected


def test_dim_su3_rejects_bad_input():
    with pytest.raises(UnsupportedParameterError):
        dim_su3(0, 1)
    with pytest.raises(ArithmeticOverflowError):
        dim_su3(2**64, 2**64)


def test_icbrt_at_and_around_cubes():
    assert icbrt(0) == 0
    for r in list(range(1, 2000)) + [10**5, 10**15 + 7, 2**60, 3**40]:
        cube = r**3
        assert icbrt(cube) == r
        assert icbrt(cube - 1) == r - 1
        assert icbrt(cube + 1) == r


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 0), (3, 2), (6, 2), (8, 1), (10, 2), (15, 4), (27, 1)])
def test_rho_values(n, expected):
    assert rho(n) == expected


def test_rho_matches_table():
    table = rho_table(2000)
    assert [rho(n) for n in range(1, 2001)] == table[1:].tolist()


def test_parity_law():
    table = rho_table(10**5)
    cubes = {r**3 for r in range(1, 47)}
    for n in range(1, 10**5 + 1):
        assert (table[n] % 2 == 1) == (n in cubes), n


@pytest.mark.parametrize("m,x,expected", [(1, 10, 4), (1, 1, 1), (100, 10, 0), (2, 100, 9), (9, 100, 2)])
def test_max_n_for_m(m, x, expected):
    assert max_n_for_m(m, x) == expected


def test_max_n_for_m_brackets_the_curve():
    rng = random.Random(7)
    for _ in range(500):
        x = rng.randint(1, 10**12)
        m = rng.randint(1, 2000)
        n = max_n_for_m(m, x)
        assert m * n * (m + n) <= 2 * x < m * (n + 1) * (m + n + 1)


@pytest.mark.parametrize("x,expected", [(1, 1), (10, 8), (100, 50)])
def test_summatory_fixtures(x, expected):
    assert summatory_brute(x) == expected
    assert summatory_hyperbola(x) == expected


def test_hyperbola_equals_brute_exhaustively():
    for x in range(1, 5001):
        assert summatory_hyperbola(x) == summatory_brute(x), x


def test_hyperbola_equals_brute_on_random_points():
    rng = random.Random(2024)
    for x in sorted(rng.randint(1, 10**6) for _ in range(100)):
        assert summatory(x, CountMethod.HYPERBOLA) == summatory(x, CountMethod.BRUTE), x


def test_summatory_jumps_by_rho():
    previous = summatory_hyperbola(1)
    for x in range(2, 1500):
        current = summatory_hyperbola(x)
        assert current - previous == rho(x)
        previous = current


def test_rho_sums_to_summatory():
    partial = list(accumulate(rho_table(10**4).tolist()))
    for x in (1, 10, 100, 999, 4321, 10**4):
        assert partial[x] == summatory_brute(x)


def test_brute_budget_and_overflow_policy(set_env):
    with pytest.raises(BudgetExceededError):
        summatory_brute(10**6, point_cap=100)
    set_env(brute_point_cap=10)
    with pytest.raises(BudgetExceededError):
        summatory_brute(1000)
    with pytest.raises(ArithmeticOverflowError):
        summatory_hyperbola(10**15 + 1)
    with pytest.raises(UnsupportedParameterError):
        summatory_hyperbola(0)


@pytest.mark.parametrize("x,expected", [(1, 1), (4, 8), (100, 482)])
def test_divisor_summatory_fixtures(x, expected):
    assert divisor_summatory(x) == expected


def test_divisor_summatory_against_floor_sum():
    for x in range(1, 400):
        assert divisor_summatory(x) == sum(x // k for k in range(1, x + 1))


def _colored_multisets(parts, total, start=0):
    """Every multiset of (dimension, color) parts summing to total, parts sorted by dimension."""
    if total == 0:
        yield ()
        return
    for i in range(start, len(parts)):
        if parts[i][0] > total:
            break
        for rest in _colored_multisets(parts, total - parts[i][0], i):
            yield (parts[i],) + rest


def test_rep_count_small_values():
    assert rep_count_r(0) == [1]
    assert rep_count_r(1) == [1, 1]
    assert rep_count_r(3) == [1, 1, 1, 3]
    assert rep_count_r(6) == [1, 1, 1, 3, 3, 3, 8]


def test_rep_count_matches_multiset_enumeration():
    n_max = 30
    parts = sorted(
        (dim_su3(j, k).value, (j, k))
        for j in range(1, n_max + 1)
        for k in range(1, n_max + 1)
        if dim_su3(j, k).value <= n_max
    )
    expected = [sum(1 for _ in _colored_multisets(parts, n)) for n in range(n_max + 1)]
    assert rep_count_r(n_max) == expected


def test_euler_transform_with_unit_multiplicities_gives_partitions():
    ones = [0] + [1] * 10
    assert euler_transform(ones, 10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
