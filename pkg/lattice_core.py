"""
Exact integer counting for irreducible su(3) representations.

An irreducible representation W_{j,k} (j, k >= 1) has dimension jk(j+k)/2.
rho(n) counts the pairs of dimension n and S(x) = sum_{n<=x} rho(n) counts the
lattice points (m, n) with mn(m+n) <= 2x. Everything here is integer
arithmetic; floating point never decides a floor.
"""
import logging
from enum import Enum
from math import isqrt
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt

from errors import ArithmeticOverflowError, BudgetExceededError, UnsupportedParameterError
from settings import get_settings

logger = logging.getLogger(__name__)

UINT128_MAX = (1 << 128) - 1

# rho_table keeps one machine integer per dimension
RHO_TABLE_MAX = 10**8


class CountMethod(str, Enum):
    BRUTE = "brute"
    HYPERBOLA = "hyperbola"


class Dimension(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: PositiveInt


class SummatoryRecord(BaseModel):
    """One row of residual diagnostics for S(x) against the two-term expansion."""
    model_config = ConfigDict(frozen=True)

    x: PositiveInt
    exact_count: int
    main_term_23: float
    main_term_12: float
    residual: float
    scaled_residual: float
    method: CountMethod
    precision: str = "double"


def _check_u128(value: int, what: str) -> int:
    if value > UINT128_MAX:
        raise ArithmeticOverflowError(f"{what} = {value} does not fit in 128 bits")
    return value


def _check_x(x: int, name: str = "x") -> int:
    if x < 1:
        raise UnsupportedParameterError(f"{name} must be a positive integer, got {x}")
    max_x = get_settings().max_x
    if x > max_x:
        raise ArithmeticOverflowError(f"{name} = {x} exceeds the supported maximum {max_x}")
    return x


def icbrt(n: int) -> int:
    """Largest r with r**3 <= n."""
    if n < 0:
        raise UnsupportedParameterError(f"icbrt needs a nonnegative argument, got {n}")
    if n < 2:
        return n
    # 2**ceil(bits/3) is above the real cube root, so Newton decreases monotonically
    r = 1 << ((n.bit_length() + 2) // 3)
    while True:
        nxt = (2 * r + n // (r * r)) // 3
        if nxt >= r:
            break
        r = nxt
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def dim_su3(j: int, k: int) -> Dimension:
    if j < 1 or k < 1:
        raise UnsupportedParameterError(f"dim_su3 needs j, k >= 1, got ({j}, {k})")
    doubled = _check_u128(j * k * (j + k), "j*k*(j+k)")
    # jk(j+k) is always even
    return Dimension(value=doubled // 2)


def max_n_for_m(m: int, x: int) -> int:
    """
    Largest n >= 0 with m*n*(m+n) <= 2x, by binary search on the cubic.
    Equals floor((-m^2 + sqrt(m^4 + 8mx)) / (2m)).
    """
    if m < 1:
        raise UnsupportedParameterError(f"m must be >= 1, got {m}")
    _check_x(x)
    target = 2 * x
    # m*n*n <= m*n*(m+n) gives n <= sqrt(2x/m)
    lo, hi = 0, isqrt(target // m) + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _check_u128(m * mid * (m + mid), "m*n*(m+n)") <= target:
            lo = mid
        else:
            hi = mid
    return lo


def rho(n: int) -> int:
    """Number of ordered pairs (j, k) with jk(j+k)/2 == n."""
    _check_x(n, "n")
    count = 0
    j = 1
    # the smaller index satisfies 2j^3 <= jk(j+k) = 2n
    while j * j * j <= n:
        k = max_n_for_m(j, n)
        if k >= j and j * k * (j + k) == 2 * n:
            count += 1 if k == j else 2
        j += 1
    return count


def rho_table(n_max: int) -> np.ndarray:
    """Array t with t[n] = rho(n) for 0 <= n <= n_max (t[0] = 0)."""
    if n_max < 0:
        raise UnsupportedParameterError(f"n_max must be >= 0, got {n_max}")
    if n_max > RHO_TABLE_MAX:
        raise UnsupportedParameterError(f"rho_table is limited to n_max <= {RHO_TABLE_MAX}")
    table = np.zeros(n_max + 1, dtype=np.int64)
    m = 1
    while m * (m + 1) <= 2 * n_max:
        top = max_n_for_m(m, n_max)
        n = np.arange(1, top + 1, dtype=np.int64)
        # dimensions along a column are strictly increasing, so no repeated index
        table[m * n * (m + n) // 2] += 1
        m += 1
    return table


def summatory_brute(x: int, point_cap: Optional[int] = None) -> int:
    """Count lattice points under mn(m+n) = 2x one point at a time."""
    _check_x(x)
    cap = point_cap if point_cap is not None else get_settings().brute_point_cap
    target = 2 * x
    total = 0
    m = 1
    while m * (m + 1) <= target:
        n = 1
        while m * n * (m + n) <= target:
            n += 1
        total += n - 1
        if total > cap:
            logger.warning("brute count for x=%d stopped at m=%d after %d points", x, m, total)
            raise BudgetExceededError(
                f"summatory_brute({x}) exceeds the point budget of {cap}; use the hyperbola method"
            )
        m += 1
    return total


def summatory_hyperbola(x: int) -> int:
    """
    S(x) = 2 * sum_{n <= x^(1/3)} max_n_for_m(n, x) - floor(x^(1/3))^2.

    The square [1, r]^2 with r = floor(x^(1/3)) lies under the curve and every
    point under the curve has min(m, n) <= r, so the count is exact.
    """
    _check_x(x)
    r = icbrt(x)
    return 2 * sum(max_n_for_m(n, x) for n in range(1, r + 1)) - r * r


_SUMMATORY: Dict[CountMethod, Callable[[int], int]] = {
    CountMethod.BRUTE: summatory_brute,
    CountMethod.HYPERBOLA: summatory_hyperbola,
}


def summatory(x: int, method: CountMethod = CountMethod.HYPERBOLA) -> int:
    return _SUMMATORY[CountMethod(method)](x)


def divisor_summatory(x: int) -> int:
    """sum_{n <= x} d(n) = 2 * sum_{n <= sqrt(x)} floor(x/n) - floor(sqrt(x))^2."""
    _check_x(x)
    r = isqrt(x)
    return 2 * sum(x // n for n in range(1, r + 1)) - r * r


def euler_transform(multiplicities: Sequence[int], n_max: int) -> List[int]:
    """
    Coefficients of prod_{d >= 1} (1 - q^d)^(-multiplicities[d]) up to q^n_max.

    Applies one geometric factor 1/(1 - q^d) per unit of multiplicity. Python
    integers keep the coefficients exact.
    """
    if n_max < 0:
        raise UnsupportedParameterError(f"n_max must be >= 0, got {n_max}")
    coeffs = [1] + [0] * n_max
    for d in range(1, min(n_max, len(multiplicities) - 1) + 1):
        for _ in range(int(multiplicities[d])):
            for i in range(d, n_max + 1):
                coeffs[i] += coeffs[i - d]
    return coeffs


def rep_count_r(n_max: int) -> List[int]:
    """r(0..n_max): number of (not necessarily irreducible) su(3) representations of each dimension."""
    if n_max < 0:
        raise UnsupportedParameterError(f"n_max must be >= 0, got {n_max}")
    return euler_transform(rho_table(n_max), n_max)
