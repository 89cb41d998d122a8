"""
Closed-form constants of the two-term expansion

    S(x) = c1 x^(2/3) + c2 x^(1/2) + O(x^(1/3)),
    c1 = 2^(2/3) sqrt(3) Gamma(1/3)^3 / (4 pi),  c2 = 2^(3/2) zeta(1/2),

and the residual diagnostics that check the error exponent on real data.
"""
import logging
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence

from mpmath.ctx_mp import MPContext
from pydantic import BaseModel, ConfigDict

from errors import UnsupportedParameterError
from lattice_core import CountMethod, SummatoryRecord, _check_x, divisor_summatory, icbrt, summatory
from settings import get_settings

logger = logging.getLogger(__name__)

# Frozen decimal literals. Each one was produced by an independent
# arbitrary-precision evaluation and is re-checked by the test suite.
EULER_GAMMA = "0.5772156649015328606065120900824024310422"
ZETA_HALF = "-1.4603545088095868128894991525152980125086"
GAMMA_ONE_THIRD = "2.6789385347077476336556929409746776441287"

PROVENANCE = {
    "euler_gamma": "mpmath.euler at 50 digits",
    "zeta_half": "mpmath.zeta(0.5) at 50 digits; cross-checked by quadrature.zeta_half_integral",
    "gamma_one_third": "mpmath.gamma(1/3) at 50 digits",
    "c1": "2^(2/3) sqrt(3) Gamma(1/3)^3 / (4 pi), 40-digit arithmetic on the literals above",
    "c2": "2^(3/2) zeta(1/2), 40-digit arithmetic on the literals above",
    "residue_23": "2^(2/3) Gamma(1/3)^3 / (2 pi sqrt(3)), 40-digit arithmetic on the literals above",
}

_DIGITS = 40


class AsymptoticConstants(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma_one_third: Decimal
    zeta_half: Decimal
    euler_gamma: Decimal
    c1: Decimal
    c2: Decimal
    residue_23: Decimal
    provenance: Dict[str, str]


def _context(dps: int) -> MPContext:
    # private context: no shared global precision between threads
    ctx = MPContext()
    ctx.dps = dps
    return ctx


def _to_decimal(ctx: MPContext, value) -> Decimal:
    return Decimal(ctx.nstr(value, _DIGITS, strip_zeros=False))


@lru_cache
def constants() -> AsymptoticConstants:
    ctx = _context(_DIGITS + 10)
    gamma13 = ctx.mpf(GAMMA_ONE_THIRD)
    zeta_half = ctx.mpf(ZETA_HALF)
    two_23 = ctx.cbrt(4)
    c1 = two_23 * ctx.sqrt(3) * gamma13**3 / (4 * ctx.pi)
    c2 = 2 * ctx.sqrt(2) * zeta_half
    residue = two_23 * gamma13**3 / (2 * ctx.pi * ctx.sqrt(3))
    return AsymptoticConstants(
        gamma_one_third=Decimal(GAMMA_ONE_THIRD),
        zeta_half=Decimal(ZETA_HALF),
        euler_gamma=Decimal(EULER_GAMMA),
        c1=_to_decimal(ctx, c1),
        c2=_to_decimal(ctx, c2),
        residue_23=_to_decimal(ctx, residue),
        provenance=dict(PROVENANCE),
    )


def main_terms(x: float) -> float:
    """c1 x^(2/3) + c2 x^(1/2) in double precision."""
    if not x >= 1:
        raise UnsupportedParameterError(f"main_terms needs x >= 1, got {x}")
    c = constants()
    return float(c.c1) * x ** (2.0 / 3.0) + float(c.c2) * math.sqrt(x)


def _extended_record(x: int, count: int, method: CountMethod) -> SummatoryRecord:
    c = constants()
    ctx = _context(get_settings().extended_dps)
    xm = ctx.mpf(x)
    term_23 = ctx.mpf(str(c.c1)) * ctx.cbrt(xm) ** 2
    term_12 = ctx.mpf(str(c.c2)) * ctx.sqrt(xm)
    residual = count - term_23 - term_12
    return SummatoryRecord(
        x=x,
        exact_count=count,
        main_term_23=float(term_23),
        main_term_12=float(term_12),
        residual=float(residual),
        scaled_residual=float(residual / ctx.cbrt(xm)),
        method=method,
        precision="extended",
    )


def summatory_record(x: int, method: CountMethod = CountMethod.HYPERBOLA) -> SummatoryRecord:
    _check_x(x)
    method = CountMethod(method)
    count = summatory(x, method)
    if x > get_settings().extended_precision_above:
        return _extended_record(x, count, method)
    c = constants()
    term_23 = float(c.c1) * x ** (2.0 / 3.0)
    term_12 = float(c.c2) * math.sqrt(x)
    residual = count - term_23 - term_12
    return SummatoryRecord(
        x=x,
        exact_count=count,
        main_term_23=term_23,
        main_term_12=term_12,
        residual=residual,
        scaled_residual=residual / x ** (1.0 / 3.0),
        method=method,
    )


def residual_series(x_grid: Sequence[int], method: CountMethod = CountMethod.HYPERBOLA) -> List[SummatoryRecord]:
    """One SummatoryRecord per grid point, in grid order."""
    grid = [int(x) for x in x_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UnsupportedParameterError("residual grid must be strictly increasing")
    for x in grid:
        _check_x(x)
    workers = max(1, min(get_settings().threads, len(grid)))
    logger.info("residual sweep over %d points with method=%s on %d workers", len(grid), CountMethod(method).value, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order
        return list(pool.map(lambda x: summatory_record(x, method), grid))


def tauberian_ratio(x: int) -> float:
    """S(x) / (c1 x^(2/3)); tends to 1."""
    _check_x(x)
    return summatory(x, CountMethod.HYPERBOLA) / (float(constants().c1) * x ** (2.0 / 3.0))


def decade_maxima(records: Iterable[SummatoryRecord]) -> Dict[int, float]:
    """Max |scaled_residual| per decade [10^k, 10^(k+1))."""
    maxima: Dict[int, float] = defaultdict(float)
    for rec in records:
        k = len(str(rec.x)) - 1
        maxima[k] = max(maxima[k], abs(rec.scaled_residual))
    return dict(sorted(maxima.items()))


def residual_growth_ok(records: Sequence[SummatoryRecord], base_low: int = 2, base_high: int = 4, factor: float = 2.0) -> bool:
    """
    No-growth form of the O(x^(1/3)) claim: no decade from 10^base_high on has
    a larger max |scaled_residual| than factor times the max over
    [10^base_low, 10^base_high].
    """
    base = max(
        (abs(r.scaled_residual) for r in records if 10**base_low <= r.x <= 10**base_high),
        default=None,
    )
    if base is None:
        raise UnsupportedParameterError(f"no records in [1e{base_low}, 1e{base_high}] to compare against")
    later = {k: v for k, v in decade_maxima(records).items() if k >= base_high}
    for k, value in later.items():
        if value > factor * base:
            logger.warning("decade 1e%d has max scaled residual %.6g > %.1f x %.6g", k, value, factor, base)
            return False
    return True


def divisor_residual(x: int) -> float:
    """(D(x) - x log x - (2 gamma - 1) x) / sqrt(x)."""
    _check_x(x)
    gamma = float(constants().euler_gamma)
    return (divisor_summatory(x) - x * math.log(x) - (2 * gamma - 1) * x) / math.sqrt(x)


class SqrtSumCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: int
    sqrt_sum: float
    expansion: float
    scaled_deviation: float


def sqrt_sum(x: int) -> float:
    """sum_{1 <= n <= x^(1/3)} sqrt(n^2 + 8x/n), the sum left after simplifying the hyperbola count."""
    _check_x(x)
    return math.fsum(math.sqrt(n * n + 8 * x / n) for n in range(1, icbrt(x) + 1))


def sqrt_sum_check(x: int) -> SqrtSumCheck:
    """Compare sqrt_sum(x) with (3 - 2F(0)) x^(2/3) + 2^(3/2) zeta(1/2) sqrt(x)."""
    from quadrature import eval_F

    value = sqrt_sum(x)
    expansion = (3 - 2 * eval_F(0.0)) * x ** (2.0 / 3.0) + float(constants().c2) * math.sqrt(x)
    return SqrtSumCheck(
        x=x,
        sqrt_sum=value,
        expansion=expansion,
        scaled_deviation=(value - expansion) / x ** (1.0 / 3.0),
    )
