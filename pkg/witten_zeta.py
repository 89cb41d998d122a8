"""
Direct partial sums of the Witten zeta function

    zeta_su3(s) = sum_{j,k >= 1} (jk(j+k)/2)^(-s),   s real, s >= 1,

with a tail enclosure built from the leading term of S(x).
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeFloat, NonNegativeInt, PositiveInt

from asymptotics import constants
from errors import UnsupportedParameterError
from lattice_core import CountMethod, _check_x, max_n_for_m, rho_table, summatory
from settings import get_settings

logger = logging.getLogger(__name__)

TAIL_SAFETY = 2.0
# fixed chunking keeps the reduction order independent of the worker count
_CHUNK = 256


class ZetaEvaluation(BaseModel):
    """The true value lies in [partial_sum, partial_sum + tail_bound]."""
    model_config = ConfigDict(frozen=True)

    s: float
    dim_cutoff: PositiveInt
    partial_sum: float
    tail_bound: NonNegativeFloat
    points_included: NonNegativeInt


def _check_args(s: float, dim_cutoff: int) -> None:
    if not s >= 1:
        raise UnsupportedParameterError(
            f"s = {s} is too close to the abscissa 2/3; only s >= 1 has a usable tail bound"
        )
    _check_x(dim_cutoff, "dim_cutoff")


def tail_bound(s: float, dim_cutoff: int) -> float:
    """2 * c1 * s / (s - 2/3) * N^(2/3 - s), from partial summation against c1 t^(2/3)."""
    c1 = float(constants().c1)
    return TAIL_SAFETY * c1 * (s / (s - 2.0 / 3.0)) * float(dim_cutoff) ** (2.0 / 3.0 - s)


def _column_chunk(s: float, dim_cutoff: int, first: int, last: int) -> Tuple[float, int]:
    terms: List[float] = []
    points = 0
    for m in range(first, last):
        top = max_n_for_m(m, dim_cutoff)
        if top == 0:
            continue
        n = np.arange(1, top + 1, dtype=np.int64)
        dims = (m * n * (m + n) // 2).astype(np.float64)
        terms.extend(np.power(dims, -s).tolist())
        points += top
    return math.fsum(terms), points


def zeta_su3_direct(s: float, dim_cutoff: int) -> ZetaEvaluation:
    """Sum over lattice points (j, k) with jk(j+k)/2 <= dim_cutoff, column by column."""
    _check_args(s, dim_cutoff)
    m_stop = 1
    while m_stop * (m_stop + 1) <= 2 * dim_cutoff:
        m_stop += 1
    bounds = [(lo, min(lo + _CHUNK, m_stop)) for lo in range(1, m_stop, _CHUNK)]
    workers = max(1, min(get_settings().threads, len(bounds)))
    logger.info("zeta_su3_direct s=%g cutoff=%d: %d chunks on %d workers", s, dim_cutoff, len(bounds), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(lambda b: _column_chunk(s, dim_cutoff, *b), bounds))
    return ZetaEvaluation(
        s=s,
        dim_cutoff=dim_cutoff,
        partial_sum=math.fsum(value for value, _ in chunks),
        tail_bound=tail_bound(s, dim_cutoff),
        points_included=sum(points for _, points in chunks),
    )


def zeta_su3_via_rho(s: float, dim_cutoff: int) -> ZetaEvaluation:
    """The same finite sum regrouped by dimension: sum_{n <= N} rho(n) n^(-s)."""
    _check_args(s, dim_cutoff)
    table = rho_table(dim_cutoff)
    dims = np.nonzero(table)[0]
    weights = table[dims].astype(np.float64)
    terms = weights * np.power(dims.astype(np.float64), -s)
    return ZetaEvaluation(
        s=s,
        dim_cutoff=dim_cutoff,
        partial_sum=math.fsum(terms.tolist()),
        tail_bound=tail_bound(s, dim_cutoff),
        points_included=int(table.sum()),
    )


def residue_su3() -> float:
    """Res_{s=2/3} zeta_su3(s) = 2^(2/3) Gamma(1/3)^3 / (2 pi sqrt(3))."""
    return float(constants().residue_23)


def omega_residue() -> float:
    """Residue at 2/3 of omega(s) = 2^(-s) zeta_su3(s)."""
    return 2.0 ** (-2.0 / 3.0) * residue_su3()


def residue_ratio(x: int) -> float:
    """S(x) / ((3/2) Res x^(2/3)), which tends to 1."""
    _check_x(x)
    return summatory(x, CountMethod.HYPERBOLA) / (1.5 * residue_su3() * x ** (2.0 / 3.0))
