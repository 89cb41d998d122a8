"""
Adaptive Gauss-Kronrod integration and the integrals behind the second term:

    F(y) = int_y^{1/2} (2 t^{5/2} - t^{-1/2}) / sqrt(1 + t^3) dt,
    F(y) = F(0) + 2 sqrt(y) + O(y^{7/2}),
    F(0) = 3/4 - 2^{2/3} sqrt(3) Gamma(1/3)^3 / (8 pi),
    zeta(1/2) = -1 - 1/2 int_1^oo {t} t^{-3/2} dt.
"""
import heapq
import logging
import math
from decimal import Decimal
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeFloat, NonNegativeInt

from asymptotics import constants
from errors import ToleranceNotMetError, UnsupportedParameterError
from settings import get_settings

logger = logging.getLogger(__name__)

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights belong to the odd-indexed Kronrod nodes 1, 3, 5, 7
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[[1, 3, 5]] = _WG[:3]
_GAUSS[[9, 11, 13]] = _WG[2::-1]
_GAUSS[7] = _WG[3]


class QuadratureResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    error_estimate: NonNegativeFloat
    subdivisions: NonNegativeInt


class FExpansionCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    y: float
    F_y: float
    deviation: float


class IdentityCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    lhs: float
    rhs: float
    abs_difference: float
    main_coefficient: float


def _gauss_kronrod(f: Callable[[float], float], a: float, b: float) -> Tuple[float, float]:
    half = (b - a) / 2
    center = (a + b) / 2
    fx = np.array([f(center + half * node) for node in _NODES])
    kronrod = half * float(np.dot(_KRONROD, fx))
    gauss = half * float(np.dot(_GAUSS, fx))
    return kronrod, abs(kronrod - gauss)


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Optional[float] = None,
    max_subdivisions: Optional[int] = None,
) -> QuadratureResult:
    """
    Globally adaptive G7/K15 quadrature: always bisect the interval with the
    largest error estimate until the summed estimate is within tol (absolute).
    """
    settings = get_settings()
    tol = settings.quad_tol if tol is None else tol
    max_subdivisions = settings.quad_max_subdivisions if max_subdivisions is None else max_subdivisions
    if not a < b:
        raise UnsupportedParameterError(f"integrate needs a < b, got [{a}, {b}]")
    if tol <= 0:
        raise UnsupportedParameterError(f"tolerance must be positive, got {tol}")

    value, error = _gauss_kronrod(f, a, b)
    # max-heap on the error estimate; ties broken by left endpoint for determinism
    heap = [(-error, a, b, value)]
    total_value, total_error = value, error
    subdivisions = 0
    while total_error > tol:
        if subdivisions >= max_subdivisions:
            logger.warning("quadrature on [%g, %g] stopped after %d subdivisions, error %.3g > %.3g",
                           a, b, subdivisions, total_error, tol)
            raise ToleranceNotMetError(
                f"tolerance {tol:g} not met on [{a}, {b}] after {subdivisions} subdivisions",
                best_estimate=math.fsum(item[3] for item in heap),
                error_estimate=total_error,
                subdivisions=subdivisions,
            )
        neg_err, left, right, piece = heapq.heappop(heap)
        mid = (left + right) / 2
        v1, e1 = _gauss_kronrod(f, left, mid)
        v2, e2 = _gauss_kronrod(f, mid, right)
        heapq.heappush(heap, (-e1, left, mid, v1))
        heapq.heappush(heap, (-e2, mid, right, v2))
        total_value += v1 + v2 - piece
        total_error += e1 + e2 + neg_err
        subdivisions += 1

    # resum so the result does not carry the running-update drift
    return QuadratureResult(
        value=math.fsum(item[3] for item in heap),
        error_estimate=math.fsum(-item[0] for item in heap),
        subdivisions=subdivisions,
    )


def _f_integrand(t: float) -> float:
    return (2 * t**2.5 - t**-0.5) / math.sqrt(1 + t**3)


def _f_integrand_substituted(u: float) -> float:
    # t = u^2, dt = 2u du
    u6 = u**6
    return (4 * u6 - 2) / math.sqrt(1 + u6)


def _check_y(y: float) -> float:
    if not 0 <= y <= 0.5:
        raise UnsupportedParameterError(f"F(y) is defined here for 0 <= y <= 1/2, got {y}")
    return float(y)


def eval_F_substituted(y: float, tol: Optional[float] = None) -> float:
    """F(y) as int_{sqrt(y)}^{1/sqrt(2)} (4u^6 - 2) / sqrt(1 + u^6) du."""
    y = _check_y(y)
    if y == 0.5:
        return 0.0
    return integrate(_f_integrand_substituted, math.sqrt(y), math.sqrt(0.5), tol).value


def eval_F(y: float, tol: Optional[float] = None) -> float:
    """F(y); direct integration for y > 0, the t = u^2 form at y = 0."""
    y = _check_y(y)
    if y == 0.5:
        return 0.0
    if y == 0:
        return eval_F_substituted(0.0, tol)
    return integrate(_f_integrand, y, 0.5, tol).value


def identity_rhs() -> float:
    """3/4 - 2^{2/3} sqrt(3) Gamma(1/3)^3 / (8 pi), i.e. 3/4 - c1/2."""
    return float(Decimal("0.75") - constants().c1 / 2)


def identity_check(tol: Optional[float] = None) -> IdentityCheck:
    lhs = eval_F(0.0, tol)
    rhs = identity_rhs()
    return IdentityCheck(lhs=lhs, rhs=rhs, abs_difference=abs(lhs - rhs), main_coefficient=1.5 - 2 * lhs)


def _deviation_integrand(u: float) -> float:
    # -(g(t) + t^{-1/2}) with t = u^2, times dt/du = 2u; 1 - 1/s = t^3 / (s (s + 1))
    u6 = u**6
    s = math.sqrt(1 + u6)
    return -2 * u6 * (2 + 1 / (s + 1)) / s


def f_expansion_check(y: float, tol: Optional[float] = None) -> FExpansionCheck:
    """
    deviation = F(y) - F(0) - 2 sqrt(y), integrated directly over [0, y] so
    that it keeps relative accuracy far below the size of F itself.
    """
    if not 0 < y <= 0.01:
        raise UnsupportedParameterError(f"f_expansion_check needs 0 < y <= 0.01, got {y}")
    # the deviation is about (5/7) y^{7/2}; ask for a few correct digits of it
    dev_tol = min(tol or get_settings().quad_tol, 1e-3 * y**3.5)
    deviation = integrate(_deviation_integrand, 0.0, math.sqrt(y), dev_tol).value
    return FExpansionCheck(y=y, F_y=eval_F(y, tol), deviation=deviation)


def zeta_half_integral(T: int) -> float:
    """
    zeta(1/2) from -1 - 1/2 (I(T) + T^{-1/2}), where I(T) integrates {t} t^{-3/2}
    exactly over [1, T] and T^{-1/2} = int_T^oo t^{-3/2}/2 dt replaces {t} by its mean.
    """
    if T < 10:
        raise UnsupportedParameterError(f"zeta_half_integral needs T >= 10, got {T}")
    k = np.arange(1, T, dtype=np.float64)
    a = np.sqrt(k + 1)
    b = np.sqrt(k)
    # 2 sqrt(k+1) + 2k/sqrt(k+1) - 4 sqrt(k) rewritten as 2 / ((a + b)^2 a)
    pieces = 2.0 / ((a + b) ** 2 * a)
    return -1.0 - 0.5 * (math.fsum(pieces) + T**-0.5)
