"""
Lattice counts under a general homogeneous binary form

    p(m, n) = (a_0 m^d + a_1 m^(d-1) n + ... + a_d n^d) / D,

for m, n >= 1 and p(m, n) <= x. The su(3) and so(5) dimension formulas are the presets.
"""
import logging
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from errors import FitError, InvalidFormError, UnsupportedParameterError, UsageError
from lattice_core import UINT128_MAX, _check_u128, _check_x, euler_transform

logger = logging.getLogger(__name__)


class HomogeneousForm(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: PositiveInt
    coefficients: Tuple[int, ...]
    denominator: PositiveInt
    name: str = "form"

    @model_validator(mode="after")
    def _certify(self) -> "HomogeneousForm":
        d, a, D = self.degree, self.coefficients, self.denominator
        if len(a) != d + 1:
            raise InvalidFormError(f"{self.name}: degree {d} needs {d + 1} coefficients, got {len(a)}")
        if any(c < 0 for c in a):
            # binary search needs monotone sections
            raise UnsupportedParameterError(f"{self.name}: negative coefficients are not supported")
        if not any(a):
            raise InvalidFormError(f"{self.name}: at least one coefficient must be positive")
        # p must grow in both variables or the column scan never ends
        if not any(a[1:]):
            raise InvalidFormError(f"{self.name}: p(m, n) does not depend on n")
        if not any(a[:-1]):
            raise InvalidFormError(f"{self.name}: p(m, n) does not depend on m")
        # the numerator mod D is periodic in m and n with period dividing D
        bound = 2 * D + d
        for m in range(1, bound + 1):
            for n in range(1, bound + 1):
                if self.numerator(m, n) % D:
                    raise InvalidFormError(
                        f"{self.name}: numerator at ({m}, {n}) is not divisible by {D}"
                    )
        return self

    def numerator(self, m: int, n: int) -> int:
        d = self.degree
        return sum(c * m ** (d - i) * n**i for i, c in enumerate(self.coefficients))

    def value(self, m: int, n: int) -> int:
        return self.numerator(m, n) // self.denominator

    def swapped(self) -> "HomogeneousForm":
        """p(n, m) as a form in (m, n)."""
        return HomogeneousForm(
            degree=self.degree,
            coefficients=tuple(reversed(self.coefficients)),
            denominator=self.denominator,
            name=f"{self.name}-swapped",
        )

    @property
    def is_symmetric(self) -> bool:
        return self.coefficients == tuple(reversed(self.coefficients))

    def spec(self) -> str:
        return f"{self.degree}:{self.denominator}:{','.join(str(c) for c in self.coefficients)}"


class ExponentFit(BaseModel):
    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    r_squared: float = Field(ge=0.0, le=1.0)
    grid: List[Tuple[int, int]]


def make_form(degree: int, coefficients: Sequence[int], denominator: int, name: str = "form") -> HomogeneousForm:
    return HomogeneousForm(degree=degree, coefficients=tuple(coefficients), denominator=denominator, name=name)


# jk(j+k)/2 = (m^2 n + m n^2) / 2
SU3_FORM = make_form(3, (0, 1, 1, 0), 2, "su3")
# mn(m+n)(m+2n)/6 = (m^3 n + 3 m^2 n^2 + 2 m n^3) / 6
SO5_FORM = make_form(4, (0, 1, 3, 2, 0), 6, "so5")

PRESETS = {form.name: form for form in (SU3_FORM, SO5_FORM)}


def parse_form(text: str) -> HomogeneousForm:
    """Accept a preset name or "d:D:a_0,a_1,...,a_d"."""
    text = text.strip()
    if text in PRESETS:
        return PRESETS[text]
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"form must be a preset ({', '.join(PRESETS)}) or d:D:a_0,...,a_d, got {text!r}")
    try:
        degree = int(parts[0])
        denominator = int(parts[1])
        coefficients = tuple(int(c) for c in parts[2].split(","))
    except ValueError as exc:
        raise UsageError(f"malformed form {text!r}: {exc}") from exc
    return make_form(degree, coefficients, denominator, name=text)


def _horner(coeffs: Sequence[int], n: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * n + c
    return _check_u128(acc, "form numerator")


def _largest_n(coeffs_at_m: Sequence[int], target: int, hi: int) -> int:
    """Largest n in [0, hi] whose numerator is <= target."""
    if _horner(coeffs_at_m, hi) <= target:
        return hi
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _horner(coeffs_at_m, mid) <= target:
            lo = mid
        else:
            hi = mid
    return lo


def _column_heights(form: HomogeneousForm, x: int) -> List[int]:
    """Heights max{n : p(m, n) <= x} for m = 1, 2, ... while p(m, 1) <= x."""
    _check_x(x)
    target = form.denominator * x
    if target > UINT128_MAX:
        raise UnsupportedParameterError(f"D*x = {target} does not fit in 128 bits")
    d = form.degree
    heights: List[int] = []
    # the first column is the tallest; find an upper bound by doubling
    hi = 1
    while form.numerator(1, hi) <= target:
        hi *= 2
    m = 1
    while form.numerator(m, 1) <= target:
        # numerator(m, n) = sum_i (a_i m^(d-i)) n^i, highest power of n first for Horner
        coeffs = [form.coefficients[i] * m ** (d - i) for i in range(d, -1, -1)]
        hi = _largest_n(coeffs, target, hi)
        heights.append(hi)
        m += 1
    return heights


def count_under(form: HomogeneousForm, x: int) -> int:
    """Number of (m, n) with m, n >= 1 and p(m, n) <= x."""
    return sum(_column_heights(form, x))


def form_multiplicities(form: HomogeneousForm, n_max: int) -> np.ndarray:
    """t[v] = number of (m, n) with p(m, n) = v, 0 <= v <= n_max."""
    table = np.zeros(n_max + 1, dtype=np.int64)
    if n_max < 1:
        return table
    for m, top in enumerate(_column_heights(form, n_max), start=1):
        for n in range(1, top + 1):
            table[form.value(m, n)] += 1
    return table


def rep_count(form: HomogeneousForm, n_max: int) -> List[int]:
    """Number of representations (sums of irreducibles) of each dimension 0..n_max."""
    if n_max < 0:
        raise UnsupportedParameterError(f"n_max must be >= 0, got {n_max}")
    return euler_transform(form_multiplicities(form, n_max), n_max)


def exponent_fit(form: HomogeneousForm, x_grid: Sequence[int]) -> ExponentFit:
    """Least-squares slope of log(count) against log(x); homogeneity predicts 2/d."""
    grid = sorted({int(x) for x in x_grid})
    if len(grid) < 10:
        raise FitError(f"exponent fit needs at least 10 distinct grid points, got {len(grid)}")
    counts = [count_under(form, x) for x in grid]
    if counts[0] < 10:
        raise FitError(f"count at the smallest x ({grid[0]}) is {counts[0]}; need at least 10")
    log_x = np.log(np.array(grid, dtype=np.float64))
    log_c = np.log(np.array(counts, dtype=np.float64))
    slope, intercept = np.polyfit(log_x, log_c, 1)
    predicted = slope * log_x + intercept
    ss_res = float(np.sum((log_c - predicted) ** 2))
    ss_tot = float(np.sum((log_c - log_c.mean()) ** 2))
    if ss_tot == 0:
        raise FitError("all counts are equal; slope is undefined")
    r_squared = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    logger.info("%s: slope %.5f over %d points (expected %.5f)", form.name, slope, len(grid), 2 / form.degree)
    return ExponentFit(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        grid=list(zip(grid, counts)),
    )


def scaling_ratio(form: HomogeneousForm, x: int, lam: int = 2) -> float:
    """count(lam^d x) / count(x); homogeneity predicts lam^2."""
    return count_under(form, lam**form.degree * x) / count_under(form, x)