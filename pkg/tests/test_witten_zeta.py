import math

import pytest

from asymptotics import constants
from errors import UnsupportedParameterError
from witten_zeta import (
    omega_residue,
    residue_ratio,
    residue_su3,
    tail_bound,
    zeta_su3_direct,
    zeta_su3_via_rho,
)


def test_small_cutoff_by_hand():
    # dimensions <= 10: 1, 3 (twice), 6 (twice), 8, 10 (twice)
    expected = 1 + 2 / 9 + 2 / 36 + 1 / 64 + 2 / 100
    for evaluation in (zeta_su3_direct(2.0, 10), zeta_su3_via_rho(2.0, 10)):
        assert evaluation.partial_sum == pytest.approx(expected, rel=1e-15)
        assert evaluation.points_included == 8
        assert evaluation.tail_bound == tail_bound(2.0, 10)


def test_rejects_s_near_the_abscissa():
    for s in (0.9, 2 / 3, 0.5, float("nan")):
        with pytest.raises(UnsupportedParameterError):
            zeta_su3_direct(s, 100)
    with pytest.raises(UnsupportedParameterError):
        zeta_su3_via_rho(2.0, 0)


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 3.0])
def test_summation_order_does_not_matter(s):
    direct = zeta_su3_direct(s, 10**5)
    by_rho = zeta_su3_via_rho(s, 10**5)
    assert direct.partial_sum == pytest.approx(by_rho.partial_sum, rel=1e-12)
    assert direct.points_included == by_rho.points_included


def test_summation_orders_agree_to_a_thousand_ulps():
    direct = zeta_su3_direct(2.0, 10**4).partial_sum
    by_rho = zeta_su3_via_rho(2.0, 10**4).partial_sum
    assert abs(direct - by_rho) <= 1e3 * math.ulp(direct)


@pytest.mark.parametrize("s", [1.2, 1.5, 2.0])
def test_enclosures_are_nested(s):
    evaluations = [zeta_su3_direct(s, n) for n in (10**3, 10**4, 10**5, 10**6)]
    for coarse, fine in zip(evaluations, evaluations[1:]):
        assert coarse.partial_sum <= fine.partial_sum
        assert fine.partial_sum + fine.tail_bound <= coarse.partial_sum + coarse.tail_bound
        assert fine.tail_bound < coarse.tail_bound


def test_s_equal_one_is_covered():
    evaluation = zeta_su3_direct(1.0, 10**6)
    assert evaluation.tail_bound == pytest.approx(2 * float(constants().c1) * 3 * 1e-2, rel=1e-12)
    assert evaluation.partial_sum == pytest.approx(zeta_su3_via_rho(1.0, 10**6).partial_sum, rel=1e-12)


def test_partial_sums_decrease_in_s_and_tend_to_one():
    sums = [zeta_su3_direct(s, 10**4).partial_sum for s in (1.0, 1.5, 2.0, 4.0, 10.0, 30.0)]
    assert sums == sorted(sums, reverse=True)
    assert sums[-1] == pytest.approx(1.0, rel=1e-12)
    assert sums[-1] > 1.0


def test_residues():
    c = constants()
    assert residue_su3() == pytest.approx(2.8044, abs=1e-4)
    assert 1.5 * residue_su3() == pytest.approx(float(c.c1), rel=1e-15)
    assert omega_residue() == pytest.approx(residue_su3() / 4 ** (1 / 3), rel=1e-15)


def test_residue_ratio():
    x = 10**13
    second_order = float(constants().c2 / constants().c1) * x ** (-1 / 6)
    assert residue_ratio(x) == pytest.approx(1 + second_order, abs=5 * x ** (-1 / 3))
    assert abs(residue_ratio(x) - 1) < 0.01


def test_result_is_independent_of_worker_count(set_env):
    set_env(threads=1)
    single = zeta_su3_direct(1.5, 10**6)
    set_env(threads=7)
    assert zeta_su3_direct(1.5, 10**6) == single


def test_tail_bound_shape():
    assert tail_bound(2.0, 1000) == pytest.approx(2 * float(constants().c1) * 1.5 * 1000 ** (-4 / 3))
    assert math.isfinite(tail_bound(1.0, 1))
