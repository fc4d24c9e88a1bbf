"""Stokes-matrix realization: reflections, clash block, numeric brackets."""

from fractions import Fraction
import random

import pytest

from geoalg import frobenius as fro
from geoalg.poly_core import E, Mat, ONE, const


def _rand(seed=0, n=4):
    return fro.random_stokes(n, random.Random(seed))


def test_reflections_are_involutions():
    s = _rand(1)
    for k in range(1, s.n + 1):
        assert fro.reflection_check(s, k)


def test_reflections_symbolic():
    s = fro.StokesMatrix.symbolic(3)
    for k in range(1, 4):
        assert fro.reflection_check(s, k)
    assert fro.product_identity(s)


def test_product_identity_random():
    assert fro.product_identity(_rand(2))


def test_index_validation():
    s = _rand(3)
    with pytest.raises(ValueError):
        fro.monodromy_from_stokes(s, 0)
    with pytest.raises(ValueError):
        fro.clash_block(s, s.n + 1)


@pytest.mark.parametrize("nt", [2, 3, 4])
def test_clash_block_structure(nt):
    rep = fro.clash_block(_rand(4), nt)
    assert rep.ok


def test_clash_block_symbolic():
    rep = fro.clash_block(fro.StokesMatrix.symbolic(3), 2)
    assert rep.ok


def test_clash_inverse():
    s = _rand(5)
    m = fro.clash_monodromy(s, 2) * fro.clash_monodromy_inverse(s, 2)
    assert m == Mat.identity(s.n)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_gk_mirror(k):
    assert fro.gk_mirror_check(_rand(6), 3, k)


def test_gk_level_zero_is_symmetrization():
    s = _rand(7)
    assert fro.gk_family(s, 2, 0) == s.symmetrization()


def test_unipotent_inverse():
    s = fro.StokesMatrix.symbolic(4)
    assert s.mat * s.inverse() == Mat.identity(4)


@pytest.mark.parametrize("m", [2, 3])
def test_all_ones_spectrum(m):
    rep = fro.all_ones_report(m)
    assert rep["char_poly_ok"]
    assert rep["eigenvalues_ok"]
    lp = rep["level_p"]
    assert lp["tail_power_identity"] and lp["nondegenerate"]
    assert lp["partial_sum_zero"] and lp["full_period"]


def test_level_p_condition_degenerate_tail():
    # a trailing block violating the periodicity hypothesis is reported
    st = fro.StokesMatrix.from_rows([[1, 3], [0, 1]])
    rep = fro.level_p_condition(st, 3)
    assert not rep["tail_power_identity"]
    assert rep["full_period"] is None


def test_characteristic_polynomial_companion():
    m = Mat([[const(0), -ONE], [ONE, const(-1)]])
    char = fro.characteristic_polynomial(m)
    eta = E("eta")
    assert char == eta * eta + eta + ONE


def test_realization_factor_value():
    assert fro.REALIZATION_FACTOR == Fraction(1, 4)


def test_realization_at_random_points():
    rep = fro.realization_suite(3, rank=3, clash=2, levels=1, seed=11)
    assert rep["ok"], rep


def test_realization_rejects_bad_rank():
    with pytest.raises(ValueError):
        fro.realization_check(_rand(8, 3), 3)


def test_special_point_rank3():
    s = fro.a3_star()
    assert s.mat == Mat([[1, 3, 3], [0, 1, 3], [0, 0, 1]])


def test_special_point_rank4():
    s = fro.a4_star()
    assert s.mat == Mat([[1, 4, 6, 4], [0, 1, 4, 6],
                         [0, 0, 1, 4], [0, 0, 0, 1]])


def test_fourth_root_folding_rejects_stray_powers():
    with pytest.raises(ValueError):
        fro._fold_fourth_root(E("qr", 2), "qr", 2)


def test_braid_orbit_stays_hyperbolic():
    rep = fro.braid_orbit_monitor(fro.a3_star(), words=5, length=4)
    assert rep["start_ok"] and rep["orbit_ok"]
