"""Central elements: centrality, independence counts, reference relations."""

import pytest

from geoalg import centers
from geoalg.dn_algebra import an_algebra, bracket
from geoalg.poly_core import E, ghat


@pytest.mark.parametrize("n", [3, 4, 5])
def test_level0_centers_commute(n):
    rep = centers.an_centrality_report(n)
    assert rep["ok"], rep["failures"]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_level0_center_count(n):
    cs = centers.centers_An(n)
    assert len(cs.coefficients) == n // 2
    assert all(not c.is_zero() for c in cs.coefficients)


def test_level0_centers_braid_invariant():
    cs = centers.centers_An(4)
    rep = centers.braid_invariance("A", cs, 4)
    assert rep["ok"], rep["checks"]


def test_generating_polynomial_is_even():
    p = centers.an_generating_polynomial(3)
    assert all(k % 2 == 0 for k in p.coeffs_in("lam"))


@pytest.mark.parametrize("n,p,rank", [(2, 2, 2), (3, 2, 3), (2, 3, 3)])
def test_periodic_center_independence(n, p, rank):
    cs = centers.centers_Dnp(n, p)
    assert cs.meta["count"] == rank
    assert max(cs.meta["jacobian_ranks"]) == rank


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2)])
def test_periodic_centrality(n, p):
    rep = centers.dnp_centrality_report(n, p)
    assert rep["ok"], rep["failures"]


def test_periodic_centers_braid_invariant():
    cs = centers.centers_Dnp(2, 2)
    rep = centers.braid_invariance("Dp", cs, 2, cap=6)
    assert rep["ok"], rep["checks"]


@pytest.mark.parametrize("n", [2, 3])
def test_reduced_center_count(n):
    cs = centers.centers_Dn(n)
    assert len(cs.coefficients) == n


@pytest.mark.parametrize("n", [2, 3])
def test_reduced_centers_braid_invariant(n):
    cs = centers.centers_Dn(n)
    rep = centers.braid_invariance("D", cs, n)
    assert rep["ok"], rep["checks"]


@pytest.mark.parametrize("n", [2, 3])
def test_reference_relations(n):
    rep = centers.dn_relation_check(n)
    assert rep["ok"], rep["relations"]


def test_reference_invariance_profiles():
    assert centers.casimir_invariance(centers.corrected_d3_casimirs(), 3) == [
        True, True, True]
    assert centers.casimir_invariance(centers.printed_d3_casimirs(), 3) == [
        False, True, False]
    assert centers.casimir_invariance(centers.printed_d2_casimirs(), 2) == [
        True, True]


def test_d2_pfaffian_identity():
    assert centers.d2_pfaffian_identity()


@pytest.mark.parametrize("n", [2, 3])
def test_diagonal_specialization(n):
    assert centers.dn_diagonal_specialization(n)


@pytest.mark.parametrize("n", [2, 3])
def test_vicinity_rank_is_full(n):
    rep = centers.vicinity_rank(n)
    assert rep["full"]


def test_rational_rank():
    assert centers.rational_rank([[1, 2], [2, 4]]) == 1
    assert centers.rational_rank([[1, 0], [0, 1]]) == 2
    assert centers.rational_rank([[0, 0]]) == 0


def test_match_printed_casimirs_detects_affine_fit():
    g = E(ghat(1, 1))
    rep = centers.match_printed_casimirs([2 * g + E(ghat(1, 2))],
                                         [g + E(ghat(1, 2)) / 2])
    assert rep["fits"][0]["alpha"] == 2
    assert rep["ok"]
