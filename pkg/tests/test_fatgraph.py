"""Geometry of the caterpillar spine: trace identities and the Goldman bracket."""

from fractions import Fraction
import random

import pytest

from geoalg import fatgraph
from geoalg.dn_algebra import an_algebra, bracket
from geoalg.poly_core import ONE, const


@pytest.mark.parametrize("n", [3, 4, 5])
def test_basis_words_traceless_unimodular(n):
    for w in fatgraph.basis_words(n):
        m = w.evaluate()
        assert m.trace().is_zero()
        assert m.det() == ONE


@pytest.mark.parametrize("n", [3, 4, 5])
def test_perimeter_identity(n):
    assert fatgraph.perimeter_identity(n)


def test_word_inverse():
    for w in fatgraph.basis_words(4):
        m = w.evaluate() * w.inverse().evaluate()
        assert m == fatgraph.Mat.identity(2)


@pytest.mark.parametrize("n", [3, 4])
def test_skein_relation_on_basis_words(n):
    words = fatgraph.basis_words(n)
    for a in words:
        for b in words:
            assert fatgraph.skein_check(a, b)


def _geodesics(n):
    return {f"G[{i},{j},0]": fatgraph.geodesic_function(n, i, j)
            for i in range(1, n + 1) for j in range(i + 1, n + 1)}


@pytest.mark.parametrize("n", [3, 4])
def test_goldman_matches_structure_constants(n):
    graph = fatgraph.canonical_disc_graph(n)
    geo = _geodesics(n)
    alg = an_algebra(n)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for x, a in enumerate(pairs):
        for b in pairs[x:]:
            lhs = fatgraph.goldman_bracket(
                geo[f"G[{a[0]},{a[1]},0]"], geo[f"G[{b[0]},{b[1]},0]"], graph)
            rhs = bracket(alg, alg.canonical(*a, 0),
                          alg.canonical(*b, 0)).subst(geo)
            assert lhs == rhs


def test_goldman_rejects_foreign_variables():
    graph = fatgraph.canonical_disc_graph(3)
    with pytest.raises(ValueError):
        fatgraph.goldman_bracket(fatgraph.E("nope"), ONE, graph)


def test_geodesic_positive_at_real_points():
    rng = random.Random(0)
    for _ in range(5):
        point = {v: const(Fraction(rng.randint(1, 4), rng.randint(1, 4)))
                 for v in ("s1", "s2", "s3", "s4", "t1")}
        for i in range(1, 5):
            for j in range(i + 1, 5):
                val = fatgraph.geodesic_function(4, i, j).subst(point)
                assert val.as_rational() > 2


def test_clashed_hole_reduction():
    assert fatgraph.clashed_hole_coords()


def test_clashed_geodesic_function_form():
    e = fatgraph.clashed_geodesic_function()
    assert e.symbols() == {"z1", "z2"}
    assert len(list(e.terms())) == 3
