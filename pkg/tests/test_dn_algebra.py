"""Structure constants: canonical forms, antisymmetry, Jacobi, generating form."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from geoalg.dn_algebra import (
    an_algebra, bracket, classical_r_matrix, dn_algebra, dnp_algebra,
    generating_bracket, jacobi_check, quantum_r_expansion,
    semiclassical_reflection_check, _pair_bracket,
)
from geoalg.poly_core import E, ZERO, const


def test_canonical_storage():
    alg = dn_algebra(3)
    assert alg.canonical(1, 1, 0) == const(2)
    assert alg.canonical(2, 1, 0) == E("G[1,2,0]")
    assert alg.canonical(2, 1, -3) == E("G[1,2,3]")
    assert alg.canonical(1, 2, 2) == E("G[1,2,2]")


def test_periodic_folding():
    alg = dnp_algebra(3, 4)
    # G^(k) = G^(p-k) transposed, here p = 4
    assert alg.canonical(1, 2, 3) == alg.canonical(2, 1, 1)
    assert alg.canonical(1, 2, 4) == alg.canonical(1, 2, 0)
    assert alg.canonical(1, 2, 5) == alg.canonical(1, 2, 1)
    assert alg.canonical(2, 1, 2) == alg.canonical(1, 2, 2)


def test_index_validation():
    with pytest.raises(ValueError):
        an_algebra(3).canonical(1, 2, 1)
    with pytest.raises(ValueError):
        dn_algebra(3).canonical(0, 2, 1)
    with pytest.raises(ValueError):
        dnp_algebra(3, 0)


GENS = [(i, j, 0) for i in range(1, 4) for j in range(i + 1, 4)] + [
    (i, j, 1) for i in range(1, 4) for j in range(1, 4)]


@pytest.mark.parametrize("a,b", list(itertools.combinations(GENS, 2))[:30])
def test_pair_antisymmetry(a, b):
    alg = dn_algebra(3)
    assert _pair_bracket(alg, a, b) == -_pair_bracket(alg, b, a)


def test_mirror_consistency():
    # the same bracket computed through the k < 0 mirror of each slot
    alg = dn_algebra(3)
    for a, b in [((1, 2, 1), (2, 3, 1)), ((1, 3, 0), (3, 1, 2))]:
        am = (a[1], a[0], -a[2])
        bm = (b[1], b[0], -b[2])
        assert _pair_bracket(alg, am, b) == _pair_bracket(alg, a, b)
        assert _pair_bracket(alg, a, bm) == _pair_bracket(alg, a, b)


def test_bracket_leibniz():
    alg = dn_algebra(3)
    f = alg.canonical(1, 2, 0)
    g = alg.canonical(1, 3, 1)
    h = alg.canonical(2, 3, 0) + const(3)
    lhs = bracket(alg, f * g, h)
    rhs = f * bracket(alg, g, h) + bracket(alg, f, h) * g
    assert lhs == rhs


def test_bracket_kills_constants():
    alg = dn_algebra(3)
    assert bracket(alg, const(5), alg.canonical(1, 2, 0)) == ZERO


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(GENS), st.sampled_from(GENS), st.sampled_from(GENS))
def test_jacobi_on_generators(a, b, c):
    alg = dn_algebra(3)
    res = jacobi_check(alg, alg.canonical(*a), alg.canonical(*b),
                       alg.canonical(*c))
    assert res.is_zero()


@pytest.mark.parametrize("ji,pl", [((1, 2), (2, 3)), ((1, 3), (3, 1)),
                                   ((2, 2), (1, 3))])
def test_generating_function_identity(ji, pl):
    alg = dn_algebra(3)
    lhs, rhs = generating_bracket(alg, ji, pl, 2)
    assert lhs == rhs


def test_reflection_form_small():
    rep = semiclassical_reflection_check(dn_algebra(2), 2)
    assert rep["ok"]
    assert rep["checked"] == 16
    assert rep["printed_orientation_sign"] == -1


def test_quantum_r_linear_term_is_classical_r():
    h0, h1 = quantum_r_expansion(3)
    assert h1 == classical_r_matrix(3)
    lam, mu = E("lam"), E("mu")
    assert h0[((1, 2), (1, 2))] == lam - mu
    assert h0[((1, 1), (1, 1))] == -(lam - mu)
