"""Braid-group actions on the generator families."""

import pytest

from geoalg import braid
from geoalg.dn_algebra import bracket, dn_algebra
from geoalg.poly_core import E, Mat


def test_symbol_matrix_shape():
    a = braid.symbol_matrix(3)
    assert a.shape == (3, 3)
    assert a[0, 0] == E("G[1,1,0]") or a[0, 0].is_rational()
    assert a[0, 1] == E("G[1,2,0]")


@pytest.mark.parametrize("n", [3, 4])
def test_braid_relations_level0(n):
    rep = braid.verify_relations("A", n)
    assert rep["ok"], rep["checks"]


def test_braid_relations_graded():
    rep = braid.verify_relations("frakD", 3, cap=4)
    assert rep["ok"], rep["checks"]


def test_braid_relations_periodic():
    rep = braid.verify_relations("D", 3)
    assert rep["ok"], rep["checks"]


def test_unknown_flavor():
    with pytest.raises(ValueError):
        braid.verify_relations("X", 3)


def test_adjacent_action_is_involution_up_to_inverse():
    a0 = braid.symbol_matrix(4)
    b = braid.adjacent(2)
    once = braid.act_An(b, a0)
    back = braid.act_An(b.inv(), once)
    assert back == a0


def test_action_preserves_bracket():
    # the substitution induced by a braid move is a Poisson automorphism
    alg = dn_algebra(3)
    a0 = braid.symbol_matrix(3)
    b = braid.adjacent(1)
    acted = braid.act_An(b, a0)
    sub = {f"G[{i},{j},0]": acted[i - 1, j - 1]
           for i in range(1, 4) for j in range(i + 1, 4)}
    f = alg.canonical(1, 2, 0)
    g = alg.canonical(2, 3, 0)
    lhs = bracket(alg, f, g).subst(sub)
    rhs = bracket(alg, f.subst(sub), g.subst(sub))
    assert lhs == rhs


def test_matrix_and_componentwise_actions_agree():
    fam = braid.LevelFamily.generic(3, cap=4)
    gm = braid.gcal_matrix(fam)
    for b in [braid.adjacent(1), braid.adjacent(2), braid.wrap()]:
        via_fam = braid.gcal_matrix(braid.act_frakDn(b, fam))
        via_mat = braid.act_matrix(b, gm)
        window = min(via_fam.cert, via_mat.cert)
        assert window >= 1
        for k in range(window + 1):
            assert via_fam.coefficient(k) == via_mat.coefficient(k)


def test_combination_streams_transform_consistently():
    rep = braid.combination_transform_check(3)
    assert all(rep.values()), rep


def test_quantum_matrix_shapes():
    for b in [braid.adjacent(1), braid.wrap()]:
        m = braid.quantum_matrix(b, 3)
        assert m.shape == (3, 3)
        assert m != Mat.identity(3)
