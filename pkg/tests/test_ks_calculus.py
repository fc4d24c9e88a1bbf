"""Trace-calculus bracket: normalization, skein reduction, numeric oracle."""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geoalg import ks_calculus as ks
from geoalg.dn_algebra import dn_algebra, _pair_bracket
from geoalg.poly_core import ZERO, const, parse_gen


def test_normalize_cancellations():
    # M_i M_i = -1 and H-run merging, cyclically
    c, w = ks.normalize_word((ks.M(1), ks.M(1)))
    assert w is None and c == const(-2)
    c, w = ks.normalize_word((ks.H(2), ks.H(-2)))
    assert w is None and c == const(2)
    c, w = ks.normalize_word((ks.H(1), ks.M(1), ks.M(2), ks.H(1)))
    assert c == const(1) and w == (ks.M(1), ks.M(2), ks.H(2))


def test_normalize_cyclic_invariance():
    base = (ks.M(1), ks.H(1), ks.M(2), ks.H(-1))
    c0, w0 = ks.normalize_word(base)
    for r in range(1, len(base)):
        c, w = ks.normalize_word(base[r:] + base[:r])
        assert (c, w) == (c0, w0)


def test_scalar_traces():
    assert ks.normalize_word(())[0] == const(2)
    c, w = ks.normalize_word((ks.H(3),))
    assert w is None and str(c) == "TrH3"
    c, w = ks.normalize_word((ks.M(2),))
    assert c == ZERO and w is None


def test_skein_reduce_two_letter_words():
    e = ks.TraceExpr.tr((ks.M(1), ks.H(2), ks.M(3), ks.H(-2)))
    assert ks.skein_reduce(e) == -const(1) * ks.E("G[1,3,2]")


def test_irreducible_words():
    with pytest.raises(ks.IrreducibleWord):
        ks.skein_reduce(ks.TraceExpr.tr((ks.M(1), ks.M(2), ks.M(3))))
    with pytest.raises(ks.IrreducibleWord):
        ks.skein_reduce(ks.TraceExpr.tr((ks.M(1), ks.H(1), ks.M(2))))


def test_skein_reduction_order_independent():
    rng = random.Random(3)
    word = (ks.M(1), ks.H(1), ks.M(2), ks.H(1), ks.M(1), ks.H(-2),
            ks.M(2))
    e = ks.TraceExpr.tr(word)
    base = ks.skein_reduce(e)
    for _ in range(3):
        assert ks.skein_reduce(e, rng) == base


def _gen_word(i, j, k):
    if k == 0:
        return (ks.M(i), ks.M(j))
    return (ks.M(i), ks.H(k), ks.M(j), ks.H(-k))


GENS3 = [(1, 2, 0), (1, 3, 0), (2, 3, 0)] + [
    (i, j, 1) for i in range(1, 4) for j in range(1, 4)]


@pytest.mark.parametrize("a", GENS3[:3])
@pytest.mark.parametrize("b", GENS3)
def test_symbolic_bracket_matches_structure_constants(a, b):
    alg = dn_algebra(3)
    lhs = ks.skein_reduce(ks.ks_bracket_symbolic(_gen_word(*a), _gen_word(*b)))
    assert lhs == _pair_bracket(alg, a, b)


def _rand_traceless(rng):
    a = rng.uniform(-2, 2)
    b = rng.uniform(0.3, 2) * rng.choice([-1, 1])
    return np.array([[a, b], [-(1 + a * a) / b, -a]])


def test_numeric_oracle_matches_level0_constants():
    rng = random.Random(1)
    mats = [_rand_traceless(rng) for _ in range(3)]
    alg = dn_algebra(3)
    vals = {(i, j, 0): -np.trace(mats[i - 1] @ mats[j - 1])
            for i in range(1, 4) for j in range(1, 4)}

    def f(i, j):
        return lambda ms: -np.trace(ms[i - 1] @ ms[j - 1])

    for a in [(1, 2, 0), (1, 3, 0)]:
        for b in [(1, 3, 0), (2, 3, 0)]:
            expr = _pair_bracket(alg, a, b)
            rhs = 0.0
            for mono, coeff in expr.terms():
                x = float(coeff)
                for name, power in mono:
                    i, j, k = parse_gen(name)
                    key = (min(i, j), max(i, j), k)
                    x *= vals[key] ** power
                rhs += x
            lhs = ks.ks_bracket_numeric(f(a[0], a[1]), f(b[0], b[1]), mats)
            assert abs(lhs - rhs) < 1e-9


def test_numeric_oracle_rejects_singular():
    mats = [np.zeros((2, 2)), np.eye(2)]
    with pytest.raises(ValueError):
        ks.ks_bracket_numeric(lambda m: 0.0, lambda m: 0.0, mats)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([ks.M(1), ks.M(2), ks.M(3), ks.H(1),
                                 ks.H(-1)]), min_size=0, max_size=6))
def test_bracket_antisymmetry(word):
    w2 = (ks.M(1), ks.H(1), ks.M(2), ks.H(-1))
    lhs = ks.ks_bracket_symbolic(tuple(word), w2)
    rhs = ks.ks_bracket_symbolic(w2, tuple(word))
    assert (lhs + rhs).is_zero()
