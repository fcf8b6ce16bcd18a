from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as hs

from deltahom import corpus
from deltahom import invariants as inv
from deltahom.algebra import LaurentPoly, derivative_at_one, substitute_power
from deltahom.diagram import delete_components, mirror, parse, reverse_components, writhe
from deltahom.generate import braid_closure, random_braid_closure, random_knot
from oracles import jones_from_bracket, laurent_to_sympy, naive_bracket

seeds = hs.integers(0, 2**32)


def poly(terms, var="t"):
    return LaurentPoly.from_exponents(terms, var)


def small_closure(seed, max_crossings=9):
    return random_braid_closure(np.random.default_rng(seed), max_crossings=max_crossings)[0]


@given(seeds)
def test_bracket_matches_state_sum(seed):
    d = small_closure(seed)
    expected = naive_bracket([x.ends for x in d.crossings], len(d.free_loops))
    assert sympy.expand(laurent_to_sympy(inv.kauffman_bracket(d), "A") - expected) == 0


@given(seeds)
def test_jones_matches_state_sum(seed):
    d = small_closure(seed)
    expected = jones_from_bracket(naive_bracket([x.ends for x in d.crossings], len(d.free_loops)), writhe(d))
    assert sympy.expand(laurent_to_sympy(inv.jones(d)) - expected) == 0


def test_bracket_examples():
    assert inv.kauffman_bracket(corpus.load("unknot")) == poly({0: 1}, "A")
    kink = corpus.load("kink")
    sign = kink.crossings[0].sign
    assert inv.kauffman_bracket(kink) == poly({3 * sign: -1}, "A")
    assert inv.kauffman_bracket(parse("O a\nO b\n")) == poly({2: -1, -2: -1}, "A")


def test_jones_examples():
    assert inv.jones(corpus.load("unknot")) == poly({0: 1})
    assert inv.jones(corpus.load("trefoil")) == poly({4: -1, 3: 1, 1: 1})
    assert inv.jones(corpus.load("figure-eight")) == poly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    assert inv.jones(braid_closure(2, [1, 1, 1])) == poly({-4: -1, -3: 1, -1: 1})


def test_jones_of_mirror_inverts_variable():
    k = corpus.load("trefoil")
    assert inv.jones(mirror(k)) == substitute_power(inv.jones(k), -1, "t")


@given(seeds)
def test_jones_mirror_and_reversal(seed):
    d = small_closure(seed)
    v = inv.jones(d)
    assert inv.jones(mirror(d)) == substitute_power(v, -1, "t")
    assert inv.jones(reverse_components(d, set(d.label_names()))) == v


@given(seeds)
def test_jones_low_derivatives(seed):
    k = random_knot(np.random.default_rng(seed), max_crossings=10)
    v = inv.jones(k)
    assert v.evaluate(1) == 1
    assert derivative_at_one(v, 1) == 0
    assert derivative_at_one(v, 2) == -6 * inv.a2(k)


def test_v3_examples():
    assert inv.v3(corpus.load("unknot")) == 0
    assert inv.v3(corpus.load("trefoil")) == Fraction(-1, 2)
    assert inv.v3(corpus.load("figure-eight")) == Fraction(-1, 2)
    with pytest.raises(inv.InvariantError):
        inv.v3(corpus.load("hopf"))


def test_conway_examples():
    z = LaurentPoly.monomial(1, var="z")
    one = LaurentPoly.monomial(0, var="z")
    assert inv.conway(corpus.load("unknot")) == one
    assert inv.conway(corpus.load("hopf")) == z
    assert inv.conway(corpus.load("trefoil")) == z * z + one
    assert inv.conway(corpus.load("r2-unlink")) == LaurentPoly({}, "z")


def test_a2_examples():
    assert inv.a2(corpus.load("unknot")) == 0
    assert inv.a2(corpus.load("trefoil")) == 1
    assert inv.a2(corpus.load("figure-eight")) == -1
    with pytest.raises(inv.InvariantError):
        inv.a2(corpus.load("hopf"))


@given(seeds)
def test_conway_methods_agree(seed):
    d = small_closure(seed, 12)
    expected = inv.conway(d, method="skein")
    found = inv.alexander_conway(d)
    assert found is None or found == expected


@given(seeds)
def test_a2_methods_agree(seed):
    k = random_knot(np.random.default_rng(seed), max_crossings=12)
    expected = inv.a2(k, method="skein")
    assert inv.a2(k, method="alexander") == expected
    assert inv.a2(k, method="series") == expected


def test_unknown_method():
    with pytest.raises(ValueError):
        inv.conway(corpus.load("trefoil"), method="magic")


@given(seeds, hs.data())
def test_jones_and_conway_skein(seed, data):
    d = small_closure(seed)
    if not d.crossings:
        return
    i = data.draw(hs.integers(0, len(d.crossings) - 1))
    p, m, z = inv.skein_triple_at(d, i)
    t = LaurentPoly.monomial(1)
    mid = LaurentPoly.monomial(Fraction(-1, 2)) - LaurentPoly.monomial(Fraction(1, 2))
    assert t * inv.jones(p) - LaurentPoly.monomial(-1) * inv.jones(m) == mid * inv.jones(z)
    assert inv.conway(p) - inv.conway(m) == LaurentPoly.monomial(1, var="z") * inv.conway(z)


@given(seeds, hs.data())
@settings(max_examples=30)
def test_crossing_change_lemmas(seed, data):
    k = random_knot(np.random.default_rng(seed), max_crossings=10)
    if not k.crossings:
        return
    p, m, z = inv.skein_triple_at(k, data.draw(hs.integers(0, len(k.crossings) - 1)))
    a, b = z.label_names()
    lk = inv.linking_number(z, a, b)
    k1, k2 = delete_components(z, [b]), delete_components(z, [a])
    assert inv.a2(p) - inv.a2(m) == lk
    lhs = derivative_at_one(inv.jones(p), 3) - derivative_at_one(inv.jones(m), 3)
    assert lhs == 36 * inv.a2(p) + 18 * lk * lk - 36 * (inv.a2(k1) + inv.a2(k2))


def test_smoothing_a_kink_gives_two_named_components():
    z = inv.smooth_crossing(corpus.load("kink"), 0)
    assert len(z.label_names()) == 2


def test_skein_triple_hopf():
    d = corpus.load("hopf")
    p, m, z = inv.skein_triple_at(d, 0)
    assert p == d
    assert inv.linking_number(m, "A", "B") == 0
    assert len(z.label_names()) == 1 and inv.jones(z) == poly({0: 1})
    with pytest.raises(inv.InvariantError):
        inv.skein_triple_at(d, 7)


def test_linking_numbers():
    assert inv.linking_number(corpus.load("hopf"), "A", "B") == 1
    assert inv.linking_number(mirror(corpus.load("hopf")), "A", "B") == -1
    assert inv.total_linking(corpus.load("borromean")) == 0
    assert inv.total_linking(corpus.load("r2-unlink")) == 0
    with pytest.raises(inv.InvariantError):
        inv.linking_number(corpus.load("handcuff2-hopf"), "g1", "e")
    with pytest.raises(inv.InvariantError):
        inv.linking_number(corpus.load("hopf"), "A", "A")


@pytest.mark.parametrize("name", ["handcuff2-hopf", "handcuff3-trivial"])
def test_vertex_rejected_by_polynomials(name):
    with pytest.raises(inv.InvariantError):
        inv.jones(corpus.load(name))
