from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from deltahom import corpus
from deltahom import handcuff as hc
from deltahom import homotopy as ho
from deltahom import moves as mv
from deltahom.algebra import Residue


def load(name):
    d = corpus.load(name)
    return hc.validate_handcuff(d, int(d.kind.split()[1]))


def test_examples():
    assert ho.n12(load("handcuff2-trivial")).reduced == Residue(0, 0)
    rep = ho.n12(load("handcuff2-hopf"))
    assert rep.modulus == 1 and rep.reduced == Residue(0, 1)
    assert ho.n123(load("handcuff3-trivial")).reduced == Residue(0, 0)
    for m in (1, 2, 3):
        assert ho.n12(load(f"slice2-m{m}")).reduced == Residue(2 * m, 0)
        assert ho.n12(load(f"boundary2-m{m}")).reduced == Residue(-2 * m, 0)


def test_n12_ingredients_recombine():
    rep = ho.n12(load("slice2-m2"))
    ing = rep.ingredients
    assert rep.raw == ing["a2(K12)"] - ing["a2(g1)"] - ing["a2(g2)"]
    assert rep.modulus == abs(ing["lk"])


def test_n123_ingredients_recombine():
    rep = ho.n123(load("slice3-m1"))
    ing = rep.ingredients
    pairs = ing["v3(K12)"] + ing["v3(K13)"] + ing["v3(K23)"]
    loops = ing["v3(g1)"] + ing["v3(g2)"] + ing["v3(g3)"]
    assert rep.raw == -ing["v3(K123)"] + pairs - loops
    assert rep.modulus == abs(ing["mu123"])
    assert rep.reduced == Residue(1, 0)


def test_n123_worker_processes_agree():
    h = load("slice3-m2")
    assert ho.n123(h, jobs=2) == ho.n123(h)


def test_wrong_loop_counts():
    with pytest.raises(ho.HomotopyError):
        ho.n12(load("handcuff3-trivial"))
    with pytest.raises(ho.HomotopyError):
        ho.n123(load("handcuff2-trivial"))


def test_linked_loops_rejected():
    with pytest.raises(ho.HomotopyError, match="algebraically split"):
        ho.n123(load("handcuff3-linked"))


def test_non_integral_value_rejected():
    # the Borromean 3-handcuff has mu123 = -1 and the combination comes out at 1/2
    with pytest.raises(ho.HomotopyError) as info:
        ho.n123(load("handcuff3-borromean"))
    assert "1/2" in str(info.value)


@pytest.mark.parametrize("name", ["handcuff2-trivial", "handcuff2-hopf", "slice2-m1", "boundary2-m2"])
def test_general_matches_n12(name):
    h = load(name)
    assert ho.n_general(h).reduced == ho.n12(h).reduced


def test_general_on_three_loops():
    assert ho.n_general(load("slice3-m1")).reduced == Residue(0, 0)
    assert ho.n_general(load("handcuff3-borromean")).modulus == 0


def test_report_str():
    assert str(ho.n12(load("slice2-m1"))) == "2 (mod 0)"
    assert ho.n12(load("slice2-m1")).raw == 2
    assert not isinstance(ho.n123(load("slice3-m1")).raw, Fraction)


@given(hs.integers(0, 10**6), hs.sampled_from(["slice2-m1", "handcuff2-hopf"]))
@settings(max_examples=15)
def test_n12_invariant_under_self_delta_walks(seed, name):
    h = load(name)
    allowed = sorted(mv.REIDEMEISTER) + ["delta+", "delta-"]
    walked = mv.random_walk(h.diagram, allowed, self_only=True, steps=4, seed=seed).diagram
    assert ho.n12(hc.validate_handcuff(walked, 2)).reduced == ho.n12(h).reduced


@given(hs.integers(-2, 2))
@settings(max_examples=5)
def test_n12_invariant_under_twists(count):
    h = load("handcuff2-hopf")
    t = h
    for _ in range(abs(count)):
        t = hc.band_twist(t, 1, 1 if count > 0 else -1)
    assert ho.n12(t).reduced == ho.n12(h).reduced
