import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from deltahom import corpus
from deltahom import invariants as inv
from deltahom import moves as mv
from deltahom.diagram import canonical_code, validate
from deltahom.generate import random_braid_closure

seeds = hs.integers(0, 2**32)


def closure(seed, max_crossings=8):
    return random_braid_closure(np.random.default_rng(seed), max_crossings)[0]


@given(seeds, hs.sampled_from(mv.KINDS), hs.data())
def test_every_site_yields_a_valid_diagram(seed, kind, data):
    d = closure(seed)
    sites = mv.find_sites(d, kind)
    if not sites:
        return
    s = data.draw(hs.sampled_from(sites))
    e = mv.apply(d, s)
    assert not validate(e)
    assert sorted(e.label_names()) == sorted(d.label_names())


@given(seeds, hs.sampled_from(sorted(mv.REIDEMEISTER)), hs.data())
@settings(max_examples=40)
def test_reidemeister_moves_keep_jones(seed, kind, data):
    d = closure(seed, 7)
    sites = mv.find_sites(d, kind)
    if not sites:
        return
    e = mv.apply(d, data.draw(hs.sampled_from(sites)))
    assert inv.jones(e) == inv.jones(d)


def test_crossing_counts():
    d = corpus.load("trefoil")
    n = len(d.crossings)
    assert len(mv.apply(d, mv.find_sites(d, "R1+")[0]).crossings) == n + 1
    assert len(mv.apply(d, mv.find_sites(d, "R2+")[0]).crossings) == n + 2
    assert len(mv.apply(d, mv.find_sites(d, "delta+")[0]).crossings) == n + 6
    assert len(mv.apply(d, mv.find_sites(d, "switch")[0]).crossings) == n


def test_kink_sites_remove_kink():
    d = corpus.load("kink")
    sites = mv.find_sites(d, "R1-")
    assert sites
    assert mv.apply(d, sites[0]).crossings == ()


def test_stale_site_rejected():
    d = corpus.load("trefoil")
    s = mv.find_sites(d, "R1+")[0]
    e = mv.apply(d, s)
    with pytest.raises(mv.MoveError, match="stale"):
        mv.apply(e, s)


def test_revision_tracks_content():
    assert mv.revision(corpus.load("trefoil")) == mv.revision(corpus.load("trefoil"))
    assert mv.revision(corpus.load("trefoil")) != mv.revision(corpus.load("figure-eight"))


@given(seeds)
@settings(max_examples=30)
def test_delta_has_an_inverse(seed):
    d = closure(seed)
    sites = mv.find_sites(d, "delta+")
    if not sites:
        return
    e = mv.apply(d, sites[seed % len(sites)])
    back = {canonical_code(mv.apply(e, s)) for s in mv.find_sites(e, "delta-")}
    assert canonical_code(d) in back


@given(seeds)
@settings(max_examples=30)
def test_delta_keeps_linking_numbers(seed):
    d = closure(seed)
    sites = mv.find_sites(d, "delta+")
    names = d.label_names()
    if not sites or len(names) < 2:
        return
    e = mv.apply(d, sites[seed % len(sites)])
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            assert inv.linking_number(e, a, b) == inv.linking_number(d, a, b)


def test_mirrored_tangle_switches_every_crossing():
    m = mv.DELTA_TANGLE.mirrored()
    assert m.paths == mv.DELTA_TANGLE.paths
    assert all(a != b for a, b in zip(m.over, mv.DELTA_TANGLE.over))
    assert m.mirrored() == mv.DELTA_TANGLE


def test_self_sites():
    d = corpus.load("trefoil")
    assert all(mv.is_self_site(d, s) for s in mv.find_sites(d, "delta+"))
    with pytest.raises(mv.MoveError):
        mv.is_self_site(d, mv.find_sites(d, "R1+")[0])


def test_delta_zero_needs_alike_orientation():
    d = corpus.load("trefoil")
    for s in mv.find_sites(d, "delta+"):
        if len({dart[-1] for dart in s.darts}) != 1:
            with pytest.raises(ValueError):
                mv.delta_zero(d, s.darts)
            break


@given(seeds, hs.integers(0, 10**6))
@settings(max_examples=20)
def test_walk_is_deterministic(seed, walk_seed):
    d = closure(seed, 6)
    allowed = ["R1+", "R2+", "R3", "delta+", "delta-"]
    a = mv.random_walk(d, allowed, steps=5, seed=walk_seed)
    b = mv.random_walk(d, allowed, steps=5, seed=walk_seed)
    assert a == b
    assert not validate(a.diagram)


def test_walk_respects_labels():
    d = corpus.load("hopf")
    res = mv.random_walk(d, ["R1+"], steps=6, seed=3, labels=["A"])
    assert res.applied == 6
    lab = res.diagram.label_of
    kinks = [x for x in res.diagram.crossings if lab[x.a] == lab[x.b]]
    assert len(kinks) == 6
    assert all(lab[x.a] == "A" for x in kinks)


def test_self_only_walk_keeps_loops_separate():
    d = corpus.load("hopf")
    res = mv.random_walk(d, ["delta+"], self_only=True, steps=3, seed=1)
    assert inv.linking_number(res.diagram, "A", "B") == 1
    assert inv.jones(mv.random_walk(d, [], steps=3, seed=1).diagram) == inv.jones(d)
