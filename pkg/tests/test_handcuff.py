import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from deltahom import corpus
from deltahom import handcuff as hc
from deltahom import invariants as inv
from deltahom.diagram import mirror, validate


def load(name):
    d = corpus.load(name)
    return hc.validate_handcuff(d, int(d.kind.split()[1]))


HANDCUFFS = [n for n in corpus.names() if (corpus.load(n).kind or "").startswith("handcuff")]


@pytest.mark.parametrize("name", HANDCUFFS)
def test_corpus_handcuffs_validate(name):
    h = load(name)
    assert h.n in (2, 3)
    assert len(h.attachments) == h.n
    assert (h.central is None) == (h.n == 2)
    assert hc.orientations_coherent(h)


def test_labels():
    assert hc.loop_label(2) == "g2"
    assert load("handcuff2-trivial").edge_labels == ("e",)
    assert len(load("handcuff3-trivial").edge_labels) == 3


@pytest.mark.parametrize(
    "name,n",
    [("hopf", 2), ("handcuff3-trivial", 2), ("handcuff2-trivial", 3), ("handcuff2-trivial", 1)],
)
def test_wrong_graph_rejected(name, n):
    with pytest.raises(hc.HandcuffError):
        hc.validate_handcuff(corpus.load(name), n)


@pytest.mark.parametrize("name", HANDCUFFS)
def test_disk_sum_is_a_valid_knot(name):
    k = hc.disk_sum(load(name))
    assert not validate(k)
    assert len(k.label_names()) == 1


def test_trivial_disk_sums_are_unknots():
    for name in ("handcuff2-trivial", "handcuff3-trivial"):
        assert inv.jones(hc.disk_sum(load(name))) == inv.jones(corpus.load("unknot"))


def test_constituents_and_sublinks():
    h = load("handcuff3-borromean")
    for i in (1, 2, 3):
        assert inv.jones(hc.constituent_knot(h, i)) == inv.jones(corpus.load("unknot"))
    link = hc.sublink(h, [1, 2, 3])
    assert sorted(link.label_names()) == ["g1", "g2", "g3"]
    assert inv.jones(link) == inv.jones(corpus.load("borromean"))
    with pytest.raises(hc.HandcuffError):
        hc.sublink(h, [4])


def test_delete_loop():
    h = load("handcuff3-borromean")
    for k in (1, 2, 3):
        g = hc.delete_loop(h, k)
        assert g.n == 2
        assert not validate(g.diagram)
        assert inv.jones(hc.disk_sum(g)) == inv.jones(corpus.load("unknot"))
    with pytest.raises(hc.HandcuffError):
        hc.delete_loop(load("handcuff2-hopf"), 1)
    with pytest.raises(hc.HandcuffError):
        hc.delete_loop(h, 4)


@given(hs.integers(-3, 3))
@settings(max_examples=7)
def test_twists_shift_a2_by_linking(count):
    h = load("handcuff2-hopf")
    base = inv.a2(hc.disk_sum(h))
    for _ in range(abs(count)):
        h = hc.band_twist(h, 1, 1 if count > 0 else -1)
    assert inv.a2(hc.disk_sum(h)) == base + count
    assert h.twist_of("e") == count


def test_twist_arguments():
    h = load("handcuff2-hopf")
    with pytest.raises(ValueError):
        hc.band_twist(h, 1, 2)
    with pytest.raises(hc.HandcuffError):
        hc.band_twist(h, 3, 1)


def test_mirror_disk_sum():
    # V(1/t) has third derivative -V''' - 6V'' - 6V' at 1
    h = load("slice2-m1")
    k = hc.disk_sum(h)
    m = hc.disk_sum(hc.validate_handcuff(mirror(h.diagram), 2))
    assert inv.v3(m) == -inv.v3(k) + inv.a2(k)
    assert inv.a2(m) == inv.a2(k)


def test_mu123():
    assert inv.mu123(load("handcuff3-trivial")) == 0
    assert inv.mu123(load("handcuff3-borromean")) == -1
    for m in (1, 2):
        assert inv.mu123(load(f"slice3-m{m}")) == 0
    with pytest.raises(inv.InvariantError):
        inv.mu123(load("handcuff3-linked"))
    with pytest.raises(inv.InvariantError):
        inv.mu123(load("handcuff2-trivial"))
