import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

from deltahom import corpus
from deltahom.diagram import (
    DiagramError,
    canonical_code,
    components,
    delete_components,
    faces,
    mirror,
    parse,
    serialize,
    split_pieces,
    validate,
    writhe,
)
from deltahom.generate import braid_closure, random_braid_closure
from deltahom.selftest import permute_arcs

HOPF = """\
X 1 3 2 4
X 3 1 4 2
label A = 1 2
label B = 3 4
orient A +
orient B +
"""


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("X 1 2 3\n", 1, 1),
        ("X 1 2 3 4\nX 1 a 4 3\n", 2, 5),
        ("X 1 2 3 4\nV 1 -2\n", 2, 3),
        ("graph knot\ngraph link\n", 2, 1),
        ("graph handcuff x\n", 1, 1),
        ("\n\nfrob 1 2\n", 3, 1),
        ("label A 1 2\n", 1, 1),
        ("orient A up\n", 1, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(DiagramError) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.column == column
    assert f"line {line}" in str(info.value)


def test_arc_used_three_times():
    with pytest.raises(DiagramError):
        parse("X 1 1 1 2\nlabel A = 1 2\n")


def test_comments_and_blank_lines_ignored():
    assert parse("# hi\n\n" + HOPF.replace("\n", "  # c\n", 1)) == parse(HOPF)


def test_hopf_shape():
    d = parse(HOPF)
    assert not validate(d)
    assert d.label_names() == ["A", "B"]
    assert writhe(d) == 2
    assert writhe(mirror(d)) == -2
    assert components(d) == {"A": "closed", "B": "closed"}


def test_label_covering_two_strands_rejected():
    with pytest.raises(DiagramError, match="covers 2 separate strands"):
        parse("X 1 3 2 4\nX 3 1 4 2\nlabel A = 1 2 3 4\norient A +\n")


def test_open_edge_reported():
    d = corpus.load("handcuff2-hopf")
    assert components(d)["e"] == "open"


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_round_trip(name):
    d = corpus.load(name)
    assert not validate(d)
    assert parse(serialize(d)) == d
    assert serialize(parse(serialize(d))) == serialize(d)


def _euler_ok(d):
    nodes = len(d.crossings) + len(d.vertices)
    edges = len(d.label_of)
    loops = len(d.free_loops)
    pieces = split_pieces(d) - loops
    return nodes - edges + len(faces(d)) - 2 * loops == 2 * pieces


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_euler(name):
    assert _euler_ok(corpus.load(name))


@given(hs.integers(0, 2**32))
def test_random_closures_round_trip_and_euler(seed):
    d, _, _ = random_braid_closure(np.random.default_rng(seed))
    assert parse(serialize(d)) == d
    assert _euler_ok(d)


@given(hs.integers(0, 2**32), hs.data())
def test_delete_components_stays_valid(seed, data):
    d, _, _ = random_braid_closure(np.random.default_rng(seed))
    names = d.label_names()
    drop = data.draw(hs.lists(hs.sampled_from(names), unique=True))
    out = delete_components(d, drop)
    assert not validate(out)
    assert sorted(out.label_names()) == sorted(n for n in names if n not in drop)


def test_delete_unknown_label():
    with pytest.raises(DiagramError):
        delete_components(parse(HOPF), ["Z"])


def test_canonical_code_ignores_arc_numbering():
    d = corpus.load("handcuff3-borromean")
    code = canonical_code(d)
    rng = np.random.default_rng(11)
    t = time.perf_counter()
    for _ in range(1000):
        assert canonical_code(permute_arcs(d, rng)) == code
    assert time.perf_counter() - t < 60


def test_canonical_code_separates_mirror_images():
    d = corpus.load("trefoil")
    assert canonical_code(d) != canonical_code(mirror(d))


def test_canonical_code_sees_labels():
    d = parse(HOPF)
    swapped = parse(HOPF.replace("label A", "label Q").replace("orient A", "orient Q"))
    assert canonical_code(d) != canonical_code(swapped)
    assert canonical_code(d, with_labels=False) == canonical_code(swapped, with_labels=False)


def test_braid_closure_components():
    assert len(braid_closure(2, [1, 1]).label_names()) == 2
    assert len(braid_closure(2, [1, 1, 1]).label_names()) == 1
    assert len(braid_closure(3, [1, -2, 1, -2, 1, -2]).label_names()) == 3
