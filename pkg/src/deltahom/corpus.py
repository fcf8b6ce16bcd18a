"""Reference diagrams with the invariant values they are expected to produce.

Small classical diagrams are stored as text.  The handcuff families are built
from slice words by emitters parameterised by ``m``; each family repeats one
tangle block ``m`` times so that every member shares one encoding.  The
emitted text for ``m`` in 1..3 is also checked in under ``data/``.

Every expected value carries a basis: ``target`` (a published value the
encoding was designed to reproduce), ``hand`` (worked out by hand on the
encoding) or ``definition`` (immediate from the definitions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .diagram import Diagram, DiagramError, mirror, parse, serialize
from .morse import Morse

__all__ = [
    "Expected",
    "CorpusEntry",
    "FAMILIES",
    "names",
    "entry",
    "emit",
    "load",
    "data_text",
]

BASES = ("target", "hand", "definition")


@dataclass(frozen=True)
class Expected:
    """One command (CLI argument list after the file) and the first output line it must print."""

    args: tuple[str, ...]
    output: str
    basis: str

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    text: str
    expected: tuple[Expected, ...] = ()
    params: dict = field(default_factory=dict)
    description: str = ""

    def diagram(self) -> Diagram:
        return parse(self.text)


# ---------------------------------------------------------------------------
# slice-word builders for handcuffs


class _Builder:
    """Strand bookkeeping on top of :class:`Morse` with named strand positions."""

    def __init__(self):
        self.m = Morse()
        self.names: list[str] = []

    def emit_vertex(self, labels: list[str], names: list[str]) -> None:
        self.m.vertex(len(self.names), 0, labels)
        self.names.extend(names)

    def birth(self, label: str, left: str, right: str, orient: int = 1) -> None:
        self.m.birth(len(self.names), label, orient)
        self.names.extend([left, right])

    def cross(self, p: int, over: str) -> None:
        self.m.cross(p, over)
        self.names[p], self.names[p + 1] = self.names[p + 1], self.names[p]

    def move(self, name: str, target: int) -> None:
        """Slide strand ``name`` to ``target`` passing over everything in between."""
        while (p := self.names.index(name)) != target:
            if p < target:
                self.cross(p, "L")
            else:
                self.cross(p - 1, "R")

    def clasp(self, name: str, other: str, sign: int, times: int = 1) -> None:
        """Hook strand ``name`` around ``other``: under then back over (sign +1) or the reverse."""
        p, q = self.names.index(name), self.names.index(other)
        if p < q:
            self.move(name, q - 1)
            lo = q - 1
        else:
            self.move(name, q + 1)
            lo = q
        over = "L" if sign > 0 else "R"
        for _ in range(times):
            self.cross(lo, over)
            self.cross(lo, over)

    def attach(self, edge: str, loop_strand: str, label: str) -> None:
        """End ``edge`` on the loop strand, which must be its right neighbour after sliding."""
        p, q = self.names.index(edge), self.names.index(loop_strand)
        self.move(edge, q - 1 if p < q else q)
        p = self.names.index(edge)
        self.m.vertex(p, 2, [label])
        self.names[p : p + 2] = [loop_strand]

    def close(self, kind: str) -> Diagram:
        while self.names:
            for p in range(len(self.names) - 1):
                a, b = self.names[p], self.names[p + 1]
                if a.split(".")[0] == b.split(".")[0] and a != b:
                    self.m.death(p)
                    del self.names[p : p + 2]
                    break
            else:
                raise DiagramError(f"cannot close strands {self.names}")
        return self.m.to_diagram(kind=kind)


def _three_loop_start() -> _Builder:
    b = _Builder()
    b.emit_vertex(["e1", "e2", "e3"], ["e1", "e2", "e3"])
    for i in (1, 2, 3):
        b.birth(f"g{i}", f"g{i}.L", f"g{i}.R")
    return b


def slice_handcuff(m: int) -> Diagram:
    """2-handcuff whose edge runs around loop 2, then m times around loop 1, then back.

    The loops form a split unlink; the disk-sum knot has a2 = 2m.
    """
    _check_m(m)
    mo = Morse()
    mo.birth(0, "g1", 1).birth(2, "g2", 1)
    mo.vertex(1, 1, ["g1", "e"])
    mo.crosses([(2, "R"), (2, "R")])
    for _ in range(m):
        mo.crosses([(1, "L"), (1, "L")])
    mo.crosses([(2, "L"), (2, "L")])
    mo.vertex(2, 2, ["g2"])
    mo.death(2).death(0)
    return mo.to_diagram(kind="handcuff 2")


def boundary_handcuff(m: int) -> Diagram:
    """As :func:`slice_handcuff` with the hooks around loop 2 taken in the opposite sense.

    The disk-sum knot has a2 = -2m.
    """
    _check_m(m)
    mo = Morse()
    mo.birth(0, "g1", 1).birth(2, "g2", 1)
    mo.vertex(1, 1, ["g1", "e"])
    mo.crosses([(2, "L"), (2, "L")])
    for _ in range(m):
        mo.crosses([(1, "L"), (1, "L")])
    mo.crosses([(2, "R"), (2, "R")])
    mo.vertex(2, 2, ["g2"])
    mo.death(2).death(0)
    return mo.to_diagram(kind="handcuff 2")


def slice_3handcuff(m: int) -> Diagram:
    """3-handcuff with cyclic hooks: e1 around g2, e2 around g3, e3 m times around g1.

    The loops form a split unlink, every two-loop disk sum is trivial and the
    three-loop disk sum has v3 = -m.
    """
    _check_m(m)
    b = _three_loop_start()
    b.clasp("e1", "g2.L", 1)
    b.clasp("e2", "g3.L", 1)
    b.clasp("e3", "g1.L", -1, times=m)
    for i in (1, 2, 3):
        b.attach(f"e{i}", f"g{i}.L", f"g{i}")
    return b.close("handcuff 3")


def boundary_3handcuff() -> Diagram:
    """3-handcuff on planar edges whose third loop is a Whitehead double.

    The doubled curve runs around loop 2, loop 1, loop 2 backwards and loop 1
    backwards, so the three loops form a Brunnian link with vanishing
    linking numbers.
    """
    b = _three_loop_start()
    for i in (1, 2, 3):
        b.attach(f"e{i}", f"g{i}.L", f"g{i}")
    # split loop 3 into the four strands a b c d of a doubled curve
    p = b.names.index("g3.L")
    b.m.birth(p + 1, "g3")
    b.names[p + 1 : p + 1] = ["g3.b", "g3.c"]

    def band_pierce(sign: int) -> None:
        q = b.names.index("g3.L")
        over = "L" if sign > 0 else "R"
        for k in (q - 1, q, q, q - 1):
            b.cross(k, over)

    def band_left() -> None:
        q = b.names.index("g3.L")
        b.cross(q - 1, "R")
        b.cross(q, "R")

    def band_right() -> None:
        q = b.names.index("g3.L")
        b.cross(q + 1, "L")
        b.cross(q, "L")

    for sign in (1, -1):
        band_pierce(sign)
        band_left()
        band_left()
        band_pierce(sign)
        band_right()
        band_right()
    q = b.names.index("g3.b")
    b.cross(q, "L")
    b.cross(q, "L")
    return b.close("handcuff 3")


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError("m must be a positive integer")


def trivial_handcuff(n: int) -> Diagram:
    """Planar handcuff with ``n`` loops (2 or 3)."""
    if n == 2:
        mo = Morse()
        mo.birth(0, "g1", 1).birth(2, "g2", 1)
        mo.vertex(1, 1, ["g1", "e"])
        mo.vertex(2, 2, ["g2"])
        mo.death(2).death(0)
        return mo.to_diagram(kind="handcuff 2")
    if n != 3:
        raise ValueError("only 2- and 3-handcuffs are built here")
    b = _three_loop_start()
    for i in (1, 2, 3):
        b.attach(f"e{i}", f"g{i}.L", f"g{i}")
    return b.close("handcuff 3")


def hopf_handcuff() -> Diagram:
    """2-handcuff whose loops form a positive Hopf link."""
    mo = Morse()
    mo.birth(0, "g1", 1).birth(2, "g2", 1)
    mo.cross(1, "L").cross(1, "L")
    mo.vertex(1, 1, ["g1", "e"])
    mo.vertex(2, 2, ["g2"])
    mo.death(2).death(0)
    return mo.to_diagram(kind="handcuff 2")


def borromean_handcuff() -> Diagram:
    """Borromean rings hung on a 3-handcuff; edges pass over the loops."""
    mo = Morse()
    mo.vertex(0, 0, ["e1", "e2", "e3"])
    mo.birth(3, "g3").birth(4, "g2").birth(5, "g1")
    mo.vertex(2, 2, ["g3"], outs=[None, False, True])
    mo.cross(1, "L")
    mo.vertex(2, 2, ["g2"], outs=[None, False, True])
    mo.cross(0, "L").cross(1, "L")
    mo.vertex(2, 2, ["g1"], outs=[None, False, True])
    mo.crosses([(3, "L"), (4, "R")] * 3)
    mo.death(2).death(1).death(0)
    return mo.to_diagram(kind="handcuff 3")


def linked_3handcuff() -> Diagram:
    """3-handcuff whose first two loops clasp once."""
    b = _three_loop_start()
    p = b.names.index("g1.R")
    b.cross(p, "L")
    b.cross(p, "L")
    for i in (1, 2, 3):
        b.attach(f"e{i}", f"g{i}.L", f"g{i}")
    return b.close("handcuff 3")


def _borromean_link() -> Diagram:
    mo = Morse()
    mo.birth(0, "A", 1).birth(1, "B", 1).birth(2, "C", 1)
    mo.crosses([(3, "L"), (4, "R")] * 3)
    mo.death(2).death(1).death(0)
    return mo.to_diagram(kind="link")


def _kink() -> Diagram:
    mo = Morse()
    mo.birth(0, "K", 1).birth(2, "K")
    mo.cross(1, "L")
    mo.death(0).death(0)
    return mo.to_diagram(kind="knot")


def _r2_unlink() -> Diagram:
    mo = Morse()
    mo.birth(0, "A", 1).birth(2, "B", 1)
    mo.cross(1, "L").cross(1, "R")
    mo.death(2).death(0)
    return mo.to_diagram(kind="link")


# ---------------------------------------------------------------------------
# the table

_TRICKY_TREFOIL = "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\nlabel K = 1 2 3 4 5 6\n"
_FIGURE_EIGHT = "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\nlabel K = 1 2 3 4 5 6 7 8\n"
_HOPF = "X 1 3 2 4\nX 3 1 4 2\nlabel A = 1 2\nlabel B = 3 4\n"

FAMILIES = {
    "slice2": (slice_handcuff, "2-handcuff family; edge hooks loop 1 m times inside a hook around loop 2"),
    "boundary2": (boundary_handcuff, "2-handcuff family; as slice2 with the hooks around loop 2 taken the other way"),
    "slice3": (slice_3handcuff, "3-handcuff family; cyclic edge hooks with m turns of e3 around g1"),
}

_FAMILY_EXPECTED = {
    "slice2": lambda m: (
        Expected(("inv", "--disksum", "--a2"), str(2 * m), "target"),
        Expected(("n12",), f"n12 = {2 * m} (mod 0)", "target"),
        Expected(("inv", "--lk", "g1", "g2"), "0", "target"),
    ),
    "boundary2": lambda m: (
        Expected(("inv", "--disksum", "--a2"), str(-2 * m), "target"),
        Expected(("n12",), f"n12 = {-2 * m} (mod 0)", "target"),
        Expected(("inv", "--lk", "g1", "g2"), "0", "target"),
    ),
    "slice3": lambda m: (
        Expected(("n123",), f"n123 = {m} (mod 0)", "target"),
        Expected(("inv", "--disksum", "--a2"), "0", "target"),
        Expected(("ngen",), "ngen = 0 (mod 0)", "target"),
        Expected(("inv", "--mu123"), "0", "target"),
    ),
}

BOUNDARY3_JONES = {
    -12: -1, -11: 6, -10: -11, -9: 1, -8: 28, -7: -52, -6: 36, -5: 17, -4: -61,
    -3: 67, -2: -43, -1: 11, 0: 22, 1: -57, 2: 84, 3: -78, 4: 32, 5: 23, 6: -43,
    7: 24, 9: -4, 10: -4, 11: 5, 12: 1, 13: -3, 14: 1,
}


def _boundary3_jones_text() -> str:
    from .algebra import LaurentPoly

    return str(LaurentPoly.from_exponents(BOUNDARY3_JONES))


def _fixed() -> dict[str, CorpusEntry]:
    trefoil = serialize(mirror(parse(_TRICKY_TREFOIL)))
    table = {
        "unknot": CorpusEntry(
            "unknot",
            "O K\n",
            (
                Expected(("inv", "--jones"), "1", "definition"),
                Expected(("inv", "--conway"), "1", "definition"),
                Expected(("inv", "--a2"), "0", "definition"),
                Expected(("inv", "--v3"), "0", "definition"),
            ),
            description="crossingless unknot",
        ),
        "trefoil": CorpusEntry(
            "trefoil",
            trefoil,
            (
                Expected(("inv", "--jones"), "t + t^3 - t^4", "hand"),
                Expected(("inv", "--conway"), "1 + z^2", "hand"),
                Expected(("inv", "--a2"), "1", "hand"),
                Expected(("inv", "--v3"), "-1/2", "hand"),
            ),
            description="trefoil whose Jones polynomial is t + t^3 - t^4",
        ),
        "figure-eight": CorpusEntry(
            "figure-eight",
            serialize(parse(_FIGURE_EIGHT)),
            (
                Expected(("inv", "--jones"), "t^-2 - t^-1 + 1 - t + t^2", "hand"),
                Expected(("inv", "--conway"), "1 - z^2", "hand"),
                Expected(("inv", "--a2"), "-1", "hand"),
                Expected(("inv", "--v3"), "-1/2", "hand"),
            ),
            description="figure-eight knot",
        ),
        "hopf": CorpusEntry(
            "hopf",
            serialize(parse(_HOPF)),
            (
                Expected(("inv", "--lk", "A", "B"), "1", "hand"),
                Expected(("inv", "--conway"), "z", "hand"),
                Expected(("inv", "--total-lk"), "1", "hand"),
            ),
            description="positive Hopf link",
        ),
        "borromean": CorpusEntry(
            "borromean",
            serialize(_borromean_link()),
            (
                Expected(("inv", "--total-lk"), "0", "hand"),
                Expected(("inv", "--lk", "A", "B"), "0", "hand"),
            ),
            description="Borromean rings as the closure of a three-strand braid",
        ),
        "kink": CorpusEntry(
            "kink",
            serialize(_kink()),
            (Expected(("inv", "--jones"), "1", "definition"),),
            description="unknot with one curl",
        ),
        "r2-unlink": CorpusEntry(
            "r2-unlink",
            serialize(_r2_unlink()),
            (
                Expected(("inv", "--lk", "A", "B"), "0", "definition"),
                Expected(("inv", "--jones"), "-t^(-1/2) - t^(1/2)", "definition"),
            ),
            description="two-component unlink drawn with one bigon",
        ),
        "handcuff2-trivial": CorpusEntry(
            "handcuff2-trivial",
            serialize(trivial_handcuff(2)),
            (
                Expected(("n12",), "n12 = 0 (mod 0)", "definition"),
                Expected(("inv", "--disksum", "--jones"), "1", "definition"),
            ),
            description="planar 2-handcuff",
        ),
        "handcuff3-trivial": CorpusEntry(
            "handcuff3-trivial",
            serialize(trivial_handcuff(3)),
            (
                Expected(("n123",), "n123 = 0 (mod 0)", "definition"),
                Expected(("inv", "--mu123"), "0", "definition"),
                Expected(("ngen",), "ngen = 0 (mod 0)", "definition"),
            ),
            description="planar 3-handcuff",
        ),
        "handcuff2-hopf": CorpusEntry(
            "handcuff2-hopf",
            serialize(hopf_handcuff()),
            (
                Expected(("inv", "--lk", "g1", "g2"), "1", "hand"),
                Expected(("n12",), "n12 = 0 (mod 1)", "hand"),
            ),
            description="2-handcuff on a positive Hopf link",
        ),
        "handcuff3-borromean": CorpusEntry(
            "handcuff3-borromean",
            serialize(borromean_handcuff()),
            (
                Expected(("inv", "--mu123"), "-1", "hand"),
            ),
            description="Borromean rings hung on a 3-handcuff",
        ),
        "handcuff3-linked": CorpusEntry(
            "handcuff3-linked",
            serialize(linked_3handcuff()),
            (Expected(("n123",), "deltahom: not algebraically split", "definition"),),
            description="3-handcuff whose first two loops form a Hopf link",
        ),
        "boundary3": CorpusEntry(
            "boundary3",
            serialize(boundary_3handcuff()),
            (
                Expected(("inv", "--disksum", "--jones"), _boundary3_jones_text(), "target"),
                Expected(("inv", "--disksum", "--a2"), "0", "target"),
                Expected(("inv", "--disksum", "--v3"), "1", "target"),
                Expected(("n123",), "n123 = -1 (mod 0)", "target"),
                Expected(("ngen",), "ngen = 0 (mod 0)", "target"),
            ),
            description="3-handcuff with a Brunnian link of loops, the third a Whitehead double",
        ),
    }
    return table


_CACHE: dict[str, CorpusEntry] = {}


def names() -> list[str]:
    """All entry names; family members are ``<family>-m<m>`` for m = 1..3."""
    fixed = list(_fixed_cached())
    fam = [f"{f}-m{m}" for f in FAMILIES for m in (1, 2, 3)]
    return sorted(fixed + fam)


def _fixed_cached() -> dict[str, CorpusEntry]:
    if not _CACHE:
        _CACHE.update(_fixed())
    return _CACHE


def _split_family(name: str) -> tuple[str, int] | None:
    fam, sep, m = name.rpartition("-m")
    if sep and fam in FAMILIES and m.isdigit() and int(m) >= 1:
        return fam, int(m)
    return None


def entry(name: str) -> CorpusEntry:
    """Look up an entry; family members may use any m >= 1."""
    fixed = _fixed_cached()
    if name in fixed:
        return fixed[name]
    parts = _split_family(name)
    if parts is None:
        raise KeyError(f"no corpus entry {name!r}")
    fam, m = parts
    build, desc = FAMILIES[fam]
    return CorpusEntry(
        name, serialize(build(m)), _FAMILY_EXPECTED[fam](m), {"m": m}, f"{desc}; m = {m}"
    )


def emit(name: str) -> str:
    """File text for an entry: a comment header followed by the serialized diagram."""
    e = entry(name)
    header = [f"# {e.name}: {e.description}"]
    for x in e.expected:
        header.append(f"# expect [{x.basis}] {' '.join(x.args)} -> {x.output}")
    return "\n".join(header) + "\n" + e.text


def load(name: str) -> Diagram:
    return entry(name).diagram()


def data_text(name: str) -> str:
    """The checked-in file for an entry."""
    return resources.files(__package__).joinpath("data", f"{name}.sgd").read_text()
