"""Combinatorial planar diagrams of knots, links and spatial graphs.

A diagram is a combinatorial map.  Crossings carry four arc-ends listed
counterclockwise ``(a, b, c, d)`` with ``a`` the incoming under-arc and ``c``
the outgoing under-arc; the over-strand runs ``d -> b`` for a positive
crossing and ``b -> d`` for a negative one.  Vertices list their arc-ends
counterclockwise with ``+k`` for an arc leaving the vertex and ``-k`` for an
arc entering it.  Arc directions are the orientation of the diagram.

Surgery goes through :class:`PlanarGraph`, a mutable slot-level view that is
converted back into a :class:`Diagram` with fresh arc numbers.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

__all__ = [
    "Crossing",
    "Diagram",
    "DiagramError",
    "PlanarGraph",
    "parse",
    "serialize",
    "validate",
    "faces",
    "components",
    "delete_components",
    "crossing_sign",
    "canonical_code",
    "writhe",
    "mirror",
]


class DiagramError(ValueError):
    """Raised for malformed diagram sources or invalid surgery requests."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    sign: int  # +1: over-strand enters at d, -1: enters at b

    @property
    def ends(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def over_in(self) -> int:
        return self.d if self.sign > 0 else self.b

    @property
    def over_out(self) -> int:
        return self.b if self.sign > 0 else self.d

    def heads(self) -> tuple[bool, bool, bool, bool]:
        """Per position: is this arc-end the head (incoming end) of its arc."""
        return (True, self.sign < 0, False, self.sign > 0)


# Node references: ("X", i) for crossings, ("V", j) for vertices.
Slot = tuple  # (node_id, position)


@dataclass(frozen=True, eq=False)
class Diagram:
    crossings: tuple[Crossing, ...] = ()
    vertices: tuple[tuple[int, ...], ...] = ()
    free_loops: tuple[str, ...] = ()
    labels: tuple[tuple[int, str], ...] = ()
    kind: str | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic views ---------------------------------------------------
    @property
    def label_of(self) -> dict[int, str]:
        if "label_of" not in self._cache:
            self._cache["label_of"] = dict(self.labels)
        return self._cache["label_of"]

    @property
    def arcs(self) -> list[int]:
        return sorted(self.label_of)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def label_names(self) -> list[str]:
        """Labels in first-appearance order (arcs ascending, then free loops)."""
        seen: dict[str, None] = {}
        for _, lab in sorted(self.labels):
            seen.setdefault(lab, None)
        for lab in self.free_loops:
            seen.setdefault(lab, None)
        return list(seen)

    def ends_index(self) -> dict[int, dict[str, tuple]]:
        """arc -> {"tail": (node, pos), "head": (node, pos)}; raises on inconsistency."""
        if "ends" not in self._cache:
            idx: dict[int, dict[str, tuple]] = defaultdict(dict)
            for i, x in enumerate(self.crossings):
                for p, (arc, is_head) in enumerate(zip(x.ends, x.heads())):
                    key = "head" if is_head else "tail"
                    if key in idx[arc]:
                        raise DiagramError(f"arc {arc} has two {key}s")
                    idx[arc][key] = (("X", i), p)
            for j, v in enumerate(self.vertices):
                for p, s in enumerate(v):
                    arc, key = abs(s), ("tail" if s > 0 else "head")
                    if key in idx[arc]:
                        raise DiagramError(f"arc {arc} has two {key}s")
                    idx[arc][key] = (("V", j), p)
            self._cache["ends"] = dict(idx)
        return self._cache["ends"]

    def node_arcs(self, node) -> tuple[int, ...]:
        kind, i = node
        if kind == "X":
            return self.crossings[i].ends
        return tuple(abs(s) for s in self.vertices[i])

    def degree(self, node) -> int:
        return 4 if node[0] == "X" else len(self.vertices[node[1]])

    def slot_arc(self, slot) -> int:
        node, p = slot
        return self.node_arcs(node)[p]

    def nodes(self) -> list:
        return [("X", i) for i in range(len(self.crossings))] + [
            ("V", j) for j in range(len(self.vertices))
        ]

    def next_arc(self, arc: int) -> int | None:
        """Arc following ``arc`` through the crossing at its head; None at a vertex."""
        node, p = self.ends_index()[arc]["head"]
        if node[0] == "V":
            return None
        return self.crossings[node[1]].ends[(p + 2) % 4]

    def strand_cycles(self) -> list[list[int]]:
        """Arcs grouped into maximal strands, each in traversal order.

        A strand ends at vertices; closed strands through crossings only are cycles.
        """
        if "strands" in self._cache:
            return self._cache["strands"]
        ends = self.ends_index()
        seen: set[int] = set()
        out: list[list[int]] = []
        # strands starting at a vertex
        for v in self.vertices:
            for s in v:
                if s > 0 and s not in seen:
                    path = [s]
                    seen.add(s)
                    nxt = self.next_arc(s)
                    while nxt is not None and nxt not in seen:
                        path.append(nxt)
                        seen.add(nxt)
                        nxt = self.next_arc(nxt)
                    out.append(path)
        for arc in sorted(ends):
            if arc in seen:
                continue
            path = [arc]
            seen.add(arc)
            nxt = self.next_arc(arc)
            while nxt is not None and nxt not in seen:
                path.append(nxt)
                seen.add(nxt)
                nxt = self.next_arc(nxt)
            out.append(path)
        self._cache["strands"] = out
        return out

    def closed_labels(self) -> list[str]:
        """Labels whose arcs form closed loops (possibly through degree-2+ vertices)."""
        return [lab for lab, info in components(self).items() if info == "closed"]

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.crossings == other.crossings
            and self.vertices == other.vertices
            and self.free_loops == other.free_loops
            and tuple(sorted(self.labels)) == tuple(sorted(other.labels))
        )

    def __hash__(self):
        return hash((self.crossings, self.vertices, self.free_loops))

    def __repr__(self):
        return (
            f"Diagram(<{len(self.crossings)} crossings, {len(self.vertices)} vertices, "
            f"{len(self.free_loops)} free loops, labels {self.label_names()}>)"
        )

    def to_graph(self) -> "PlanarGraph":
        return PlanarGraph.from_diagram(self)

    def with_kind(self, kind: str | None) -> "Diagram":
        return Diagram(self.crossings, self.vertices, self.free_loops, self.labels, kind)


# ---------------------------------------------------------------------------
# Text format


_INT = re.compile(r"^[+-]?\d+$")


def parse(text: str) -> Diagram:
    """Parse the line-oriented diagram format and validate the result."""
    kind = None
    raw_x: list[tuple[int, list[int]]] = []
    raw_v: list[tuple[int, list[int]]] = []
    loops: list[str] = []
    label_lines: list[tuple[int, str, list[int]]] = []
    orient: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        col = lambda k: raw.find(toks[k]) + 1  # noqa: E731
        if head == "graph":
            if kind is not None:
                raise DiagramError("duplicate graph header", lineno, 1)
            rest = toks[1:]
            if rest[:1] in (["knot"], ["link"]) and len(rest) == 1:
                kind = rest[0]
            elif rest[:1] == ["handcuff"] and len(rest) == 2 and rest[1].isdigit():
                kind = f"handcuff {int(rest[1])}"
            else:
                raise DiagramError("bad graph header", lineno, col(0))
        elif head == "X":
            if len(toks) != 5:
                raise DiagramError("crossing needs 4 arcs", lineno, col(0))
            vals = []
            for k in range(1, 5):
                if not toks[k].isdigit() or int(toks[k]) == 0:
                    raise DiagramError(f"bad arc id {toks[k]!r}", lineno, col(k))
                vals.append(int(toks[k]))
            raw_x.append((lineno, vals))
        elif head == "V":
            if len(toks) < 3:
                raise DiagramError("vertex needs at least 2 arc-ends", lineno, col(0))
            vals = []
            for k in range(1, len(toks)):
                t = toks[k]
                if not _INT.match(t) or t[0] not in "+-" or int(t) == 0:
                    raise DiagramError(f"vertex arc-end must be signed, got {t!r}", lineno, col(k))
                vals.append(int(t))
            raw_v.append((lineno, vals))
        elif head == "O":
            if len(toks) != 2:
                raise DiagramError("free loop needs one label", lineno, col(0))
            loops.append(toks[1])
        elif head == "label":
            if len(toks) < 3 or toks[2] != "=":
                raise DiagramError("expected 'label <name> = arcs...'", lineno, col(0))
            arcs = []
            for k in range(3, len(toks)):
                if not toks[k].isdigit():
                    raise DiagramError(f"bad arc id {toks[k]!r}", lineno, col(k))
                arcs.append(int(toks[k]))
            label_lines.append((lineno, toks[1], arcs))
        elif head == "orient":
            if len(toks) != 3 or toks[2] not in "+-":
                raise DiagramError("expected 'orient <name> <+|->'", lineno, col(0))
            orient[toks[1]] = 1 if toks[2] == "+" else -1
        else:
            raise DiagramError(f"unknown directive {head!r}", lineno, 1)

    # arc multiplicity
    count: dict[int, int] = defaultdict(int)
    for _, vals in raw_x:
        for a in vals:
            count[a] += 1
    for _, vals in raw_v:
        for s in vals:
            count[abs(s)] += 1
    for a, n in sorted(count.items()):
        if n != 2:
            raise DiagramError(f"arc multiplicity: arc {a} used {n} times")

    labels: dict[int, str] = {}
    for lineno, name, arcs in label_lines:
        for a in arcs:
            if a in labels:
                raise DiagramError(f"arc {a} labeled twice", lineno)
            if a not in count:
                raise DiagramError(f"label {name} names unknown arc {a}", lineno)
            labels[a] = name
    for a in count:
        if a not in labels:
            raise DiagramError(f"unlabeled arc {a}")

    # resolve over-strand directions
    heads = _resolve_directions(raw_x, raw_v, count)
    crossings = []
    for i, (lineno, (a, b, c, d)) in enumerate(raw_x):
        hb, hd = heads[(i, 1)], heads[(i, 3)]
        if hb == hd:
            raise DiagramError("under/over inconsistency at crossing", lineno)
        crossings.append(Crossing(a, b, c, d, 1 if hd else -1))
    vertices = [tuple(vals) for _, vals in raw_v]

    d0 = Diagram(tuple(crossings), tuple(vertices), tuple(loops), tuple(sorted(labels.items())), kind)
    # explicit orientation reversals
    flips = {name for name, s in orient.items() if s < 0}
    if flips:
        d0 = reverse_components(d0, flips)
    report = validate(d0)
    if report:
        raise DiagramError("; ".join(report))
    return d0


def _resolve_directions(raw_x, raw_v, count) -> dict[tuple[int, int], bool]:
    """Head/tail status of every over-position, propagated from fixed ends."""
    # occurrences: arc -> list of (kind, i, pos)
    occ: dict[int, list] = defaultdict(list)
    known: dict[tuple, bool] = {}
    for i, (_, vals) in enumerate(raw_x):
        for p, a in enumerate(vals):
            occ[a].append(("X", i, p))
        known[("X", i, 0)] = True
        known[("X", i, 2)] = False
    for j, (_, vals) in enumerate(raw_v):
        for p, s in enumerate(vals):
            occ[abs(s)].append(("V", j, p))
            known[("V", j, p)] = s < 0

    def other_end(key):
        kind, i, p = key
        a = raw_x[i][1][p] if kind == "X" else abs(raw_v[i][1][p])
        o = occ[a]
        if o[0] == key:
            return o[1]
        return o[0]

    def partner(key):
        kind, i, p = key
        return (kind, i, (p + 2) % 4)

    changed = True
    while changed:
        changed = False
        for i in range(len(raw_x)):
            for p in (1, 3):
                key = ("X", i, p)
                if key in known:
                    continue
                o = other_end(key)
                if o in known:
                    known[key] = not known[o]
                    changed = True
                elif partner(key) in known:
                    known[key] = not known[partner(key)]
                    changed = True
    # over-only cycles: the smallest arc's first occurrence is its tail
    for i in range(len(raw_x)):
        for p in (1, 3):
            key = ("X", i, p)
            if key in known:
                continue
            cycle = _over_cycle(key, other_end, partner)
            arcs = {raw_x[k[1]][1][k[2]] for k in cycle}
            m = min(arcs)
            first = min(occ[m], key=lambda k: (k[1], k[2]))
            known[first] = False
            frontier = [first]
            while frontier:
                k = frontier.pop()
                for nb in (other_end(k), partner(k)):
                    if nb not in known:
                        known[nb] = not known[k]
                        frontier.append(nb)
    return {(k[1], k[2]): v for k, v in known.items() if k[0] == "X"}


def _over_cycle(start, other_end, partner) -> list:
    out = [start]
    k = start
    while True:
        k = other_end(k)
        out.append(k)
        k = partner(k)
        if k == start:
            return out
        out.append(k)


def reverse_components(d: Diagram, names: set[str]) -> Diagram:
    """Reverse the orientation of every arc carrying a label in ``names``."""
    lab = d.label_of
    xs = []
    for x in d.crossings:
        under_flip = lab[x.a] in names
        over_flip = lab[x.b] in names
        a, b, c, e, s = x
        if under_flip:
            a, b, c, e = c, e, a, b
            s = -s
        if over_flip:
            s = -s
        xs.append(Crossing(a, b, c, e, s))
    vs = [tuple(-s if lab[abs(s)] in names else s for s in v) for v in d.vertices]
    return Diagram(tuple(xs), tuple(vs), d.free_loops, d.labels, d.kind)


def serialize(d: Diagram) -> str:
    """Canonical text form; ``parse(serialize(d)) == d``."""
    lines = []
    if d.kind and not (d.kind in ("knot", "link") and d.kind == _inferred_kind(d)):
        lines.append(f"graph {d.kind}")
    for x in d.crossings:
        lines.append(f"X {x.a} {x.b} {x.c} {x.d}")
    for v in d.vertices:
        lines.append("V " + " ".join(f"{s:+d}" for s in v))
    for lab in d.free_loops:
        lines.append(f"O {lab}")
    by_label: dict[str, list[int]] = defaultdict(list)
    for a, lab in sorted(d.labels):
        by_label[lab].append(a)
    for lab in d.label_names():
        if lab in by_label:
            lines.append(f"label {lab} = " + " ".join(map(str, by_label[lab])))
    flips = _needed_orient_flags(d)
    comp = components(d)
    for lab in d.label_names():
        if comp.get(lab) == "closed" and lab in by_label:
            lines.append(f"orient {lab} {'-' if lab in flips else '+'}")
    return "\n".join(lines) + "\n"


def _inferred_kind(d: Diagram) -> str:
    if d.vertices:
        return "graph"
    n = len(d.label_names())
    return "knot" if n == 1 else "link"


def _needed_orient_flags(d: Diagram) -> set[str]:
    """Labels whose over-only cycles would parse with the opposite direction."""
    raw_x = [(0, list(x.ends)) for x in d.crossings]
    raw_v = [(0, list(v)) for v in d.vertices]
    count: dict[int, int] = defaultdict(int)
    for _, vals in raw_x:
        for a in vals:
            count[a] += 1
    for _, vals in raw_v:
        for s in vals:
            count[abs(s)] += 1
    heads = _resolve_directions(raw_x, raw_v, count)
    flips = set()
    for i, x in enumerate(d.crossings):
        if heads[(i, 3)] != (x.sign > 0):
            flips.add(d.label_of[x.b])
    return flips


# ---------------------------------------------------------------------------
# Structure


def validate(d: Diagram) -> list[str]:
    """Return findings (empty iff the diagram is valid)."""
    report: list[str] = []
    # arc consistency
    seen: dict[int, list[bool]] = defaultdict(list)
    for x in d.crossings:
        for arc, is_head in zip(x.ends, x.heads()):
            seen[arc].append(is_head)
    for v in d.vertices:
        for s in v:
            seen[abs(s)].append(s < 0)
    for arc, hs in sorted(seen.items()):
        if len(hs) != 2:
            report.append(f"arc multiplicity: arc {arc} has {len(hs)} ends")
        elif hs[0] == hs[1]:
            report.append(
                f"orientation: arc {arc} has two {'incoming' if hs[0] else 'outgoing'} ends"
            )
    labels = d.label_of
    for arc in seen:
        if arc not in labels:
            report.append(f"unlabeled arc {arc}")
    for arc in labels:
        if arc not in seen:
            report.append(f"label for unused arc {arc}")
    if report:
        return report
    # strand continuity through crossings
    for i, x in enumerate(d.crossings):
        if labels[x.a] != labels[x.c]:
            report.append(f"orientation: under-strand label changes at crossing {i}")
        if labels[x.b] != labels[x.d]:
            report.append(f"orientation: over-strand label changes at crossing {i}")
    if report:
        return report
    report.extend(_label_connectivity(d))
    if report:
        return report
    # planarity (Euler per connected piece)
    for piece_nodes, piece_arcs, piece_faces in _pieces_with_faces(d):
        chi = len(piece_nodes) - len(piece_arcs) + piece_faces
        if chi != 2:
            report.append(
                f"planarity: piece with {len(piece_nodes)} nodes, {len(piece_arcs)} arcs, "
                f"{piece_faces} faces has Euler characteristic {chi}"
            )
    return report


def _label_connectivity(d: Diagram) -> list[str]:
    """Each label must be one strand: arcs joined through crossings and through
    vertices where exactly two of its ends meet."""
    labels = d.label_of
    parent = {a: a for a in labels}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def join(a, b):
        parent[find(a)] = find(b)

    for x in d.crossings:
        join(x.a, x.c)
        join(x.b, x.d)
    for v in d.vertices:
        by_label: dict[str, list[int]] = defaultdict(list)
        for s in v:
            by_label[labels[abs(s)]].append(abs(s))
        for arcs in by_label.values():
            if len(arcs) == 2:
                join(*arcs)
    roots: dict[str, set] = defaultdict(set)
    for arc, lab in labels.items():
        roots[lab].add(find(arc))
    report = [f"label {lab!r} covers {len(r)} separate strands" for lab, r in sorted(roots.items()) if len(r) > 1]
    for lab in sorted(set(d.free_loops)):
        if lab in roots or d.free_loops.count(lab) > 1:
            report.append(f"label {lab!r} covers more than one strand")
    return report


def _dart_next(d: Diagram, dart: tuple[int, bool]) -> tuple[int, bool]:
    """Face-successor of a dart: the face stays on the left."""
    arc, forward = dart
    ends = d.ends_index()[arc]
    node, p = ends["head" if forward else "tail"]
    q = (p - 1) % d.degree(node)
    nxt = d.node_arcs(node)[q]
    nends = d.ends_index()[nxt]
    # leaving ``node`` at slot q: forward if that slot is the arc's tail
    if nends["tail"] == (node, q):
        return (nxt, True)
    return (nxt, False)


def faces(d: Diagram) -> list[list]:
    """Face cycles as lists of darts ``(arc, forward)``; free loops give two faces each."""
    seen = set()
    out = []
    for arc in sorted(d.label_of):
        for fw in (True, False):
            if (arc, fw) in seen:
                continue
            cyc = []
            dart = (arc, fw)
            while dart not in seen:
                seen.add(dart)
                cyc.append(dart)
                dart = _dart_next(d, dart)
            out.append(cyc)
    for lab in d.free_loops:
        out.append([("O", lab, True)])
        out.append([("O", lab, False)])
    return out


def _pieces(d: Diagram) -> list[tuple[set, set]]:
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for n in d.nodes():
        parent[n] = n
    ends = d.ends_index()
    for arc, e in ends.items():
        ra, rb = find(e["tail"][0]), find(e["head"][0])
        if ra != rb:
            parent[ra] = rb
    groups: dict = defaultdict(lambda: (set(), set()))
    for n in d.nodes():
        groups[find(n)][0].add(n)
    for arc, e in ends.items():
        groups[find(e["tail"][0])][1].add(arc)
    return list(groups.values())


def _pieces_with_faces(d: Diagram):
    fs = faces(d)
    arc_face_piece = {}
    pieces = _pieces(d)
    for k, (_, arcs) in enumerate(pieces):
        for a in arcs:
            arc_face_piece[a] = k
    per_piece = defaultdict(int)
    for f in fs:
        if f[0][0] == "O":
            continue
        per_piece[arc_face_piece[f[0][0]]] += 1
    for k, (nodes, arcs) in enumerate(pieces):
        yield nodes, arcs, per_piece[k]


def split_pieces(d: Diagram) -> int:
    """Number of connected pieces, counting free loops."""
    return len(_pieces(d)) + len(d.free_loops)


def components(d: Diagram) -> dict[str, str]:
    """label -> "closed" or "open".

    A label is closed when each of its arcs continues into another arc of the
    same label at both ends: through crossings, and at vertices where exactly
    two ends carry that label.
    """
    labels = d.label_of
    info: dict[str, str] = {}
    for lab in d.free_loops:
        info[lab] = "closed"
    by_vertex_count: dict[tuple[int, str], int] = defaultdict(int)
    for j, v in enumerate(d.vertices):
        for s in v:
            by_vertex_count[(j, labels[abs(s)])] += 1
    for arc, lab in labels.items():
        info.setdefault(lab, "closed")
    ends = d.ends_index()
    for arc, lab in labels.items():
        for key in ("tail", "head"):
            node, _ = ends[arc][key]
            if node[0] == "V" and by_vertex_count[(node[1], lab)] != 2:
                info[lab] = "open"
    return {lab: info[lab] for lab in d.label_names()}


def crossing_sign(d: Diagram, c) -> int:
    """Sign of crossing ``c`` (an index or a :class:`Crossing`)."""
    x = d.crossings[c] if isinstance(c, int) else c
    return x.sign


def writhe(d: Diagram) -> int:
    return sum(x.sign for x in d.crossings)


def mirror(d: Diagram) -> Diagram:
    """Mirror image: every crossing switched, orientation kept."""
    return d.to_graph().switched(range(len(d.crossings))).to_diagram(kind=d.kind)


def delete_components(d: Diagram, labels: Iterable[str]) -> Diagram:
    """Remove every arc with one of ``labels``; smooth vertices left with degree 2."""
    labels = set(labels)
    known = set(d.label_names())
    unknown = labels - known
    if unknown:
        raise DiagramError(f"unknown label(s): {', '.join(sorted(unknown))}")
    g = d.to_graph()
    g.delete_labels(labels)
    return g.to_diagram(kind=None)


# ---------------------------------------------------------------------------
# Canonical code


def canonical_code(d: Diagram, with_labels: bool = True) -> bytes:
    """Encoding invariant under arc renumbering and node reordering."""
    g = d.to_graph()
    return g.canonical_code(with_labels)


# ---------------------------------------------------------------------------
# Mutable slot-level view


class PlanarGraph:
    """Mutable combinatorial map used for all surgery.

    Nodes have kinds ``"X"`` (crossing; ``under`` is 0 or 1 and the under-strand
    occupies slots ``under`` and ``under + 2``), ``"V"`` (vertex) and ``"P"``
    (2-valent pass-through, removed on conversion).  ``link`` pairs slots,
    ``out[slot]`` says whether the arc at that slot leaves the node, and
    ``label[slot]`` names the component of that arc.
    """

    def __init__(self):
        self.kind_of: dict[int, str] = {}
        self.deg: dict[int, int] = {}
        self.under: dict[int, int] = {}
        self.link: dict[tuple[int, int], tuple[int, int]] = {}
        self.out: dict[tuple[int, int], bool] = {}
        self.label: dict[tuple[int, int], str] = {}
        self.free_loops: list[str] = []
        self._next = 0

    # construction ---------------------------------------------------------
    def add_node(self, kind: str, degree: int, under: int = 0) -> int:
        n = self._next
        self._next += 1
        self.kind_of[n] = kind
        self.deg[n] = degree
        if kind == "X":
            self.under[n] = under
        return n

    def connect(self, s1, s2, label: str, s1_out: bool | None = None) -> None:
        """Join two slots by an arc; ``s1_out`` tells whether it runs s1 -> s2."""
        self.link[s1] = s2
        self.link[s2] = s1
        self.label[s1] = label
        self.label[s2] = label
        if s1_out is not None:
            self.out[s1] = s1_out
            self.out[s2] = not s1_out

    def remove_node(self, n: int) -> None:
        for p in range(self.deg[n]):
            s = (n, p)
            self.link.pop(s, None)
            self.out.pop(s, None)
            self.label.pop(s, None)
        del self.kind_of[n], self.deg[n]
        self.under.pop(n, None)

    def copy(self) -> "PlanarGraph":
        g = PlanarGraph()
        g.kind_of = dict(self.kind_of)
        g.deg = dict(self.deg)
        g.under = dict(self.under)
        g.link = dict(self.link)
        g.out = dict(self.out)
        g.label = dict(self.label)
        g.free_loops = list(self.free_loops)
        g._next = self._next
        return g

    @classmethod
    def from_diagram(cls, d: Diagram) -> "PlanarGraph":
        g = cls()
        ids = {}
        for i in range(len(d.crossings)):
            ids[("X", i)] = g.add_node("X", 4, 0)
        for j, v in enumerate(d.vertices):
            ids[("V", j)] = g.add_node("V", len(v))
        lab = d.label_of
        for arc, e in d.ends_index().items():
            t = (ids[e["tail"][0]], e["tail"][1])
            h = (ids[e["head"][0]], e["head"][1])
            g.connect(t, h, lab[arc], True)
        g.free_loops = list(d.free_loops)
        return g

    # queries --------------------------------------------------------------
    def strand_partner(self, s) -> tuple[int, int] | None:
        """Slot on the far side of the node along the same strand (crossings, P nodes)."""
        n, p = s
        k = self.kind_of[n]
        if k == "X":
            return (n, (p + 2) % 4)
        if k == "P":
            return (n, 1 - p)
        return None

    def is_under_slot(self, s) -> bool:
        n, p = s
        return self.kind_of[n] == "X" and p % 2 == self.under[n]

    def labels_present(self) -> set[str]:
        return set(self.label.values()) | set(self.free_loops)

    # surgery ----------------------------------------------------------------
    def splice_out(self, n: int, pairs: list[tuple[int, int]]) -> None:
        """Remove node ``n``, letting each strand pass straight through slot pairs.

        Arcs that loop back into ``n`` are followed until they leave it; a strand
        that never leaves becomes a free loop.
        """
        pm = {}
        for p, q in pairs:
            pm[p], pm[q] = q, p
        saved_link = {p: self.link.get((n, p)) for p in pm}
        saved_out = {p: self.out.get((n, p)) for p in pm}
        saved_lab = {p: self.label.get((n, p)) for p in pm}
        self.remove_node(n)
        done: set[int] = set()

        def walk(p):
            # leave the node through slot p; return the external slot reached
            s = p
            while True:
                done.add(s)
                t = saved_link[s]
                if t is None:
                    return None
                if t[0] != n:
                    return t
                done.add(t[1])
                if t[1] not in pm:
                    return None
                s = pm[t[1]]
                if s in done:
                    return "loop"

        for p in list(pm):
            if p in done:
                continue
            q = pm[p]
            a = walk(p)
            if a == "loop":
                self.free_loops.append(saved_lab[p])
                continue
            b = walk(q)
            if a is None or b is None:
                continue
            o = saved_out[p]
            self.connect(a, b, saved_lab[p], None if o is None else (not o))

    def delete_labels(self, labels: set[str]) -> None:
        """Delete all arcs with these labels, merging surviving strands.

        Vertices left with two ends of one label are smoothed; other degree-2
        vertices stay as vertices.
        """
        self.free_loops = [x for x in self.free_loops if x not in labels]
        for n in sorted(self.kind_of):
            if n not in self.kind_of:
                continue
            k = self.kind_of[n]
            deg = self.deg[n]
            dead = [
                p for p in range(deg) if (n, p) not in self.link or self.label.get((n, p)) in labels
            ]
            if not dead:
                continue
            alive = [p for p in range(deg) if p not in dead]
            if k == "X" and len(alive) == 2:
                for p in dead:
                    self._cut_slot((n, p))
                self.splice_out(n, [(alive[0], alive[1])])
            elif k == "V" and alive:
                for p in dead:
                    self._cut_slot((n, p))
                self._reslot_vertex(n, alive)
            else:
                for p in range(deg):
                    self._cut_slot((n, p))
                self.remove_node(n)
        for n in sorted(self.kind_of):
            if n in self.kind_of and self.kind_of[n] == "V":
                self._smooth_if_trivial(n)

    def _smooth_if_trivial(self, n: int) -> None:
        deg = self.deg[n]
        if deg == 1:
            # dangling end: delete the whole open strand hanging here
            self._cut_slot((n, 0))
            self.remove_node(n)
            return
        if deg != 2:
            return
        if self.label.get((n, 0)) != self.label.get((n, 1)):
            return
        if (n, 0) in self.out and (n, 1) in self.out and self.out[(n, 0)] == self.out[(n, 1)]:
            self.reverse_strand((n, 1))
        self.kind_of[n] = "P"

    def reverse_strand(self, s) -> None:
        """Flip the direction of the strand leaving node slot ``s`` up to the next vertex."""
        while True:
            t = self.link.get(s)
            if t is None:
                return
            self.out[s] = not self.out[s]
            self.out[t] = not self.out[t]
            part = self.strand_partner(t)
            if part is None or part == s:
                return
            s = part

    def _cut_slot(self, s) -> None:
        t = self.link.pop(s, None)
        self.out.pop(s, None)
        self.label.pop(s, None)
        if t is not None and self.link.get(t) == s:
            del self.link[t]
            self.out.pop(t, None)
            self.label.pop(t, None)

    def _reslot_vertex(self, n: int, alive: list[int]) -> None:
        mapping = {old: new for new, old in enumerate(alive)}
        saved = {p: (self.link.get((n, p)), self.out.get((n, p)), self.label.get((n, p))) for p in alive}
        for p in range(self.deg[n]):
            self.link.pop((n, p), None)
            self.out.pop((n, p), None)
            self.label.pop((n, p), None)
        self.deg[n] = len(alive)
        for old, (t, o, lab) in saved.items():
            s = (n, mapping[old])
            if t is None:
                continue
            if t[0] == n:
                t = (n, mapping[t[1]])
            self.link[s] = t
            self.link[t] = s
            self.label[s] = lab
            self.label[t] = lab
            if o is not None:
                self.out[s] = o
                self.out[t] = not o

    def switched(self, nodes: Iterable[int]) -> "PlanarGraph":
        """Copy with the listed crossings switched (by node order index for X nodes)."""
        g = self.copy()
        xs = [n for n in sorted(g.kind_of) if g.kind_of[n] == "X"]
        for k in nodes:
            n = xs[k]
            g.under[n] = 1 - g.under[n]
        return g

    def reverse_label(self, lab: str) -> None:
        for s, l in self.label.items():
            if l == lab and s in self.out:
                self.out[s] = not self.out[s]

    # orientation ------------------------------------------------------------
    def propagate_orientation(self) -> None:
        """Extend known arc directions along strands through X and P nodes."""
        frontier = [s for s in self.out]
        while frontier:
            s = frontier.pop()
            for nb in (self.link.get(s), self.strand_partner(s)):
                if nb is None:
                    continue
                if nb not in self.out:
                    self.out[nb] = not self.out[s]
                    frontier.append(nb)
                elif self.out[nb] == self.out[s]:
                    raise DiagramError(f"conflicting orientation at slot {nb}")

    def orient_unresolved(self) -> None:
        """Give every still-undirected strand a deterministic direction."""
        self.propagate_orientation()
        for s in sorted(self.link):
            if s not in self.out:
                self.out[s] = True
                self.out[self.link[s]] = False
                self.propagate_orientation()

    # conversion ----------------------------------------------------------------
    def to_diagram(self, kind: str | None = None) -> Diagram:
        g = self.copy()
        g.orient_unresolved()
        # remove pass-through nodes
        for n in sorted(g.kind_of):
            if g.kind_of.get(n) == "P":
                g.splice_out(n, [(0, 1)])
        order = sorted(g.kind_of)
        xs = [n for n in order if g.kind_of[n] == "X"]
        vs = [n for n in order if g.kind_of[n] == "V"]
        arc_id: dict[tuple[int, int], int] = {}
        labels: dict[int, str] = {}
        counter = [0]

        def number_from(s):
            # s is a tail slot; walk the strand numbering arcs
            while s not in arc_id:
                counter[0] += 1
                t = g.link[s]
                arc_id[s] = arc_id[t] = counter[0]
                labels[counter[0]] = g.label[s]
                part = g.strand_partner(t)
                if part is None:
                    return
                s = part

        for n in vs:
            for p in range(g.deg[n]):
                if g.out.get((n, p)) and (n, p) not in arc_id:
                    number_from((n, p))
        for n in xs:
            for p in range(4):
                s = (n, p)
                if g.out.get(s) and s not in arc_id:
                    # start at the beginning of this strand segment if possible
                    number_from(s)
        crossings = []
        for n in xs:
            u = g.under[n]
            rot = [(u + k) % 4 for k in range(4)]
            # slot u must be the incoming under end
            if g.out[(n, u)]:
                rot = [(u + 2 + k) % 4 for k in range(4)]
            ends = [arc_id[(n, p)] for p in rot]
            d_in = not g.out[(n, rot[3])]
            crossings.append(Crossing(ends[0], ends[1], ends[2], ends[3], 1 if d_in else -1))
        vertices = []
        for n in vs:
            vertices.append(
                tuple(arc_id[(n, p)] * (1 if g.out[(n, p)] else -1) for p in range(g.deg[n]))
            )
        d = Diagram(tuple(crossings), tuple(vertices), tuple(g.free_loops), tuple(sorted(labels.items())), None)
        if kind is None:
            kind = _inferred_kind(d)
            if kind == "graph":
                kind = None
        return d.with_kind(kind)

    # canonical code -------------------------------------------------------------
    def canonical_code(self, with_labels: bool = True) -> bytes:
        g = self.copy()
        g.orient_unresolved()
        for n in sorted(g.kind_of):
            if g.kind_of.get(n) == "P":
                g.splice_out(n, [(0, 1)])
        nodes = sorted(g.kind_of)
        # connected pieces
        parent = {n: n for n in nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in g.link.items():
            a, b = find(s[0]), find(t[0])
            if a != b:
                parent[a] = b
        pieces = defaultdict(list)
        for n in nodes:
            pieces[find(n)].append(n)
        codes = []
        for members in pieces.values():
            best = None
            for n in members:
                for p in range(g.deg[n]):
                    c = g._code_from((n, p), with_labels)
                    if best is None or c < best:
                        best = c
            codes.append(best)
        codes.sort()
        loops = sorted(g.free_loops) if with_labels else ["O"] * len(g.free_loops)
        return repr((codes, loops)).encode()

    def _code_from(self, start, with_labels: bool) -> tuple:
        num = {start[0]: 0}
        entry = {start[0]: start[1]}
        queue = [start[0]]
        out = []
        i = 0
        while i < len(queue):
            n = queue[i]
            i += 1
            deg = self.deg[n]
            e = entry[n]
            k = self.kind_of[n]
            rec = [k, deg]
            if k == "X":
                rec.append((self.under[n] - e) % 2)
            for j in range(deg):
                s = (n, (e + j) % deg)
                t = self.link[s]
                if t[0] not in num:
                    num[t[0]] = len(queue)
                    entry[t[0]] = t[1]
                    queue.append(t[0])
                tn = t[0]
                rel = (t[1] - entry[tn]) % self.deg[tn]
                item = (num[tn], rel, self.out[s])
                if with_labels:
                    item = item + (self.label[s],)
                rec.append(item)
            out.append(tuple(rec))
        return tuple(out)
