"""Spatial n-handcuff graphs and their disk sums.

Labels follow a fixed scheme: loops are ``g1 .. gn``; edges are ``e1 .. en``
joined at a central vertex, except for n = 2 where the single edge ``e``
runs from the attachment vertex of ``g1`` to that of ``g2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, DiagramError, PlanarGraph, components, delete_components, validate

__all__ = [
    "HandcuffError",
    "HandcuffDiagram",
    "loop_label",
    "edge_label",
    "validate_handcuff",
    "constituent_knot",
    "sublink",
    "delete_loop",
    "disk_sum",
    "orientations_coherent",
    "band_twist",
]


class HandcuffError(DiagramError):
    """The diagram does not have the labeled shape of an n-handcuff graph."""


def loop_label(i: int) -> str:
    return f"g{i}"


def edge_label(i: int, n: int) -> str:
    return "e" if n == 2 else f"e{i}"


@dataclass(frozen=True)
class HandcuffDiagram:
    """A diagram checked to be an n-handcuff graph.

    ``attachments[i]`` is the vertex index where edge i meets loop i;
    ``central`` is the index of the central vertex (None for n = 2).
    ``twists`` counts full twists added to each edge's band when forming
    disk sums (one entry per edge label).
    """

    diagram: Diagram
    n: int
    central: int | None
    attachments: tuple[int, ...]
    twists: tuple[int, ...] = field(default=())

    @property
    def loop_labels(self) -> tuple[str, ...]:
        return tuple(loop_label(i) for i in range(1, self.n + 1))

    @property
    def edge_labels(self) -> tuple[str, ...]:
        if self.n == 2:
            return ("e",)
        return tuple(edge_label(i, self.n) for i in range(1, self.n + 1))

    def twist_of(self, label: str) -> int:
        return self.twists[self.edge_labels.index(label)] if self.twists else 0


def validate_handcuff(d: Diagram, n: int) -> HandcuffDiagram:
    """Check the labeling contract of an n-handcuff graph and wrap the diagram."""
    if n < 2:
        raise HandcuffError("a handcuff graph needs n >= 2")
    problems = validate(d)
    if problems:
        raise HandcuffError(problems[0])
    loops = [loop_label(i) for i in range(1, n + 1)]
    edges = ["e"] if n == 2 else [edge_label(i, n) for i in range(1, n + 1)]
    names = set(d.label_names())
    expected = set(loops) | set(edges)
    if names != expected:
        missing = sorted(expected - names)
        extra = sorted(names - expected)
        raise HandcuffError(f"wrong abstract graph: labels missing {missing}, unexpected {extra}")
    if d.free_loops:
        raise HandcuffError("wrong abstract graph: a loop carries no attachment vertex")
    lab = d.label_of
    info = components(d)
    for g in loops:
        if info.get(g) != "closed":
            raise HandcuffError(f"loop {g} is not closed")
    for e in edges:
        if info.get(e) != "open":
            raise HandcuffError(f"edge is not a path: {e} has no free ends")
    central = None
    attachments: dict[int, int] = {}
    for j, v in enumerate(d.vertices):
        labs = [lab[abs(s)] for s in v]
        if n > 2 and len(v) == n and set(labs) == set(edges):
            if central is not None:
                raise HandcuffError("wrong vertex degrees: two central vertices")
            central = j
            continue
        if len(v) != 3:
            raise HandcuffError(f"wrong vertex degrees: vertex {j} has degree {len(v)}")
        loop_here = [x for x in labs if x in loops]
        edge_here = [x for x in labs if x in edges]
        if len(loop_here) != 2 or len(set(loop_here)) != 1 or len(edge_here) != 1:
            raise HandcuffError(f"wrong abstract graph at vertex {j}: labels {labs}")
        i = loops.index(loop_here[0]) + 1
        if n > 2 and edge_here[0] != edge_label(i, n):
            raise HandcuffError(f"edge {edge_here[0]} attached to loop {loop_here[0]}")
        if i in attachments:
            raise HandcuffError(f"loop {loop_here[0]} has two attachment vertices")
        attachments[i] = j
        signs = [s > 0 for s, x in zip(v, labs) if x in loops]
        if signs[0] == signs[1]:
            raise HandcuffError(f"missing orientation: loop {loop_here[0]} is not coherently oriented")
    if n > 2 and central is None:
        raise HandcuffError(f"wrong vertex degrees: no central vertex of degree {n}")
    if sorted(attachments) != list(range(1, n + 1)):
        raise HandcuffError("wrong abstract graph: some loop has no attachment vertex")
    # each edge must be a single strand between its two vertices
    for e in edges:
        arcs = [a for a, x in lab.items() if x == e]
        strands = [s for s in d.strand_cycles() if lab[s[0]] == e]
        if len(strands) != 1 or len(strands[0]) != len(arcs):
            raise HandcuffError(f"edge is not a path: {e}")
        first, last = strands[0][0], strands[0][-1]
        ends = d.ends_index()
        v_start = ends[first]["tail"][0]
        v_end = ends[last]["head"][0]
        if v_start[0] != "V" or v_end[0] != "V":
            raise HandcuffError(f"edge is not a path: {e}")
        want = {("V", attachments[1]), ("V", attachments[2])} if n == 2 else None
        if n == 2:
            if {v_start, v_end} != want:
                raise HandcuffError("edge is not a path: e must join the two attachment vertices")
        else:
            i = edges.index(e) + 1
            if {v_start, v_end} != {("V", central), ("V", attachments[i])}:
                raise HandcuffError(f"edge is not a path: {e} must join the central vertex to g{i}")
    kind = f"handcuff {n}"
    d = d if d.kind == kind else d.with_kind(kind)
    n_edges = 1 if n == 2 else n
    return HandcuffDiagram(d, n, central, tuple(attachments[i] for i in range(1, n + 1)), (0,) * n_edges)


def constituent_knot(h: HandcuffDiagram, i: int) -> Diagram:
    """The knot formed by loop ``i`` alone."""
    return sublink(h, [i])


def sublink(h: HandcuffDiagram, indices) -> Diagram:
    """The link formed by the listed loops, with edges and other loops removed."""
    keep = {loop_label(i) for i in indices}
    if not keep or not keep <= set(h.loop_labels):
        raise HandcuffError(f"bad loop indices {list(indices)}")
    drop = (set(h.loop_labels) - keep) | set(h.edge_labels)
    return delete_components(h.diagram, drop)


def delete_loop(h: HandcuffDiagram, k: int) -> HandcuffDiagram:
    """Remove loop ``k`` and its edge; remaining loops and edges are renumbered in order."""
    n = h.n
    if n < 3:
        raise HandcuffError("cannot delete a loop of a 2-handcuff")
    if not 1 <= k <= n:
        raise HandcuffError(f"no loop {k}")
    d = h.diagram
    g = d.to_graph()
    g.delete_labels({loop_label(k), edge_label(k, n)})
    remaining = [i for i in range(1, n + 1) if i != k]
    rename = {}
    for new, old in enumerate(remaining, start=1):
        rename[loop_label(old)] = loop_label(new)
        rename[edge_label(old, n)] = edge_label(new, n - 1)
    for s, lab in list(g.label.items()):
        g.label[s] = rename.get(lab, lab)
    if n - 1 == 2:
        central_node = len(d.crossings) + h.central
        g._smooth_if_trivial(central_node)
    result = validate_handcuff(g.to_diagram(kind=f"handcuff {n - 1}"), n - 1)
    old_twists = [h.twist_of(edge_label(i, n)) for i in remaining]
    twists = (sum(old_twists),) if n - 1 == 2 else tuple(old_twists)
    return HandcuffDiagram(result.diagram, result.n, result.central, result.attachments, twists)


def band_twist(h: HandcuffDiagram, i: int, sign: int) -> HandcuffDiagram:
    """Record one more full twist (``sign`` = +1 or -1) in the band of edge ``i``.

    For n = 2 the only edge is ``e`` and ``i`` may be 1 or 2.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    idx = 0 if h.n == 2 and i in (1, 2) else i - 1
    if not 0 <= idx < len(h.twists) or (h.n == 2 and i not in (1, 2)):
        raise HandcuffError(f"no edge {i}")
    twists = list(h.twists)
    twists[idx] += sign
    return HandcuffDiagram(h.diagram, h.n, h.central, h.attachments, tuple(twists))


# ---------------------------------------------------------------------------
# disk sum


def _disk_sum_graph(h: HandcuffDiagram):
    d = h.diagram
    src = d.to_graph()
    edges = set(h.edge_labels)
    out = PlanarGraph()
    port: dict[tuple, tuple[int, int]] = {}

    def doubled(s) -> bool:
        return src.label[s] in edges

    for n in sorted(src.kind_of):
        kind = src.kind_of[n]
        if kind == "X":
            _double_crossing(out, port, n, src.under[n], doubled((n, 0)), doubled((n, 1)))
        else:
            deg = src.deg[n]
            e_slots = [p for p in range(deg) if doubled((n, p))]
            if len(e_slots) == deg:
                for k in range(deg):
                    j = out.add_node("P", 2)
                    port[(n, k, 1)] = (j, 0)
                    port[(n, (k + 1) % deg, 0)] = (j, 1)
            elif len(e_slots) == 1 and deg == 3:
                j = e_slots[0]
                a = out.add_node("P", 2)
                port[(n, j, 1)] = (a, 0)
                port[(n, (j + 1) % 3, None)] = (a, 1)
                b = out.add_node("P", 2)
                port[(n, (j + 2) % 3, None)] = (b, 0)
                port[(n, j, 0)] = (b, 1)
            else:
                raise HandcuffError("unexpected vertex while forming the disk sum")

    twist_arc = _twist_arcs(h)
    done = set()
    for s, t in src.link.items():
        if (t, s) in done or (s, t) in done:
            continue
        done.add((s, t))
        if not doubled(s):
            out.connect(port[s + (None,)], port[t + (None,)], "K")
            continue
        m = twist_arc.get(frozenset((s, t)), (0, None))
        if m[0] and m[1] == t:
            s, t = t, s
        a0, a1 = port[s + (0,)], port[s + (1,)]
        b0, b1 = port[t + (0,)], port[t + (1,)]
        if m[0]:
            _insert_twists(out, a0, a1, b1, b0, m[0])
        else:
            out.connect(a0, b1, "K")
            out.connect(a1, b0, "K")

    g1 = h.loop_labels[0]
    seed = min(s for s in src.link if src.label[s] == g1)
    ps = port[seed + (None,)]
    out.out[ps] = src.out[seed]
    out.out[out.link[ps]] = not src.out[seed]
    out.propagate_orientation()
    agree = {
        src.out[s] == out.out[port[s + (None,)]]
        for s in src.link
        if src.label[s] in h.loop_labels
    }
    return out, agree == {True}


def disk_sum(h: HandcuffDiagram) -> Diagram:
    """Knot obtained by banding the loops together along the doubled edges.

    Each edge becomes two blackboard-parallel strands.  At an attachment vertex
    the band sides join the loop's two ends; at the central vertex the side of
    one band joins the facing side of the next band in counterclockwise order.
    The knot is oriented along loop ``g1``.
    """
    out, _ = _disk_sum_graph(h)
    result = out.to_diagram(kind="knot")
    if len(result.strand_cycles()) + len(result.free_loops) != 1:
        raise HandcuffError("disk sum did not produce a single component")
    problems = validate(result)
    if problems:
        raise HandcuffError(f"disk sum is invalid: {problems[0]}")
    return result


def orientations_coherent(h: HandcuffDiagram) -> bool:
    """True when every loop's orientation agrees with the disk-sum knot's.

    Only then is the linking number of the loops the one that measures band
    twisting (a positive full twist raises a2 of the disk sum by lk).
    """
    return _disk_sum_graph(h)[1]


def _double_crossing(out: PlanarGraph, port: dict, n: int, under: int, dbl_h: bool, dbl_v: bool) -> None:
    """Replace crossing ``n`` by a grid; slots 0/2 run east-west, 1/3 north-south."""
    ys = (0, 1) if dbl_h else (0,)
    xs = (0, 1) if dbl_v else (0,)
    grid = {(ix, iy): out.add_node("X", 4, under) for ix in xs for iy in ys}
    for iy in ys:
        for ix in xs[:-1]:
            out.connect((grid[(ix, iy)], 0), (grid[(ix + 1, iy)], 2), "K")
    for ix in xs:
        for iy in ys[:-1]:
            out.connect((grid[(ix, iy)], 1), (grid[(ix, iy + 1)], 3), "K")
    for iy in ys:
        port[(n, 0, iy if dbl_h else None)] = (grid[(xs[-1], iy)], 0)
        port[(n, 2, (1 - iy) if dbl_h else None)] = (grid[(0, iy)], 2)
    for ix in xs:
        port[(n, 1, (1 - ix) if dbl_v else None)] = (grid[(ix, ys[-1])], 1)
        port[(n, 3, ix if dbl_v else None)] = (grid[(ix, 0)], 3)


def _twist_arcs(h: HandcuffDiagram) -> dict:
    """For each edge with twists, the arc (as a slot pair) that receives them and its start slot."""
    d = h.diagram
    g = d.to_graph()
    base = len(d.crossings)
    found = {}
    for lab in h.edge_labels:
        m = h.twist_of(lab)
        if not m:
            continue
        if h.n == 2:
            vertex = base + h.attachments[0]
        else:
            vertex = base + h.central
        for p in range(g.deg[vertex]):
            s = (vertex, p)
            if g.label.get(s) == lab:
                found[frozenset((s, g.link[s]))] = (m, s)
                break
    return found


def _insert_twists(out: PlanarGraph, a0, a1, b1, b0, m: int) -> None:
    """Join a0->b1 and a1->b0 with |m| full twists between them.

    Looking along the band from the ``a`` end, copy 0 is on the right.  In a
    positive twist the strand moving from right to left passes over; since the
    two band sides run in opposite directions in the disk-sum knot, both
    crossings of a positive full twist are positive there.
    """
    right, left = a0, a1
    under = 1 if m > 0 else 0
    for _ in range(2 * abs(m)):
        x = out.add_node("X", 4, under)
        # slots: 0 = ahead-left, 1 = behind-left, 2 = behind-right, 3 = ahead-right
        out.connect(right, (x, 2), "K")
        out.connect(left, (x, 1), "K")
        right, left = (x, 3), (x, 0)
    out.connect(right, b1, "K")
    out.connect(left, b0, "K")
