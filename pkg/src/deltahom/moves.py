"""Local rewrites of diagrams: Reidemeister moves, delta tangles, crossing switches.

Insertions work on darts of a face (an arc together with the side facing the
face).  Each chosen dart is cut and routed through a small tangle that lies
inside the face; the tangle is described by the slots each strand uses at
each new crossing, listed in counterclockwise order around the new node.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

from .diagram import Diagram, DiagramError, PlanarGraph, faces, serialize, validate

__all__ = [
    "KINDS",
    "MoveError",
    "MoveSite",
    "Tangle",
    "DELTA_TANGLE",
    "WalkResult",
    "find_sites",
    "apply",
    "is_self_site",
    "random_walk",
    "delta_zero",
    "revision",
]

KINDS = ("R1+", "R1-", "R2+", "R2-", "R3", "delta+", "delta-", "switch")
REIDEMEISTER = frozenset({"R1+", "R1-", "R2+", "R2-", "R3"})


class MoveError(ValueError):
    """A site that does not belong to the diagram it is applied to."""


@dataclass(frozen=True)
class Tangle:
    """Crossings placed inside a face.

    ``paths[i]`` lists ``(node, in_slot, out_slot)`` visits of the i-th strand
    in the direction of its dart; ``over[k]`` is the strand passing over node k.
    """

    n_nodes: int
    paths: tuple
    over: tuple

    def under_parity(self) -> tuple[int, ...]:
        out = []
        for k in range(self.n_nodes):
            s = self.over[k]
            slot = next(i for node, i, _ in self.paths[s] if node == k)
            out.append(1 - slot % 2)
        return tuple(out)

    def mirrored(self) -> "Tangle":
        """Same strands, every crossing switched."""
        partner = {}
        for s, path in enumerate(self.paths):
            for node, _, _ in path:
                partner.setdefault(node, set()).add(s)
        over = tuple(next(iter(partner[k] - {self.over[k]})) for k in range(self.n_nodes))
        return Tangle(self.n_nodes, self.paths, over)

    def internal_links(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        links = []
        for path in self.paths:
            for (n1, _, o1), (n2, i2, _) in zip(path, path[1:]):
                links.append(((n1, o1), (n2, i2)))
        return links


# Three fingers pushed into a face, tips overlapping like three circles of a
# Venn diagram; finger i passes under finger i+1 at both of their crossings.
DELTA_TANGLE = Tangle(
    6,
    (
        ((3, 2, 0), (1, 2, 0), (2, 1, 3), (0, 1, 3)),
        ((0, 0, 2), (5, 3, 1), (1, 3, 1), (4, 2, 0)),
        ((4, 1, 3), (2, 0, 2), (5, 0, 2), (3, 3, 1)),
    ),
    (1, 1, 0, 0, 2, 2),
)

# A finger of the first strand pushed across the second.
_BIGON = ((((0, 0, 2), (1, 0, 2)), ((1, 3, 1), (0, 1, 3))))

# A kink on the left of the strand: in at slot 3, loop from 1 to 2, out at 0.
_KINK = (((0, 3, 1), (0, 2, 0)),)


@dataclass(frozen=True)
class MoveSite:
    """A rewrite located on a particular diagram.

    ``location`` is a face index (for face moves) or a tuple of crossing
    indices; ``darts`` are the ``(arc, forward)`` pairs involved; ``params``
    holds options such as a kink sign or which strand goes over.
    """

    kind: str
    location: tuple
    darts: tuple = ()
    params: tuple = ()
    revision: str = field(default="", compare=True)

    def param(self, name, default=None):
        return dict(self.params).get(name, default)


class WalkResult(NamedTuple):
    diagram: Diagram
    applied: int


def revision(d: Diagram) -> str:
    """Fingerprint of the exact diagram a site was found on."""
    key = d._cache.get("revision")
    if key is None:
        key = hashlib.sha1(serialize(d).encode()).hexdigest()[:16]
        d._cache["revision"] = key
    return key


# ---------------------------------------------------------------------------
# helpers


def _node_ids(d: Diagram) -> dict:
    ids = {("X", i): i for i in range(len(d.crossings))}
    base = len(d.crossings)
    for j in range(len(d.vertices)):
        ids[("V", j)] = base + j
    return ids


def _dart_label(d: Diagram, dart) -> str:
    if dart[0] == "O":
        return dart[1]
    return d.label_of[dart[0]]


def _cut_dart(g: PlanarGraph, d: Diagram, ids: dict, dart):
    """Detach the arc under ``dart``; return its start slot, end slot, label and direction flag."""
    if dart[0] == "O":
        _, lab, fw = dart
        g.free_loops.remove(lab)
        p = g.add_node("P", 2)
        return (p, 0), (p, 1), lab, fw
    arc, fw = dart
    e = d.ends_index()[arc]
    tail = (ids[e["tail"][0]], e["tail"][1])
    head = (ids[e["head"][0]], e["head"][1])
    lab = g.label[tail]
    for s in (tail, head):
        g.link.pop(s, None)
        g.out.pop(s, None)
        g.label.pop(s, None)
    return (tail, head, lab, True) if fw else (head, tail, lab, False)


def _insert(d: Diagram, darts, paths, under) -> Diagram:
    g = d.to_graph()
    ids = _node_ids(d)
    cuts = [_cut_dart(g, d, ids, dart) for dart in darts]
    nodes = [g.add_node("X", 4, u) for u in under]
    for (start, end, lab, fw), path in zip(cuts, paths):
        prev = start
        for node, i, o in path:
            g.connect(prev, (nodes[node], i), lab, fw)
            prev = (nodes[node], o)
        g.connect(prev, end, lab, fw)
    return g.to_diagram(kind=d.kind)


def _corner(d: Diagram, ids: dict, dart):
    """Node and slot where ``dart`` ends."""
    arc, fw = dart
    node, p = d.ends_index()[arc]["head" if fw else "tail"]
    return node, p


def _start(d: Diagram, dart):
    arc, fw = dart
    return d.ends_index()[arc]["tail" if fw else "head"]


def _is_under(d: Diagram, node, p) -> bool:
    if node[0] != "X":
        return False
    # tuple position 0/2 is the under strand
    return p % 2 == 0


# ---------------------------------------------------------------------------
# site discovery


def _face_list(d: Diagram):
    if "faces" not in d._cache:
        d._cache["faces"] = faces(d)
    return d._cache["faces"]


def _distinct_dart_positions(face) -> list[int]:
    seen = set()
    out = []
    for k, dart in enumerate(face):
        key = dart[:2] if dart[0] == "O" else dart[0]
        if key in seen:
            continue
        seen.add(key)
        out.append(k)
    return out


def _arc_repeats(face) -> set:
    count: dict = {}
    for dart in face:
        key = dart[:2] if dart[0] == "O" else dart[0]
        count[key] = count.get(key, 0) + 1
    return {k for k, c in count.items() if c > 1}


def find_sites(d: Diagram, kind: str) -> list[MoveSite]:
    """All places where a move of ``kind`` applies, in a deterministic order."""
    if kind not in KINDS:
        raise ValueError(f"unknown move kind {kind!r}")
    rev = revision(d)
    fs = _face_list(d)
    out: list[MoveSite] = []
    if kind == "switch":
        return [MoveSite("switch", (i,), (), (), rev) for i in range(len(d.crossings))]
    if kind == "R1+":
        for fi, face in enumerate(fs):
            for dart in face:
                for sign in (1, -1):
                    out.append(MoveSite(kind, (fi,), (dart,), (("sign", sign),), rev))
        return out
    if kind == "R2+":
        for fi, face in enumerate(fs):
            pos = [k for k in _distinct_dart_positions(face) if _key(face[k]) not in _arc_repeats(face)]
            for a, b in combinations(pos, 2):
                for pusher in (0, 1):
                    for over in (0, 1):
                        out.append(
                            MoveSite(kind, (fi,), (face[a], face[b]), (("pusher", pusher), ("over", over)), rev)
                        )
        return out
    if kind == "delta+":
        for fi, face in enumerate(fs):
            pos = [k for k in _distinct_dart_positions(face) if _key(face[k]) not in _arc_repeats(face)]
            for trip in combinations(pos, 3):
                out.append(MoveSite(kind, (fi,), tuple(face[k] for k in trip), (), rev))
        return out
    if kind == "R1-":
        for fi, face in enumerate(fs):
            if len(face) != 1 or face[0][0] == "O":
                continue
            arc = face[0][0]
            e = d.ends_index()[arc]
            if e["tail"][0] == e["head"][0] and e["tail"][0][0] == "X":
                out.append(MoveSite(kind, (e["tail"][0][1],), tuple(face), (), rev))
        return out
    if kind == "R2-":
        for fi, face in enumerate(fs):
            if len(face) != 2 or face[0][0] == "O":
                continue
            n1, p1 = _corner(d, None, face[0])
            n2, p2 = _corner(d, None, face[1])
            if n1[0] != "X" or n2[0] != "X" or n1 == n2:
                continue
            # arc of face[0] runs n2 -> n1; check it is on the same level at both ends
            q1 = _start(d, face[0])
            if q1[0] != n2:
                continue
            if _is_under(d, n1, p1) != _is_under(d, n2, q1[1]):
                continue
            out.append(MoveSite(kind, (n1[1], n2[1]), tuple(face), (), rev))
        return out
    if kind == "R3":
        for fi, face in enumerate(fs):
            if len(face) != 3 or face[0][0] == "O":
                continue
            corners = [_corner(d, None, dart) for dart in face]
            nodes = [c[0] for c in corners]
            if any(n[0] != "X" for n in nodes) or len(set(nodes)) != 3:
                continue
            if len({dart[0] for dart in face}) != 3:
                continue
            starts = [_start(d, dart) for dart in face]
            ok = False
            for i in range(3):
                s = starts[i]
                if not _is_under(d, s[0], s[1]) and not _is_under(d, *corners[i]):
                    ok = True
            if ok:
                out.append(MoveSite(kind, (fi,), tuple(face), (), rev))
        return out
    if kind == "delta-":
        for nodes in _match_tangle(d, DELTA_TANGLE):
            out.append(MoveSite(kind, tuple(nodes), (), (), rev))
        return out
    raise AssertionError(kind)


def _key(dart):
    return dart[:2] if dart[0] == "O" else dart[0]


def _match_tangle(d: Diagram, tangle: Tangle) -> list[tuple[int, ...]]:
    """Crossing index tuples (template order) where ``tangle`` occurs as a sub-map."""
    under = tangle.under_parity()
    adj: dict[tuple[int, int], tuple[int, int]] = {}
    for a, b in tangle.internal_links():
        adj[a] = b
        adj[b] = a
    ends = d.ends_index()
    xs = d.crossings

    def neighbour(i, p):
        arc = xs[i].ends[p]
        e = ends[arc]
        here = (("X", i), p)
        other = e["head"] if e["tail"] == here else e["tail"]
        return other

    found = []
    seen = set()
    for anchor in range(len(xs)):
        for r in range(4):
            if (under[0] + r) % 2 != 0:
                continue
            phi = {0: (anchor, r)}
            stack = [0]
            ok = True
            while stack and ok:
                k = stack.pop()
                i, rk = phi[k]
                for p in range(4):
                    if (k, p) not in adj:
                        continue
                    k2, p2 = adj[(k, p)]
                    node, q = neighbour(i, (p + rk) % 4)
                    if node[0] != "X":
                        ok = False
                        break
                    j = node[1]
                    r2 = (q - p2) % 4
                    if k2 in phi:
                        if phi[k2] != (j, r2):
                            ok = False
                            break
                        continue
                    if (under[k2] + r2) % 2 != 0:
                        ok = False
                        break
                    if any(v[0] == j for v in phi.values()):
                        ok = False
                        break
                    phi[k2] = (j, r2)
                    stack.append(k2)
            if ok and len(phi) == tangle.n_nodes:
                nodes = tuple(phi[k][0] for k in range(tangle.n_nodes))
                key = frozenset(nodes)
                if key not in seen:
                    seen.add(key)
                    found.append(nodes)
    return found


# ---------------------------------------------------------------------------
# application


def apply(d: Diagram, s: MoveSite) -> Diagram:
    """Perform the rewrite described by ``s``; the result is validated."""
    if s.revision != revision(d):
        raise MoveError("stale site: it was found on a different diagram")
    kind = s.kind
    if kind == "switch":
        (i,) = s.location
        result = d.to_graph().switched([i]).to_diagram(kind=d.kind)
    elif kind == "R1+":
        under = 1 if s.param("sign") > 0 else 0
        result = _insert(d, s.darts, _KINK, (under,))
    elif kind == "R2+":
        a, b = s.darts
        if s.param("pusher") == 1:
            a, b = b, a
        # strand a pushes a finger across b; ``over`` 0 puts a on top
        under = (1, 1) if s.param("over") == 0 else (0, 0)
        result = _insert(d, (a, b), _BIGON, under)
    elif kind == "delta+":
        result = _insert(d, s.darts, DELTA_TANGLE.paths, DELTA_TANGLE.under_parity())
    elif kind in ("R1-", "R2-", "delta-"):
        g = d.to_graph()
        for i in s.location:
            g.splice_out(i, [(0, 2), (1, 3)])
        result = g.to_diagram(kind=d.kind)
    elif kind == "R3":
        result = _apply_r3(d, s.darts)
    else:
        raise ValueError(f"unknown move kind {kind!r}")
    problems = validate(result)
    if problems:
        raise DiagramError(f"{kind} produced an invalid diagram: {problems[0]}")
    return result


def _apply_r3(d: Diagram, darts) -> Diagram:
    g = d.to_graph()
    ids = _node_ids(d)
    corner = [_corner(d, ids, dart) for dart in darts]
    N = [ids[c[0]] for c in corner]
    P = [c[1] for c in corner]
    labels = [d.label_of[dart[0]] for dart in darts]
    M = [g.add_node("X", 4, g.under[n]) for n in N]

    def port_a(i):  # strand i enters the triangle here (old slot)
        return (N[(i - 1) % 3], (P[(i - 1) % 3] + 1) % 4)

    def port_b(i):  # strand i leaves the triangle here (old slot)
        return (N[i], (P[i] + 2) % 4)

    new_of_port = {}
    for i in range(3):
        new_of_port[port_a(i)] = (M[i], P[i])
        new_of_port[port_b(i)] = (M[(i - 1) % 3], (P[(i - 1) % 3] - 1) % 4)
    ext = {}
    for old, new in new_of_port.items():
        t = g.link[old]
        ext[new] = (new_of_port.get(t, t), g.out[old], g.label[old])
    for n in N:
        g.remove_node(n)
    for new, (t, o, lab) in ext.items():
        g.connect(new, t, lab, o)
    for i in range(3):
        j = (i - 1) % 3
        g.connect((M[i], (P[i] + 2) % 4), (M[j], (P[j] + 1) % 4), labels[i])
    g.propagate_orientation()
    return g.to_diagram(kind=d.kind)


def is_self_site(d: Diagram, s: MoveSite) -> bool:
    """True when all strands of a delta site carry one label."""
    if s.kind == "delta+":
        return len({_dart_label(d, dart) for dart in s.darts}) == 1
    if s.kind == "delta-":
        return len(_site_labels(d, s)) == 1
    raise MoveError("is_self_site needs a delta site")


def _site_labels(d: Diagram, s: MoveSite) -> set[str]:
    if s.kind == "switch":
        x = d.crossings[s.location[0]]
        return {d.label_of[x.a], d.label_of[x.b]}
    if s.kind in ("R1-", "R2-", "delta-"):
        labs = set()
        for i in s.location:
            labs |= {d.label_of[a] for a in d.crossings[i].ends}
        return labs
    return {_dart_label(d, dart) for dart in s.darts}


def delta_zero(d: Diagram, darts) -> Diagram:
    """Three-strand smoothing paired with a delta site.

    The three darts are replaced by the planar reconnection joining the end of
    each strand to the start of the next one in face order.  The strands must
    run the same way around the face.
    """
    if len({dart[-1] for dart in darts}) != 1:
        raise DiagramError("zero link needs the three strands oriented alike around the face")
    g = d.to_graph()
    ids = _node_ids(d)
    cuts = [_cut_dart(g, d, ids, dart) for dart in darts]
    for i in range(3):
        start_next = cuts[(i + 1) % 3][0]
        end_here = cuts[i][1]
        _, _, lab, fw = cuts[(i + 1) % 3]
        g.connect(start_next, end_here, lab, fw)
    result = g.to_diagram(kind=None)
    from .invariants import relabel_by_strands

    return relabel_by_strands(result)


# ---------------------------------------------------------------------------
# random walks


def random_walk(
    d: Diagram,
    allowed: Iterable[str],
    self_only: bool = False,
    steps: int = 1,
    seed: int = 0,
    labels: Iterable[str] | None = None,
) -> WalkResult:
    """Apply ``steps`` uniformly chosen moves; deterministic for a given seed.

    ``labels`` restricts moves to sites whose strands all carry those labels.
    With ``self_only`` delta sites must involve a single label.
    """
    allowed = [k for k in KINDS if k in set(allowed)]
    label_set = None if labels is None else set(labels)
    rng = np.random.Generator(np.random.Philox(seed))
    applied = 0
    for _ in range(steps):
        sites: list[MoveSite] = []
        for kind in allowed:
            for s in find_sites(d, kind):
                if self_only and kind.startswith("delta") and not is_self_site(d, s):
                    continue
                if label_set is not None and not _site_labels(d, s) <= label_set:
                    continue
                sites.append(s)
        if not sites:
            break
        s = sites[int(rng.integers(len(sites)))]
        d = apply(d, s)
        applied += 1
    return WalkResult(d, applied)
