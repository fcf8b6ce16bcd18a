"""Build diagrams from top-to-bottom slice words.

Strands sit at integer positions left to right.  Events consume and create
strands at a position: ``birth`` (a local maximum), ``death`` (a local
minimum), ``cross`` and ``vertex``.  Rotation systems follow from the picture,
so any event sequence yields a planar diagram.
"""

from __future__ import annotations

from .diagram import Diagram, DiagramError, PlanarGraph

__all__ = ["Morse"]


class Morse:
    """Incremental slice-word builder.

    >>> m = Morse()
    >>> m.birth(0, "K").birth(2, "K")
    ... # doctest: +ELLIPSIS
    <...>
    """

    def __init__(self):
        self.g = PlanarGraph()
        self.strands: list[tuple[tuple[int, int], str]] = []

    def __repr__(self):
        return f"<Morse {len(self.strands)} open strands>"

    @property
    def width(self) -> int:
        return len(self.strands)

    def _attach(self, pos: int, slot, label: str | None = None) -> str:
        pending, lab = self.strands[pos]
        if label is not None and label != lab:
            raise DiagramError(f"strand at {pos} is {lab!r}, expected {label!r}")
        self.g.connect(pending, slot, lab)
        return lab

    def birth(self, i: int, label: str, orient: int | None = None) -> "Morse":
        """New cap-shaped strand pair at positions ``i, i+1``.

        ``orient=+1`` runs up the left strand and down the right one; leave it
        None when another event already fixes the component's direction.
        """
        n = self.g.add_node("P", 2)
        if orient is not None:
            self.g.out[(n, 0)] = orient < 0
            self.g.out[(n, 1)] = orient > 0
        self.strands[i:i] = [((n, 0), label), ((n, 1), label)]
        return self

    def death(self, i: int) -> "Morse":
        """Join strands ``i`` and ``i+1`` with a cup."""
        if self.strands[i][1] != self.strands[i + 1][1]:
            raise DiagramError("death joins strands with different labels")
        n = self.g.add_node("P", 2)
        self._attach(i, (n, 0))
        self._attach(i + 1, (n, 1))
        del self.strands[i : i + 2]
        return self

    def cross(self, i: int, over: str = "L") -> "Morse":
        """Strands ``i`` and ``i+1`` cross; ``over`` names the strand coming from the top left ("L") or right ("R") as the over-strand."""
        if over not in ("L", "R"):
            raise ValueError("over must be 'L' or 'R'")
        # slots counterclockwise from east: TR, TL, BL, BR
        n = self.g.add_node("X", 4, under=0 if over == "L" else 1)
        lab_l = self._attach(i, (n, 1))
        lab_r = self._attach(i + 1, (n, 0))
        self.strands[i] = ((n, 2), lab_r)
        self.strands[i + 1] = ((n, 3), lab_l)
        return self

    def crosses(self, word) -> "Morse":
        """Apply ``(i, over)`` pairs in order; ints mean ``(i, "L")``."""
        for w in word:
            if isinstance(w, int):
                self.cross(w)
            else:
                self.cross(*w)
        return self

    def vertex(self, i: int, above: int, below: list[str], outs: list[bool | None] | None = None, labels_above: list[str] | None = None) -> int:
        """Vertex consuming ``above`` strands from ``i`` and emitting ``below`` labels.

        ``outs`` gives, for the ends left to right (above ones first), whether
        the arc there leaves the vertex.  Returns the node id.
        """
        k = above + len(below)
        n = self.g.add_node("V", k)
        # counterclockwise from east: above ends right-to-left, then below ends left-to-right
        above_slots = [(n, above - 1 - j) for j in range(above)]
        below_slots = [(n, above + j) for j in range(len(below))]
        for j in range(above):
            want = labels_above[j] if labels_above else None
            self._attach(i + j, above_slots[j], want)
        del self.strands[i : i + above]
        self.strands[i:i] = [(s, lab) for s, lab in zip(below_slots, below)]
        if outs is not None:
            for s, o in zip(above_slots + below_slots, outs):
                if o is not None:
                    self.g.out[s] = o
        return n

    def to_graph(self) -> PlanarGraph:
        if self.strands:
            raise DiagramError(f"{len(self.strands)} strands left open")
        g = self.g.copy()
        g.propagate_orientation()
        return g

    def to_diagram(self, kind: str | None = None) -> Diagram:
        return self.to_graph().to_diagram(kind=kind)
