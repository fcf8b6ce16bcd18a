"""Random diagrams for property tests: closures of random braid words."""

from __future__ import annotations

import numpy as np

from .diagram import Diagram
from .morse import Morse

__all__ = ["rng_for", "braid_closure", "random_braid_closure", "random_knot"]


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Counter-based generator; ``stream`` selects an independent substream."""
    key = [seed & 0xFFFFFFFFFFFFFFFF, 0]
    for s in stream:
        key[1] = (key[1] * 1_000_003 + s + 1) & 0xFFFFFFFFFFFFFFFF
    return np.random.Generator(np.random.Philox(key=key))


def _cycles(strands: int, word) -> list[int]:
    perm = list(range(strands))
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    # perm[pos] = top strand now at pos; top strand s closes to bottom position s
    owner = list(range(strands))
    for _ in range(strands):
        changed = False
        for pos, s in enumerate(perm):
            lo = min(owner[pos], owner[s])
            if owner[pos] != lo or owner[s] != lo:
                owner[pos] = owner[s] = lo
                changed = True
        if not changed:
            break
    return owner


def braid_closure(strands: int, word, labels: str = "ABCDEFGH") -> Diagram:
    """Closure of a braid word; generator ``i`` crosses strands i-1 and i, positive when ``i > 0``."""
    owner = _cycles(strands, word)
    names = sorted(set(owner))
    label = {s: labels[names.index(owner[s])] for s in range(strands)}
    m = Morse()
    seen = set()
    for s in range(strands):
        lab = label[s]
        m.birth(s, lab, None if lab in seen else 1)
        seen.add(lab)
    for g in word:
        m.cross(abs(g) - 1, "R" if g > 0 else "L")
    for s in reversed(range(strands)):
        m.death(s)
    return m.to_diagram(kind=None)


def random_braid_closure(rng: np.random.Generator, max_crossings: int = 12, strands: int | None = None):
    """A random braid closure with at most ``max_crossings`` crossings."""
    if strands is None:
        strands = int(rng.integers(2, 5))
    length = int(rng.integers(1, max_crossings + 1))
    word = []
    for _ in range(length):
        g = int(rng.integers(1, strands))
        word.append(g if rng.random() < 0.5 else -g)
    return braid_closure(strands, word), strands, word


def random_knot(rng: np.random.Generator, max_crossings: int = 12) -> Diagram:
    """A random one-component braid closure."""
    while True:
        d, _, _ = random_braid_closure(rng, max_crossings)
        if len(d.label_names()) == 1:
            return d
