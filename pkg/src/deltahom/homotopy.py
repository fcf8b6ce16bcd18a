"""Delta edge-homotopy invariants of spatial handcuff graphs.

Each function returns a :class:`HomotopyReport` holding the unreduced value,
the modulus it is taken over, the reduced residue and every ingredient
invariant, so callers can audit how the number was assembled.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import handcuff as hc
from .algebra import Residue, residue_of
from .invariants import InvariantError, a2, linking_number, mu123, v3

__all__ = ["HomotopyError", "HomotopyReport", "n12", "n123", "n_general"]


class HomotopyError(ValueError):
    """The invariant is undefined for this handcuff."""

    def __init__(self, message: str, ingredients: dict | None = None):
        super().__init__(message)
        self.ingredients = ingredients or {}


@dataclass(frozen=True)
class HomotopyReport:
    raw: int | Fraction
    modulus: int
    reduced: Residue
    ingredients: dict = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        return str(self.reduced)


def _report(raw, modulus: int, ingredients: dict) -> HomotopyReport:
    if isinstance(raw, Fraction):
        if raw.denominator != 1:
            raise HomotopyError(f"raw value {raw} is not an integer", ingredients)
        raw = int(raw)
    return HomotopyReport(raw, abs(modulus), residue_of(raw, abs(modulus)), ingredients)


def n12(h: hc.HandcuffDiagram) -> HomotopyReport:
    """a2 of the disk sum minus a2 of both loops, modulo the loops' linking number."""
    if h.n != 2:
        raise HomotopyError("n12 needs a 2-handcuff")
    k12 = a2(hc.disk_sum(h))
    knots = [a2(hc.constituent_knot(h, i)) for i in (1, 2)]
    lk = linking_number(hc.sublink(h, [1, 2]), *h.loop_labels)
    ingredients = {"a2(K12)": k12, "a2(g1)": knots[0], "a2(g2)": knots[1], "lk": lk}
    return _report(k12 - sum(knots), lk, ingredients)


def _algebraically_split(h: hc.HandcuffDiagram) -> dict[tuple[int, int], int]:
    link = hc.sublink(h, range(1, h.n + 1))
    labs = h.loop_labels
    return {
        (i + 1, j + 1): linking_number(link, labs[i], labs[j])
        for i in range(h.n)
        for j in range(i + 1, h.n)
    }


def _n123_parts(h: hc.HandcuffDiagram) -> list:
    return [hc.disk_sum(h)] + [hc.disk_sum(hc.delete_loop(h, k)) for k in (3, 2, 1)] + [
        hc.constituent_knot(h, i) for i in (1, 2, 3)
    ]


def n123(h: hc.HandcuffDiagram, jobs: int = 1) -> HomotopyReport:
    """v3 combination of the disk sums of all loop subsets, modulo mu123.

    The three two-loop disk sums come from deleting one loop of ``h`` so that
    all of them use the same disk.  ``jobs > 1`` evaluates the seven v3 values
    in worker processes.
    """
    if h.n != 3:
        raise HomotopyError("n123 needs a 3-handcuff")
    lks = _algebraically_split(h)
    if any(lks.values()):
        raise HomotopyError("not algebraically split")
    parts = _n123_parts(h)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            vals = list(pool.map(v3, parts))
    else:
        vals = [v3(p) for p in parts]
    k123, k12, k13, k23, g1, g2, g3 = vals
    try:
        mu = mu123(h)
    except InvariantError as exc:
        raise HomotopyError(str(exc)) from exc
    raw = -k123 + (k12 + k13 + k23) - (g1 + g2 + g3)
    ingredients = {
        "v3(K123)": k123,
        "v3(K12)": k12,
        "v3(K13)": k13,
        "v3(K23)": k23,
        "v3(g1)": g1,
        "v3(g2)": g2,
        "v3(g3)": g3,
        "mu123": mu,
    }
    return _report(raw, mu, ingredients)


def n_general(h: hc.HandcuffDiagram) -> HomotopyReport:
    """a2 of the full disk sum minus the loops' a2, modulo gcd of each loop's linking with the rest."""
    total = a2(hc.disk_sum(h))
    knots = [a2(hc.constituent_knot(h, i)) for i in range(1, h.n + 1)]
    lks = _algebraically_split(h)
    modulus = 0
    for i in range(1, h.n + 1):
        with_rest = sum(v for (a, b), v in lks.items() if i in (a, b))
        modulus = gcd(modulus, abs(with_rest))
    ingredients = {"a2(K)": total, "lk": lks}
    for i, v in enumerate(knots, start=1):
        ingredients[f"a2(g{i})"] = v
    return _report(total - sum(knots), modulus, ingredients)
