"""Randomized property suites shared by the ``selftest`` command and the test suite.

Every suite takes ``(seed, iters)`` and returns a :class:`SuiteResult`.  All
randomness comes from :func:`generate.rng_for` substreams keyed by the suite
name and trial number, so a run is reproducible from its seed alone.
"""

from __future__ import annotations

import re
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as al
from . import corpus
from . import handcuff as hc
from . import homotopy as ho
from . import invariants as inv
from . import moves as mv
from .diagram import (
    Diagram,
    canonical_code,
    delete_components,
    faces,
    parse,
    serialize,
    split_pieces,
    validate,
)
from .generate import random_braid_closure, random_knot, rng_for

__all__ = ["SuiteResult", "SUITES", "run", "corpus_handcuffs", "reidemeister_walk"]


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, detail: str, *diagrams: Diagram) -> bool:
        self.trials += 1
        if not cond:
            self.failures.append((detail, tuple(serialize(d) for d in diagrams)))
        return cond

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return f"{status} {self.name}: {self.trials} checks, {len(self.failures)} failures{extra}"


def _rng(seed: int, name: str, trial: int):
    return rng_for(seed, zlib.crc32(name.encode()), trial)


def _n_handcuff(d: Diagram) -> int:
    return int(d.kind.split()[1])


def corpus_handcuffs() -> list[tuple[str, hc.HandcuffDiagram]]:
    out = []
    for name in corpus.names():
        d = corpus.load(name)
        if d.kind and d.kind.startswith("handcuff"):
            out.append((name, hc.validate_handcuff(d, _n_handcuff(d))))
    return out


def corpus_links() -> list[tuple[str, Diagram]]:
    return [(n, corpus.load(n)) for n in corpus.names() if not corpus.load(n).vertices]


def reidemeister_walk(d: Diagram, steps: int, seed: int, labels=None) -> Diagram:
    return mv.random_walk(d, mv.REIDEMEISTER, False, steps, seed, labels).diagram


def _rewalk_handcuff(h: hc.HandcuffDiagram, d: Diagram) -> hc.HandcuffDiagram:
    fresh = hc.validate_handcuff(d, h.n)
    return hc.HandcuffDiagram(fresh.diagram, fresh.n, fresh.central, fresh.attachments, h.twists)


# ---------------------------------------------------------------------------
# algebra


def _random_poly(rng, half: bool = False) -> al.LaurentPoly:
    terms = {}
    for _ in range(int(rng.integers(0, 7))):
        e = int(rng.integers(-12, 13))
        terms[e if half else 2 * e] = int(rng.integers(-20, 21))
    return al.LaurentPoly(terms)


def _direct_derivative(p: al.LaurentPoly, k: int) -> Fraction:
    # differentiate coefficient lists k times, then sum at t = 1
    coeffs = {Fraction(e): c for e, c in p.coefficients().items()}
    for _ in range(k):
        coeffs = {e - 1: c * e for e, c in coeffs.items() if c * e}
    return Fraction(sum(coeffs.values()))


def suite_derivative(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("algebra-derivative")
    for t in range(iters):
        rng = _rng(seed, r.name, t)
        p = _random_poly(rng)
        for k in range(5):
            r.check(al.derivative_at_one(p, k) == _direct_derivative(p, k), f"{p} k={k}")
    return r


def suite_residue(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("algebra-residue")
    for t in range(iters):
        rng = _rng(seed, r.name, t)
        a, b = (int(x) for x in rng.integers(-1000, 1001, size=2))
        m = int(rng.integers(-12, 13))
        same = al.residue_of(a, m) == al.residue_of(b, m)
        divides = (a - b) == 0 if m == 0 else (a - b) % m == 0
        r.check(same == divides, f"a={a} b={b} m={m}")
    return r


def suite_substitute(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("algebra-substitute")
    ks = [Fraction(k) for k in (1, -1, 2, -2, 4, -4)] + [Fraction(1, 4), Fraction(-1, 4)]
    for t in range(iters):
        rng = _rng(seed, r.name, t)
        k = ks[int(rng.integers(len(ks)))]
        p = _random_poly(rng)
        if abs(k) < 1:
            # keep k * e a multiple of 1/2
            p = al.substitute_power(p, 2, "t")
        q = al.substitute_power(al.substitute_power(p, k, "u"), 1 / k, "t")
        r.check(q == p, f"{p} k={k}")
    return r


# ---------------------------------------------------------------------------
# diagrams


def suite_roundtrip(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("diagram-roundtrip")
    for name in corpus.names():
        d = corpus.load(name)
        r.check(parse(serialize(d)) == d, name, d)
        r.check(parse(corpus.data_text(name)) == d if _has_data(name) else True, name, d)
    return r


def _has_data(name: str) -> bool:
    try:
        corpus.data_text(name)
    except FileNotFoundError:
        return False
    return True


def _walked_diagrams(seed: int, name: str, iters: int):
    seeds = [d for _, d in corpus_links()] + [h.diagram for _, h in corpus_handcuffs()]
    seeds = [d for d in seeds if len(d.crossings) <= 12]
    for t in range(iters):
        rng = _rng(seed, name, t)
        d = seeds[int(rng.integers(len(seeds)))]
        yield t, mv.random_walk(d, mv.KINDS, False, 6, int(rng.integers(2**31))).diagram


def suite_euler(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("diagram-euler")
    for _, d in _walked_diagrams(seed, r.name, iters):
        nodes = len(d.crossings) + len(d.vertices)
        edges = len(d.label_of)
        loops = len(d.free_loops)
        pieces = split_pieces(d) - loops
        n_faces = len(faces(d)) - 2 * loops
        r.check(nodes - edges + n_faces == 2 * pieces, f"V={nodes} E={edges} F={n_faces} pieces={pieces}", d)
    return r


def suite_delete_components(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("diagram-delete-components")
    for t, d in _walked_diagrams(seed, r.name, iters):
        names = d.label_names()
        rng = _rng(seed, r.name + "-pick", t)
        k = int(rng.integers(1, len(names) + 1))
        drop = [names[int(i)] for i in rng.choice(len(names), size=k, replace=False)]
        out = delete_components(d, drop)
        r.check(not validate(out), f"dropped {drop}: {validate(out)[:1]}", d)
    return r


_NUM = re.compile(r"-?\d+")


def permute_arcs(d: Diagram, rng) -> Diagram:
    """The same diagram with arc ids replaced by a random permutation of fresh ids."""
    arcs = d.arcs
    fresh = [int(x) + 1 for x in rng.permutation(len(arcs) * 3)[: len(arcs)]]
    table = dict(zip(arcs, fresh))
    lines = []
    for line in serialize(d).splitlines():
        head = line.split(" ", 1)[0]
        if head in ("X", "V"):
            lines.append(_NUM.sub(lambda m: _swap(m.group(), table), line))
        elif head == "label":
            name, rest = line[6:].split("=")
            lines.append(f"label {name.strip()} = " + _NUM.sub(lambda m: _swap(m.group(), table), rest).strip())
        else:
            lines.append(line)
    return parse("\n".join(lines) + "\n")


def _swap(token: str, table: dict) -> str:
    v = int(token)
    return str(-table[-v]) if v < 0 else str(table[v])


def suite_canonical(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("diagram-canonical-code")
    for name in corpus.names():
        d = corpus.load(name)
        if not d.arcs:
            continue
        code = canonical_code(d)
        for t in range(iters):
            e = permute_arcs(d, _rng(seed, r.name + name, t))
            r.check(canonical_code(e) == code, name, d, e)
    return r


# ---------------------------------------------------------------------------
# invariants


def _random_link(seed: int, name: str, t: int, max_crossings: int = 12) -> Diagram:
    d, _, _ = random_braid_closure(_rng(seed, name, t), max_crossings)
    return d


def suite_reidemeister(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("invariants-reidemeister")
    for t in range(iters):
        d = _random_link(seed, r.name, t, 8)
        e = reidemeister_walk(d, 20, seed * 7919 + t)
        names = d.label_names()
        same = inv.jones(d) == inv.jones(e) and inv.conway(d) == inv.conway(e)
        same = same and inv.total_linking(d) == inv.total_linking(e)
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                same = same and inv.linking_number(d, a, b) == inv.linking_number(e, a, b)
        r.check(same, "invariant changed along a Reidemeister walk", d, e)
    return r


def _triple(seed: int, name: str, t: int, knot: bool = False):
    rng = _rng(seed, name, t)
    while True:
        d = random_knot(rng) if knot else random_braid_closure(rng)[0]
        if d.crossings:
            return d, inv.skein_triple_at(d, int(rng.integers(len(d.crossings))))


def suite_jones_skein(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("invariants-jones-skein")
    t1 = al.LaurentPoly.monomial(1)
    tm1 = al.LaurentPoly.monomial(-1)
    mid = al.LaurentPoly.monomial(Fraction(-1, 2)) - al.LaurentPoly.monomial(Fraction(1, 2))
    for t in range(iters):
        d, (p, m, z) = _triple(seed, r.name, t)
        lhs = t1 * inv.jones(p) - tm1 * inv.jones(m)
        r.check(lhs == mid * inv.jones(z), "skein identity fails", p, m, z)
    return r


def suite_conway_skein(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("invariants-conway-skein")
    zed = al.LaurentPoly.monomial(1, var="z")
    for t in range(iters):
        d, (p, m, z) = _triple(seed, r.name, t)
        r.check(inv.conway(p) - inv.conway(m) == zed * inv.conway(z), "conway skein fails", p, m, z)
    return r


def _zero_parts(z: Diagram):
    names = z.label_names()
    if len(names) != 2:
        return None
    a, b = names
    lk = inv.linking_number(z, a, b)
    knots = [delete_components(z, [b]), delete_components(z, [a])]
    return lk, knots


def suite_crossing_change_a2(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("lemma-crossing-change-a2")
    for t in range(iters):
        _, (p, m, z) = _triple(seed, r.name, t, knot=True)
        lk, _ = _zero_parts(z)
        r.check(inv.a2(p) - inv.a2(m) == lk, "a2(J+) - a2(J-) != lk(J0)", p, m, z)
    return r


def suite_crossing_change_v3(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("lemma-crossing-change-jones3")
    for t in range(iters):
        _, (p, m, z) = _triple(seed, r.name, t, knot=True)
        lk, (k1, k2) = _zero_parts(z)
        lhs = al.derivative_at_one(inv.jones(p), 3) - al.derivative_at_one(inv.jones(m), 3)
        rhs = 36 * inv.a2(p) + 18 * lk * lk - 36 * (inv.a2(k1) + inv.a2(k2))
        r.check(lhs == rhs, f"V'''(J+) - V'''(J-) = {lhs}, expected {rhs}", p, m, z)
    return r


def suite_jones_oracles(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("invariants-low-derivatives")
    knots = [d for _, d in corpus_links() if len(d.label_names()) == 1]
    for t in range(iters):
        knots.append(random_knot(_rng(seed, r.name, t)))
    for d in knots:
        v = inv.jones(d)
        ok = al.derivative_at_one(v, 1) == 0 and al.derivative_at_one(v, 2) == -6 * inv.a2(d)
        r.check(ok and v.evaluate(1) == 1, "V(1), V'(1) or V''(1) wrong", d)
    return r


def _lemma_sites(d: Diagram):
    """Delta sites in lemma position: strands run alike and the zero link has three components."""
    out = []
    for s in mv.find_sites(d, "delta+"):
        if len({dart[-1] for dart in s.darts}) != 1:
            continue
        z = mv.delta_zero(d, s.darts)
        if len(z.label_names()) == 3:
            out.append((s, z))
    return out


def _delta_trial(seed: int, name: str, t: int):
    rng = _rng(seed, name, t)
    while True:
        # six crossings before the move keeps both sides within twelve
        d = random_knot(rng, 6)
        sites = _lemma_sites(d)
        if sites:
            s, z = sites[int(rng.integers(len(sites)))]
            return d, mv.apply(d, s), z


def suite_delta_a2(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("lemma-delta-a2")
    for t in range(iters):
        minus, plus, z = _delta_trial(seed, r.name, t)
        r.check(inv.a2(plus) - inv.a2(minus) == 1, "a2(K+) - a2(K-) != 1", plus, minus)
    return r


def suite_delta_v3(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("lemma-delta-jones3")
    for t in range(iters):
        minus, plus, z = _delta_trial(seed, r.name, t)
        lhs = al.derivative_at_one(inv.jones(plus), 3) - al.derivative_at_one(inv.jones(minus), 3)
        rhs = 36 * inv.total_linking(z) - 18
        r.check(lhs == rhs, f"V'''(K+) - V'''(K-) = {lhs}, expected {rhs}", plus, minus, z)
    return r


def suite_mu123_borromean(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("lemma-mu123-borromean")
    h = hc.validate_handcuff(corpus.load("handcuff3-borromean"), 3)
    for t in range(iters):
        rng = _rng(seed, r.name, t)
        d = h.diagram
        while True:
            d = reidemeister_walk(h.diagram, 3, int(rng.integers(2**31)))
            if len(hc.sublink(hc.validate_handcuff(d, 3), [1, 2, 3]).crossings) <= 12:
                break
        hw = hc.validate_handcuff(d, 3)
        r.check(abs(inv.mu123(hw)) == 1, "mu123 is not +-1", d)
    return r


# ---------------------------------------------------------------------------
# moves


def suite_delta_inverse(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("moves-delta-inverse")
    for t in range(iters):
        rng = _rng(seed, r.name, t)
        d = random_braid_closure(rng, 8)[0]
        sites = mv.find_sites(d, "delta+")
        if not sites:
            r.skipped += 1
            continue
        e = mv.apply(d, sites[int(rng.integers(len(sites)))])
        code = canonical_code(d)
        back = [canonical_code(mv.apply(e, s)) for s in mv.find_sites(e, "delta-")]
        r.check(code in back, "no delta- site restores the diagram", d, e)
    return r


def suite_delta_linking(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("moves-delta-linking")
    for t in range(iters):
        rng = _rng(seed, r.name, t)
        while True:
            d = random_braid_closure(rng, 8, strands=int(rng.integers(2, 5)))[0]
            names = d.label_names()
            sites = mv.find_sites(d, "delta+")
            if len(names) > 1 and sites:
                break
        e = mv.apply(d, sites[int(rng.integers(len(sites)))])
        same = all(
            inv.linking_number(d, a, b) == inv.linking_number(e, a, b)
            for i, a in enumerate(names)
            for b in names[i + 1 :]
        )
        r.check(same, "delta move changed a linking number", d, e)
    return r


# ---------------------------------------------------------------------------
# handcuffs


def suite_disk_sum_valid(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("handcuff-disk-sum")
    for name, h in corpus_handcuffs():
        for t in range(iters):
            rng = _rng(seed, r.name + name, t)
            d = reidemeister_walk(h.diagram, 3, int(rng.integers(2**31)))
            k = hc.disk_sum(_rewalk_handcuff(h, d))
            r.check(not validate(k) and len(k.label_names()) == 1, name, d, k)
    return r


def suite_mu123_twist(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("handcuff-mu123-twist")
    for name, h in corpus_handcuffs():
        if h.n != 3 or any(ho._algebraically_split(h).values()):
            continue
        base = inv.mu123(h)
        for t in range(iters):
            rng = _rng(seed, r.name + name, t)
            edge = int(rng.integers(1, 4))
            sign = 1 if rng.random() < 0.5 else -1
            r.check(inv.mu123(hc.band_twist(h, edge, sign)) == base, f"{name} edge {edge} sign {sign}", h.diagram)
    return r


def suite_n2_a2_mod_lk(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("handcuff-a2-mod-lk")
    for name, h in corpus_handcuffs():
        if h.n != 2:
            continue
        lk = abs(inv.linking_number(hc.sublink(h, [1, 2]), "g1", "g2"))
        base = al.residue_of(inv.a2(hc.disk_sum(h)), lk)
        for t in range(iters):
            rng = _rng(seed, r.name + name, t)
            h2 = hc.band_twist(h, 1, 1 if rng.random() < 0.5 else -1)
            d = reidemeister_walk(h.diagram, 4, int(rng.integers(2**31)))
            h2 = _rewalk_handcuff(h2, d)
            got = al.residue_of(inv.a2(hc.disk_sum(h2)), lk)
            r.check(got == base, f"{name}: {got} != {base}", d)
    return r


# ---------------------------------------------------------------------------
# homotopy invariants


def homotopy_value(h: hc.HandcuffDiagram):
    """n12 or n123 residue, or None when n123 is undefined."""
    try:
        return (ho.n12(h) if h.n == 2 else ho.n123(h)).reduced
    except ho.HomotopyError:
        return None


def transform(h: hc.HandcuffDiagram, how: str, rng, steps: int = 3) -> hc.HandcuffDiagram:
    """One random transformation that must leave the homotopy invariant unchanged."""
    sub = int(rng.integers(2**31))
    if how == "reidemeister":
        return _rewalk_handcuff(h, reidemeister_walk(h.diagram, steps, sub))
    if how == "twist":
        edge = int(rng.integers(1, h.n + 1))
        return hc.band_twist(h, edge, 1 if rng.random() < 0.5 else -1)
    labels = h.loop_labels if how == "self-delta-loop" else h.edge_labels
    lab = labels[int(rng.integers(len(labels)))]
    d = h.diagram
    if not _self_delta_sites(d, lab):
        # give a short strand enough arcs to carry a self delta site
        d = mv.random_walk(d, ("R1+",), False, 2, sub, {lab}).diagram
    if how == "self-delta-edge":
        steps = 1
    d = mv.random_walk(d, ("delta+", "delta-"), True, steps, sub + 1, {lab}).diagram
    return _rewalk_handcuff(h, d)


def _self_delta_sites(d: Diagram, lab: str) -> list:
    sites = mv.find_sites(d, "delta+") + mv.find_sites(d, "delta-")
    return [s for s in sites if mv._site_labels(d, s) == {lab}]


TRANSFORMS = ("reidemeister", "twist", "self-delta-loop", "self-delta-edge")


def suite_homotopy_invariance(seed: int, iters: int, names=None, transforms=TRANSFORMS) -> SuiteResult:
    """``iters`` trials of each transformation on every corpus handcuff where the invariant is defined."""
    r = SuiteResult("homotopy-invariance")
    for name, h in corpus_handcuffs():
        if names is not None and name not in names:
            continue
        base = homotopy_value(h)
        if base is None:
            r.skipped += 1
            continue
        for how in transforms:
            for t in range(iters):
                rng = _rng(seed, r.name + name + how, t)
                h2 = transform(h, how, rng)
                got = homotopy_value(h2)
                r.check(got == base, f"{name} after {how}: {got} != {base}", h2.diagram)
    return r


def suite_twist_sensitivity(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("homotopy-twist-sensitivity")
    for name, h in corpus_handcuffs():
        if h.n != 2 or not hc.orientations_coherent(h):
            continue
        lk = inv.linking_number(hc.sublink(h, [1, 2]), "g1", "g2")
        base = ho.n12(h).raw
        for t in range(iters):
            rng = _rng(seed, r.name + name, t)
            k = int(rng.integers(-3, 4))
            h2 = h
            for _ in range(abs(k)):
                h2 = hc.band_twist(h2, 1, 1 if k > 0 else -1)
            r.check(ho.n12(h2).raw - base == lk * k, f"{name}: {k} twists", h.diagram)
    return r


def suite_forget_symmetry(seed: int, iters: int) -> SuiteResult:
    r = SuiteResult("homotopy-forget-symmetry")
    keys = {3: "v3(K12)", 2: "v3(K13)", 1: "v3(K23)"}
    for name, h in corpus_handcuffs():
        if h.n != 3 or len(h.diagram.crossings) > 30:
            continue
        try:
            rep = ho.n123(h)
        except ho.HomotopyError as exc:
            rep = exc
        if not rep.ingredients:
            r.skipped += 1
            continue
        for k in (3, 2, 1):
            h2 = hc.validate_handcuff(parse(serialize(hc.delete_loop(h, k).diagram)), 2)
            got = inv.v3(hc.disk_sum(h2))
            r.check(got == rep.ingredients[keys[k]], f"{name} forget {k}", h2.diagram)
    return r


SUITES = {
    f.__name__[len("suite_") :]: f
    for f in (
        suite_derivative,
        suite_residue,
        suite_substitute,
        suite_roundtrip,
        suite_euler,
        suite_delete_components,
        suite_canonical,
        suite_reidemeister,
        suite_jones_skein,
        suite_conway_skein,
        suite_crossing_change_a2,
        suite_crossing_change_v3,
        suite_jones_oracles,
        suite_delta_a2,
        suite_delta_v3,
        suite_mu123_borromean,
        suite_delta_inverse,
        suite_delta_linking,
        suite_disk_sum_valid,
        suite_mu123_twist,
        suite_n2_a2_mod_lk,
        suite_homotopy_invariance,
        suite_twist_sensitivity,
        suite_forget_symmetry,
    )
}


def run(seed: int = 0, iters: int = 3, only=None) -> list[SuiteResult]:
    """Run the named suites (all by default) in a fixed order."""
    out = []
    for name, fn in SUITES.items():
        if only and name not in only:
            continue
        out.append(fn(seed, iters))
    return out
