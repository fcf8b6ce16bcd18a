"""Acceptance criteria, one test per criterion.

A summary line per criterion is printed at the end of the pytest run; run
this file directly to see only those lines.
"""

import sys
import time

import pytest

from deltahom import corpus
from deltahom import handcuff as hc
from deltahom import homotopy as ho
from deltahom import invariants as inv
from deltahom import selftest as st
from deltahom.algebra import LaurentPoly, Residue, derivative_at_one

# coefficients of the target disk-sum polynomial for the boundary 3-handcuff,
# exponent -> coefficient
TARGET_JONES = {
    -12: -1, -11: 6, -10: -11, -9: 1, -8: 28, -7: -52, -6: 36, -5: 17, -4: -61,
    -3: 67, -2: -43, -1: 11, 0: 22, 1: -57, 2: 84, 3: -78, 4: 32, 5: 23, 6: -43,
    7: 24, 9: -4, 10: -4, 11: 5, 12: 1, 13: -3, 14: 1,
}


def _handcuff(name):
    d = corpus.load(name)
    return hc.validate_handcuff(d, int(d.kind.split()[1]))


def _timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def test_criterion_1_slice_2handcuff_family():
    for m in (1, 2, 3):
        h = _handcuff(f"slice2-m{m}")
        (a2, rep), secs = _timed(lambda: (inv.a2(hc.disk_sum(h)), ho.n12(h)))
        assert a2 == 2 * m, f"m={m}: a2 of disk sum {a2}"
        assert rep.reduced == Residue(2 * m, 0), f"m={m}: n12 {rep.reduced}"
        assert secs < 10, f"m={m}: {secs:.1f}s"


def test_criterion_2_boundary_2handcuff_family():
    for m in (1, 2, 3):
        h = _handcuff(f"boundary2-m{m}")
        (a2, rep), secs = _timed(lambda: (inv.a2(hc.disk_sum(h)), ho.n12(h)))
        assert a2 == -2 * m, f"m={m}: a2 of disk sum {a2}"
        assert rep.reduced == Residue(-2 * m, 0), f"m={m}: n12 {rep.reduced}"
        assert secs < 10, f"m={m}: {secs:.1f}s"


def test_criterion_3_slice_3handcuff_family():
    for m in (1, 2):
        h = _handcuff(f"slice3-m{m}")
        t = time.perf_counter()
        rep = ho.n123(h)
        a2 = inv.a2(hc.disk_sum(h))
        general = ho.n_general(h)
        secs = time.perf_counter() - t
        assert rep.reduced == Residue(m, 0), f"m={m}: n123 {rep.reduced}"
        assert a2 == 0, f"m={m}: a2 of the three-loop disk sum {a2}"
        assert general.reduced == Residue(0, 0), f"m={m}: generalized invariant {general.reduced}"
        assert secs < 60, f"m={m}: {secs:.1f}s"


def test_criterion_4_boundary_3handcuff():
    h = _handcuff("boundary3")
    t = time.perf_counter()
    k = hc.disk_sum(h)
    v = inv.jones(k)
    rep = ho.n123(h)
    a2 = inv.a2(k)
    secs = time.perf_counter() - t
    problems = []
    if v != LaurentPoly.from_exponents(TARGET_JONES):
        problems.append(f"Jones polynomial of the disk sum is {v}")
    if derivative_at_one(v, 3) != 36:
        problems.append(f"V'''(1) = {derivative_at_one(v, 3)}")
    if a2 != 0:
        problems.append(f"a2 = {a2}")
    if rep.reduced != Residue(-1, 0):
        problems.append(f"n123 = {rep.reduced}")
    if secs > 600:
        problems.append(f"{secs:.0f}s")
    assert not problems, "; ".join(problems)


LEMMA_TRIALS = 200


def test_criterion_5_lemma_suites():
    t = time.perf_counter()
    names = ["crossing_change_a2", "crossing_change_v3", "delta_a2", "delta_v3", "mu123_borromean"]
    failed = []
    for name in names:
        res = st.SUITES[name](seed=5, iters=LEMMA_TRIALS)
        if not res.ok or res.trials != LEMMA_TRIALS:
            failed.append(f"{res.name}: {len(res.failures)} failures")
    secs = time.perf_counter() - t
    assert not failed, "; ".join(failed)
    assert secs < 300, f"{secs:.0f}s"


INVARIANCE_TRIALS = 50


def test_criterion_6_invariance_suites():
    t = time.perf_counter()
    failed = []
    suites = [
        st.suite_homotopy_invariance(6, INVARIANCE_TRIALS),
        st.suite_reidemeister(6, INVARIANCE_TRIALS),
        st.suite_jones_skein(6, INVARIANCE_TRIALS),
    ]
    for res in suites:
        if not res.ok:
            failed.append(f"{res.name}: {res.failures[0][0]}")
    secs = time.perf_counter() - t
    assert not failed, "; ".join(failed)
    # every defined member got every transformation INVARIANCE_TRIALS times
    defined = [n for n, h in st.corpus_handcuffs() if st.homotopy_value(h) is not None]
    assert suites[0].trials == len(defined) * len(st.TRANSFORMS) * INVARIANCE_TRIALS
    assert secs < 600, f"{secs:.0f}s"


def test_distinct_members_have_distinct_residues():
    for fam, fn in (("slice2", ho.n12), ("boundary2", ho.n12), ("slice3", ho.n123)):
        values = {fn(_handcuff(f"{fam}-m{m}")).reduced for m in (1, 2, 3)}
        assert len(values) == 3, fam


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-k", "criterion"]))
