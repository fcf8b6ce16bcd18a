"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy


def naive_bracket(crossings, free_loops=0):
    """Full 2^n state sum of the bracket as a sympy expression in A (circle = 1 normalization)."""
    A = sympy.Symbol("A")
    delta = -(A**2) - A**-2
    total = 0
    arcs = sorted({a for x in crossings for a in x[:4]})
    for state in product((0, 1), repeat=len(crossings)):
        parent = {a: a for a in arcs}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        n_a = 0
        for s, (a, b, c, d, *_rest) in zip(state, crossings):
            if s == 0:
                n_a += 1
                union(a, b)
                union(c, d)
            else:
                union(a, d)
                union(b, c)
        loops = len({find(a) for a in arcs}) + free_loops
        total += A ** (n_a - (len(crossings) - n_a)) * delta ** (loops - 1)
    return sympy.expand(total)


def jones_from_bracket(bracket_expr, writhe):
    """Substitute A = t^(1/4) after the writhe correction."""
    A, t = sympy.symbols("A t")
    expr = sympy.expand((-A) ** (-3 * writhe) * bracket_expr)
    return sympy.expand(expr.subs(A, t ** sympy.Rational(1, 4)))


def laurent_to_sympy(p, name="t"):
    x = sympy.Symbol(name)
    return sum(c * x ** sympy.Rational(e, 2) for e, c in p.terms.items())


def jones_derivative_at_one(expr, k):
    t = sympy.Symbol("t")
    return Fraction(str(sympy.diff(expr, t, k).subs(t, 1)))
