"""Shared generators and independent oracles for the test suite.

Oracles here deliberately avoid the library's own code paths: bisection works
on raw Fractions, the quadratic-surd expansion uses the classical integer
(P + sqrt(D))/Q recursion, convergents come from the textbook p/q recurrences,
and lattice equality falls back to sympy's Hermite normal form.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from foliation_af.contfrac import Mat2Z
from foliation_af.numeric import NumberField, NumberFieldElement

# ---------------------------------------------------------------------------
# independent numeric oracles


def bisection_root(coeffs, lo, hi, iterations=200):
    """Fraction bisection for a sign-changing polynomial; returns (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)

    def ev(x):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    sign_lo = ev(lo) > 0
    for _ in range(iterations):
        mid = (lo + hi) / 2
        v = ev(mid)
        if v == 0:
            return mid, mid
        if (v > 0) == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def surd_cf_oracle(p, q, d, depth):
    """Digits of (p + sqrt(d)) / q by the classical integer recursion.

    Requires q | (d - p*p) and d a positive non-square.
    """
    if (d - p * p) % q:
        raise ValueError("need q | d - p^2")
    sqrt_d = math.isqrt(d)
    if sqrt_d * sqrt_d == d:
        raise ValueError("d must be a non-square")
    digits = []
    pp, qq = p, q
    for _ in range(depth):
        a = (pp + sqrt_d) // qq if qq > 0 else (pp + sqrt_d + 1) // qq
        digits.append(a)
        pp = a * qq - pp
        qq = (d - pp * pp) // qq
    return digits


def convergents_oracle(digits):
    """Textbook convergent recursion: returns lists p, q with p[k]/q[k]."""
    p_prev, p = 1, digits[0]
    q_prev, q = 0, 1
    ps, qs = [p], [q]
    for a in digits[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        ps.append(p)
        qs.append(q)
    return ps, qs


def sympy_lattice_form(rows):
    """sympy's canonical Hermite form of the row span (oracle for equality)."""
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    return tuple(map(tuple, hermite_normal_form(Matrix(rows).T).T.tolist()))


def mat_product_oracle(mats):
    """Plain nested-loop integer matrix product, independent of _intmat."""
    n = len(mats[0])
    prod = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for m in mats:
        nxt = [[sum(prod[i][k] * m[k][j] for k in range(n)) for j in range(n)]
               for i in range(n)]
        prod = nxt
    return tuple(map(tuple, prod))


# ---------------------------------------------------------------------------
# random generators (all explicitly seeded by the caller)


def random_rational(rng: random.Random, max_num=10 ** 6, max_den=10 ** 6) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_surd(rng: random.Random) -> NumberFieldElement:
    """A positive quadratic irrational: the larger root of x^2 - t x - s."""
    while True:
        t = rng.randint(0, 9)
        s = rng.randint(1, 9)
        disc = t * t + 4 * s
        r = math.isqrt(disc)
        if r * r == disc:
            continue
        return NumberField((-s, -t, 1), (Fraction(t, 2), Fraction(t, 2) + r + 1)).generator()


def sqrt_of(d: int) -> NumberFieldElement:
    r = math.isqrt(d)
    if r * r == d:
        raise ValueError("square")
    return NumberField((-d, 0, 1), (r, r + 1)).generator()


def random_sl2(rng: random.Random, signed=True, max_entry=10, steps=(1, 8)) -> Mat2Z:
    gens = [Mat2Z(1, 1, 0, 1), Mat2Z(1, 0, 1, 1)]
    if signed:
        gens += [Mat2Z(1, -1, 0, 1), Mat2Z(1, 0, -1, 1), Mat2Z(0, -1, 1, 0)]
    while True:
        m = Mat2Z.identity()
        for _ in range(rng.randint(*steps)):
            m = m @ rng.choice(gens)
        if max(abs(v) for row in m.rows() for v in row) <= max_entry:
            return m


def random_nonneg_unimodular(rng: random.Random, n: int, ops=8, max_entry=5):
    """Product of elementary row additions; entries bounded by rejection."""
    while True:
        mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(ops):
            i, j = rng.sample(range(n), 2)
            k = rng.randint(0, 1)
            if k:
                for c in range(n):
                    mat[i][c] += k * mat[j][c]
        if max(max(row) for row in mat) <= max_entry:
            return tuple(map(tuple, mat))


def random_field_lattice(rng: random.Random, field: NumberField, n: int):
    """n periods with random coordinates in ``field``, all positive."""
    periods = []
    while len(periods) < n:
        coords = [Fraction(rng.randint(-5, 5)) for _ in range(field.degree)]
        el = field.element(coords)
        s = el.sign()
        if s == 0:
            continue
        periods.append(el if s > 0 else -el)
    return tuple(periods)
