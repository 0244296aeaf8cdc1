"""Acceptance suite: one test per criterion, at the stated sizes and tolerances.

Each test prints a PASS line with its timing (run with ``pytest -v -s`` to see
them); an assertion failure in any test is a failed criterion.  All
randomness is seeded, so the suite is deterministic.
"""

import io
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from foliation_af._intmat import hnf_rows
from foliation_af.bratteli import (
    diagram_from_digits,
    dimension_vectors,
    effros_shen_diagram,
    unique_trace_estimate,
)
from foliation_af.cli import _run
from foliation_af.contfrac import cf_expand, cf_matrix_product, cf_tail_equivalent, euclid_cf
from foliation_af.jacobi_perron import (
    JPExpansion,
    effros_shen_divergent,
    effros_shen_expansion,
    jp_digit_matrix,
    jp_expand,
    jp_limit_check,
    perron_condition,
)
from foliation_af.lattice import (
    MappingClassElement,
    PseudoLattice,
    basis_change,
    functor_covariance_check,
    module_equal,
    observation_check,
    projectivize,
)
from foliation_af.numeric import NumberField, algebraic_root

from cli_cases import GOLDEN_CASES
from helpers import (
    mat_product_oracle,
    random_nonneg_unimodular,
    random_sl2,
    random_surd,
    sqrt_of,
)

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")

PHI = algebraic_root((-1, -1, 1), 1, 2)

FIELDS = {
    2: NumberField((-2, 0, 1), (1, 2)),
    3: NumberField((-2, 0, 0, 1), (1, 2)),
    4: NumberField((1, 0, -10, 0, 1), (3, Fraction(13, 4))),
    6: NumberField((-1, -1, 0, 0, 0, 0, 1), (1, 2)),
}


class _Timer:
    def __init__(self, number, name, budget=None):
        self.number, self.name, self.budget = number, name, budget

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.start
        if exc_type is None:
            verdict = "PASS"
            if self.budget is not None:
                assert elapsed < self.budget, (
                    f"criterion {self.number} exceeded its {self.budget}s budget "
                    f"({elapsed:.2f}s)")
        else:
            verdict = "FAIL"
        print(f"ACCEPTANCE {self.number:02d} {self.name}: {verdict} ({elapsed:.2f}s)")
        return False


def _independent_lattice(rng, field, n):
    """n periods with Q-linearly independent coordinates in ``field``."""
    d = field.degree
    assert n <= d
    while True:
        rows = [[rng.randint(-5, 5) for _ in range(d)] for _ in range(n)]
        if len(hnf_rows(rows)) != n:
            continue
        periods = []
        for row in rows:
            el = field.element([Fraction(v) for v in row])
            s = el.sign()
            if s == 0:
                break
            periods.append(el if s > 0 else -el)
        else:
            return tuple(periods)


def test_c01_rational_round_trip():
    with _Timer(1, "rational round-trip", budget=5.0):
        rng = random.Random(1001)
        for _ in range(1000):
            a = rng.randint(1, 10 ** 6)
            b = rng.randint(1, 10 ** 6)
            a1, a2 = max(a, b), min(a, b)
            e, gcd = euclid_cf(a1, a2)
            _, conv = cf_matrix_product(e, len(e.digits))
            assert conv == Fraction(a1, a2)
            assert gcd == math.gcd(a1, a2)


def test_c02_jp_rational_termination():
    with _Timer(2, "JP rational termination", budget=10.0):
        rng = random.Random(1002)
        for _ in range(500):
            n = rng.choice((3, 4))
            theta = tuple(Fraction(rng.randint(1, 10 ** 4), rng.randint(1, 10 ** 4))
                          for _ in range(n - 1))
            e = jp_expand(theta, depth=10 ** 6)
            assert e.terminated
            prod = mat_product_oracle([jp_digit_matrix(d, n) for d in e.digits])
            last = [row[-1] for row in prod]
            assert last[0] > 0
            for i, t in enumerate(theta, start=1):
                assert Fraction(last[i], last[0]) == t


def test_c03_n2_degeneration():
    with _Timer(3, "n=2 degeneration", budget=60.0):
        rng = random.Random(1003)
        for _ in range(500):
            x = Fraction(rng.randint(1, 10 ** 5), rng.randint(1, 10 ** 5))
            jp = jp_expand((x,), depth=10 ** 6)
            cf = cf_expand(x)
            assert jp.terminated and cf.finite
            assert tuple(d[0] for d in jp.digits) == cf.digits
        for _ in range(50):
            x = random_surd(rng)
            jp = jp_expand((x,), depth=50)
            cf = cf_expand(x, 50)
            assert tuple(d[0] for d in jp.digits) == cf.digits[:len(jp.digits)]
            assert len(jp.digits) == 50


def _random_admissible_digits(rng, depth):
    digits = []
    for _ in range(depth):
        b2 = rng.randint(1, 5)
        digits.append((rng.randint(1, b2), b2))
    return tuple(digits)


def test_c04_perron_convergence():
    with _Timer(4, "Perron convergence", budget=30.0):
        rng = random.Random(1004)
        for _ in range(100):
            e = JPExpansion(n=3, digits=_random_admissible_digits(rng, 60),
                            terminated=False)
            assert perron_condition(e, 6).holds
            rep = jp_limit_check(e, None, depth=60, tol=Fraction(1, 10 ** 8))
            assert rep.cauchy_gap is not None
            assert rep.cauchy_gap < Fraction(1, 10 ** 8)


def test_c05_effros_shen_divergence():
    with _Timer(5, "Effros-Shen divergence witness", budget=30.0):
        betas = [2 ** (k + 1) for k in range(1, 41)]
        # certification: prefix sum is exactly 1/2 - 2^-41; geometric tail bound 2^-40
        cert = effros_shen_divergent(betas, Fraction(1, 2 ** 40))
        assert cert.certified_divergent
        assert cert.partial_sum == Fraction(1, 2) - Fraction(1, 2 ** 41)
        e = effros_shen_expansion(betas)
        rep = jp_limit_check(e, None, depth=40, tol=Fraction(1, 10 ** 4))
        assert not rep.cauchy_ok
        assert rep.cauchy_gap > Fraction(1, 10 ** 4)
        # frozen magnitude from the recurrence: the gap exceeds 2^6
        assert rep.cauchy_gap > 2 ** 6
        # every Perron-passing control passes the same test
        rng = random.Random(1005)
        for _ in range(100):
            control = JPExpansion(n=3, digits=_random_admissible_digits(rng, 40),
                                  terminated=False)
            crep = jp_limit_check(control, None, depth=40, tol=Fraction(1, 10 ** 4))
            assert crep.cauchy_ok


def test_c06_module_invariance():
    with _Timer(6, "module invariance and controls", budget=30.0):
        rng = random.Random(1006)
        plans = [(2, 2), (3, 3), (4, 4), (6, 5), (6, 6)]
        for degree, n in plans:
            field = FIELDS[degree]
            for _ in range(100):
                pl = PseudoLattice(_independent_lattice(rng, field, n))
                phi = MappingClassElement(random_nonneg_unimodular(rng, n))
                image = basis_change(pl, phi)
                assert module_equal(pl, image)
                # index-2 control: double one period of an independent system
                idx = rng.randrange(n)
                doubled = PseudoLattice(tuple(
                    p * 2 if i == idx else p for i, p in enumerate(pl.periods)))
                assert not module_equal(pl, doubled)


def test_c07_scaling_kernel():
    with _Timer(7, "projectivization scaling kernel", budget=30.0):
        rng = random.Random(1007)
        field = FIELDS[2]
        for _ in range(200):
            pl = PseudoLattice(_independent_lattice(rng, field, 2))
            c = Fraction(rng.randint(1, 99), rng.randint(1, 99))
            scaled = PseudoLattice(tuple(p * c for p in pl.periods))
            assert projectivize(scaled).theta == projectivize(pl).theta


def test_c08_observation_tail_equivalence():
    with _Timer(8, "observation tail equivalence", budget=120.0):
        rng = random.Random(1008)
        for _ in range(200):
            x = random_surd(rng)
            m = random_sl2(rng, signed=True, max_entry=10)
            rep = observation_check(x, m, depth=200, max_offset=40)
            assert rep.equivalent and rep.proven
            assert max(rep.offsets) <= 40
        # inequivalent pairs: distinct square-free discriminant kernels
        squarefree = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26]
        for _ in range(100):
            d1, d2 = rng.sample(squarefree, 2)
            a1, a2 = rng.randint(0, 5), rng.randint(0, 5)
            x = sqrt_of(d1) + a1
            y = sqrt_of(d2) + a2
            rep = cf_tail_equivalent(x, y, depth=200, max_offset=40)
            assert not rep.equivalent


def test_c09_continuant_identity():
    with _Timer(9, "continuant identity", budget=60.0):
        rng = random.Random(1009)

        def check(e, levels):
            d = effros_shen_diagram(e, levels)
            dims = dimension_vectors(d, d.levels)
            # textbook convergent recursion: p_-1 = 1, q_-1 = 0, p_0 = a_0, q_0 = 1
            digits = [e.digit(i) for i in range(d.levels)]
            ps, qs = [1], [0]
            for a in digits:
                if len(ps) == 1:
                    ps.append(a)
                    qs.append(1)
                else:
                    ps.append(a * ps[-1] + ps[-2])
                    qs.append(a * qs[-1] + qs[-2])
            sums = [1, 1] + [p + q for p, q in zip(ps[1:], qs[1:])]
            for k in range(d.levels + 1):
                assert dims[k] == (sums[k], sums[k + 1])

        for _ in range(150):
            x = Fraction(rng.randint(1, 10 ** 12), rng.randint(1, 10 ** 12))
            e = cf_expand(x)
            check(e, min(30, len(e.digits)))
        for _ in range(50):
            x = random_surd(rng)
            check(cf_expand(x, 30), 30)


def test_c10_unique_trace_dichotomy():
    with _Timer(10, "unique-trace dichotomy", budget=60.0):
        convergent_fixtures = [
            effros_shen_diagram(cf_expand(PHI, 50), 50),
            effros_shen_diagram(cf_expand(sqrt_of(2), 50), 50),
            effros_shen_diagram(cf_expand(sqrt_of(13) + 2, 50), 50),
            diagram_from_digits([(1, 1)] * 50, n=3),
            diagram_from_digits([(1, 1, 1)] * 50, n=4),
        ]
        for d in convergent_fixtures:
            rep = unique_trace_estimate(d, 50, precision=64)
            assert rep.diameter < Fraction(1, 10 ** 6)
        betas = [2 ** (k + 1) for k in range(1, 41)]
        div = diagram_from_digits(effros_shen_expansion(betas).digits, n=3)
        rep = unique_trace_estimate(div, 40, precision=64)
        assert rep.diameter > Fraction(1, 1000)
        # frozen magnitude: the divergent fixture stays above 0.85
        assert rep.diameter > Fraction(85, 100)


def test_c11_functor_covariance():
    with _Timer(11, "functor covariance", budget=60.0):
        rng = random.Random(1011)
        plans = [(2, 2, 100), (3, 3, 50), (6, 6, 50)]
        for degree, n, count in plans:
            field = FIELDS[degree]
            pl = PseudoLattice(_independent_lattice(rng, field, n))
            for _ in range(count):
                phi1 = MappingClassElement(random_nonneg_unimodular(rng, n))
                phi2 = MappingClassElement(random_nonneg_unimodular(rng, n))
                assert functor_covariance_check(pl, phi1, phi2)


def test_c12_cli_determinism():
    with _Timer(12, "CLI determinism", budget=60.0):
        for name, argv in GOLDEN_CASES:
            argv = [a.replace("GOLDEN_DIR", GOLDEN_DIR) for a in argv]
            runs = []
            for _ in range(2):
                buf = io.StringIO()
                code = _run(argv, buf)
                assert code == 0
                runs.append(buf.getvalue())
            assert runs[0] == runs[1]
            with open(os.path.join(GOLDEN_DIR, f"cli_{name}.out"), encoding="utf-8") as fh:
                assert runs[0] == fh.read()
        # one subprocess pair with randomized hashing, byte-for-byte
        cmd = [sys.executable, "-m", "foliation_af", "jp", "7/3", "5/3"]
        env = dict(os.environ, PYTHONHASHSEED="random")
        a = subprocess.run(cmd, capture_output=True, env=env)
        b = subprocess.run(cmd, capture_output=True, env=env)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout
