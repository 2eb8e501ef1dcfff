import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from g2red.forms import BinaryForm
from g2red.numerics import (aberth, complex_roots, refine_root_mp, signature,
                            sturm_real_count)
from oracles import roots_mp

ints = st.integers(-12, 12)


def squarefree_polys(min_deg=1, max_deg=10):
    t = sp.Symbol("t")
    return (st.integers(min_deg, max_deg)
            .flatmap(lambda n: st.lists(ints, min_size=n + 1, max_size=n + 1))
            .filter(lambda c: c[-1] != 0)
            .filter(lambda c: sp.degree(sp.gcd(sp.Poly(c[::-1], t), sp.Poly(c[::-1], t).diff(t))) == 0))


@given(squarefree_polys())
def test_sturm_count_matches_sympy(c):
    t = sp.Symbol("t")
    assert sturm_real_count(c) == len(sp.real_roots(sp.Poly(c[::-1], t)))


@given(squarefree_polys(), st.integers(-5, 5), st.integers(0, 6))
def test_sturm_interval_half_open(c, lo, width):
    t = sp.Symbol("t")
    hi = lo + width
    rr = [r for r in sp.real_roots(sp.Poly(c[::-1], t))]
    assert sturm_real_count(c, (lo, hi)) == sum(1 for r in rr if lo < r <= hi)


def test_sturm_big_rationals():
    # roots 1/10^20, 2/10^20, 3/10^20 are separated only at high precision
    t = sp.Symbol("t")
    e = sp.Rational(1, 10 ** 20)
    P = sp.Poly(sp.expand((t - e) * (t - 2 * e) * (t - 3 * e) * (t ** 2 + 1)), t)
    c = [sp.Rational(v) for v in reversed(P.all_coeffs())]
    from fractions import Fraction
    c = [Fraction(int(v.p), int(v.q)) for v in c]
    assert sturm_real_count(c) == 3
    assert sturm_real_count(c, (Fraction(3, 2 * 10 ** 20), None)) == 2


@given(squarefree_polys(2, 10))
def test_aberth_against_mpmath(c):
    z, res = aberth([float(v) for v in c])
    ref = [complex(r) for r in roots_mp(c)]
    scale = max(1.0, max(abs(r) for r in ref))
    for r in ref:
        assert min(abs(w - r) for w in z) <= 1e-7 * scale


@given(squarefree_polys(2, 10))
def test_complex_roots_classification(c):
    f = BinaryForm(c)
    rs = complex_roots(f)
    r, s = rs.signature
    assert r + 2 * s == f.degree
    assert (r, s) == tuple(signature(f))
    for i, j in rs.pairing:
        assert rs.roots[i].imag > 0
        assert rs.roots[j] == rs.roots[i].conjugate()
    for i in rs.real:
        assert rs.roots[i].imag == 0


def test_signature_root_at_infinity():
    f = BinaryForm([1, 0, 1, 0])        # z (x^2 + z^2) : root at infinity plus i, -i
    assert tuple(signature(f)) == (1, 1)


def test_repeated_roots_rejected():
    with pytest.raises(ValueError):
        complex_roots(BinaryForm([1, 2, 1]))
    with pytest.raises(ValueError):
        complex_roots(BinaryForm([1, 1, 0]))          # leading coefficient zero


def test_deterministic():
    f = BinaryForm([3770, -3014, 1489, -458, 96, -12, 1])
    a, b = complex_roots(f), complex_roots(f)
    assert a.roots == b.roots


def test_worked_example_roots():
    f = BinaryForm([3770, -3014, 1489, -458, 96, -12, 1])
    rs = complex_roots(f)
    assert rs.signature == (0, 3) or tuple(rs.signature) == (0, 3)
    upper = sorted(rs.pair_roots, key=lambda w: w.real)
    for w, ref in zip(upper, (1 + 3j, 2 + 5j, 3 + 2j)):
        assert abs(w - ref) < 1e-10


def test_refine_mp():
    r = refine_root_mp([-2, 0, 1], 1.4)
    assert abs(r - np.sqrt(2)) < 1e-15


def test_clustered_roots_fall_back_to_full_solve():
    # two pairs within 1e-3 of a real root; single-root Newton merges them
    f = BinaryForm([-1086030, -7534029, -21767181, -33526263, -29034081, -13404630, -2577642])
    rs = complex_roots(f)
    ref = sorted((complex(r) for r in roots_mp(f.coeffs, 50)), key=lambda w: (w.real, w.imag))
    got = sorted(rs.roots, key=lambda w: (w.real, w.imag))
    assert len(rs.real) == 2
    assert max(abs(a - b) for a, b in zip(got, ref)) < 1e-9
