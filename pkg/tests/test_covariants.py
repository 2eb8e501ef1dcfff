import random
from fractions import Fraction

import pytest
import sympy as sp

from g2red.covariants import (d4_quintic_model, d6_w_model, d6_w_parameter, exact_divide, family_d4,
                              family_d6, family_v4, g_covariant, julia_from_g, sigma_symmetry_check,
                              v4_tuple)
from g2red.forms import BinaryForm, discriminant
from g2red.genus2 import aut_label, AutLabel, igusa, moduli_key
from g2red.julia import zero_map
from oracles import A, g_from_definition, quintic_g_reference, x, z

t = sp.Symbol("t")


def as_sympy(G):
    return sum(sp.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(G.poly.coeffs))


def sq(v):
    return sp.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else sp.Integer(v)


def test_definition_oracle_reproduces_quintic_table():
    G = g_from_definition(list(A))
    ref = quintic_g_reference()
    for i in range(13):
        assert sp.expand(G.coeff_monomial(x ** i * z ** (12 - i)) - ref[i]) == 0, i


def test_quintic_table_matches_implementation():
    ref = quintic_g_reference()
    rng = random.Random(3)
    for _ in range(30):
        cs = [rng.randint(-20, 20) for _ in range(6)]
        if cs[-1] == 0 or discriminant(BinaryForm(cs)) == 0:
            continue
        G = g_covariant(BinaryForm(cs)).poly.coeffs
        sub = dict(zip(A, cs))
        for i in range(13):
            assert G[i] == ref[i].subs(sub)


@pytest.mark.parametrize("w", [Fraction(3, 7), Fraction(-5, 2), Fraction(2), Fraction(1, 100)])
def test_d6_family_g_formula(w):
    ours = as_sympy(g_covariant(d6_w_model(w)))
    W = sq(w)
    ref = -972 * t * (-t ** 6 + W) * (8 * W * t ** 12 + 12 * W * t ** 9 + t ** 9 + 12 * W * t ** 6
                                      + 12 * W ** 2 * t ** 3 + W * t ** 3 + 8 * W ** 3)
    assert sp.expand(ours - ref) == 0


@pytest.mark.parametrize("s", [Fraction(1, 3), Fraction(2), Fraction(-7, 5), Fraction(3, 11), Fraction(-1, 2)])
def test_d4_family_g_discriminant(s):
    G = as_sympy(g_covariant(d4_quintic_model(s)))
    S = sq(s)
    ref = (-2 ** 44 * 3 ** 5 * 5 ** 21 * S ** 29 * (60 * S + 1) ** 2 * (20 * S - 21) ** 6
           * (4 * S - 1) ** 14 * (5 * S + 1) ** 4)
    assert sp.discriminant(G, t) == ref


@pytest.mark.parametrize("s", [Fraction(1, 3), Fraction(2), Fraction(-7, 5)])
def test_d4_family_g_has_quartic_factor(s):
    G = as_sympy(g_covariant(d4_quintic_model(s)))
    assert sp.rem(G, 3 * sq(s) - 5 * t ** 4 - t ** 2, t) == 0


def test_sigma_symmetry_random():
    rng = random.Random(17)
    n_checked = 0
    while n_checked < 100:
        n = rng.choice([3, 4, 5, 6, 7])
        cs = [rng.randint(-15, 15) for _ in range(n + 1)]
        if cs[0] == 0 or cs[-1] == 0 or discriminant(BinaryForm(cs)) == 0:
            continue
        assert sigma_symmetry_check(BinaryForm(cs))
        n_checked += 1


def test_g_against_definition_for_sextic():
    cs = [3, -1, 4, 1, -5, 9, 2]
    G = g_covariant(BinaryForm(cs)).poly.coeffs
    ref = g_from_definition(cs)
    assert all(ref.coeff_monomial(x ** i * z ** (20 - i)) == G[i] for i in range(21))


@pytest.mark.parametrize("ab", [(3, -7), (5, 2), (-11, 4)])
def test_v4_g_splitting(ab):
    a, b = ab
    G = g_from_definition(list(v4_tuple(a, b).coeffs))
    degs = sorted(sp.Poly(p, x, z).total_degree() for p, e in sp.factor_list(G.as_expr())[1] for _ in range(e))
    # x z (as two linear factors) times a sextic and a degree 12 factor
    assert degs == [1, 1, 6, 12]


def test_v4_family_orientation():
    assert moduli_key(igusa(family_v4(1, -7))) == moduli_key(igusa(BinaryForm([1, 0, 1, 0, -7, 0, 1])))
    assert moduli_key(igusa(family_v4(-7, 1))) == moduli_key(igusa(BinaryForm([1, 0, 1, 0, -7, 0, 1])))
    assert aut_label(family_v4(3, 5)) in (AutLabel.V4, AutLabel.D4, AutLabel.D6)


@pytest.mark.parametrize("lam", [2, 3, Fraction(1, 2), -2])
def test_d6_parameter(lam):
    f = family_d6(lam)
    g = d6_w_model(d6_w_parameter(lam))
    assert moduli_key(igusa(f)) == moduli_key(igusa(g))
    assert aut_label(f) in (AutLabel.D6, AutLabel.G24)


@pytest.mark.parametrize("alpha", [2, 3, Fraction(5, 2)])
def test_d4_family_label(alpha):
    assert aut_label(family_d4(alpha)) in (AutLabel.D4, AutLabel.G48)


def test_julia_from_g_matches_zero_map():
    f = BinaryForm([-36, 0, 49, 0, -14, 0, 1])           # roots +-1, +-2, +-3
    q = julia_from_g(f)
    assert abs(q.zero - zero_map(f)) < 1e-9


def test_julia_from_g_exact_factor():
    f = BinaryForm([0, -6, 11, -6, 1])                    # x (x-1)(x-2)(x-3)
    q = julia_from_g(f)
    assert q.exact == BinaryForm([3, -3, 1])
    assert exact_divide(list(g_covariant(f).poly.coeffs), [3, -3, 1]) is not None


def test_julia_from_g_needs_totally_real():
    with pytest.raises(ValueError):
        julia_from_g(BinaryForm([1, 0, 1, 0, 1]))
