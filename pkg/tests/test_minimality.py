import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from g2red.database import read_table2
from g2red.forms import BinaryForm, LinearMap, discriminant, transform
from g2red.genus2 import igusa, moduli_key
from g2red.minimality import (even_model_is_height_minimal, factor, inflate_cubic, inflate_even,
                              inflate_generic, minimize_disc, minimize_disc_cubic, minimize_disc_even,
                              valuation)


def random_base(rng, shape):
    while True:
        c = [rng.randint(-9, 9) if i % shape == 0 else 0 for i in range(7)]
        if c[0] and c[6] and discriminant(BinaryForm(c)) != 0:
            return BinaryForm(c)


def test_valuation_and_factor():
    assert valuation(2 ** 5 * 3, 2) == 5
    assert valuation(__import__("fractions").Fraction(9, 8), 2) == -3
    assert factor(-360) == {2: 3, 3: 2, 5: 1}
    assert factor(1) == {}
    with pytest.raises(ValueError):
        valuation(0, 3)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sublattice_discriminant_law(p):
    f = BinaryForm([3, -1, 4, 1, -5, 9, 2])
    for M in [LinearMap(p, 0, 0, 1)] + [LinearMap(1, 0, j, p) for j in range(p)]:
        assert discriminant(transform(f, M)) == discriminant(f) * p ** 30


def test_inflation_exponents():
    f = BinaryForm([2, 0, 3, 0, -1, 0, 5])
    g = BinaryForm([2, 0, 0, 3, 0, 0, 5])
    D, Dg = discriminant(f), discriminant(g)
    assert discriminant(inflate_generic(f, 3)) == D * 3 ** 30
    assert discriminant(inflate_even(f, 3)) == D * 3 ** 15
    assert discriminant(inflate_cubic(g, 3)) == Dg * 3 ** 10


@pytest.mark.parametrize("kind", ["generic", "even", "cubic"])
def test_round_trips(kind):
    infl, mini, shape = {
        "generic": (inflate_generic, minimize_disc, 1),
        "even": (inflate_even, minimize_disc_even, 2),
        "cubic": (inflate_cubic, minimize_disc_cubic, 3),
    }[kind]
    rng = random.Random(len(kind))
    for _ in range(30):
        base = mini(random_base(rng, shape), threshold=0)[0]
        p = rng.choice([2, 3, 5, 7])
        g = base
        for _ in range(rng.randint(1, 3)):
            g = infl(g, p)
        out, steps = mini(g)
        assert factor(discriminant(out)) == factor(discriminant(base))
        assert out.is_integral()


@settings(max_examples=25)
@given(st.lists(st.integers(-12, 12), min_size=7, max_size=7), st.sampled_from([2, 3]))
def test_generic_minimization_keeps_moduli_point(c, p):
    if c[6] == 0 or discriminant(BinaryForm(c)) == 0:
        return
    f = inflate_generic(BinaryForm(c), p)
    g, _ = minimize_disc(f)
    assert moduli_key(igusa(g)) == moduli_key(igusa(f))
    assert abs(discriminant(g)) <= abs(discriminant(f))


def test_already_minimal_is_fixed():
    f = BinaryForm([3, -1, 4, 1, -5, 9, 2])
    g, steps = minimize_disc(f)
    assert g == f and steps == []


def test_shape_checks():
    with pytest.raises(ValueError):
        minimize_disc_even(BinaryForm([1, 1, 0, 0, 0, 0, 1]))
    with pytest.raises(ValueError):
        minimize_disc_cubic(BinaryForm([1, 0, 1, 0, 0, 0, 1]))
    with pytest.raises(ValueError):
        minimize_disc(BinaryForm([1, 0, 1]))


def test_table2_models_under_even_minimization():
    # these monic models are already twist-minimal: nothing is removed and Δ never grows
    for row in read_table2():
        f = row["model"]
        g, steps = minimize_disc_even(f)
        assert abs(discriminant(g)) <= abs(discriminant(f))
        assert moduli_key(igusa(g)) == moduli_key(igusa(f))
        if all(e < 15 for e in factor(discriminant(f)).values()):
            assert g == f and steps == []


def test_height_certificate_brute_force():
    ok, cert = even_model_is_height_minimal(BinaryForm([-1, 0, 1, 0, 7, 0, 1]))
    assert ok
    assert (cert.s1, cert.s2) == (-7, 1)          # x^6 + 7x^4 + x^2 - 1
    for v, w in itertools.product(range(-12, 13), repeat=2):
        assert cert.check(v, w)
        if 2 * w >= 0 and 6 * v + 2 * w >= 0:
            assert min(6 * v + 2 * w, 4 * v + 2 * w, 2 * v + 2 * w, 2 * w) >= 0


def test_certificate_needs_unit_ends():
    with pytest.raises(ValueError):
        even_model_is_height_minimal(BinaryForm([2, 0, 1, 0, 7, 0, 1]))
