"""Discriminant minimization of integral sextic models.

Generic moves are the index-p sublattice substitutions followed by removal
of the p-part of the content: for M of determinant p,
Δ(f^M / p^e) = p^(30 - 10e) Δ(f), so a move helps exactly when e >= 4.
For f = g(x^2, z^2) there are also the half-substitutions x -> x sqrt(p)
(a_2k -> a_2k p^k, Δ -> p^15 Δ) and their reverse a_2k -> a_2k p^(3-k);
for f = g(x^3, z^3) the analogous moves change Δ by p^10.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

import sympy

from .forms import BinaryForm, LinearMap, discriminant, even_part_decompose, transform

GENERIC_THRESHOLD = 30
EVEN_THRESHOLD = 15
CUBIC_THRESHOLD = 10


def valuation(n, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    a, b = n.numerator, n.denominator
    while a % p == 0:
        a //= p
        k += 1
    while b % p == 0:
        b //= p
        k -= 1
    return k


def factor(n: int) -> dict:
    """Prime factorization {p: e} of |n| (empty for |n| <= 1)."""
    n = abs(int(n))
    if n <= 1:
        return {}
    return {int(p): int(e) for p, e in sympy.factorint(n).items()}


def _int_coeffs(f: BinaryForm):
    if not f.is_integral():
        raise ValueError("integral model expected")
    return [int(c) for c in f.coeffs]


def _content(cs) -> int:
    return reduce(gcd, (abs(c) for c in cs), 0)


def _strip_p(cs, p, limit=None):
    """Divide out the largest power p^e of the content, e <= limit."""
    e = 0
    while all(c % p == 0 for c in cs) and (limit is None or e < limit):
        cs = [c // p for c in cs]
        e += 1
    return cs, e


@dataclass
class MinimizationStep:
    prime: int
    removed: int       # drop in v_p(Δ)
    move: str


def _generic_candidates(cs, p):
    f = BinaryForm(cs)
    yield "x->px", transform(f, LinearMap(p, 0, 0, 1))
    for j in range(p):
        yield "z->%dx+pz" % j if j else "z->pz", transform(f, LinearMap(1, 0, j, p))


def _descend(cs, p, v, moves, drop_per_unit, base, max_nodes=20000):
    """Lowest v_p(Δ) reachable from cs through moves that each lower it.

    Greedy descent can end on a branch that stops early, so every strictly
    descending sequence of moves is explored.  Returns (v, coeffs, steps).
    """
    best = (v, cs, [])
    stack = [(v, cs, [])]
    seen = {tuple(cs)}
    while stack:
        v0, c0, path = stack.pop()
        cands = [(name, g, base) for name, g in moves(c0, p)]
        # dividing out content: Δ(f / p) = p^-10 Δ(f)
        cands.append(("content", BinaryForm(c0), 0))
        for name, g, b in cands:
            gi, e = _strip_p([int(c) for c in g.coeffs], p)
            drop = drop_per_unit * e - b
            key = tuple(gi)
            if drop <= 0 or key in seen:
                continue
            seen.add(key)
            if len(seen) > max_nodes:
                raise RuntimeError("minimization search at p = %d is too large" % p)
            step = path + [MinimizationStep(p, drop, name)]
            if v0 - drop < best[0]:
                best = (v0 - drop, gi, step)
            stack.append((v0 - drop, gi, step))
    return best


def _minimize(f, threshold, moves, drop_per_unit, base, primes=None):
    cs = _int_coeffs(f)
    D = discriminant(f)
    if D == 0:
        raise ValueError("discriminant is zero")
    fac = factor(int(D)) if primes is None else {p: valuation(D, p) for p in primes}
    # below the smallest possible drop no move can help
    min_drop = next(drop_per_unit * e - base for e in range(1, 100) if drop_per_unit * e - base > 0)
    steps = []
    for p in sorted(fac):
        v = valuation(D, p)
        if v < max(threshold, min_drop):
            continue
        v, cs, taken = _descend(cs, p, v, moves, drop_per_unit, base)
        steps.extend(taken)
    g = BinaryForm(cs)
    return g, [(s.prime, s.removed) for s in steps]


def minimize_disc(f: BinaryForm, primes=None, threshold: int = GENERIC_THRESHOLD):
    """Lower v_p(Δ) for every p with v_p(Δ) >= 30 while the model stays integral.

    Returns (model, [(p, exponent removed), ...]).  The output is GL2(Q)
    equivalent to the input up to a scalar, so it has the same moduli point.
    Primes with v_p(Δ) below ``threshold`` are left alone; threshold=0
    searches every prime dividing Δ.
    """
    if f.degree != 6:
        raise ValueError("sextic expected")
    return _minimize(f, threshold, _generic_candidates, 10, 30, primes)


def _even_candidates(cs, p):
    # a_2k -> a_2k p^(3-k) and a_2k -> a_2k p^k; both multiply Δ by p^15
    yield "x->x/sqrt(p)", BinaryForm([c * p ** (3 - i // 2) if i % 2 == 0 else 0 for i, c in enumerate(cs)])
    yield "x->x*sqrt(p)", BinaryForm([c * p ** (i // 2) if i % 2 == 0 else 0 for i, c in enumerate(cs)])


def _cubic_candidates(cs, p):
    # a_3k -> a_3k p^(2-k) and a_3k -> a_3k p^k; both multiply Δ by p^10
    yield "x->x/cbrt(p)", BinaryForm([c * p ** (2 - i // 3) if i % 3 == 0 else 0 for i, c in enumerate(cs)])
    yield "x->x*cbrt(p)", BinaryForm([c * p ** (i // 3) if i % 3 == 0 else 0 for i, c in enumerate(cs)])


def is_cubic_shape(f: BinaryForm) -> bool:
    return f.degree == 6 and all(c == 0 for i, c in enumerate(f.coeffs) if i % 3)


def minimize_disc_even(f: BinaryForm, primes=None, threshold: int = EVEN_THRESHOLD):
    """Twist-minimization for f = g(x^2, z^2); threshold 15.

    The output is a twist of the input: the same point over the algebraic
    closure, generally not over Q.
    """
    if f.degree != 6 or even_part_decompose(f) is None:
        raise ValueError("even sextic expected")
    return _minimize(f, threshold, _even_candidates, 10, 15, primes)


def minimize_disc_cubic(f: BinaryForm, primes=None, threshold: int = CUBIC_THRESHOLD):
    """Same for f = g(x^3, z^3); threshold 10."""
    if not is_cubic_shape(f):
        raise ValueError("sextic in x^3, z^3 expected")
    return _minimize(f, threshold, _cubic_candidates, 10, 10, primes)


# ---------------------------------------------------------------------------
# inflation helpers (used to build test instances)

def inflate_generic(f: BinaryForm, p: int) -> BinaryForm:
    """f(px, z): Δ gains p^30."""
    return transform(f, LinearMap(p, 0, 0, 1))


def inflate_even(f: BinaryForm, p: int) -> BinaryForm:
    return BinaryForm(c * p ** (i // 2) for i, c in enumerate(f.coeffs))


def inflate_cubic(f: BinaryForm, p: int) -> BinaryForm:
    return BinaryForm(c * p ** (i // 3) for i, c in enumerate(f.coeffs))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HeightCertificate:
    """Why x^6 - s1 x^4 z^2 + s2 x^2 z^4 - z^6 has no even model of smaller height.

    Even models over Q of the same curve are
    (lambda^6 mu^2, lambda^4 mu^2 s1, lambda^2 mu^2 s2, mu^2) up to signs.
    With v = v_p(lambda), w = v_p(mu) the valuations of the coefficients
    jump by (6v + 2w, 4v + 2w, 2v + 2w, 2w).  Integrality of the first and
    last coefficient at a prime where they are units forces 2w >= 0 and
    6v + 2w >= 0, so every jump is >= 0 and no coefficient can shrink.
    """

    s1: int
    s2: int
    jumps: str = "(6v+2w, 4v+2w, 2v+2w, 2w)"
    constraints: tuple = ("2w >= 0", "6v+2w >= 0")
    conclusion: str = "4v+2w = (2(6v+2w) + 2w)/3 >= 0 and 2v+2w = ((6v+2w) + 2(2w))/3 >= 0"

    def check(self, v: int, w: int) -> bool:
        """True when (v, w) violates integrality or leaves every jump >= 0."""
        if 2 * w < 0 or 6 * v + 2 * w < 0:
            return True
        return all(j >= 0 for j in (6 * v + 2 * w, 4 * v + 2 * w, 2 * v + 2 * w, 2 * w))


def even_model_is_height_minimal(f: BinaryForm):
    """Returns (True, certificate) for forms x^6 - s1 x^4 + s2 x^2 - 1.

    The lead and constant coefficients are +-1, so the jump vector argument
    applies at every prime.
    """
    c = f.coeffs
    if f.degree != 6 or any(c[i] != 0 for i in (1, 3, 5)) or abs(c[0]) != 1 or abs(c[6]) != 1:
        raise ValueError("expected the shape x^6 - s1 x^4 z^2 + s2 x^2 z^4 - z^6 (units at both ends)")
    if not f.is_integral():
        raise ValueError("integral model expected")
    s1 = -int(c[4]) * int(c[6])
    s2 = int(c[2]) * int(c[6])
    return True, HeightCertificate(s1, s2)
