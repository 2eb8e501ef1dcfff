"""The covariant G_f and closed-form families with extra automorphisms.

G_f(x, z) = [x f_x(-f_z, f_x) + z f_z(-f_z, f_x)] / (n f)

is a covariant of order (n-1)(n-2) and weight n-1:
G_{f^M} = det(M)^(n-1) (G_f)^M.  For a totally real form its only real
quadratic factor is the Julia quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .forms import (BinaryForm, discriminant, dx, dz, poly_add, poly_mul,
                    primitive)
from .numerics import aberth, refine_root_mp, signature

RATIONAL_DENOM_BOUND = 10 ** 6


@dataclass(frozen=True)
class GPoly:
    poly: BinaryForm
    source_degree: int

    @property
    def degree(self) -> int:
        return self.poly.degree


def _compose(p, u, v):
    """p(u, v) for a binary form p (ascending list) and forms u, v of equal degree."""
    m = len(p) - 1
    upow = [[1]]
    vpow = [[1]]
    for _ in range(m):
        upow.append(poly_mul(upow[-1], u))
        vpow.append(poly_mul(vpow[-1], v))
    out = [0]
    for i, a in enumerate(p):
        if a == 0:
            continue
        out = poly_add(out, [a * t for t in poly_mul(upow[i], vpow[m - i])])
    return out


def exact_divide(num, den):
    """Quotient of binary forms (ascending lists) when the division is exact.

    Returns None if there is a nonzero remainder.
    """
    num = list(num)
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    hi = len(num) - 1
    while hi >= 0 and num[hi] == 0:
        hi -= 1
    dlen = len(den)
    # univariate long division in x (z = 1); the form's degree is restored by padding
    rem = num[: hi + 1]
    q = [0] * max(hi - (dlen - 1) + 1, 0)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + dlen - 1] / lead
        q[k] = c
        if c != 0:
            for j, dv in enumerate(den):
                rem[k + j] -= c * dv
    if any(r != 0 for r in rem):
        return None
    return q


def g_covariant(f: BinaryForm) -> GPoly:
    n = f.degree
    if n < 3:
        raise ValueError("G_f needs degree >= 3")
    c = list(f.coeffs)
    fx, fz = dx(c), dz(c)
    mfz = [-v for v in fz]
    A = _compose(fx, mfz, fx)
    B = _compose(fz, mfz, fx)
    num = poly_add([0] + A, B + [0])
    q = exact_divide(num, [n * v for v in c])
    if q is None:
        raise ArithmeticError("numerator of G_f is not divisible by n f")
    d = (n - 1) * (n - 2)
    q = list(q) + [Fraction(0)] * (d + 1 - len(q))
    if len(q) != d + 1:
        raise ArithmeticError("unexpected degree of G_f")
    return GPoly(BinaryForm(q), n)


def sigma_symmetry_check(f: BinaryForm, G: Optional[GPoly] = None) -> bool:
    """Check g_i(reversed a) = (-1)^(n-1) g_(d-i)(a) exactly."""
    if G is None:
        G = g_covariant(f)
    n = f.degree
    Gs = g_covariant(BinaryForm(reversed(f.coeffs))).poly.coeffs
    g = G.poly.coeffs
    d = len(g) - 1
    sign = (-1) ** (n - 1)
    return all(Gs[i] == sign * g[d - i] for i in range(d + 1))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GQuadratic:
    """Real quadratic factor of G_f.

    ``coeffs`` is the ascending float triple of x^2 + p x z + q z^2;
    ``exact`` is set when the rational reconstruction divides G_f exactly.
    """

    coeffs: tuple
    zero: complex
    exact: Optional[BinaryForm] = None


def _rationalize(v: float) -> Fraction:
    return Fraction(v).limit_denominator(RATIONAL_DENOM_BOUND)


def complex_pairs_of(G: GPoly, imag_tol: float = 1e-7):
    """Upper-half-plane roots of G(x, 1), refined in extended precision."""
    coeffs = list(G.poly.coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    big = max(abs(v) for v in coeffs)
    fl = [float(v / big) for v in coeffs]
    z, _ = aberth(fl)
    cand = [w for w in z if w.imag > 0]
    out = []
    for w in cand:
        r = refine_root_mp(coeffs, complex(w))
        if r.imag > imag_tol * max(1.0, abs(r)):
            out.append(r)
    return out, coeffs


def julia_from_g(f: BinaryForm) -> GQuadratic:
    """Julia quadratic of a totally real form read off from G_f."""
    sig = signature(f)
    if sig.s != 0:
        raise ValueError("julia_from_g needs a totally real form, got signature (%d,%d)" % (sig.r, sig.s))
    G = g_covariant(f)
    pairs, coeffs = complex_pairs_of(G)
    if len(pairs) != 1:
        raise ValueError("expected exactly one conjugate pair of roots of G_f, found %d" % len(pairs))
    rho = pairs[0]
    p = -2.0 * rho.real
    q = abs(rho) ** 2
    exact = None
    pr, qr = _rationalize(p), _rationalize(q)
    if pr * pr < 4 * qr and exact_divide(coeffs, [qr, pr, Fraction(1)]) is not None:
        exact = BinaryForm([qr, pr, 1])
    return GQuadratic(coeffs=(q, p, 1.0), zero=rho, exact=exact)


# ---------------------------------------------------------------------------
# families

def _check(f: BinaryForm) -> BinaryForm:
    if discriminant(f) == 0:
        raise ValueError("degenerate parameter: repeated roots")
    return f


def family_v4(s1, s2) -> BinaryForm:
    """x^6 - s1 x^4 z^2 + s2 x^2 z^4 - z^6.

    Over C this is the curve of the database tuple (1, 0, s1, 0, s2, 0, 1):
    substituting x -> i x turns it into -(x^6 + s1 x^4 + s2 x^2 + 1).
    """
    return _check(BinaryForm([-1, 0, s2, 0, -Fraction(s1), 0, 1]))


def v4_tuple(a, b) -> BinaryForm:
    """x^6 + a x^4 z^2 + b x^2 z^4 + z^6, the database model."""
    return BinaryForm([1, 0, b, 0, a, 0, 1])


def family_d4(alpha) -> BinaryForm:
    """(x^2 - z^2)(x^2 - alpha^2 z^2)(alpha^2 x^2 - z^2), made primitive."""
    al = Fraction(alpha)
    if al in (0, 1, -1):
        raise ValueError("alpha must avoid 0 and +-1")
    f = BinaryForm([-1, 0, 1]) * BinaryForm([-al * al, 0, 1]) * BinaryForm([-1, 0, al * al])
    return _check(primitive(f))


def family_d6(lam) -> BinaryForm:
    """(x^3 - z^3)(x^3 - lambda^3 z^3)."""
    l3 = Fraction(lam) ** 3
    if l3 in (0, 1):
        raise ValueError("lambda^3 must avoid 0 and 1")
    return _check(primitive(BinaryForm([-1, 0, 0, 1]) * BinaryForm([-l3, 0, 0, 1])))


def d4_quintic_model(s) -> BinaryForm:
    """x^5 + x^3 z^2 + s x z^4; its G_f carries the factor 5x^4 + x^2 - 3s."""
    return _check(BinaryForm([0, s, 0, 1, 0, 1]))


def d6_w_model(w) -> BinaryForm:
    """x^6 + x^3 z^3 + w z^6; its G_f carries the factor x^6 - w."""
    return _check(BinaryForm([w, 0, 0, 1, 0, 0, 1]))


def d6_w_parameter(lam) -> Fraction:
    """w with d6_w_model(w) isomorphic over C to family_d6(lam)."""
    l3 = Fraction(lam) ** 3
    if l3 == -1:
        raise ValueError("lambda^3 = -1 has no w-model")
    # x -> t x with t^3 = -(1 + lambda^3), then divide by t^6
    return l3 / (1 + l3) ** 2
