"""Exact binary forms over the rationals.

A form of degree n is stored by its ascending coefficient vector
(a_0, ..., a_n), where a_i multiplies x^i z^(n-i).  Linear maps act on the
right: f^M(x, z) = f(ax + bz, cx + dz), so that f^(MN) = (f^M)^N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, factorial, gcd, lcm
from typing import Iterable, Optional, Sequence


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("binary forms take exact coefficients, got float %r" % v)
    return Fraction(v)


# ---------------------------------------------------------------------------
# plain list helpers (ascending coefficient lists, any ring elements)

def poly_add(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
            for i in range(n)]


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_pow(p, k):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_scale(p, c):
    return [c * a for a in p]


def dx(coeffs):
    """d/dx of the binary form with the given ascending coefficients."""
    return [i * coeffs[i] for i in range(1, len(coeffs))]


def dz(coeffs):
    n = len(coeffs) - 1
    return [(n - i) * coeffs[i] for i in range(n)]


# ---------------------------------------------------------------------------

class BinaryForm:
    """Homogeneous form sum a_i x^i z^(n-i) with exact rational a_i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(_frac(c) for c in coeffs)
        if not cs:
            raise ValueError("empty coefficient vector")
        if all(c == 0 for c in cs):
            raise ValueError("the zero form is not allowed")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, BinaryForm):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "BinaryForm(%s)" % to_text(self)

    def __call__(self, x, z=1):
        # Horner in x with z powers; works for floats and complex too
        n = self.degree
        acc = 0
        zp = 1
        vals = []
        for _ in range(n + 1):
            vals.append(zp)
            zp = zp * z
        for i in range(n, -1, -1):
            acc = acc * x + self.coeffs[i] * vals[n - i]
        return acc

    def __neg__(self):
        return BinaryForm(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm(poly_mul(list(self.coeffs), list(other.coeffs)))
        return BinaryForm(c * _frac(other) for c in self.coeffs)

    __rmul__ = __mul__

    def leading(self) -> Fraction:
        """Coefficient of x^n."""
        return self.coeffs[-1]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple:
        if not self.is_integral():
            raise ValueError("form is not integral: %s" % to_text(self))
        return tuple(int(c) for c in self.coeffs)

    def float_coeffs(self) -> list:
        return [float(c) for c in self.coeffs]

    def derivative_x(self) -> list:
        return dx(list(self.coeffs))

    def derivative_z(self) -> list:
        return dz(list(self.coeffs))


@dataclass(frozen=True)
class LinearMap:
    """Rational invertible 2x2 matrix [[a, b], [c, d]]."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, _frac(getattr(self, k)))
        if self.det == 0:
            raise ValueError("singular matrix")

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.a * other.a + self.b * other.c,
                         self.a * other.b + self.b * other.d,
                         self.c * other.a + self.d * other.c,
                         self.c * other.b + self.d * other.d)

    def inverse(self) -> "LinearMap":
        t = self.det
        return LinearMap(self.d / t, -self.b / t, -self.c / t, self.a / t)

    def mobius(self, w):
        """Image of a point of the (extended) complex plane, w -> (aw+b)/(cw+d)."""
        a, b, c, d = (float(v) for v in (self.a, self.b, self.c, self.d))
        return (a * w + b) / (c * w + d)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    @staticmethod
    def identity() -> "LinearMap":
        return LinearMap(1, 0, 0, 1)

    @staticmethod
    def diag(u, v=1) -> "LinearMap":
        return LinearMap(u, 0, 0, v)


class UnimodularMap(LinearMap):
    """Integer matrix of determinant 1, taken modulo -I.

    The representative is normalized so that the first nonzero entry of the
    first column is positive.
    """

    def __init__(self, a, b, c, d):
        a, b, c, d = (int(v) for v in (a, b, c, d))
        if a * d - b * c != 1:
            raise ValueError("determinant must be 1")
        if a < 0 or (a == 0 and c < 0):
            a, b, c, d = -a, -b, -c, -d
        super().__init__(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def __matmul__(self, other):
        m = LinearMap.__matmul__(self, other)
        if isinstance(other, UnimodularMap):
            return UnimodularMap(*m.as_tuple())
        return m

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(self.d, -self.b, -self.c, self.a)

    def __repr__(self):
        return "UnimodularMap(%d, %d, %d, %d)" % tuple(int(v) for v in self.as_tuple())

    @staticmethod
    def identity() -> "UnimodularMap":
        return UnimodularMap(1, 0, 0, 1)

    @staticmethod
    def shift(k: int) -> "UnimodularMap":
        """T^k : w -> w + k."""
        return UnimodularMap(1, k, 0, 1)

    @staticmethod
    def inversion() -> "UnimodularMap":
        """S : w -> -1/w."""
        return UnimodularMap(0, -1, 1, 0)


def as_map(M) -> LinearMap:
    if isinstance(M, LinearMap):
        return M
    a, b, c, d = M
    return LinearMap(a, b, c, d)


def _transform_coeffs(coeffs: Sequence, a, b, c, d) -> list:
    n = len(coeffs) - 1
    lin1 = [b, a]          # ax + bz, ascending in x
    lin2 = [d, c]          # cx + dz
    p1 = [[1]]
    p2 = [[1]]
    for _ in range(n):
        p1.append(poly_mul(p1[-1], lin1))
        p2.append(poly_mul(p2[-1], lin2))
    out = [0] * (n + 1)
    for i, ai in enumerate(coeffs):
        if ai == 0:
            continue
        term = poly_mul(p1[i], p2[n - i])
        for k, t in enumerate(term):
            out[k] += ai * t
    return out


def transform(f: BinaryForm, M) -> BinaryForm:
    """f^M = f(ax + bz, cx + dz)."""
    M = as_map(M)
    return BinaryForm(_transform_coeffs(f.coeffs, M.a, M.b, M.c, M.d))


# ---------------------------------------------------------------------------
# resultants and discriminant

def _det(rows) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if all(isinstance(v, int) for r in m for v in r):
        return Fraction(_det_int(m))
    n = len(m)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_int(m) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def resultant(p: Sequence, q: Sequence) -> Fraction:
    """Resultant of two binary forms given by ascending coefficient lists.

    Degrees are taken formally (len - 1), so vanishing leading coefficients
    are handled the homogeneous way.
    """
    m, n = len(p) - 1, len(q) - 1
    conv = (lambda v: v) if all(isinstance(v, int) for v in list(p) + list(q)) else _frac
    pd = [conv(v) for v in reversed(p)]
    qd = [conv(v) for v in reversed(q)]
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - n - 1 - i))
    return _det(rows)


def discriminant(f: BinaryForm) -> Fraction:
    """Discriminant normalized so that x^2 + z^2 has discriminant -4.

    For a_n != 0 this is the usual discriminant of f(x, 1).  Computed from
    Res(f_x, f_z), hence Δ(f^M) = det(M)^(n(n-1)) Δ(f).
    """
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    # work with an integer multiple L f; Δ(L f) = L^(2n-2) Δ(f)
    L = reduce(lcm, (c.denominator for c in f.coeffs), 1)
    c = [int(v * L) for v in f.coeffs]
    r = resultant(dx(c), dz(c))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / Fraction(n) ** (n - 2) / Fraction(L) ** (2 * n - 2)


# ---------------------------------------------------------------------------

def content_and_primitive(f: BinaryForm):
    """Return (c, g) with f = c*g, c > 0 and g primitive integral."""
    dens = reduce(lcm, (c.denominator for c in f.coeffs), 1)
    ints = [int(c * dens) for c in f.coeffs]
    g = reduce(gcd, ints, 0)
    return Fraction(g, dens), BinaryForm(v // g for v in ints)


def primitive(f: BinaryForm) -> BinaryForm:
    return content_and_primitive(f)[1]


def reverse(f: BinaryForm) -> BinaryForm:
    """g(x, z) = f(-z, x)."""
    n = f.degree
    # x^i z^(n-i) -> (-z)^i x^(n-i)
    return BinaryForm((-1) ** (n - k) * f.coeffs[n - k] for k in range(n + 1))


def height(f: BinaryForm) -> int:
    return max(abs(v) for v in f.int_coeffs())


def even_part_decompose(f: BinaryForm) -> Optional[BinaryForm]:
    """g with f(x, z) = g(x^2, z^2), or None when f is not of that shape."""
    if f.degree % 2 or any(f.coeffs[i] != 0 for i in range(1, f.degree + 1, 2)):
        return None
    return BinaryForm(f.coeffs[::2])


def transvectant(f: Sequence, g: Sequence, k: int) -> list:
    """k-th transvectant (f, g)_k of two forms given as ascending lists.

    Normalized by (m-k)!(n-k)!/(m!n!), so that (f, f)_n of a quadratic is
    a multiple of its discriminant with small rational constant.
    """
    m, n = len(f) - 1, len(g) - 1
    if k > min(m, n):
        raise ValueError("transvectant order too large")

    def partial(p, i, j):
        # d^i/dx^i d^j/dz^j
        for _ in range(i):
            p = dx(p)
        for _ in range(j):
            p = dz(p)
        return p

    out = [0] * (m + n - 2 * k + 1)
    for j in range(k + 1):
        term = poly_mul(partial(f, k - j, j), partial(g, j, k - j))
        s = (-1) ** j * comb(k, j)
        for i, t in enumerate(term):
            out[i] += s * t
    scale = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    return [scale * v for v in out]


# ---------------------------------------------------------------------------
# text syntax

def parse_form(text: str) -> BinaryForm:
    """Parse "a0,a1,...,an" (ascending powers; entries like -3/2 allowed)."""
    s = text.strip().strip("()[]")
    parts = [p.strip() for p in s.replace(";", ",").split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError("malformed coefficient list: %r" % text)
    try:
        return BinaryForm(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("malformed coefficient list: %r" % text) from exc


def fmt_rational(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else "%d/%d" % (v.numerator, v.denominator)


def to_text(f) -> str:
    coeffs = f.coeffs if isinstance(f, BinaryForm) else f
    return ",".join(fmt_rational(_frac(c)) for c in coeffs)
