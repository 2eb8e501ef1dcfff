"""Igusa invariants, moduli keys and automorphism groups of genus 2 curves.

The curve is y^2 = f(x, 1) for a sextic binary form f.  Invariants are built
from Clebsch's transvectant invariants A, B, C, D; the key of a moduli point
is a canonical representative of (J2 : J4 : J6 : J10) under
J_2k -> mu^k J_2k, mu in Q*.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from .forms import BinaryForm, fmt_rational, transform, transvectant
from .julia import finite_chart
from .minimality import factor

WEIGHTS = (1, 2, 3, 5)


@dataclass(frozen=True)
class Genus2Invariants:
    J2: Fraction
    J4: Fraction
    J6: Fraction
    J10: Fraction

    def as_tuple(self):
        return (self.J2, self.J4, self.J6, self.J10)

    def __iter__(self):
        return iter(self.as_tuple())

    def to_text(self, sep="|"):
        return sep.join(fmt_rational(v) for v in self.as_tuple())


def clebsch_invariants(f: BinaryForm):
    """Clebsch's A, B, C, D as transvectants."""
    if f.degree != 6:
        raise ValueError("invariants are defined for sextics")
    c = list(f.coeffs)
    i = transvectant(c, c, 4)
    delta = transvectant(i, i, 2)
    y1 = transvectant(c, i, 4)
    y2 = transvectant(i, y1, 2)
    y3 = transvectant(i, y2, 2)
    A = transvectant(c, c, 6)[0]
    B = transvectant(i, i, 4)[0]
    C = transvectant(i, delta, 4)[0]
    D = transvectant(y3, y1, 2)[0]
    return A, B, C, D


def igusa_clebsch(f: BinaryForm):
    """(I2, I4, I6, I10); I10 is the discriminant of f."""
    A, B, C, D = clebsch_invariants(f)
    I2 = -120 * A
    I4 = -720 * A ** 2 + 6750 * B
    I6 = 8640 * A ** 3 - 108000 * A * B + 202500 * C
    I10 = (-62208 * A ** 5 + 972000 * A ** 3 * B + 1620000 * A ** 2 * C
           - 3037500 * A * B ** 2 - 6075000 * B * C - 4556250 * D)
    return I2, I4, I6, I10


def igusa(f: BinaryForm) -> Genus2Invariants:
    I2, I4, I6, I10 = (Fraction(v) for v in igusa_clebsch(f))
    J2 = I2 / 8
    J4 = (4 * J2 ** 2 - I4) / 96
    J6 = (8 * J2 ** 3 - 160 * J2 * J4 - I6) / 576
    J10 = I10 / 4096
    return Genus2Invariants(J2, J4, J6, J10)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuliKey:
    """Integer representative of (J2 : J4 : J6 : J10) up to C-isomorphism.

    Two sextics with equal keys give isomorphic curves over the algebraic
    closure.  ``pattern`` records which entries vanish, e.g. "1001".
    """

    values: tuple
    pattern: str

    def to_text(self):
        return "|".join(str(v) for v in self.values)

    @staticmethod
    def from_text(text: str) -> "ModuliKey":
        vals = tuple(int(v) for v in text.split("|"))
        return ModuliKey(vals, "".join("0" if v == 0 else "1" for v in vals))


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def moduli_key(inv) -> ModuliKey:
    Js = [Fraction(v) for v in (inv.as_tuple() if isinstance(inv, Genus2Invariants) else inv)]
    if all(v == 0 for v in Js):
        raise ValueError("all invariants vanish")
    pattern = "".join("0" if v == 0 else "1" for v in Js)
    nz = [k for k, v in enumerate(Js) if v != 0]
    if reduce(gcd, (WEIGHTS[k] for k in nz)) != 1:
        # a single nonzero entry: any rescaling reaches 1 over C
        vals = [0, 0, 0, 0]
        vals[nz[0]] = 1
        return ModuliKey(tuple(vals), pattern)
    L = reduce(lcm, (v.denominator for v in Js), 1)
    ints = [int(v * L ** w) for v, w in zip(Js, WEIGHTS)]
    g = reduce(gcd, (abs(ints[k]) for k in nz))
    for p in factor(g):
        m = min(_valuation(ints[k], p) // WEIGHTS[k] for k in nz)
        if m:
            ints = [v // p ** (m * w) for v, w in zip(ints, WEIGHTS)]
    # mu = -1 flips the odd-weight entries J2, J6, J10
    for k in (3, 0, 2):
        if ints[k] != 0:
            if ints[k] < 0:
                ints = [-v if w % 2 else v for v, w in zip(ints, WEIGHTS)]
            break
    return ModuliKey(tuple(ints), pattern)


def same_moduli_point(f: BinaryForm, g: BinaryForm) -> bool:
    return moduli_key(igusa(f)) == moduli_key(igusa(g))


def absolute_invariants(inv: Genus2Invariants):
    """(i1, i2, i3) = (144 J4/J2^2, -1728 (J2 J4 - 3 J6)/J2^3, 486 J10/J2^5).

    None when J2 = 0.
    """
    J2, J4, J6, J10 = inv.as_tuple()
    if J2 == 0:
        return None
    return (144 * J4 / J2 ** 2, -1728 * (J2 * J4 - 3 * J6) / J2 ** 3, 486 * J10 / J2 ** 5)


# ---------------------------------------------------------------------------
# automorphisms

class AutLabel(enum.Enum):
    C2 = (1, (2, 1))
    V4 = (2, (4, 2))
    D4 = (4, (8, 3))
    D6 = (6, (12, 4))
    G24 = (12, None)
    G48 = (24, (48, 5))
    C10 = (5, (10, 2))

    @property
    def reduced_order(self) -> int:
        return self.value[0]

    @property
    def order(self) -> int:
        return 2 * self.value[0]

    @property
    def group_id(self):
        return self.value[1]

    def __str__(self):
        return self.name

    @staticmethod
    def from_reduced_order(k: int) -> "AutLabel":
        for lab in AutLabel:
            if lab.reduced_order == k:
                return lab
        raise ValueError("no genus 2 automorphism group with reduced order %d" % k)

    @staticmethod
    def parse(text: str) -> "AutLabel":
        t = text.strip()
        if t in AutLabel.__members__:
            return AutLabel[t]
        nums = tuple(int(v) for v in t.strip("[]").replace(" ", "").split(","))
        for lab in AutLabel:
            if lab.group_id == nums:
                return lab
        raise ValueError("unknown automorphism label %r" % text)


def _cross_ratio_map(p):
    p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2]
    # x -> (x - p1)(p2 - p3) / ((x - p3)(p2 - p1)) sends p1, p2, p3 to 0, 1, inf
    M = np.empty(p.shape[:-1] + (2, 2), dtype=complex)
    M[..., 0, 0] = p2 - p3
    M[..., 0, 1] = -p1 * (p2 - p3)
    M[..., 1, 0] = p2 - p1
    M[..., 1, 1] = -p3 * (p2 - p1)
    return M


def _mobius(M, z):
    return (M[..., 0, 0, None] * z + M[..., 0, 1, None]) / (M[..., 1, 0, None] * z + M[..., 1, 1, None])


def _normalize(M):
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    M = M / np.sqrt(det)
    # fix the sign ambiguity
    flat = M.ravel()
    k = int(np.argmax(np.abs(flat) > 1e-9))
    if flat[k].real < 0 or (abs(flat[k].real) < 1e-12 and flat[k].imag < 0):
        M = -M
    return M


def reduced_automorphisms(f: BinaryForm, tol: float = 1e-7):
    """Mobius maps permuting the roots of f, as normalized 2x2 complex arrays."""
    from .numerics import complex_roots

    if f.degree != 6:
        raise ValueError("degree 6 expected")
    C = finite_chart(f)
    g = transform(f, C) if f.leading() == 0 else f
    r = np.array(complex_roots(g).roots)
    scale = max(1.0, float(np.abs(r).max()))
    triples = np.array(list(itertools.permutations(range(6), 3)))
    A = _cross_ratio_map(r[:3][None, :])[0]
    B = _cross_ratio_map(r[triples])
    Ms = np.linalg.inv(B) @ A
    with np.errstate(all="ignore"):
        img = _mobius(Ms, r)                     # (120, 6)
    dist = np.abs(img[:, :, None] - r[None, None, :])
    nearest = dist.argmin(axis=2)
    ok = np.all(dist.min(axis=2) <= tol * scale, axis=1)
    out = []
    for k in np.nonzero(ok)[0]:
        if len(set(nearest[k].tolist())) == 6:
            out.append(_normalize(Ms[k]))
    if C.c != 0 and f.leading() == 0:
        # back to the original coordinates: roots(f) = C . roots(g)
        Cm = np.array([[float(C.a), float(C.b)], [float(C.c), float(C.d)]], dtype=complex)
        Ci = np.linalg.inv(Cm)
        out = [_normalize(Cm @ M @ Ci) for M in out]
    return out


def is_group(maps, tol: float = 1e-6) -> bool:
    def find(M):
        return any(np.allclose(M, N, atol=tol) or np.allclose(M, -N, atol=tol) for N in maps)
    ident = np.eye(2)
    if not find(ident):
        return False
    for M in maps:
        if not find(np.linalg.inv(M)):
            return False
        for N in maps:
            if not find(M @ N):
                return False
    return True


def aut_label(f: BinaryForm) -> AutLabel:
    last = None
    for tol in (1e-7, 1e-9, 1e-6):
        maps = reduced_automorphisms(f, tol)
        last = len(maps)
        try:
            return AutLabel.from_reduced_order(last)
        except ValueError:
            continue
    raise ArithmeticError("automorphism count %d outside the genus 2 classification" % last)
