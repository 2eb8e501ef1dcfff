"""Root finding and exact real-root counting.

Complex roots come from an Aberth-Ehrlich iteration followed by Newton
polishing; real-root counts come from Sturm sequences over the rationals,
which is what decides how the numeric roots are split into real roots and
conjugate pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .forms import BinaryForm, discriminant

DEFAULT_TOL = 1e-12
PAIR_TOL = 1e-9
REFINE_TOL = 1e-13
MAX_SWEEPS = 1000


class RootFindingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Signature:
    r: int
    s: int

    def __iter__(self):
        return iter((self.r, self.s))


@dataclass(frozen=True)
class RootSet:
    """Roots of f(x, 1), split into real roots and conjugate pairs.

    ``pairing`` lists index pairs (i, j) into ``roots`` with roots[i] in the
    upper half plane and roots[j] its conjugate; ``real`` lists the indices
    of real roots.
    """

    roots: tuple
    residual_bound: float
    real: tuple = ()
    pairing: tuple = ()

    @property
    def real_roots(self) -> list:
        return [self.roots[i].real for i in self.real]

    @property
    def pair_roots(self) -> list:
        """Upper half plane representatives of the conjugate pairs."""
        return [self.roots[i] for i, _ in self.pairing]

    @property
    def signature(self) -> Signature:
        return Signature(len(self.real), len(self.pairing))


# ---------------------------------------------------------------------------

def _horner(c, z):
    """p(z) and p'(z) for ascending complex coefficients c (vectorized in z)."""
    p = np.zeros_like(z) + c[-1]
    dp = np.zeros_like(z)
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _scale(c, z):
    """sum |c_i| |z|^i, the natural size of p(z); used for residuals."""
    az = np.abs(z)
    s = np.zeros_like(az) + abs(c[-1])
    for a in c[-2::-1]:
        s = s * az + abs(a)
    return s


def fujiwara_bound(c) -> float:
    n = len(c) - 1
    lead = abs(c[-1])
    terms = [abs(c[n - k] / lead) ** (1.0 / k) for k in range(1, n)]
    terms.append(abs(c[0] / (2 * lead)) ** (1.0 / n))
    return 2.0 * max(terms)


def aberth(c, tol=DEFAULT_TOL, max_sweeps=MAX_SWEEPS):
    """All complex roots of the polynomial with ascending coefficients c.

    Coefficients are complex doubles.  Returns (roots, max relative residual).
    """
    with np.errstate(all="ignore"):
        return _aberth(c, tol, max_sweeps)


def _aberth(c, tol, max_sweeps):
    c = np.asarray(c, dtype=complex)
    n = len(c) - 1
    if n < 1 or c[-1] == 0:
        raise ValueError("need degree >= 1 with nonzero leading coefficient")
    c = c / c[-1]
    if n == 1:
        r = np.array([-c[0]])
        return r, 0.0
    R = fujiwara_bound(c)
    if R == 0:
        R = 1.0
    # deterministic perturbed circle
    ang = 2 * np.pi * np.arange(n) / n + 0.4
    z = R * np.exp(1j * ang) * (1 + 0.01 * np.arange(n) / n)
    eps = np.finfo(float).eps
    for sweep in range(max_sweeps):
        p, dp = _horner(c, z)
        ratio = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        w = ratio / (1 - ratio * s)
        bad = ~np.isfinite(w)
        if bad.any():
            w[bad] = 0.0
            z[bad] = z[bad] * (1 + 1e-3j) + 1e-3
        z = z - w
        if np.all(np.abs(w) <= 4 * eps * np.maximum(np.abs(z), 1e-300)) and not bad.any():
            break
        res = np.abs(_horner(c, z)[0]) / _scale(c, z)
        if np.all(res <= eps * n):
            break
    else:
        res = np.abs(_horner(c, z)[0]) / _scale(c, z)
        if np.max(res) > tol:
            raise RootFindingError("Aberth iteration did not converge")
    z = _polish(c, z)
    res = np.abs(_horner(c, z)[0]) / _scale(c, z)
    return z, float(np.max(res))


def _polish(c, z, steps=4):
    best = z.copy()
    best_res = np.abs(_horner(c, best)[0]) / _scale(c, best)
    for _ in range(steps):
        p, dp = _horner(c, best)
        with np.errstate(all="ignore"):
            cand = best - p / dp
        cand = np.where(np.isfinite(cand), cand, best)
        r = np.abs(_horner(c, cand)[0]) / _scale(c, cand)
        better = r < best_res
        if not better.any():
            break
        best = np.where(better, cand, best)
        best_res = np.where(better, r, best_res)
    return best


# ---------------------------------------------------------------------------
# Sturm sequences, exact

def _strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _rem(a, b):
    a = [Fraction(v) for v in a]
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bv in enumerate(b):
            a[shift + i] -= q * bv
        a.pop()
        a = _strip(a)
    return a


def _primitive_int(p):
    # keep numbers small: positive rescaling does not change signs
    dens = 1
    for v in p:
        dens = dens * v.denominator // math.gcd(dens, v.denominator)
    ints = [int(v * dens) for v in p]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [Fraction(v // g) for v in ints]


def sturm_sequence(p: Sequence) -> list:
    p0 = _strip([Fraction(v) for v in p])
    if not p0:
        raise ValueError("zero polynomial")
    seq = [_primitive_int(p0)]
    d = [i * p0[i] for i in range(1, len(p0))]
    if not _strip(d):
        return seq
    seq.append(_primitive_int(d))
    while True:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_primitive_int([-v for v in r]))
    return seq


def _sign_changes(vals):
    signs = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _eval_at(seq, x):
    out = []
    for q in seq:
        acc = Fraction(0)
        for a in reversed(q):
            acc = acc * x + a
        out.append(acc)
    return out


def _at_inf(seq, sign):
    out = []
    for q in seq:
        deg = len(q) - 1
        out.append(q[-1] * (sign ** deg))
    return out


def sturm_real_count(p: Sequence, interval=(None, None)) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    ``p`` is an ascending list of integers or rationals.  ``None`` endpoints
    mean -inf / +inf.  Squarefreeness is not required for the count of
    distinct roots, but callers here always pass squarefree input.
    """
    seq = sturm_sequence(p)
    lo, hi = interval
    v_lo = _sign_changes(_at_inf(seq, -1) if lo is None else _eval_at(seq, Fraction(lo)))
    v_hi = _sign_changes(_at_inf(seq, 1) if hi is None else _eval_at(seq, Fraction(hi)))
    return v_lo - v_hi


def signature(f: BinaryForm) -> Signature:
    if discriminant(f) == 0:
        raise ValueError("form has repeated roots")
    coeffs = list(f.coeffs)
    extra = 0
    while coeffs[-1] == 0:
        # root at infinity
        coeffs.pop()
        extra += 1
    r = (sturm_real_count(coeffs) if len(coeffs) > 1 else 0) + extra
    return Signature(r, (f.degree - r) // 2)


# ---------------------------------------------------------------------------

def _sort_key(z):
    return (round(z.real, 9), z.real, z.imag)


def _classify(z, r):
    """Split numeric roots into r real ones and conjugate pairs.

    Returns (real, pairs, gap) where gap is the worst relative defect of the
    split: imaginary noise on the real roots or conjugate mismatch.
    """
    order = sorted(range(len(z)), key=lambda i: abs(z[i].imag))
    gap = 0.0
    real = []
    for i in order[:r]:
        gap = max(gap, abs(z[i].imag) / max(1.0, abs(z[i])))
        real.append(complex(z[i].real, 0.0))
    cplx = [complex(z[i]) for i in order[r:]]
    upper = sorted((w for w in cplx if w.imag > 0), key=_sort_key)
    lower = [w for w in cplx if w.imag <= 0]
    if len(upper) != len(lower):
        return real, None, math.inf
    pairs = []
    for w in upper:
        j = min(range(len(lower)), key=lambda k: abs(lower[k] - w.conjugate()))
        wb = lower.pop(j)
        gap = max(gap, abs(wb - w.conjugate()) / max(1.0, abs(w)))
        pairs.append(complex(0.5 * (w.real + wb.real), 0.5 * (w.imag - wb.imag)))
    return real, pairs, gap


def complex_roots(f: BinaryForm, tol: float = DEFAULT_TOL, check: bool = True) -> RootSet:
    """Roots of f(x, 1), classified into real roots and conjugate pairs.

    The number of real roots is fixed by an exact Sturm count; the numeric
    roots closest to the real axis are declared real.
    """
    if f.degree < 1:
        raise ValueError("degree must be at least 1")
    if f.leading() == 0:
        raise ValueError("root at infinity; apply a unimodular shift first")
    if check and f.degree >= 2 and discriminant(f) == 0:
        raise ValueError("form has repeated roots")
    z, res = aberth(f.float_coeffs(), tol)
    if res > tol:
        raise RootFindingError("root residual %.3g exceeds tolerance %.3g" % (res, tol))
    r = sturm_real_count(f.coeffs)
    real, pairs, gap = _classify(z, r)
    if gap > REFINE_TOL:
        # ill-conditioned in double precision: polish every root with exact coefficients
        z = np.array([refine_root_mp(f.coeffs, complex(w)) for w in z])
        real, pairs, gap = _classify(z, r)
        if pairs is None or gap > PAIR_TOL:
            # Newton can pull two clustered roots together; solve all at once instead
            real, pairs, gap = _classify(np.array(all_roots_mp(f.coeffs)), r)
    if pairs is None or gap > PAIR_TOL:
        raise RootFindingError("conjugate pairing failed (%.3g)" % gap)
    real.sort(key=lambda w: w.real)
    roots = []
    real_idx = []
    for w in real:
        real_idx.append(len(roots))
        roots.append(w)
    pair_idx = []
    for w in pairs:
        pair_idx.append((len(roots), len(roots) + 1))
        roots.extend([w, w.conjugate()])
    # deterministic order by real part then imaginary part, keep index maps
    perm = sorted(range(len(roots)), key=lambda i: (roots[i].real, roots[i].imag))
    where = {old: new for new, old in enumerate(perm)}
    roots_sorted = tuple(roots[i] for i in perm)
    return RootSet(roots=roots_sorted,
                   residual_bound=res,
                   real=tuple(where[i] for i in real_idx),
                   pairing=tuple((where[i], where[j]) for i, j in pair_idx))


def all_roots_mp(coeffs: Sequence, dps: int = 60):
    """All complex roots of an exact polynomial (ascending), via mpmath.polyroots."""
    import mpmath

    with mpmath.workdps(dps):
        cs = [mpmath.mpf(Fraction(v).numerator) / Fraction(v).denominator for v in reversed(coeffs)]
        return [complex(w) for w in mpmath.polyroots(cs, maxsteps=500, extraprec=4 * dps)]


def refine_root_mp(coeffs: Sequence, z0: complex, dps: int = 50, steps: int = 60):
    """Newton refinement of one root in extended precision (mpmath)."""
    import mpmath

    with mpmath.workdps(dps):
        cs = [mpmath.mpf(Fraction(v).numerator) / Fraction(v).denominator for v in coeffs]
        z = mpmath.mpc(z0)
        for _ in range(steps):
            p = mpmath.mpf(0)
            dp = mpmath.mpf(0)
            for a in reversed(cs):
                dp = dp * z + p
                p = p * z + a
            if dp == 0:
                break
            step = p / dp
            z -= step
            if abs(step) <= mpmath.mpf(10) ** (-dps + 5) * max(1, abs(z)):
                break
        return complex(z)
