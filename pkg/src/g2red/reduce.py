"""Reduction of binary forms through the zero map.

A form is reduced when its zero map lies in the fundamental domain
F = {|Re w| <= 1/2, |w| >= 1}.  If N moves zeta(f) into F, then f^(N^-1) is
reduced, because zeta(f^M) = M^-1 . zeta(f).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .forms import (BinaryForm, LinearMap, UnimodularMap,
                    even_part_decompose, height, primitive, reverse, transform)
from .julia import zero_map
from .numerics import DEFAULT_TOL

log = logging.getLogger(__name__)

BOUNDARY_EPS = 1e-12
DEFAULT_PRIMES = (2, 3, 5, 7)


def in_fundamental_domain(w: complex, eps: float = 1e-9) -> bool:
    return abs(w.real) <= 0.5 + eps and abs(w) >= 1 - eps and w.imag > 0


def to_fundamental_domain(w: complex, max_steps: int = 100000):
    """Gauss reduction: returns (w', M, moves) with w' = M . w in F.

    Ties on the boundary go to the representative with Re w' >= 0.
    """
    w = complex(w)
    if not w.imag > 0:
        raise ValueError("point must lie in the upper half plane")
    N = UnimodularMap.identity()
    moves = []
    S = UnimodularMap.inversion()
    for _ in range(max_steps):
        k = math.floor(w.real + 0.5)
        if k:
            w -= k
            T = UnimodularMap.shift(-k)
            N = T @ N
            moves.append(T)
        if abs(w) < 1 - BOUNDARY_EPS:
            w = -1 / w
            N = S @ N
            moves.append(S)
            continue
        break
    else:
        raise RuntimeError("fundamental domain reduction did not terminate")
    if abs(w.real + 0.5) <= BOUNDARY_EPS:
        w += 1
        T = UnimodularMap.shift(1)
        N = T @ N
        moves.append(T)
    if abs(abs(w) - 1) <= BOUNDARY_EPS and w.real < -BOUNDARY_EPS:
        w = -1 / w
        N = S @ N
        moves.append(S)
    return w, N, moves


@dataclass(frozen=True)
class ReductionTrace:
    input: BinaryForm
    moves: tuple
    final_map: UnimodularMap
    reduced: BinaryForm
    final_zero: complex
    initial_zero: complex


def reduce_form(f: BinaryForm, tol: float = DEFAULT_TOL, verify: bool = True) -> ReductionTrace:
    z = zero_map(f, tol)
    w, N, moves = to_fundamental_domain(z)
    g = transform(f, N.inverse())
    if verify:
        zg = zero_map(g, tol)
        if not in_fundamental_domain(zg, 1e-8):
            log.warning("reduced form has zero %r outside the fundamental domain", zg)
    return ReductionTrace(input=f, moves=tuple(moves), final_map=N, reduced=g,
                          final_zero=w, initial_zero=z)


def sl2_reduce(f: BinaryForm, tol: float = DEFAULT_TOL) -> BinaryForm:
    return primitive(reduce_form(f, tol, verify=False).reduced)


# ---------------------------------------------------------------------------

def _primes_upto(n):
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = False
    return out


def scale_substitution(f: BinaryForm, max_prime: int = 100):
    """Greedy x -> u x / x -> x / u rescaling with content removal.

    Tries primes p <= max_prime, accepting a move only when the height of the
    primitive result drops; repeated moves give prime powers.  Returns
    (model, u) where the model is proportional to f(u x, z).
    """
    g = primitive(f)
    u = Fraction(1)
    primes = _primes_upto(max_prime)
    while True:
        h = height(g)
        best = None
        for p in primes:
            for s in (Fraction(p), Fraction(1, p)):
                cand = primitive(transform(g, LinearMap(s, 0, 0, 1)))
                hc = height(cand)
                if hc < h and (best is None or hc < best[0]):
                    best = (hc, cand, s)
        if best is None:
            return g, u
        _, g, s = best
        u *= s


def variants(f: BinaryForm):
    """f, f(-x, z), f(-z, x), f(z, x): the dihedral relatives of equal height."""
    neg = LinearMap(-1, 0, 0, 1)
    r = reverse(f)
    return [f, transform(f, neg), r, transform(r, neg)]


def normalize_model(f: BinaryForm) -> BinaryForm:
    """Canonical choice among the variants: the lexicographically largest
    ascending coefficient vector."""
    return max(variants(primitive(f)), key=lambda g: g.coeffs)


def hecke_neighbours(f: BinaryForm, primes=DEFAULT_PRIMES):
    """Primitive models f(px, z) and f(x, jx + pz), 0 <= j < p."""
    for p in primes:
        yield primitive(transform(f, LinearMap(p, 0, 0, 1)))
        for j in range(p):
            yield primitive(transform(f, LinearMap(1, 0, j, p)))


@dataclass(frozen=True)
class PipelineResult:
    input: BinaryForm
    trace: ReductionTrace
    scaled: BinaryForm
    scale: Fraction
    descent: tuple
    model: BinaryForm

    @property
    def height(self) -> int:
        return height(self.model)


def reduce_pipeline(f: BinaryForm, primes=DEFAULT_PRIMES, max_rounds: int = 50,
                    tol: float = DEFAULT_TOL) -> PipelineResult:
    """Reduce, rescale, then descend through prime-index neighbours.

    Every step is a rational substitution followed by content removal, so all
    intermediate models describe the same point of the moduli space.
    """
    f0 = primitive(f)
    trace = reduce_form(f0, tol)
    g = primitive(trace.reduced)
    scaled, u = scale_substitution(g)
    cur = scaled
    if height(f0) < height(cur):
        cur = f0
    path = []
    for _ in range(max_rounds):
        h = height(cur)
        best = None
        for nb in hecke_neighbours(cur, primes):
            try:
                cand = sl2_reduce(nb, tol)
            except Exception as exc:  # pragma: no cover - numerical corner
                log.debug("neighbour skipped: %s", exc)
                continue
            if height(cand) < h and (best is None or height(cand) < height(best)):
                best = cand
        if best is None:
            break
        cur = best
        path.append(best)
    return PipelineResult(input=f, trace=trace, scaled=scaled, scale=u,
                          descent=tuple(path), model=normalize_model(cur))


def reduce_even_form(f: BinaryForm, tol: float = DEFAULT_TOL) -> BinaryForm:
    """For f = g(x^2, z^2): zeta(f) = c i, so f or f(-z, x) is reduced."""
    if even_part_decompose(f) is None:
        raise ValueError("form is not even")
    if not f.is_integral():
        raise ValueError("integral form expected")
    z = zero_map(f, tol)
    if abs(z.real) > 1e-8 * max(1.0, abs(z)):
        log.error("zero map of an even form is not purely imaginary: %r", z)
        raise ArithmeticError("zero map of an even form is not purely imaginary: %r" % z)
    return f if abs(z) >= 1 else reverse(f)
