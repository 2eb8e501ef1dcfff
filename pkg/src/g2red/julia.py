"""Julia quadratic, Julia invariant and zero map.

Each real root alpha gets a weight u > 0 and contributes u (x - alpha z)^2;
each conjugate pair beta gets a weight w > 0 and contributes
2 w (x - beta z)(x - conj(beta) z).  The sum Q is positive definite and

    theta0 = a_n^2 |disc Q|^(n/2) / (prod u * prod w^2).

theta0 is minimized in log coordinates xi = log(weight), where
(n/2) log|disc Q| - sum m_k xi_k is convex (m_k = 1 for real roots, 2 for
pairs) and constant along the all-ones direction.  Damped Newton with a
backtracking line search does the work.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .forms import BinaryForm, UnimodularMap, transform
from .numerics import DEFAULT_TOL, RootSet, complex_roots

log = logging.getLogger(__name__)

MAX_NEWTON = 200


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class JuliaWeights:
    real_weights: tuple
    pair_weights: tuple

    def normalized(self) -> "JuliaWeights":
        s = sum(math.log(u) for u in self.real_weights) + 2 * sum(math.log(w) for w in self.pair_weights)
        n = len(self.real_weights) + 2 * len(self.pair_weights)
        c = math.exp(-s / n)
        return JuliaWeights(tuple(u * c for u in self.real_weights),
                            tuple(w * c for w in self.pair_weights))

    def as_array(self):
        return np.array(list(self.real_weights) + list(self.pair_weights), dtype=float)

    @staticmethod
    def units(roots: RootSet) -> "JuliaWeights":
        r, s = roots.signature
        return JuliaWeights((1.0,) * r, (1.0,) * s)


@dataclass(frozen=True)
class JuliaResult:
    """Output of minimize_theta.

    julia_quadratic is the ascending triple (c0, c1, c2) of
    c2 x^2 + c1 x z + c0 z^2, built from the normalized weights.
    """

    weights: JuliaWeights
    julia_quadratic: tuple
    theta: float
    zero: complex
    grad_norm: float
    iterations: int
    residuals: tuple = field(default=())
    roots: Optional[RootSet] = None


# ---------------------------------------------------------------------------

def _pieces(roots: RootSet):
    """Per-weight quadratics (A, B, C) for A x^2 + B x + C, and multiplicities."""
    q = []
    for a in roots.real_roots:
        q.append((1.0, -2.0 * a, a * a))
    for b in roots.pair_roots:
        q.append((2.0, -4.0 * b.real, 2.0 * abs(b) ** 2))
    m = [1.0] * len(roots.real) + [2.0] * len(roots.pairing)
    return np.array(q, dtype=float).reshape(-1, 3), np.array(m)


def _gram(q):
    # |disc| = 4AC - B^2 = v^T K v with nonnegative entries
    A, B, C = q[:, 0], q[:, 1], q[:, 2]
    return 2.0 * (np.outer(A, C) + np.outer(C, A)) - np.outer(B, B)


def q_f(roots: RootSet, w: JuliaWeights) -> tuple:
    """Ascending coefficients (c0, c1, c2) of T_r + S_s."""
    q, _ = _pieces(roots)
    v = w.as_array()
    A, B, C = v @ q
    return (float(C), float(B), float(A))


def disc_qf(roots: RootSet, w: JuliaWeights) -> float:
    """Discriminant of q_f written out as pairwise sums of root distances."""
    t = list(w.real_weights)
    u = list(w.pair_weights)
    al = roots.real_roots
    be = roots.pair_roots
    dT = 0.0
    for i in range(len(al)):
        for j in range(i + 1, len(al)):
            dT += t[i] * t[j] * (al[i] - al[j]) ** 2
    dT *= -4.0
    dS = 0.0
    for i in range(len(be)):
        for j in range(i + 1, len(be)):
            dS += u[i] * u[j] * ((be[i].real - be[j].real) ** 2 + be[i].imag ** 2 + be[j].imag ** 2)
    dS += sum(u[j] ** 2 * be[j].imag ** 2 for j in range(len(be)))
    dS *= -16.0
    mixed = 0.0
    for i in range(len(al)):
        for j in range(len(be)):
            mixed += t[i] * u[j] * ((al[i] - be[j].real) ** 2 + be[j].imag ** 2)
    return dT + dS - 8.0 * mixed


def theta0(f: BinaryForm, roots: RootSet, w: JuliaWeights) -> float:
    n = f.degree
    D = abs(disc_qf(roots, w))
    den = 1.0
    for x in w.real_weights:
        den *= x
    for x in w.pair_weights:
        den *= x * x
    return float(f.leading()) ** 2 * D ** (n / 2.0) / den


def _zero_of(Q):
    c0, c1, c2 = Q
    return complex(-c1 / (2 * c2) + 0.0, math.sqrt(max(4 * c2 * c0 - c1 * c1, 0.0)) / (2 * c2))


def stationarity_residuals(roots: RootSet, w: JuliaWeights, n: int) -> tuple:
    """Relative residuals of the Lagrange equations, one per weight.

    For weight k: (n/2) * d log|D| / d xi_k = m_k.  For a totally real form
    this reads n S_i = 2 D', S_i = sum_j u_i u_j (alpha_i - alpha_j)^2 and D'
    the same sum over all pairs.
    """
    q, m = _pieces(roots)
    K = _gram(q)
    v = w.as_array()
    Kv = K @ v
    D = v @ Kv
    grad = (n / 2.0) * 2.0 * Kv * v / D
    return tuple(float(x) for x in (grad - m) / m)


def _grad_norm(K, m, n, x):
    with np.errstate(over="ignore", invalid="ignore"):
        v = np.exp(x)
        Kv = K @ v
        g = n * Kv * v / (v @ Kv) - m
    return float(np.linalg.norm(g)) if np.all(np.isfinite(g)) else np.inf


def minimize_theta(f: BinaryForm, tol: float = DEFAULT_TOL, roots: Optional[RootSet] = None,
                   start=None) -> JuliaResult:
    """Minimize theta0 over the root weights of f (finite roots required)."""
    n = f.degree
    if n < 2 or n > 10:
        raise ValueError("supported degrees are 2..10")
    if roots is None:
        roots = complex_roots(f)
    q, m = _pieces(roots)
    scale = max(1.0, float(np.max(np.abs(q))))
    K = _gram(q / scale)
    k = len(m)
    xi = np.zeros(k) if start is None else np.log(np.asarray(start, dtype=float))
    ones = np.ones(k)

    def phi(x):
        with np.errstate(over="ignore", invalid="ignore"):
            v = np.exp(x)
            D = v @ K @ v
        if not np.isfinite(D) or D <= 0:
            return np.inf
        return n / 2.0 * math.log(D) - m @ x

    gnorm = np.inf
    it = 0
    stalled = 0
    for it in range(MAX_NEWTON + 1):
        v = np.exp(xi)
        Kv = K @ v
        D = v @ Kv
        gD = 2.0 * Kv * v
        g = n / 2.0 * gD / D - m
        gnorm = float(np.linalg.norm(g))
        if gnorm <= tol:
            break
        if it == MAX_NEWTON:
            break
        HD = 2.0 * np.diag(Kv * v) + 2.0 * np.outer(v, v) * K
        H = n / 2.0 * (HD / D - np.outer(gD, gD) / D ** 2)
        Hp = H + np.outer(ones, ones) / k
        try:
            step = -np.linalg.solve(Hp, g)
        except np.linalg.LinAlgError:
            step = -g
        f0 = phi(xi)
        slope = g @ step
        if slope >= 0:
            step = -g
            slope = -gnorm ** 2
        t = 1.0
        if gnorm < 1e-6 and _grad_norm(K, m, n, xi + step) < gnorm:
            # phi is flat to rounding here, so judge the full Newton step by the gradient
            xi = xi + step
            xi = xi - (m @ xi) / n
            continue
        while t > 1e-14:
            ft = phi(xi + t * step)
            if np.isfinite(ft) and ft <= f0 + 1e-4 * t * slope:
                break
            t *= 0.5
        else:
            # no decrease available: we are at the floating point floor
            stalled += 1
            if stalled > 2:
                break
            continue
        xi = xi + t * step
        # keep the gauge fixed so exp() stays tame
        xi = xi - (m @ xi) / n
    if gnorm > max(tol, 1e-9):
        raise ConvergenceError("theta minimization did not converge (|grad| = %.3g)" % gnorm)
    xi = xi - (m @ xi) / n
    v = np.exp(xi)
    r = len(roots.real)
    w = JuliaWeights(tuple(float(x) for x in v[:r]), tuple(float(x) for x in v[r:]))
    Q = q_f(roots, w)
    res = stationarity_residuals(roots, w, n)
    return JuliaResult(weights=w, julia_quadratic=Q, theta=theta0(f, roots, w),
                       zero=_zero_of(Q), grad_norm=gnorm, iterations=it,
                       residuals=res, roots=roots)


def finite_chart(f: BinaryForm):
    """A unimodular M with f^M having no root at infinity (identity if fine)."""
    if f.leading() != 0:
        return UnimodularMap.identity()
    # f^M (1, 0) = f(a, c); take (a, c) = (1, k)
    for k in range(1, f.degree + 2):
        if f(1, k) != 0:
            return UnimodularMap(1, 0, k, 1)
    raise ValueError("form vanishes identically on test points")


def julia(f: BinaryForm, tol: float = DEFAULT_TOL) -> JuliaResult:
    """minimize_theta, moving to a finite chart first when a_n = 0.

    The returned quadratic and zero refer to f itself.
    """
    M = finite_chart(f)
    if M == UnimodularMap.identity():
        return minimize_theta(f, tol)
    g = transform(f, M)
    res = minimize_theta(g, tol)
    # zeta(f) = M . zeta(f^M); J_f = (J_g)^(M^-1)
    zf = M.mobius(res.zero)
    Minv = M.inverse()
    c0, c1, c2 = res.julia_quadratic
    a, b, c, d = (float(x) for x in Minv.as_tuple())
    # (c2 X^2 + c1 X Z + c0 Z^2) with X = a x + b z, Z = c x + d z
    n2 = c2 * a * a + c1 * a * c + c0 * c * c
    n1 = 2 * c2 * a * b + c1 * (a * d + b * c) + 2 * c0 * c * d
    n0 = c2 * b * b + c1 * b * d + c0 * d * d
    return JuliaResult(weights=res.weights, julia_quadratic=(n0, n1, n2), theta=res.theta,
                       zero=zf, grad_norm=res.grad_norm, iterations=res.iterations,
                       residuals=res.residuals, roots=res.roots)


def zero_map(f: BinaryForm, tol: float = DEFAULT_TOL) -> complex:
    return julia(f, tol).zero


def theta(f: BinaryForm, tol: float = DEFAULT_TOL) -> float:
    return julia(f, tol).theta
