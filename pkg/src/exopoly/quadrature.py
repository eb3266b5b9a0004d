"""Gauss-Jacobi / Gauss-Laguerre quadrature against quasi-rational weights.

The singular endpoint behaviour of a weight is absorbed into a classical
Gauss rule; the remaining smooth factor is sampled at the nodes.  Nodes start
from Golub-Welsch (numpy) and are polished by Newton steps in mpmath.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import mpmath
import numpy as np

from .quasirational import QuasiRational
from .ratpoly import RationalPoly, as_rat

DPS = 40
MP_NODE_LIMIT = 256  # above this, float64 Newton + Christoffel weights


class QuadratureError(ArithmeticError):
    """No convergence before the node cap."""


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class GaussRule:
    nodes: tuple
    weights: tuple


# -- recurrence data ----------------------------------------------------------------


def _jacobi_recurrence(n: int, a, b):
    """(diag, offdiag^2, mu0) of the monic Jacobi recurrence on (-1, 1)."""
    diag, off2 = [], []
    for k in range(n):
        s = 2 * k + a + b
        if k == 0:
            diag.append((b - a) / (a + b + 2))
        else:
            diag.append((b * b - a * a) / (s * (s + 2)))
    for k in range(1, n):
        s = 2 * k + a + b
        if k == 1:
            off2.append(4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b)))
        else:
            off2.append(4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1)))
    mu0 = mpmath.power(2, a + b + 1) * mpmath.gamma(a + 1) * mpmath.gamma(b + 1) / mpmath.gamma(a + b + 2)
    return diag, off2, mu0


def _laguerre_recurrence(n: int, a):
    diag = [2 * k + a + 1 for k in range(n)]
    off2 = [k * (k + a) for k in range(1, n)]
    return diag, off2, mpmath.gamma(a + 1)


def _golub_welsch(diag, off2, mu0) -> tuple[np.ndarray, np.ndarray]:
    d = np.array([float(v) for v in diag])
    e = np.sqrt(np.array([float(v) for v in off2]))
    J = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    x, V = np.linalg.eigh(J)
    return x, float(mu0) * V[0, :] ** 2


def _polish(x0, diag, off2, mu0):
    """Newton on the orthonormal p_n, then Christoffel weights 1/sum p_k^2."""
    n = len(diag)
    sq = [mpmath.sqrt(v) for v in off2]
    p0 = 1 / mpmath.sqrt(mu0)

    def eval_all(x):
        ps, dps_ = [p0], [mpmath.mpf(0)]
        prev, dprev = mpmath.mpf(0), mpmath.mpf(0)
        cur, dcur = p0, mpmath.mpf(0)
        for k in range(n):
            bk = sq[k - 1] if k > 0 else 0
            nxt_num = (x - diag[k]) * cur - bk * prev
            dnxt_num = cur + (x - diag[k]) * dcur - bk * dprev
            if k == n - 1:
                return ps, nxt_num, dnxt_num
            nxt, dnxt = nxt_num / sq[k], dnxt_num / sq[k]
            prev, dprev, cur, dcur = cur, dcur, nxt, dnxt
            ps.append(cur)
            dps_.append(dcur)
        raise AssertionError

    nodes, weights = [], []
    # quadratic convergence from float64 starts: two evaluations usually suffice,
    # and the last one's values give the Christoffel weight
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps - 15))
    for xf in x0:
        x = mpmath.mpf(xf)
        for _ in range(50):
            ps, pn, dpn = eval_all(x)
            step = pn / dpn
            if abs(step) <= tol * max(1, abs(x)):
                break
            x -= step
        nodes.append(x)
        weights.append(1 / mpmath.fsum(p * p for p in ps))
    return tuple(nodes), tuple(weights)


def _float_rule(x0, diag, off2, mu0):
    """Vectorized float64 Newton step and Christoffel weights.

    Golub-Welsch weights are only absolutely accurate, which is useless where
    the true weight is ~exp(-2000); 1/sum p_k^2 is relatively accurate and
    underflows to 0 cleanly.
    """
    d = np.array([float(v) for v in diag])
    sq = np.sqrt(np.array([float(v) for v in off2]))
    n = len(d)
    p0 = 1 / math.sqrt(float(mu0))

    def sweep(x):
        prev, cur = np.zeros_like(x), np.full_like(x, p0)
        dprev, dcur = np.zeros_like(x), np.zeros_like(x)
        ssum = cur * cur
        for k in range(n):
            bk = sq[k - 1] if k > 0 else 0.0
            nxt = (x - d[k]) * cur - bk * prev
            dnxt = cur + (x - d[k]) * dcur - bk * dprev
            if k == n - 1:
                return nxt, dnxt, ssum
            prev, dprev, cur, dcur = cur, dcur, nxt / sq[k], dnxt / sq[k]
            ssum = ssum + cur * cur

    with np.errstate(over="ignore", invalid="ignore"):
        x = np.asarray(x0, dtype=float)
        pn, dpn, _ = sweep(x)
        step = np.where(np.isfinite(pn / dpn), pn / dpn, 0.0)
        x = x - step
        _, _, ssum = sweep(x)
        w = np.where(np.isfinite(ssum), 1 / ssum, 0.0)
    return tuple(mpmath.mpf(v) for v in x), tuple(mpmath.mpf(v) for v in w)


_cache: dict = {}
_lock = threading.Lock()


def _rule(kind: str, n: int, params: tuple) -> GaussRule:
    key = (kind, n, params)
    with _lock:
        if key in _cache:
            return _cache[key]
    with mpmath.workdps(DPS):
        mp_params = [_mpf(p) for p in params]
        if kind == "jacobi":
            diag, off2, mu0 = _jacobi_recurrence(n, *mp_params)
        else:
            diag, off2, mu0 = _laguerre_recurrence(n, *mp_params)
        x0, w0 = _golub_welsch(diag, off2, mu0)
        if n <= MP_NODE_LIMIT:
            rule = GaussRule(*_polish(x0, diag, off2, mu0))
        else:
            rule = GaussRule(*_float_rule(x0, diag, off2, mu0))
    with _lock:
        _cache[key] = rule
    return rule


def gauss_jacobi(n: int, a, b) -> GaussRule:
    """n-point rule for (1 - t)^a (1 + t)^b on (-1, 1)."""
    return _rule("jacobi", n, (as_rat(a), as_rat(b)))


def gauss_laguerre(n: int, a) -> GaussRule:
    """n-point rule for t^a e^(-t) on (0, inf)."""
    return _rule("laguerre", n, (as_rat(a),))


# -- weighted intervals ---------------------------------------------------------------


def _is_inf(v) -> bool:
    return v is None or (isinstance(v, float) and math.isinf(v))


@dataclass(frozen=True)
class WeightedInterval:
    """A quasi-rational weight on (lo, hi); hi may be None or inf for a half-line."""

    weight: QuasiRational
    interval: tuple

    @cached_property
    def _plan(self):
        lo = as_rat(self.interval[0])
        hi = None if _is_inf(self.interval[1]) else as_rat(self.interval[1])
        ends = {pf.root: pf for pf in self.weight.power_factors if pf.root in (lo, hi)}
        inner = tuple(pf for pf in self.weight.power_factors if pf.root not in ends)
        if hi is None:
            slope = self.weight.exp_part.coeff(1)
            if self.weight.exp_part.degree != 1 or slope >= 0:
                raise ValueError("half-line weights need an exp(-s x) factor with s > 0")
            a = ends[lo].exponent if lo in ends else Fraction(0)
            smooth = QuasiRational(self.weight.constant, inner, RationalPoly(), self.weight.rational_part)
            return ("laguerre", lo, -slope, a, smooth, self.weight.exp_part.coeff(0))
        a = ends[hi].exponent if hi in ends else Fraction(0)
        b = ends[lo].exponent if lo in ends else Fraction(0)
        smooth = QuasiRational(self.weight.constant, inner, self.weight.exp_part, self.weight.rational_part)
        return ("jacobi", lo, hi, a, b, smooth)

    def nodes_and_weights(self, n: int) -> tuple[list, list]:
        """Physical nodes and effective weights (smooth factor folded in)."""
        plan = self._plan
        with mpmath.workdps(DPS):
            if plan[0] == "jacobi":
                _, lo, hi, a, b, smooth = plan
                rule = gauss_jacobi(n, a, b)
                half = _mpf((hi - lo) / 2)
                mid = _mpf((hi + lo) / 2)
                scale = half ** (1 + _mpf(a + b))
                xs = [half * t + mid for t in rule.nodes]
            else:
                _, lo, s, a, smooth, c0 = plan
                rule = gauss_laguerre(n, a)
                sm = _mpf(s)
                scale = mpmath.exp(_mpf(c0) - sm * _mpf(lo)) / sm ** (_mpf(a) + 1)
                xs = [_mpf(lo) + t / sm for t in rule.nodes]
            ws = [w * scale * smooth.eval_mp(x) for w, x in zip(rule.weights, xs)]
        return xs, ws


def _integrate(wi: WeightedInterval, h: Callable, tol: float, n_start: int, n_cap: int) -> float:
    prev = None
    n = n_start
    while n <= n_cap:
        xs, ws = wi.nodes_and_weights(n)
        with mpmath.workdps(DPS):
            terms = [w * h(x) for w, x in zip(ws, xs)]
            val = mpmath.fsum(terms)
            scale = mpmath.fsum(abs(t) for t in terms)
        if prev is not None and abs(val - prev) <= tol * max(scale, mpmath.mpf(10) ** -300):
            return float(val)
        prev = val
        n *= 2
    raise QuadratureError(f"no convergence with {n_cap} nodes")


def integrate(wi: WeightedInterval, f: RationalPoly, *, tol: float = 1e-13, n_start: int = 32, n_cap: int = 4096) -> float:
    """Integral of f * W over the interval."""
    return _integrate(wi, f.eval_mp, tol, n_start, n_cap)


def inner_product(f: RationalPoly, g: RationalPoly, wi: WeightedInterval, *, tol: float = 1e-13,
                  n_start: int = 32, n_cap: int = 4096) -> float:
    """<f, g>_W with node doubling until successive rules agree to tol relative to sum w|fg|."""
    return _integrate(wi, lambda x: f.eval_mp(x) * g.eval_mp(x), tol, n_start, n_cap)


# -- Gram-Schmidt -----------------------------------------------------------------------


@dataclass(frozen=True)
class NormalizationRule:
    """Fix the k-th output (label ``first_label + k``) by its value at ``point`` or,
    when point is None, by its leading coefficient."""

    target: Callable[[int], Fraction]
    point: Fraction | None = None
    first_label: int = 0


def _gram_values(basis, xs, ws):
    vals = [[p.eval_mp(x) for x in xs] for p in basis]
    return [[mpmath.fsum(w * u * v for w, u, v in zip(ws, a, b)) for b in vals] for a in vals], vals


def _stable_gram(basis, wi, tol, n_start, n_cap):
    """Gram matrix by doubling until every entry moves by <= tol * sqrt(G_ii G_jj)."""
    n, prev = n_start, None
    while True:
        xs, ws = wi.nodes_and_weights(n)
        G, vals = _gram_values(basis, xs, ws)
        if prev is not None:
            diff = max(abs(G[i][j] - prev[i][j]) / mpmath.sqrt(abs(G[i][i] * G[j][j]))
                       for i in range(len(G)) for j in range(len(G)))
            if diff <= tol:
                return G, vals, ws
        if n >= n_cap:
            raise QuadratureError(f"Gram matrix unstable at {n} nodes")
        prev, n = G, n * 2


def gram_schmidt(basis: Sequence[RationalPoly], wi: WeightedInterval, rule: NormalizationRule, *,
                 tol: float = 1e-13, n_start: int = 32, n_cap: int = 4096) -> list[np.ndarray]:
    """Orthogonalize ``basis`` in order against W; returns ascending float coefficient arrays.

    Arithmetic runs in mpmath; the node count doubles until the Gram matrix is stable.
    """
    n_coef = max(p.degree for p in basis) + 1
    with mpmath.workdps(DPS):
        G, vals, ws = _stable_gram(basis, wi, tol, n_start, n_cap)

        coeffs = [[_mpf(p.coeff(i)) for i in range(n_coef)] for p in basis]
        out_c, out_v = [], []
        for c, v in zip(coeffs, vals):
            c, v = list(c), list(v)
            for qc, qv in zip(out_c, out_v):
                num = mpmath.fsum(w * a * b for w, a, b in zip(ws, v, qv))
                den = mpmath.fsum(w * b * b for w, b in zip(ws, qv))
                r = num / den
                c = [a - r * b for a, b in zip(c, qc)]
                v = [a - r * b for a, b in zip(v, qv)]
            out_c.append(c)
            out_v.append(v)

        result = []
        for k, c in enumerate(out_c):
            if rule.point is None:
                deg = max(i for i, a in enumerate(c) if abs(a) > mpmath.mpf(10) ** (-DPS // 2) * max(abs(t) for t in c))
                cur = c[deg]
            else:
                pt = _mpf(as_rat(rule.point))
                cur = mpmath.fsum(a * pt**i for i, a in enumerate(c))
            if cur == 0:
                raise ZeroDivisionError("normalization functional vanishes")
            s = _mpf(as_rat(rule.target(rule.first_label + k))) / cur
            result.append(np.array([float(a * s) for a in c]))
    return result


def gram_matrix(polys: Sequence[RationalPoly], wi: WeightedInterval, *, tol: float = 1e-13,
                n_start: int = 32, n_cap: int = 4096) -> np.ndarray:
    """All pairwise <p_i, p_j>_W from one shared node-doubling sequence."""
    with mpmath.workdps(DPS):
        G, _, _ = _stable_gram(list(polys), wi, tol, n_start, n_cap)
    return np.array([[float(v) for v in row] for row in G])


def max_normalized_offdiag(G: np.ndarray) -> float:
    d = np.sqrt(np.abs(np.diag(G)))
    N = np.abs(G) / np.outer(d, d)
    np.fill_diagonal(N, 0.0)
    return float(N.max()) if N.size else 0.0
