"""Orthonormal polynomials for the measure rho(w) dw.

Moments, the monic three-term recurrence, Gauss rules, and stable
evaluation.  The recurrence comes from a discretized Stieltjes procedure
run in extended precision (mpmath) on a double-exponentially transformed
trapezoid grid -- the same transform family the quadrature module uses.
The Hankel/moment-determinant pathway is deliberately absent: recovering
recurrence coefficients from raw moments sheds digits exponentially in the
degree, while the Stieltjes inner products stay conditioned like the
measure itself (Gautschi, "Orthogonal Polynomials: Computation and
Approximation", ch. 2).

Gauss nodes/weights come from the spectral decomposition of the Jacobi
matrix (Golub-Welsch); the symmetric tridiagonal eigensolver is an
implicit-shift QL iteration carrying only the first eigenvector row, which
is all the weights need.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import AccuracyError, InputError, NumericError
from .quad import integrate
from .weights import Domain, WeightSpec, eval_log_weight, eval_log_weight_mp

__all__ = [
    "RecurrenceTable",
    "GaussRule",
    "moments",
    "recurrence",
    "gauss_rule",
    "eval_orthonormal",
    "table_rows",
    "working_digits",
]

DEFAULT_DIGITS = 40
_C = 0.5 * math.pi  # sinh scale of the double-exponential map


@dataclass(frozen=True)
class RecurrenceTable:
    """Monic recurrence p_{k+1} = (w - alpha_k) p_k - beta_k p_{k-1}.

    beta[0] is the total mass m0 by convention.  Coefficients are stored in
    double precision; precision_digits records the working precision of the
    generating run (the coefficients are accurate to double rounding).
    """

    n: int
    alpha: Tuple[float, ...]
    beta: Tuple[float, ...]
    precision_digits: int

    def prefix(self, n: int) -> "RecurrenceTable":
        if not 1 <= n <= self.n:
            raise InputError("prefix length %d outside 1..%d" % (n, self.n))
        return RecurrenceTable(n, self.alpha[:n], self.beta[:n],
                               self.precision_digits)


@dataclass(frozen=True)
class GaussRule:
    nodes: Tuple[float, ...]
    weights: Tuple[float, ...]

    @property
    def nodes_array(self) -> np.ndarray:
        return np.asarray(self.nodes)

    @property
    def weights_array(self) -> np.ndarray:
        return np.asarray(self.weights)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def _half_line_moment(spec: WeightSpec, k: int, tol: float) -> float:
    from .krein import _kink_points  # shared kink catalogue

    def f(w):
        # fused in log space: w^k alone overflows long before the product
        # w^k rho(w) leaves double range
        w = np.asarray(w, dtype=float)
        with np.errstate(divide="ignore"):
            t = k * np.log(w) if k > 0 else 0.0
        return np.exp(t + eval_log_weight(spec, w))

    res = integrate(f, 0.0, math.inf,
                    singular_points=_kink_points(spec, 0.0, math.inf), tol=tol)
    return float(np.real(res.value))


def moments(spec: WeightSpec, kmax: int, tol: float = 1e-12) -> np.ndarray:
    """m_k = int w^k rho(w) dw for k = 0..kmax.

    Full-line even weights integrate over both axes: odd moments vanish
    exactly by symmetry (up to the negative-axis rescale factor), even ones
    double.
    """
    if kmax < 0:
        raise InputError("kmax must be >= 0")
    half = np.array([_half_line_moment(spec, k, tol) for k in range(kmax + 1)])
    if spec.domain is Domain.HALF_LINE:
        return half
    ns = spec.neg_scale
    ks = np.arange(kmax + 1)
    return half * (1.0 + ns * np.where(ks % 2 == 0, 1.0, -1.0))


# ---------------------------------------------------------------------------
# discretized Stieltjes in extended precision
# ---------------------------------------------------------------------------

def _grid_range(spec: WeightSpec, n: int, digits: int) -> Tuple[float, float]:
    """Cutoffs v_lo < v_hi for the map x = exp(C sinh v) so that the
    discarded mass of rho * x^(2n+2) is below the working precision.

    The scan stays inside |v| <= 6.5, where x = e^u with |u| < 530 is still
    an ordinary double, so the weight can be evaluated directly.
    """
    drop = -(digits + 30) * math.log(10.0)

    def crit(v: float, deg: float) -> float:
        u = _C * math.sinh(v)
        jac = u + math.log(_C * math.cosh(v))
        return float(eval_log_weight(spec, math.exp(u))) + deg * u + jac

    v_hi = 0.5
    while v_hi < 6.5 and crit(v_hi, 2.0 * n + 2.0) > drop:
        v_hi += 0.125
    v_lo = -0.5
    while v_lo > -6.5 and crit(v_lo, 0.0) > drop:
        v_lo -= 0.125
    return v_lo, v_hi


_gl_cache: Dict[Tuple[int, int], Tuple[list, list]] = {}


def _mp_legendre(order: int):
    """Gauss-Legendre nodes/weights on [-1, 1] at the current mp precision.

    Newton iteration on P_order from Chebyshev seeds; cached per (order, dps).
    """
    from mpmath import mp

    key = (order, mp.dps)
    hit = _gl_cache.get(key)
    if hit is not None:
        return hit
    nodes = []
    wts = []
    tol = mp.mpf(10) ** (2 - mp.dps)
    for i in range(order):
        x = mp.cos(mp.pi * (4 * i + 3) / (4 * order + 2))
        for _ in range(60):
            p_prev, p_cur = mp.mpf(1), x
            for k in range(1, order):
                p_prev, p_cur = p_cur, \
                    ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
            dp = order * (x * p_cur - p_prev) / (x * x - 1)
            dx = p_cur / dp
            x -= dx
            if abs(dx) < tol:
                break
        nodes.append(x)
        wts.append(2 / ((1 - x * x) * dp * dp))
    _gl_cache[key] = (nodes, wts)
    return nodes, wts


_PANEL_ORDER = 24


def _v_breakpoints(spec: WeightSpec, v_lo: float, v_hi: float) -> List[float]:
    """Panel cut points in v, including the images of weight kinks.

    The damped families are only piecewise-analytic (the regularized log
    switches branch at w = 1/e and e; the unregularized variant is
    C-infinity-flat at w = 1), so every such point must sit on a panel edge
    or the spectral panel convergence drops to algebraic."""
    from .krein import _kink_points

    cuts = [v_lo, v_hi]
    for x in _kink_points(spec, 0.0, math.inf):
        v = math.asinh(math.log(x) / _C)
        if v_lo < v < v_hi:
            cuts.append(v)
    return sorted(cuts)


def _discretize(spec: WeightSpec, cuts: List[float], h: float):
    """Composite Gauss-Legendre discretization of rho(w) dw in mp, on the
    double-exponential map x = exp(C sinh v), panels of width <= h."""
    from mpmath import mp

    gn, gw = _mp_legendre(_PANEL_ORDER)
    c = mp.pi / 2
    xs: List = []
    ws: List = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        m = max(1, int(math.ceil((hi - lo) / h)))
        edges = [mp.mpf(lo) + (mp.mpf(hi) - mp.mpf(lo)) * j / m
                 for j in range(m + 1)]
        for a, b in zip(edges[:-1], edges[1:]):
            half = (b - a) / 2
            mid = (a + b) / 2
            for t, gwt in zip(gn, gw):
                v = mid + half * t
                u = c * mp.sinh(v)
                x = mp.exp(u)
                lw = eval_log_weight_mp(spec, x)
                w = half * gwt * c * mp.cosh(v) * x * mp.exp(lw)
                if w != 0:
                    xs.append(x)
                    ws.append(w)
    if spec.domain is Domain.FULL_LINE_EVEN:
        ns = mp.mpf(spec.neg_scale)
        xs = [-x for x in reversed(xs)] + xs
        ws = [ns * w for w in reversed(ws)] + ws
    return xs, ws


def _stieltjes(xs, ws, n: int):
    """Recurrence coefficients of the discrete measure sum w_i delta(x_i)."""
    from mpmath import mp

    N = len(xs)
    if N < 2 * n:
        raise AccuracyError("discretization too coarse: %d nodes for n=%d"
                            % (N, n))
    beta0 = mp.fsum(ws)
    alpha = [mp.fsum(w * x for w, x in zip(ws, xs)) / beta0]
    beta = [beta0]
    p_prev = [mp.mpf(0)] * N
    p_cur = [mp.mpf(1)] * N
    s_prev = beta0
    for k in range(1, n):
        a_k1 = alpha[k - 1]
        b_k1 = beta[k - 1] if k > 1 else mp.mpf(0)
        p_new = [(x - a_k1) * pc - b_k1 * pp
                 for x, pc, pp in zip(xs, p_cur, p_prev)]
        wp2 = [w * p * p for w, p in zip(ws, p_new)]
        s = mp.fsum(wp2)
        if s <= 0:
            raise AccuracyError(
                "Stieltjes inner product lost positivity at k=%d; "
                "max usable table length is %d" % (k, k),
                best_estimate=k)
        t = mp.fsum(g * x for g, x in zip(wp2, xs))
        alpha.append(t / s)
        beta.append(s / s_prev)
        s_prev = s
        p_prev, p_cur = p_cur, p_new
    return alpha, beta


_table_cache: Dict[Tuple, RecurrenceTable] = {}


def working_digits() -> int:
    """Extended-precision digits: KREINLAB_PRECISION_DIGITS or the default."""
    raw = os.environ.get("KREINLAB_PRECISION_DIGITS")
    if raw is None:
        return DEFAULT_DIGITS
    try:
        digits = int(raw)
    except ValueError:
        digits = 0
    if digits < 15:
        raise InputError(
            "KREINLAB_PRECISION_DIGITS must be an integer >= 15, got %r" % raw)
    return digits


def recurrence(spec: WeightSpec, n: int, digits: Optional[int] = None,
               tol: float = 1e-12) -> RecurrenceTable:
    """First n rows (alpha_k, beta_k), k = 0..n-1, of the monic recurrence.

    The discretization step is halved until the coefficients stabilize to
    1e-2 * tol; results are cached per (weight, digits), with longer cached
    tables sliced for shorter requests.  digits=None takes working_digits().
    """
    if n < 1:
        raise InputError("n must be >= 1")
    if digits is None:
        digits = working_digits()
    if digits < 15:
        raise InputError("digits must be >= 15")
    key = (spec.key(), digits)
    hit = _table_cache.get(key)
    if hit is not None and hit.n >= n:
        return hit.prefix(n)

    from mpmath import mp

    even = spec.domain is Domain.FULL_LINE_EVEN and spec.neg_scale == 1.0
    v_lo, v_hi = _grid_range(spec, n, digits)
    cuts = _v_breakpoints(spec, v_lo, v_hi)
    with mp.workdps(digits + 15):
        prev = None
        # panels must resolve the oscillation of the degree-(n-1) basis
        # polynomial across the transformed axis, which needs width ~ c/n;
        # starting there skips a useless coarse prelude for long tables
        h = min(0.5, 3.0 / n)
        for _ in range(8):
            xs, ws = _discretize(spec, cuts, h)
            alpha, beta = _stieltjes(xs, ws, n)
            cur = (alpha, beta)
            if prev is not None:
                da = max(abs(a1 - a0) / max(abs(a1), 1)
                         for a0, a1 in zip(prev[0], alpha))
                db = max(abs(b1 - b0) / abs(b1)
                         for b0, b1 in zip(prev[1], beta))
                if max(da, db) < 0.01 * tol:
                    break
            prev = cur
            h *= 0.5
        else:
            raise AccuracyError(
                "recurrence coefficients did not stabilize under grid "
                "refinement (last change %.3g)" % float(max(da, db)))
        a_f = tuple(0.0 if even else float(a) for a in cur[0])
        b_f = tuple(float(b) for b in cur[1])
    table = RecurrenceTable(n=n, alpha=a_f, beta=b_f, precision_digits=digits)
    _table_cache[key] = table
    return table


# ---------------------------------------------------------------------------
# Gauss rules via the Jacobi matrix
# ---------------------------------------------------------------------------

def _ql_first_row(d: List[float], e: List[float], z: List[float],
                  max_sweeps: int = 50) -> None:
    """Implicit-shift QL on a symmetric tridiagonal matrix, in place.

    d: diagonal, e: subdiagonal (e[-1] slack), z: a row vector rotated along
    with the similarity transforms.  On return d holds eigenvalues (unsorted)
    and z the corresponding components of the tracked row.
    """
    n = len(d)
    eps = np.finfo(float).eps
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise NumericError("QL iteration failed to converge at "
                                   "eigenvalue %d" % l)
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def gauss_rule(table: RecurrenceTable, n: int) -> GaussRule:
    """n-point Gauss rule of the table's measure (Golub-Welsch).

    Nodes are the Jacobi-matrix eigenvalues sorted ascending; the weight at
    each node is m0 times the squared first component of its normalized
    eigenvector.
    """
    if not 1 <= n <= table.n:
        raise InputError("rule order %d needs a table of length >= %d" % (n, n))
    d = list(table.alpha[:n])
    e = [math.sqrt(table.beta[k]) for k in range(1, n)] + [0.0]
    z = [1.0] + [0.0] * (n - 1)
    _ql_first_row(d, e, z)
    order = np.argsort(d)
    nodes = tuple(float(d[i]) for i in order)
    weights = tuple(float(table.beta[0] * z[i] ** 2) for i in order)
    for a, b in zip(nodes[:-1], nodes[1:]):
        if not a < b:
            raise NumericError("Gauss nodes failed to separate")
    # z^2 cannot be negative, but the weight of an extreme node of a long
    # rule can underflow to an exact 0.0, which is harmless downstream
    if not any(w > 0 for w in weights):
        raise NumericError("Gauss weights all underflowed")
    return GaussRule(nodes=nodes, weights=weights)


def eval_orthonormal(table: RecurrenceTable, k: int, omega) -> np.ndarray:
    """Orthonormal polynomial value(s) via the normalized forward recurrence.

    Needs k <= table.n - 1 (the step to degree k uses beta_k).
    """
    if not 0 <= k <= table.n - 1:
        raise InputError("degree %d outside table range 0..%d"
                         % (k, table.n - 1))
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    p_prev = np.zeros_like(w)
    p_cur = np.full_like(w, 1.0 / math.sqrt(table.beta[0]))
    for j in range(k):
        p_next = ((w - table.alpha[j]) * p_cur
                  - math.sqrt(table.beta[j]) * p_prev) / math.sqrt(table.beta[j + 1])
        p_prev, p_cur = p_cur, p_next
    return float(p_cur[0]) if scalar else p_cur


def table_rows(table: RecurrenceTable) -> List[Tuple[int, float, float]]:
    """(k, alpha_k, beta_k) rows for CSV export."""
    return [(k, table.alpha[k], table.beta[k]) for k in range(table.n)]
