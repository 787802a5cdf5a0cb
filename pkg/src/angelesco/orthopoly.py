"""Scalar orthogonal-polynomial data feeding the lattice boundary.

Monic three-term recurrence coefficients for the supported weights, Gauss /
Clenshaw-Curtis quadrature on a single interval, and the mixed moment ratios
that give the off-axis recurrence coefficient along each boundary row of the
multi-index lattice.

Recurrence convention: with monic polynomials p_k of a single weight,

    x p_k = p_{k+1} + b[k] p_k + a[k-1] p_{k-1},

so ``a[i]`` first appears in the step producing p_{i+2}.  On the lattice axis
the own-direction coefficient at site k is ``a[k-1]`` (zero at k = 0).
"""
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .systems import AngelescoSystem, Interval, check_weight_kind


@dataclass(frozen=True)
class ScalarRecurrence:
    """Monic recurrence coefficients for one weight on one interval."""
    a: np.ndarray
    b: np.ndarray
    kind: str
    interval: Interval

    @property
    def n(self):
        return self.b.size


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and probability-normalized weights; exact through ``degree``."""
    x: np.ndarray
    w: np.ndarray
    kind: str
    interval: Interval
    degree: int


def scalar_recurrence(kind, interval, n):
    """First ``n`` monic recurrence coefficients of the weight on ``interval``.

    All supported weights are symmetric about the midpoint, so every b equals
    the midpoint; the a's differ per family.  Both arrays have length ``n``.
    """
    check_weight_kind(kind)
    if n < 1:
        raise ValueError("n must be positive")
    b = np.full(n, interval.mid)
    r = 0.25 * interval.length
    if kind == "chebyshev1":
        a = np.full(n, r * r)
        a[0] = 2.0 * r * r
    elif kind == "chebyshev2":
        a = np.full(n, r * r)
    else:  # uniform
        k = np.arange(1, n + 1, dtype=float)
        a = interval.radius ** 2 * k * k / (4.0 * k * k - 1.0)
    return ScalarRecurrence(a, b, kind, interval)


def gauss_nodes(kind, interval, n):
    """Quadrature rule with ``n`` nodes for the weight on ``interval``.

    Chebyshev families use the closed-form Gauss rules (exact degree 2n - 1);
    the uniform weight uses Clenshaw-Curtis points with weights normalized to
    total mass one (exact degree at least n - 1).
    """
    check_weight_kind(kind)
    if n < 1:
        raise ValueError("need at least one node")
    mid, rad = interval.mid, interval.radius
    if kind == "chebyshev1":
        i = np.arange(1, n + 1)
        x = mid + rad * np.cos((2 * i - 1) * np.pi / (2 * n))
        w = np.full(n, 1.0 / n)
        return QuadratureRule(x, w, kind, interval, 2 * n - 1)
    if kind == "chebyshev2":
        i = np.arange(1, n + 1)
        t = i * np.pi / (n + 1)
        x = mid + rad * np.cos(t)
        w = 2.0 / (n + 1) * np.sin(t) ** 2
        return QuadratureRule(x, w, kind, interval, 2 * n - 1)
    # uniform: Clenshaw-Curtis on n points (n - 1 panels)
    if n == 1:
        return QuadratureRule(np.array([mid]), np.array([1.0]), kind, interval, 1)
    m = n - 1
    j = np.arange(n)
    x = mid + rad * np.cos(j * np.pi / m)
    ks = np.arange(1, m // 2 + 1)
    coef = np.where(2 * ks == m, 0.5, 1.0) / (4.0 * ks * ks - 1.0)
    # w_j = (2/m) * (1 - 2 sum_k coef_k cos(2 k j pi / m)), halved at the ends
    csum = np.cos(2.0 * np.outer(j, ks) * np.pi / m) @ coef
    w = (1.0 - 2.0 * csum) / m
    w[0] *= 0.5
    w[-1] *= 0.5
    w = w / np.sum(w)
    return QuadratureRule(x[::-1].copy(), w[::-1].copy(), kind, interval, n - 1)


def mixed_ratios(src_kind, src_interval, dst_kind, dst_interval, m):
    """Ratios r_k = h_{k+1} / h_k for k = 0..m of the mixed moments
    h_k = integral of p_k d(dst measure), with p_k the monic polynomials of
    the src weight.

    The integrand is evaluated by a quadrature rule of the destination weight
    that is exact through degree m + 1.  Polynomial values are renormalized by
    their max-norm every step, so consecutive h's share one scale and each
    ratio is formed from order-one quantities (no overflow at any depth).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if dst_kind == "uniform":
        nodes = m + 2
    else:
        nodes = (m + 3) // 2
    rule = gauss_nodes(dst_kind, dst_interval, max(nodes, 1))
    rec = scalar_recurrence(src_kind, src_interval, m + 2)
    x, w = rule.x, rule.w
    r = np.empty(m + 1)
    u_prev = np.ones_like(x)          # p_0 under the running scale
    h_curr = 1.0                      # h_0 of a probability measure
    u_curr = x - rec.b[0]             # p_1
    h_next = float(w @ u_curr)
    for k in range(m + 1):
        if h_curr == 0.0:
            raise NumericalFailure("mixed moment vanished", {"k": k})
        r[k] = h_next / h_curr
        v = (x - rec.b[k + 1]) * u_curr - rec.a[k] * u_prev
        scale = np.max(np.abs(v))
        if scale == 0.0:
            raise NumericalFailure("polynomial vanished at all nodes", {"k": k})
        h_curr = h_next / scale
        h_next = float(w @ v) / scale
        u_prev = u_curr / scale
        u_curr = v / scale
    return r


@dataclass(frozen=True)
class AxisData:
    """Boundary-row data for one axis of the lattice, sites k = 0..m.

    own_b[k] / own_a[k] are the recurrence coefficients in the axis' own
    direction (own_a[0] = 0); cross_b[k] is the coefficient in the direction
    of the other measure.
    """
    axis: int
    own_a: np.ndarray
    own_b: np.ndarray
    cross_b: np.ndarray

    @property
    def m(self):
        return self.own_b.size - 1


def axis_data(sys, axis, m):
    """Boundary data for ``axis`` (1 or 2) of ``sys`` through level ``m``.

    The cross coefficient is own b plus the mixed moment ratio: projecting
    the step toward the other measure onto the axis polynomials leaves
    cross_b[k] = b_k + h_{k+1}/h_k, which feeds the lattice sweep and is
    checked against a brute-force moment construction in the tests.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    if axis == 1:
        kind, iv = sys.w1, sys.i1
        other_kind, other_iv = sys.w2, sys.i2
    else:
        kind, iv = sys.w2, sys.i2
        other_kind, other_iv = sys.w1, sys.i1
    rec = scalar_recurrence(kind, iv, m + 1)
    ratios = mixed_ratios(kind, iv, other_kind, other_iv, m)
    own_a = np.concatenate([[0.0], rec.a[:m]])
    own_b = rec.b.copy()
    cross_b = own_b + ratios
    return AxisData(axis, own_a, own_b, cross_b)
