"""Recurrence limits from a finite lattice of nearest-neighbor coefficients.

The four coefficient families live on the integer lattice of bi-degrees
(n1, n2).  Pure powers of either index sit on an axis, where all data comes
from classical scalar three-term recurrences plus mixed moment ratios
(:mod:`angelesco.orthopoly`).  Interior sites follow from the compatibility
relations between neighboring recurrences: a multiplicative two-term
relation fixes the a's along each unit step and a linear two-by-two system
fixes the b's one diagonal ahead.  Sweeping diagonal by diagonal therefore
fills the whole triangle n1 + n2 <= m from axis data alone.

Propagation re-derives the axis b's of each new diagonal; the sweep replaces
them with the directly computed axis values and logs the difference.  These
residuals are the only genuine redundancy in the scheme and act as a running
consistency check of the whole construction.

Ray limits along n ~ (s m, (1-s) m) converge at rate 1/m, so a single
half-level snapshot supports Richardson extrapolation (2 x_m - x_{m/2}).
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalFailure
from .orthopoly import axis_data
from .systems import LimitCurve, LimitPoint

# smallest |b2 - b1| tolerated in a propagation denominator
_DENOM_FLOOR = 1e-12


@dataclass
class NnrrLattice:
    """Completed sweep: top diagonal, snapshots, and consistency residuals.

    ``a1 ... b2`` hold the top diagonal n1 + n2 = m indexed by k = n1.
    ``snapshots`` maps a level to its four diagonal arrays.  ``residuals``
    has one row per completed diagonal: the absolute mismatch between the
    propagated and the directly computed axis cross-b on each axis.
    """
    sys: object
    m: int
    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    snapshots: dict
    residuals: np.ndarray
    meta: dict = field(default_factory=dict)

    def diagonal(self, level):
        """Diagonal arrays (a1, a2, b1, b2) at ``level`` (top or snapshot)."""
        if level == self.m:
            return self.a1, self.a2, self.b1, self.b2
        if level not in self.snapshots:
            raise KeyError(f"level {level} was not snapshotted "
                           f"(have {sorted(self.snapshots)})")
        return self.snapshots[level]

    def max_residual(self):
        return float(self.residuals.max()) if self.residuals.size else 0.0


def solve_lattice(sys, m, snapshot_levels=None):
    """Sweep the coefficient lattice of ``sys`` out to level ``m``.

    ``snapshot_levels`` defaults to {m // 2}, which is what Richardson
    extrapolation needs.  The sweep stores three rolling diagonals; cost is
    O(m^2) time and O(m) memory.  A propagation denominator below 1e-12 or a
    nonpositive interior coefficient aborts with :class:`NumericalFailure`.
    """
    if m < 1:
        raise ValueError(f"level must be a positive integer, got {m}")
    if snapshot_levels is None:
        snapshot_levels = {m // 2}
    snapshot_levels = set(snapshot_levels)

    ax1 = axis_data(sys, 1, m)
    ax2 = axis_data(sys, 2, m)

    # seed diagonal: the single site (0, 0)
    a1 = np.array([0.0])
    a2 = np.array([0.0])
    b1 = np.array([ax1.own_b[0]])
    b2 = np.array([ax2.own_b[0]])
    b1_prev = b2_prev = None
    snaps = {}
    if 0 in snapshot_levels:
        snaps[0] = (a1.copy(), a2.copy(), b1.copy(), b2.copy())
    residuals = np.zeros((m, 2))

    for L in range(m):
        K = L + 2  # diagonal L + 1 has sites k = 0 .. L + 1
        a1n = np.empty(K)
        a2n = np.empty(K)
        b1n = np.empty(K)
        b2n = np.empty(K)

        # a-phase: axis values, then the multiplicative step relations for
        # interior sites (numerators from level L, denominators from L - 1)
        a1n[0] = 0.0
        a2n[0] = ax2.own_a[L + 1]
        a1n[K - 1] = ax1.own_a[L + 1]
        a2n[K - 1] = 0.0
        if L >= 1:
            gap_cur = b2[1:L + 1] - b1[1:L + 1]
            gap_prev = b2_prev[0:L] - b1_prev[0:L]
            if np.min(np.abs(gap_prev)) < _DENOM_FLOOR:
                raise NumericalFailure("coefficient gap collapsed in a-phase",
                                       {"level": L + 1})
            a1n[1:L + 1] = a1[1:L + 1] * gap_cur / gap_prev
            a2n[1:L + 1] = a2[0:L] * (b2[0:L] - b1[0:L]) / \
                (b2_prev[0:L] - b1_prev[0:L])
            if np.min(a1n[1:L + 1]) <= 0.0 or np.min(a2n[1:L + 1]) <= 0.0:
                raise NumericalFailure("interior coefficient lost positivity",
                                       {"level": L + 1})

        # b-phase: solve the 2x2 closed form site by site (vectorized over
        # the diagonal); S couples the new a's to the b-step
        S = a1n + a2n
        dS = S[0:L + 1] - S[1:L + 2]
        denom = b2 - b1
        if np.min(np.abs(denom)) < _DENOM_FLOOR:
            raise NumericalFailure("coefficient gap collapsed in b-phase",
                                   {"level": L + 1})
        y = (dS - b1 * b2 + b2 * b2) / denom
        b2n[1:K] = y
        b1n[0:K - 1] = y + b1 - b2

        # axis sites: log the propagated-vs-direct mismatch, then override
        residuals[L, 0] = abs(b2n[K - 1] - ax1.cross_b[L + 1])
        residuals[L, 1] = abs(b1n[0] - ax2.cross_b[L + 1])
        b1n[K - 1] = ax1.own_b[L + 1]
        b2n[K - 1] = ax1.cross_b[L + 1]
        b2n[0] = ax2.own_b[L + 1]
        b1n[0] = ax2.cross_b[L + 1]

        b1_prev, b2_prev = b1, b2
        a1, a2, b1, b2 = a1n, a2n, b1n, b2n
        if L + 1 in snapshot_levels and L + 1 != m:
            snaps[L + 1] = (a1.copy(), a2.copy(), b1.copy(), b2.copy())

    return NnrrLattice(sys, m, a1, a2, b1, b2, snaps, residuals)


def _interp_diagonal(diag, level, s):
    """Linear interpolation of the four diagonal arrays at k = s * level."""
    s = np.asarray(s, dtype=float)
    k = np.arange(level + 1, dtype=float)
    return tuple(np.interp(s * level, k, arr) for arr in diag)


def ray_limit(lat, s, extrapolate=False):
    """Finite-level ray values of ``lat`` at parameter ``s`` in [0, 1].

    Interpolates the top diagonal at bi-degree (s m, (1 - s) m).  With
    ``extrapolate`` the half-level snapshot is combined by Richardson
    (2 x_m - x_{m/2}), cancelling the leading 1/m error term.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    vals = _interp_diagonal(lat.diagonal(lat.m), lat.m, s)
    if extrapolate:
        half = lat.m // 2
        vals_h = _interp_diagonal(lat.diagonal(half), half, s)
        vals = tuple(2.0 * v - vh for v, vh in zip(vals, vals_h))
    a1, a2, b1, b2 = (float(v) for v in vals)
    if s == 0.0:
        a1 = 0.0
    if s == 1.0:
        a2 = 0.0
    return LimitPoint(float(s), a1, a2, b1, b2)


def curve_from_lattice(lat, grid, extrapolate=False):
    """Limit-curve estimate on ``grid`` from the finished lattice."""
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > 1:
        raise ValueError("grid must be strictly increasing inside [0, 1]")
    vals = _interp_diagonal(lat.diagonal(lat.m), lat.m, grid)
    if extrapolate:
        half = lat.m // 2
        vals_h = _interp_diagonal(lat.diagonal(half), half, grid)
        vals = tuple(2.0 * v - vh for v, vh in zip(vals, vals_h))
    a1, a2, b1, b2 = (np.asarray(v, dtype=float).copy() for v in vals)
    a1[grid == 0.0] = 0.0
    a2[grid == 1.0] = 0.0
    meta = {"level": lat.m, "extrapolated": bool(extrapolate),
            "max_residual": lat.max_residual()}
    return LimitCurve(grid.copy(), a1, a2, b1, b2, "lattice", meta).validate()


def consistency_residuals(lat):
    """Per-diagonal axis mismatch log (rows: level 1..m; columns: axis 1, 2)."""
    return lat.residuals.copy()
