"""Recurrence limits by integrating the limiting ODE system.

In the interior of each support window the four limit functions satisfy a
closed ODE system in the rescaled variables C1 = A1/s^2, C2 = A2/(1-s)^2.
Two branches are integrated with fixed-step classical Runge-Kutta: forward
from s = 0 and backward from s = 1, each started a small offset inside the
interval with first-order Taylor data derived from the endpoint values.  The
branches stop at the plateau edges and the assembled curve splices branch
values with the plateau constants.

The linear system defining (C1', C2') degenerates at the endpoints only
through a removable factor s (1 - s); the solved form used here cancels that
factor exactly, so the right-hand side is regular on all of [0, 1] and a
fixed step is safe arbitrarily close to the ends.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalFailure
from .systems import LimitCurve

DEFAULT_STEPS_PER_UNIT = 10000
DEFAULT_EPS = 1e-6


@dataclass(frozen=True)
class BoundaryPack:
    """Closed-form endpoint values of the limit functions for one system.

    C's are the rescaled a-limits (A1 = s^2 C1, A2 = (1-s)^2 C2); suffix _0
    and _1 name the endpoint.  Satisfies (B2 - B1)^2 = C1 + C2 at both ends.
    """
    C1_0: float
    C2_0: float
    C1_1: float
    C2_1: float
    B1_0: float
    B2_0: float
    B1_1: float
    B2_1: float

    @property
    def gap_0(self):
        """B2 - B1 at s = 0; equals sqrt(C1_0 + C2_0)."""
        return self.B2_0 - self.B1_0

    @property
    def gap_1(self):
        """B2 - B1 at s = 1; equals sqrt(C1_1 + C2_1)."""
        return self.B2_1 - self.B1_1


@dataclass(frozen=True)
class OdeState:
    """Integration state at one ray parameter."""
    s: float
    C1: float
    C2: float
    B1: float
    B2: float


def boundary_values(sys):
    """Endpoint limit values of ``sys`` in user coordinates.

    The values at s = 0 depend only on (i1.lo, i2); the values at s = 1 only
    on (i1, i2.hi).  Validated against the square-root identity
    (B2 - B1)^2 = C1 + C2 at both ends.
    """
    a1, b1 = sys.i1.lo, sys.i1.hi
    a2, b2 = sys.i2.lo, sys.i2.hi
    C2_0 = ((b2 - a2) / 4.0) ** 2
    root0 = np.sqrt((a2 - a1) * (b2 - a1))
    C1_0 = 0.25 * (-a1 + 0.5 * (a2 + b2) + root0) ** 2 - C2_0
    C1_1 = ((b1 - a1) / 4.0) ** 2
    root1 = np.sqrt((b2 - b1) * (b2 - a1))
    C2_1 = 0.25 * (b2 - 0.5 * (a1 + b1) + root1) ** 2 - C1_1
    B1_0 = 0.5 * (a1 + 0.5 * (a2 + b2) - root0)
    B2_0 = 0.5 * (a2 + b2)
    B1_1 = 0.5 * (a1 + b1)
    B2_1 = 0.5 * (b2 + 0.5 * (a1 + b1) + root1)
    pack = BoundaryPack(float(C1_0), float(C2_0), float(C1_1), float(C2_1),
                        float(B1_0), float(B2_0), float(B1_1), float(B2_1))
    for c1c2, b1b2 in (((pack.C1_0, pack.C2_0), (pack.B1_0, pack.B2_0)),
                       ((pack.C1_1, pack.C2_1), (pack.B1_1, pack.B2_1))):
        gap = b1b2[1] - b1b2[0]
        if abs(gap * gap - (c1c2[0] + c1c2[1])) > 1e-10 * max(1.0, gap * gap):
            raise NumericalFailure("endpoint identity violated", {"pack": pack})
    return pack


def rhs(s, y):
    """Derivative of the state (C1, C2, B1, B2) at ray parameter s.

    (C1', C2') solve the linear pair

        (1+s) s C1' + (2-s)(1-s) C2' = -4 s C1 + 4 (1-s) C2
        (s^2 / C1) C1' - ((1-s)^2 / C2) C2' = -2,

    written in the equivalent solved form whose denominators stay bounded on
    [0, 1].  B1' and B2' use the regularized square-root relations; both B
    components are integrated so their mutual consistency can be monitored.
    """
    C1, C2, B1, B2 = y
    if C1 <= 0.0 or C2 <= 0.0:
        raise NumericalFailure("positivity lost in ODE state",
                               {"s": s, "C1": C1, "C2": C2})
    q = (1.0 + s) * (1.0 - s) / C2 + s * (2.0 - s) / C1
    d1 = -2.0 * (2.0 * (1.0 - s) * C1 / C2 + (3.0 - 2.0 * s)) / q
    d2 = 2.0 * ((1.0 + 2.0 * s) + 2.0 * s * C2 / C1) / q
    root = np.sqrt(C1 + C2)
    dB1 = (2.0 * C1 + s * d1) / root * (1.0 + C2 / C1)
    dB2 = (2.0 * C2 - (1.0 - s) * d2) / root * (1.0 + C1 / C2)
    return np.array([d1, d2, dB1, dB2])


def endpoint_slopes(pack, side):
    """Taylor slopes (C1', C2') at an endpoint, from the ODE system itself.

    Obtained by evaluating the system and its s-derivative at the endpoint:
    at s = 0, C2' = 2 C2 and C1' = -4 C1 - 6 C2; mirrored at s = 1.
    """
    if side == 0:
        return -4.0 * pack.C1_0 - 6.0 * pack.C2_0, 2.0 * pack.C2_0
    return -2.0 * pack.C1_1, 4.0 * pack.C2_1 + 6.0 * pack.C1_1


def startup(pack, side, eps=DEFAULT_EPS):
    """First integration state a distance ``eps`` inside the interval.

    One first-order Taylor step off the endpoint, using the endpoint slopes
    for the C components and the regularized derivatives for the B's.
    """
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    if not 0.0 < eps <= 1e-4:
        raise ValueError(f"eps must lie in (0, 1e-4], got {eps}")
    d1, d2 = endpoint_slopes(pack, side)
    if side == 0:
        s, C1, C2, B1, B2 = 0.0, pack.C1_0, pack.C2_0, pack.B1_0, pack.B2_0
        step = eps
    else:
        s, C1, C2, B1, B2 = 1.0, pack.C1_1, pack.C2_1, pack.B1_1, pack.B2_1
        step = -eps
    root = np.sqrt(C1 + C2)
    dB1 = (2.0 * C1 + s * d1) / root * (1.0 + C2 / C1)
    dB2 = (2.0 * C2 - (1.0 - s) * d2) / root * (1.0 + C1 / C2)
    return OdeState(s + step, C1 + step * d1, C2 + step * d2,
                    B1 + step * dB1, B2 + step * dB2)


@dataclass
class Branch:
    """One integrated branch with dense cubic-Hermite output.

    ``s`` is ascending; ``y`` and ``d`` hold the state (C1, C2, B1, B2) and
    its derivative at each node.  ``identity_drift`` is the largest observed
    |B2 - B1 - sqrt(C1 + C2)| (redundancy monitor for the B integration).
    """
    side: int
    s: np.ndarray
    y: np.ndarray
    d: np.ndarray
    identity_drift: float
    pack: BoundaryPack
    eps: float
    meta: dict = field(default_factory=dict)

    @property
    def lo(self):
        return float(self.s[0])

    @property
    def hi(self):
        return float(self.s[-1])

    def sample(self, grid):
        """Cubic-Hermite state samples at ``grid`` (columns C1, C2, B1, B2).

        Queries outside the node range are extrapolated from the edge
        segment; callers keep them within O(eps) of the ends.
        """
        grid = np.asarray(grid, dtype=float)
        j = np.clip(np.searchsorted(self.s, grid) - 1, 0, self.s.size - 2)
        h = self.s[j + 1] - self.s[j]
        t = (grid - self.s[j]) / h
        t2, t3 = t * t, t * t * t
        h00 = 2.0 * t3 - 3.0 * t2 + 1.0
        h10 = t3 - 2.0 * t2 + t
        h01 = -2.0 * t3 + 3.0 * t2
        h11 = t3 - t2
        return (h00[:, None] * self.y[j] + (h10 * h)[:, None] * self.d[j]
                + h01[:, None] * self.y[j + 1] + (h11 * h)[:, None] * self.d[j + 1])

    def limit_values(self, grid):
        """(A1, A2, B1, B2) at ``grid``; B2 is reconstructed as B1 + sqrt(C1+C2)."""
        grid = np.asarray(grid, dtype=float)
        st = self.sample(grid)
        A1 = grid * grid * st[:, 0]
        A2 = (1.0 - grid) ** 2 * st[:, 1]
        B1 = st[:, 2]
        B2 = B1 + np.sqrt(st[:, 0] + st[:, 1])
        return A1, A2, B1, B2


def integrate_branch(pack, side, stop, steps_per_unit=DEFAULT_STEPS_PER_UNIT,
                     eps=DEFAULT_EPS):
    """Integrate one branch from its endpoint to ``stop``.

    side 0 runs forward from s = eps, side 1 backward from s = 1 - eps; the
    step count is ``steps_per_unit`` scaled by the branch length.  Classical
    fixed-step fourth-order Runge-Kutta; every node stores the state and its
    derivative for dense output.  Loss of positivity in C raises
    :class:`NumericalFailure` with the last good s.
    """
    st = startup(pack, side, eps)
    s0 = st.s
    if side == 0 and not s0 < stop <= 1.0:
        raise ValueError(f"forward stop must lie in ({s0}, 1], got {stop}")
    if side == 1 and not 0.0 <= stop < s0:
        raise ValueError(f"backward stop must lie in [0, {s0}), got {stop}")
    n = max(1, int(np.ceil(abs(stop - s0) * steps_per_unit)))
    h = (stop - s0) / n
    s_nodes = np.empty(n + 1)
    y_nodes = np.empty((n + 1, 4))
    d_nodes = np.empty((n + 1, 4))
    y = np.array([st.C1, st.C2, st.B1, st.B2])
    s = s0
    drift = 0.0
    for i in range(n):
        try:
            k1 = rhs(s, y)
            k2 = rhs(s + 0.5 * h, y + 0.5 * h * k1)
            k3 = rhs(s + 0.5 * h, y + 0.5 * h * k2)
            k4 = rhs(s + h, y + h * k3)
        except NumericalFailure as exc:
            exc.context["last_good_s"] = s
            raise
        s_nodes[i] = s
        y_nodes[i] = y
        d_nodes[i] = k1
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        s = s0 + (i + 1) * h
        drift = max(drift, abs(y[3] - y[2] - np.sqrt(y[0] + y[1])))
    s_nodes[n] = s
    y_nodes[n] = y
    d_nodes[n] = rhs(s, y)
    if side == 1:
        s_nodes = s_nodes[::-1].copy()
        y_nodes = y_nodes[::-1].copy()
        d_nodes = d_nodes[::-1].copy()
    return Branch(side, s_nodes, y_nodes, d_nodes, drift, pack, eps,
                  {"steps": n, "stop": stop})


def branch_curve(branch, grid, method="ode"):
    """Limit curve of a single branch restricted to its own span.

    Used for branch-overlay comparisons of non-touching systems, where each
    branch continues the limit curve of a different touching system.  Grid
    points at the outer endpoint (s = 0 or 1) get the closed-form values.
    """
    grid = np.asarray(grid, dtype=float)
    pack = branch.pack
    if branch.side == 0:
        keep = grid <= branch.hi
    else:
        keep = grid >= branch.lo
    g = grid[keep]
    A1, A2, B1, B2 = branch.limit_values(g)
    _fix_endpoints(g, A1, A2, B1, B2, pack)
    meta = {"side": branch.side, "identity_drift": branch.identity_drift,
            "span": [branch.lo, branch.hi]}
    return LimitCurve(g, A1, A2, B1, B2, method, meta).validate()


def _fix_endpoints(g, A1, A2, B1, B2, pack):
    # pin grid points at s = 0 / s = 1 to the exact closed forms
    at0 = g == 0.0
    A1[at0], A2[at0] = 0.0, pack.C2_0
    B1[at0], B2[at0] = pack.B1_0, pack.B2_0
    at1 = g == 1.0
    A1[at1], A2[at1] = pack.C1_1, 0.0
    B1[at1], B2[at1] = pack.B1_1, pack.B2_1


def assemble_curve(forward, backward, c1, c2, grid, method="ode"):
    """Splice two branches and the plateau constants into one limit curve.

    Branch values fill [0, c1] and [c2, 1]; inside (c1, c2) the four
    functions are constant, set to the mean of the two branch endpoint
    states (their mismatch is recorded in ``meta`` together with the branch
    redundancy monitors).  For touching systems c1 = c2 and the plateau is
    empty.
    """
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > 1:
        raise ValueError("grid must be strictly increasing inside [0, 1]")
    pack = forward.pack
    end_f = forward.limit_values(np.array([c1]))
    end_b = backward.limit_values(np.array([c2]))
    mism = {"at_c1_vs_c2": [float(abs(a[0] - b[0]))
                            for a, b in zip(end_f, end_b)]}
    # flagged, never fatal: both branch endpoints estimate the same plateau
    mism["ok"] = max(mism["at_c1_vs_c2"]) <= 1e-4

    A1 = np.empty_like(grid)
    A2 = np.empty_like(grid)
    B1 = np.empty_like(grid)
    B2 = np.empty_like(grid)
    left = grid <= c1
    right = grid >= c2
    mid = ~left & ~right
    if np.any(left):
        A1[left], A2[left], B1[left], B2[left] = forward.limit_values(grid[left])
    if np.any(right):
        A1[right], A2[right], B1[right], B2[right] = backward.limit_values(grid[right])
    if np.any(mid):
        # plateau constants: A is constant there, so C must be read through
        # the s-rescaling at each grid point rather than copied
        plA1 = 0.5 * (end_f[0][0] + end_b[0][0])
        plA2 = 0.5 * (end_f[1][0] + end_b[1][0])
        plB1 = 0.5 * (end_f[2][0] + end_b[2][0])
        plB2 = 0.5 * (end_f[3][0] + end_b[3][0])
        A1[mid], A2[mid], B1[mid], B2[mid] = plA1, plA2, plB1, plB2
    _fix_endpoints(grid, A1, A2, B1, B2, pack)
    meta = {"c1": float(c1), "c2": float(c2), "splice_mismatch": mism,
            "identity_drift": {"forward": forward.identity_drift,
                               "backward": backward.identity_drift}}
    return LimitCurve(grid.copy(), A1, A2, B1, B2, method, meta).validate()


def solve_system(sys, plateau, grid, steps_per_unit=DEFAULT_STEPS_PER_UNIT,
                 eps=DEFAULT_EPS):
    """Full ODE-route curve for ``sys``: both branches plus the splice.

    ``plateau`` supplies the window [c1, c2] (from the surface route).
    Returns the assembled :class:`LimitCurve`.
    """
    pack = boundary_values(sys)
    forward = integrate_branch(pack, 0, plateau.c1, steps_per_unit, eps)
    backward = integrate_branch(pack, 1, plateau.c2, steps_per_unit, eps)
    return assemble_curve(forward, backward, plateau.c1, plateau.c2, grid)
