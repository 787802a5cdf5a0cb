"""Recurrence limits from a rational parametrization of the spectral curve.

For a star-frame configuration [-alpha, 0] u [beta, 1] the limiting
recurrence coefficients at ray parameter s come from a genus-zero algebraic
surface.  Its uniformizing coordinate pair (u, tau) is pinned down by two
scalar root problems; partial-fraction residues of the uniformizing map then
give the limits in closed form.  This route is the precision reference for
the lattice and ODE methods: every root solve is plain bisection to machine
accuracy and all formulas are explicit.

Everything here is elementwise: scalar arguments give scalars, array
arguments give arrays, so whole grids go through the solvers in one call.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .rootfind import bisect, count_sign_changes, expand_upper
from .systems import (AffineMap, LimitCurve, LimitPoint, StarConfig,
                      pushforward_limits, reflect, star_normalize)

# lower edge of the u/tau domains; both variables live strictly above 1
_EDGE = 1.0 + 1e-12


# ---------------------------------------------------------------------------
# coordinate functions of the parametrization
# ---------------------------------------------------------------------------

def gap_ratio(u):
    """Configuration invariant matched by beta * (1 + alpha) / (alpha + beta).

    Strictly decreasing from 1 to 0 on u in (1, 2]; its level set determines
    the conformal parameter u of the configuration.
    """
    return u * (2.0 - u) ** 3 / (2.0 * u - 1.0) ** 3


def projection_ratio(u, tau):
    """Core rational map of the surface; equals 1 + alpha at tau0."""
    return tau * tau * (tau + u - 2.0) / ((2.0 * u - 1.0) * tau - u)


def alpha_coord(u, tau):
    """Left interval length recovered from surface coordinates."""
    return projection_ratio(u, tau) - 1.0


def beta_coord(u, tau):
    """Right interval gap recovered from surface coordinates."""
    a = alpha_coord(u, tau)
    g = gap_ratio(u)
    return a * g / (1.0 + a - g)


def ray_direction(u, tau):
    """Ray coordinate theta in (-1, 1) of a surface point; s = (1 + theta)/2."""
    num = 2.0 + 2.0 * u * tau - u - tau
    den = (2.0 * u * tau - u - tau) * (u + tau) * (u + tau - 2.0)
    return (tau - u) * np.sqrt(num / den)


# ---------------------------------------------------------------------------
# parameter solves
# ---------------------------------------------------------------------------

def solve_u(alpha, beta):
    """Conformal parameter u in (1, 2] for the configuration (alpha, beta).

    beta = 0 (touching intervals) gives u = 2 exactly; otherwise u is the
    bisection root of gap_ratio(u) = beta (1 + alpha)/(alpha + beta).
    """
    beta = np.asarray(beta, dtype=float)
    target = beta * (1.0 + alpha) / (alpha + beta)
    lo = np.full(beta.shape, _EDGE)
    hi = np.full(beta.shape, 2.0)
    u = bisect(lambda x: gap_ratio(x) - target, lo, hi)
    u = np.where(beta == 0.0, 2.0, u)
    return u if u.ndim else float(u)


def solve_tau0(u, alpha, check_unique=False):
    """Root tau0 > 1 of projection_ratio(u, tau) = 1 + alpha.

    The bracket upper end is grown geometrically until the sign flips; with
    ``check_unique`` the bracket is scanned for extra sign changes and a
    multiple crossing raises :class:`NumericalFailure`.
    """
    u = np.asarray(u, dtype=float)
    f = lambda t: projection_ratio(u, t) - (1.0 + alpha)
    lo = np.full(u.shape, _EDGE)
    hi = expand_upper(f, lo, np.full(u.shape, 2.0))
    if check_unique:
        changes = np.asarray(count_sign_changes(f, lo, hi))
        # a root exactly at the bracket end registers as zero crossings
        fhi = np.asarray(f(hi), dtype=float)
        ok = (changes == 1) | ((changes == 0) & (fhi == 0.0))
        if not np.all(ok):
            raise NumericalFailure(
                "projection ratio crosses its target more than once",
                {"alpha": float(alpha), "changes": changes})
    tau = bisect(f, lo, hi)
    return tau if np.ndim(tau) else float(tau)


def infinity_preimages(u, tau0):
    """The other two preimages of infinity, tau1 < 0 < tau2 < tau0.

    Roots of the monic quadratic with sum -(u + tau0 - 2) and product
    -u tau0 (u + tau0 - 2) / (2 u tau0 - u - tau0), extracted with the
    sign-matched stable formula.
    """
    u = np.asarray(u, dtype=float)
    tau0 = np.asarray(tau0, dtype=float)
    rsum = -(u + tau0 - 2.0)
    prod = -u * tau0 * (u + tau0 - 2.0) / (2.0 * u * tau0 - u - tau0)
    disc = np.sqrt(rsum * rsum - 4.0 * prod)
    q = 0.5 * (rsum + np.copysign(disc, rsum))
    q = np.where(q == 0.0, 0.5 * disc, q)  # rsum == 0: symmetric pair
    r1 = np.where(q < prod / q, q, prod / q)
    r2 = np.where(q < prod / q, prod / q, q)
    if r1.ndim:
        return r1, r2
    return float(r1), float(r2)


@dataclass(frozen=True)
class SurfaceParams:
    """Solved surface coordinates of one configuration (fields may be arrays).

    gamma = 2 - u; the preimages satisfy tau1 < 0 < tau2 < tau0.
    """
    alpha: object
    beta: object
    u: object
    tau0: object
    tau1: object
    tau2: object
    gamma: object


def surface_params(alpha, beta, check_unique=False):
    """Solve all surface coordinates for configuration(s) (alpha, beta)."""
    u = solve_u(alpha, beta)
    tau0 = solve_tau0(u, alpha, check_unique=check_unique)
    tau1, tau2 = infinity_preimages(u, tau0)
    bad = ((np.asarray(tau1) >= 0) | (np.asarray(tau2) <= 0)
           | (np.asarray(tau2) >= np.asarray(tau0)))
    if np.any(bad):
        raise NumericalFailure("surface preimages out of order",
                               {"alpha": alpha, "tau1": tau1, "tau2": tau2})
    return SurfaceParams(alpha, beta, u, tau0, tau1, tau2, 2.0 - u)


@dataclass(frozen=True)
class ResidueLimits:
    """Limit values from partial-fraction residues (fields may be arrays).

    C1 and C2 are the intermediate residues entering A/B; they are not the
    s-rescaled a-limits and C1 is typically negative.
    """
    A1: object
    A2: object
    B1: object
    B2: object
    C1: object
    C2: object


def residue_limits(p):
    """Closed-form limits A1, A2, B1, B2 for solved surface coordinates."""
    al, g = p.alpha, p.gamma
    t0, t1, t2 = p.tau0, p.tau1, p.tau2

    def one_side(ta, tb):
        # residue chain for the sheet whose infinity preimage is ta
        c = -al * ta ** 2 * (ta - g) / ((t0 - ta) ** 2 * (ta - tb))
        a = -al * t0 ** 2 * c * (t0 - g) / ((t0 - ta) ** 2 * (t0 - tb))
        d = (t0 ** 2 * tb + 2.0 * t0 ** 2 * ta - 3.0 * t0 * ta * tb
             - g * t0 ** 2 - g * ta * t0 + 2.0 * g * ta * tb)
        b = al * t0 * d / ((t0 - ta) ** 2 * (t0 - tb) ** 2)
        return c, a, b

    c1, a1, b1 = one_side(t1, t2)
    c2, a2, b2 = one_side(t2, t1)
    return ResidueLimits(a1, a2, b1, b2, c1, c2)


def threshold_ray(alpha):
    """(theta, s) of the ray where the touching configuration fills both supports."""
    tau = solve_tau0(2.0, alpha, check_unique=True)
    theta = ray_direction(2.0, tau)
    return theta, 0.5 * (1.0 + theta)


def pushed_beta(alpha, s):
    """Gap beta_s of the support configuration seen along ray s in (s_alpha, 1).

    Solves the pair {alpha_coord = alpha, ray_direction = 2 s - 1} by nested
    bisection: the inner solve recovers tau(u) along the alpha level set, the
    outer solve walks u in (1, 2].  Returns (beta_s, u, tau).
    """
    s = np.asarray(s, dtype=float)
    theta = 2.0 * s - 1.0

    def outer(u):
        t = solve_tau0(u, alpha)
        return ray_direction(u, t) - theta

    lo = np.full(s.shape, 1.0 + 1e-9)
    hi = np.full(s.shape, 2.0)
    u = bisect(outer, lo, hi)
    tau = solve_tau0(u, alpha)
    beta_s = beta_coord(u, tau)
    if np.ndim(beta_s):
        return beta_s, u, tau
    return float(beta_s), float(u), float(tau)


# ---------------------------------------------------------------------------
# plateau and full evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlateauInfo:
    """Plateau window [c1, c2] of a star configuration and its constants.

    For touching intervals c1 = c2 = threshold ray.  ``plateau`` carries the
    star-frame constant limit values at the window midpoint.
    """
    c1: float
    c2: float
    plateau: LimitPoint
    s_alpha_direct: float
    s_alpha_reflected: float

    def as_dict(self):
        p = self.plateau
        return {"c1": self.c1, "c2": self.c2,
                "plateau": {"s": p.s, "A1": p.A1, "A2": p.A2,
                            "B1": p.B1, "B2": p.B2},
                "s_alpha_direct": self.s_alpha_direct,
                "s_alpha_reflected": self.s_alpha_reflected}


def reflected_star(sc):
    """Star configuration of the reflected system plus its transport map."""
    sys_r, _ = reflect(sc.system())
    return star_normalize(sys_r)


def plateau_bounds(sc):
    """Plateau window and constants for a star configuration.

    c2 comes directly from the ray direction of the fully solved
    configuration (the inversion of the gap-versus-ray map at the actual
    gap); a consistency guard re-solves the gap at c2 and requires the round
    trip to land back on beta.  c1 is one minus the analogous value of the
    reflected configuration.
    """
    _, s_dir = threshold_ray(sc.alpha)
    sc_hat, _ = reflected_star(sc)
    _, s_ref = threshold_ray(sc_hat.alpha)
    params = surface_params(sc.alpha, sc.beta, check_unique=True)
    if sc.beta == 0.0:
        c1 = c2 = s_dir
    else:
        c2 = 0.5 * (1.0 + ray_direction(params.u, params.tau0))
        back, _, _ = pushed_beta(sc.alpha, c2)
        if abs(back - sc.beta) > 1e-9:
            raise NumericalFailure("plateau edge failed the gap round trip",
                                   {"c2": c2, "beta": sc.beta, "back": back})
        params_hat = surface_params(sc_hat.alpha, sc_hat.beta)
        c2_hat = 0.5 * (1.0 + ray_direction(params_hat.u, params_hat.tau0))
        c1 = 1.0 - c2_hat
        if not 0.0 < c1 < c2 < 1.0:
            raise NumericalFailure("plateau window out of order",
                                   {"c1": c1, "c2": c2})
    vals = residue_limits(params)
    mid = 0.5 * (c1 + c2)
    point = LimitPoint(mid, vals.A1, vals.A2, vals.B1, vals.B2)
    return PlateauInfo(c1, c2, point, s_dir, s_ref)


def _star_values_right(alpha, s):
    """Star-frame limits for ray parameters right of the plateau (vectorized)."""
    beta_s, _, _ = pushed_beta(alpha, s)
    vals = residue_limits(surface_params(alpha, beta_s))
    return vals.A1, vals.A2, vals.B1, vals.B2


def limits_at(sys, s, info=None):
    """Limit point of ``sys`` at ray parameter ``s`` via the surface route.

    Star-normalizes, dispatches on the plateau position (closed-form
    endpoint values at s in {0, 1}; plateau constants inside [c1, c2];
    direct solve right of the plateau; reflected solve plus push-back left
    of it), and returns the point in user coordinates.  ``info`` may carry a
    precomputed :class:`PlateauInfo` for the star configuration.
    """
    from .ode import boundary_values  # closed-form endpoint data
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    if s == 0.0 or s == 1.0:
        pack = boundary_values(sys)
        if s == 0.0:
            return LimitPoint(0.0, 0.0, pack.C2_0, pack.B1_0, pack.B2_0)
        return LimitPoint(1.0, pack.C1_1, 0.0, pack.B1_1, pack.B2_1)
    sc, amap = star_normalize(sys)
    if info is None:
        info = plateau_bounds(sc)
    if info.c1 <= s <= info.c2:
        p = info.plateau
        return pushforward_limits(LimitPoint(s, p.A1, p.A2, p.B1, p.B2), amap)
    if s > info.c2:
        a1, a2, b1, b2 = _star_values_right(sc.alpha, s)
        return pushforward_limits(LimitPoint(s, a1, a2, b1, b2), amap)
    # left of the plateau: evaluate the reflected configuration at 1 - s
    sc_hat, map_hat = reflected_star(sc)
    a1, a2, b1, b2 = _star_values_right(sc_hat.alpha, 1.0 - s)
    p = LimitPoint(1.0 - s, a1, a2, b1, b2)
    p = pushforward_limits(p, map_hat)                    # hat-star -> reflected frame
    p = pushforward_limits(p, AffineMap(-1.0, 0.0), True)  # undo reflection
    return pushforward_limits(p, amap)


def limit_curve(sys, grid, info=None):
    """Limit curve of ``sys`` on ``grid`` via the surface route (vectorized).

    Grid points are partitioned into endpoint / plateau / direct / reflected
    zones and each zone is solved in one vector pass; results agree with
    pointwise :func:`limits_at` to rounding.
    """
    from .ode import boundary_values
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a nonempty 1-d array")
    if np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > 1:
        raise ValueError("grid must be strictly increasing inside [0, 1]")
    sc, amap = star_normalize(sys)
    if info is None:
        info = plateau_bounds(sc)
    lam, c = amap.scale, amap.shift
    A1 = np.empty_like(grid)
    A2 = np.empty_like(grid)
    B1 = np.empty_like(grid)
    B2 = np.empty_like(grid)

    interior = (grid > 0.0) & (grid < 1.0)
    plat = interior & (grid >= info.c1) & (grid <= info.c2)
    right = interior & (grid > info.c2)
    left = interior & (grid < info.c1)

    pk = boundary_values(sys)
    A1[grid == 0.0], A2[grid == 0.0] = 0.0, pk.C2_0
    B1[grid == 0.0], B2[grid == 0.0] = pk.B1_0, pk.B2_0
    A1[grid == 1.0], A2[grid == 1.0] = pk.C1_1, 0.0
    B1[grid == 1.0], B2[grid == 1.0] = pk.B1_1, pk.B2_1

    p = info.plateau
    A1[plat], A2[plat] = lam * lam * p.A1, lam * lam * p.A2
    B1[plat], B2[plat] = lam * p.B1 + c, lam * p.B2 + c

    if np.any(right):
        a1, a2, b1, b2 = _star_values_right(sc.alpha, grid[right])
        A1[right], A2[right] = lam * lam * a1, lam * lam * a2
        B1[right], B2[right] = lam * b1 + c, lam * b2 + c
    if np.any(left):
        sc_hat, map_hat = reflected_star(sc)
        a1, a2, b1, b2 = _star_values_right(sc_hat.alpha, 1.0 - grid[left][::-1])
        lh, ch = map_hat.scale, map_hat.shift
        # hat-star -> reflected frame -> (swap, negate) -> user frame
        a1, a2 = lh * lh * a1, lh * lh * a2
        b1, b2 = lh * b1 + ch, lh * b2 + ch
        A1[left], A2[left] = lam * lam * a2[::-1], lam * lam * a1[::-1]
        B1[left], B2[left] = lam * -b2[::-1] + c, lam * -b1[::-1] + c

    meta = {"plateau": info.as_dict(), "frame_map": {"scale": lam, "shift": c}}
    return LimitCurve(grid.copy(), A1, A2, B1, B2, "surface", meta).validate()
