"""Cross-method diagnostics: curve comparison, ODE residuals, identities.

The three computation routes (lattice, ODE, surface) approximate the same
four limit functions, so any two curves can be differenced on a common grid.
Independent of any pairing, a single curve can be checked against the
differential relations the limits satisfy and against the square-root
identity linking the a- and b-limits.  Together these give quantitative
meaning to "the methods agree".
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalFailure

FUNCS = ("A1", "A2", "B1", "B2")


def _window_of(curve, window):
    """Extract a plateau window (c1, c2) from an argument or curve metadata."""
    if window is not None:
        if hasattr(window, "c1"):
            return float(window.c1), float(window.c2)
        c1, c2 = window
        return float(c1), float(c2)
    meta = getattr(curve, "meta", {}) or {}
    if "c1" in meta:
        return float(meta["c1"]), float(meta["c2"])
    plat = meta.get("plateau")
    if isinstance(plat, dict) and "c1" in plat:
        return float(plat["c1"]), float(plat["c2"])
    return None


@dataclass(frozen=True)
class ComparisonReport:
    """Per-function max/mean absolute differences of two curves.

    ``max_abs`` and ``mean_abs`` map function name to the statistic over the
    kept grid points.  ``passed`` is None when no tolerance was supplied.
    """
    methods: tuple
    n_points: int
    n_excluded: int
    exclude_margin: float
    max_abs: dict
    mean_abs: dict
    tolerance: float = None
    passed: bool = None

    def worst(self):
        return max(self.max_abs.values())

    def as_dict(self):
        return {"methods": list(self.methods), "n_points": self.n_points,
                "n_excluded": self.n_excluded,
                "exclude_margin": self.exclude_margin,
                "max_abs": dict(self.max_abs), "mean_abs": dict(self.mean_abs),
                "tolerance": self.tolerance, "passed": self.passed}


def compare(a, b, exclude_margin=0.0, window=None, tolerance=None):
    """Difference two limit curves on their common grid.

    Grids must agree point by point; otherwise ``b`` is resampled onto the
    overlapping part of ``a``'s grid by linear interpolation.  With a
    positive ``exclude_margin`` every point closer than the margin to the
    plateau window [c1, c2] is dropped (the window is taken from ``window``
    or from either curve's metadata).  A ``tolerance`` turns the report into
    a pass/fail verdict on the max statistic.
    """
    sa, sb = a.s, b.s
    if sa.size == sb.size and np.array_equal(sa, sb):
        grid = sa
        va = {f: getattr(a, f) for f in FUNCS}
        vb = {f: getattr(b, f) for f in FUNCS}
    else:
        keep = (sa >= sb[0] - 1e-12) & (sa <= sb[-1] + 1e-12)
        grid = sa[keep]
        if grid.size == 0:
            raise NumericalFailure("curves have no overlapping grid range",
                                   {"a": (sa[0], sa[-1]), "b": (sb[0], sb[-1])})
        va = {f: getattr(a, f)[keep] for f in FUNCS}
        vb = {f: np.interp(grid, sb, getattr(b, f)) for f in FUNCS}

    mask = np.ones(grid.size, dtype=bool)
    if exclude_margin > 0.0:
        win = _window_of(a, window) or _window_of(b, None)
        if win is None:
            raise ValueError("exclude_margin needs a plateau window")
        c1, c2 = win
        dist = np.maximum(np.maximum(c1 - grid, grid - c2), 0.0)
        mask = dist >= exclude_margin
    if not np.any(mask):
        raise NumericalFailure("exclusion margin removed every grid point",
                               {"margin": exclude_margin})

    max_abs, mean_abs = {}, {}
    for f in FUNCS:
        d = np.abs(va[f][mask] - vb[f][mask])
        max_abs[f] = float(d.max())
        mean_abs[f] = float(d.mean())
    passed = None if tolerance is None else max(max_abs.values()) <= tolerance
    return ComparisonReport((a.method or "a", b.method or "b"),
                            int(mask.sum()), int(grid.size - mask.sum()),
                            float(exclude_margin), max_abs, mean_abs,
                            tolerance, passed)


@dataclass(frozen=True)
class ResidualReport:
    """Max relative residuals of the four differential relations."""
    h: float
    n_points: int
    max_rel: tuple
    meta: dict = field(default_factory=dict)

    def worst(self):
        return max(self.max_rel)

    def as_dict(self):
        return {"h": self.h, "n_points": self.n_points,
                "max_rel": list(self.max_rel), **self.meta}


def ode_residuals(curve, h=1e-3, window=None, edge_margin=0.01):
    """Central-difference residuals of the four limit relations on a curve.

    The relations (with ' = d/ds) are

        r1 = B1' s + B2' (1 - s)
        r2 = B1 B1' s + B2 B2' (1 - s) + A1' + A2'
        r3 = A1 (B1' - B2')(1 - s) + A1' (B1 - B2) s
        r4 = A2 (B1' - B2') s + A2' (B1 - B2)(1 - s)

    evaluated with stride-based central differences of step ``h`` on the
    curve's own uniform grid; each residual is divided by
    max(1, largest |term|) at that point.  Points within ``edge_margin`` of
    0, 1 or the plateau edges are excluded.  A grid coarser than ``h`` or a
    nonuniform grid raises ValueError.
    """
    s = curve.s
    if s.size < 3:
        raise ValueError("curve grid too short for central differences")
    dx = np.diff(s)
    if dx.max() - dx.min() > 1e-9 * dx.max():
        raise ValueError("residual evaluation needs a uniform grid")
    step = float(dx.mean())
    stride_f = h / step
    stride = int(round(stride_f))
    if stride < 1 or abs(stride_f - stride) > 1e-6:
        raise ValueError(f"grid spacing {step:.3e} does not divide h={h:.3e}")

    i = np.arange(stride, s.size - stride)
    sm = s[i]
    vals = {f: getattr(curve, f)[i] for f in FUNCS}
    der = {f: (getattr(curve, f)[i + stride] - getattr(curve, f)[i - stride])
           / (2.0 * stride * step) for f in FUNCS}

    keep = (sm > edge_margin) & (sm < 1.0 - edge_margin)
    win = _window_of(curve, window)
    if win is not None:
        c1, c2 = win
        keep &= np.abs(sm - c1) > edge_margin
        keep &= np.abs(sm - c2) > edge_margin
    if not np.any(keep):
        raise NumericalFailure("no interior points left for residuals", {})
    sm = sm[keep]
    A1, A2, B1, B2 = (vals[f][keep] for f in FUNCS)
    dA1, dA2, dB1, dB2 = (der[f][keep] for f in FUNCS)
    t = 1.0 - sm

    def rel(total, *terms):
        scale = np.maximum(1.0, np.max(np.abs(terms), axis=0))
        return float(np.max(np.abs(total) / scale))

    t11, t12 = dB1 * sm, dB2 * t
    r1 = rel(t11 + t12, t11, t12)
    t21, t22 = B1 * dB1 * sm, B2 * dB2 * t
    r2 = rel(t21 + t22 + dA1 + dA2, t21, t22, dA1, dA2)
    t31, t32 = A1 * (dB1 - dB2) * t, dA1 * (B1 - B2) * sm
    r3 = rel(t31 + t32, t31, t32)
    t41, t42 = A2 * (dB1 - dB2) * sm, dA2 * (B1 - B2) * t
    r4 = rel(t41 + t42, t41, t42)
    return ResidualReport(h, int(sm.size), (r1, r2, r3, r4),
                          {"stride": stride, "edge_margin": edge_margin,
                           "window": win})


@dataclass(frozen=True)
class IdentityReport:
    """Square-root identity and endpoint checks for one curve."""
    max_abs: float
    max_rel: float
    min_gap: float
    endpoint_ok: bool
    n_points: int

    def as_dict(self):
        return {"max_abs": self.max_abs, "max_rel": self.max_rel,
                "min_gap": self.min_gap, "endpoint_ok": self.endpoint_ok,
                "n_points": self.n_points}


def identity_checks(curve, window=None):
    """Check (B2 - B1)^2 = A1/s^2 + A2/(1-s)^2 off the plateau.

    Also verifies B2 > B1 on the whole grid and the endpoint zeros
    A1(0) = 0, A2(1) = 0 when those grid points are present.  The identity
    itself is evaluated on interior points outside [c1, c2] (the window
    comes from ``window`` or curve metadata; without one the whole interior
    is used, which is correct for curves of touching systems).
    """
    s = curve.s
    gap = curve.B2 - curve.B1
    endpoint_ok = True
    at0 = s == 0.0
    at1 = s == 1.0
    if np.any(at0):
        endpoint_ok &= bool(np.all(curve.A1[at0] == 0.0))
    if np.any(at1):
        endpoint_ok &= bool(np.all(curve.A2[at1] == 0.0))

    keep = (s > 0.0) & (s < 1.0)
    win = _window_of(curve, window)
    if win is not None:
        c1, c2 = win
        keep &= (s < c1) | (s > c2)
    if not np.any(keep):
        return IdentityReport(0.0, 0.0, float(gap.min()), endpoint_ok, 0)
    sm = s[keep]
    lhs = gap[keep] ** 2
    rhs = curve.A1[keep] / sm ** 2 + curve.A2[keep] / (1.0 - sm) ** 2
    diff = np.abs(lhs - rhs)
    return IdentityReport(float(diff.max()),
                          float(np.max(diff / np.maximum(1.0, lhs))),
                          float(gap.min()), endpoint_ok, int(sm.size))


@dataclass(frozen=True)
class ConvergenceTable:
    """Lattice-vs-surface errors at one ray parameter over several levels."""
    s: float
    levels: tuple
    plain: np.ndarray      # rows: levels; columns: A1, A2, B1, B2
    extrapolated: np.ndarray
    reference: tuple

    def max_plain(self):
        return self.plain.max(axis=1)

    def max_extrapolated(self):
        return self.extrapolated.max(axis=1)

    def as_dict(self):
        return {"s": self.s, "levels": list(self.levels),
                "plain": self.plain.tolist(),
                "extrapolated": self.extrapolated.tolist(),
                "reference": list(self.reference)}


def convergence_study(sys, s, levels):
    """Error table of finite-level ray values against the surface reference.

    For each level m the lattice is solved fresh, sampled at ``s`` with and
    without Richardson extrapolation, and differenced against the
    closed-form surface values.
    """
    from .lattice import ray_limit, solve_lattice
    from .surface import limits_at
    levels = tuple(int(m) for m in levels)
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly increasing")
    ref = limits_at(sys, s)
    ref_t = (ref.A1, ref.A2, ref.B1, ref.B2)
    plain = np.empty((len(levels), 4))
    extra = np.empty((len(levels), 4))
    for i, m in enumerate(levels):
        lat = solve_lattice(sys, m)
        p = ray_limit(lat, s)
        r = ray_limit(lat, s, extrapolate=True)
        plain[i] = [abs(p.A1 - ref.A1), abs(p.A2 - ref.A2),
                    abs(p.B1 - ref.B1), abs(p.B2 - ref.B2)]
        extra[i] = [abs(r.A1 - ref.A1), abs(r.A2 - ref.A2),
                    abs(r.B1 - ref.B1), abs(r.B2 - ref.B2)]
    return ConvergenceTable(float(s), levels, plain, extra, ref_t)
