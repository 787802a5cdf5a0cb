"""System descriptions and coordinate normalization.

An Angelesco system here is a pair of disjoint (or touching) real intervals,
each carrying a classical weight.  All asymptotic machinery works in a
normalized "star" frame where the second interval is [beta, 1] and the first
is [-alpha, 0]; this module holds the value types plus the affine bookkeeping
that moves recurrence-limit data between frames.
"""
from dataclasses import dataclass, field

import numpy as np

WEIGHT_KINDS = ("chebyshev1", "chebyshev2", "uniform")


def check_weight_kind(kind):
    if kind not in WEIGHT_KINDS:
        raise ValueError(f"unknown weight kind {kind!r}; expected one of {WEIGHT_KINDS}")
    return kind


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with lo < hi."""
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def mid(self):
        return 0.5 * (self.lo + self.hi)

    @property
    def radius(self):
        return 0.5 * (self.hi - self.lo)

    @property
    def length(self):
        return self.hi - self.lo


@dataclass(frozen=True)
class AngelescoSystem:
    """Two ordered intervals with weights; i1 lies left of i2 (touching allowed)."""
    i1: Interval
    i2: Interval
    w1: str = "chebyshev2"
    w2: str = "chebyshev2"

    def __post_init__(self):
        check_weight_kind(self.w1)
        check_weight_kind(self.w2)
        if self.i1.hi > self.i2.lo:
            raise ValueError(
                f"intervals must be disjoint or touching: {self.i1} vs {self.i2}")

    @property
    def touching(self):
        return self.i1.hi == self.i2.lo


@dataclass(frozen=True)
class StarConfig:
    """Normalized frame: intervals [-alpha, 0] and [beta, 1], alpha > 0, 0 <= beta < 1."""
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not (0.0 <= self.beta < 1.0):
            raise ValueError(f"beta must lie in [0, 1), got {self.beta}")

    def system(self, w1="chebyshev2", w2="chebyshev2"):
        return AngelescoSystem(Interval(-self.alpha, 0.0),
                               Interval(self.beta, 1.0), w1, w2)


@dataclass(frozen=True)
class AffineMap:
    """x_user = scale * y + shift with scale != 0."""
    scale: float
    shift: float

    def __post_init__(self):
        if self.scale == 0:
            raise ValueError("scale must be nonzero")

    def apply(self, y):
        return self.scale * y + self.shift

    def invert(self, x):
        return (x - self.shift) / self.scale


@dataclass(frozen=True)
class LimitPoint:
    """Recurrence-coefficient limits along the ray direction s.

    A1, A2 are the limits of the lagging (a) coefficients, B1, B2 of the
    diagonal (b) coefficients.  A1 vanishes exactly at s = 0, A2 at s = 1,
    and B1 < B2 always.
    """
    s: float
    A1: float
    A2: float
    B1: float
    B2: float

    def __post_init__(self):
        if not (0.0 <= self.s <= 1.0):
            raise ValueError(f"s must lie in [0, 1], got {self.s}")
        if self.A1 < 0 or self.A2 < 0:
            raise ValueError(f"A limits must be nonnegative: {self}")
        if self.A1 == 0 and self.s != 0:
            raise ValueError(f"A1 = 0 requires s = 0: {self}")
        if self.A2 == 0 and self.s != 1:
            raise ValueError(f"A2 = 0 requires s = 1: {self}")
        if not self.B1 < self.B2:
            raise ValueError(f"need B1 < B2: {self}")


@dataclass
class LimitCurve:
    """Sampled limit functions on an increasing grid of ray parameters."""
    s: np.ndarray
    A1: np.ndarray
    A2: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    method: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.A1 = np.asarray(self.A1, dtype=float)
        self.A2 = np.asarray(self.A2, dtype=float)
        self.B1 = np.asarray(self.B1, dtype=float)
        self.B2 = np.asarray(self.B2, dtype=float)

    def __len__(self):
        return self.s.size

    def point(self, i):
        return LimitPoint(float(self.s[i]), float(self.A1[i]), float(self.A2[i]),
                          float(self.B1[i]), float(self.B2[i]))

    def validate(self):
        """Check the pointwise invariants; raises ValueError on violation."""
        if np.any(np.diff(self.s) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(self.s < 0) or np.any(self.s > 1):
            raise ValueError("grid must lie in [0, 1]")
        if np.any(self.A1 < 0) or np.any(self.A2 < 0):
            raise ValueError("A limits must be nonnegative")
        interior = (self.s > 0) & (self.s < 1)
        if np.any(self.A1[interior] == 0) or np.any(self.A2[interior] == 0):
            raise ValueError("A limits must be positive away from the endpoints")
        if np.any(self.B1 >= self.B2):
            raise ValueError("need B1 < B2 everywhere")
        return self


# ---------------------------------------------------------------------------
# frame operations
# ---------------------------------------------------------------------------

def star_normalize(sys):
    """Normalize a system to the star frame.

    Returns ``(StarConfig, AffineMap)`` where the map sends star coordinates
    back to user coordinates: the second interval maps onto [beta, 1] and the
    first onto [-alpha, 0].
    """
    scale = sys.i2.hi - sys.i1.hi
    shift = sys.i1.hi
    alpha = (sys.i1.hi - sys.i1.lo) / scale
    beta = (sys.i2.lo - sys.i1.hi) / scale
    return StarConfig(alpha, beta), AffineMap(scale, shift)


def reflect(sys):
    """Reflect a system about the origin, restoring interval order.

    Returns ``(reflected_system, swapped)``; the reflected intervals are the
    negated originals with roles exchanged (the flag is always True and is
    kept explicit so push-forwards read naturally).  Weights travel with
    their intervals.
    """
    out = AngelescoSystem(Interval(-sys.i2.hi, -sys.i2.lo),
                          Interval(-sys.i1.hi, -sys.i1.lo),
                          sys.w2, sys.w1)
    return out, True


def pushforward_limits(obj, amap, swapped=False):
    """Transport limit data through an affine change of variable.

    With ``swapped`` set, the interval roles are exchanged first (indices
    1 <-> 2 and s -> 1 - s), then the affine action A -> scale^2 * A,
    B -> scale * B + shift is applied slotwise.  A negative scale encodes a
    reflection and is only consistent together with ``swapped=True``; the
    output invariant B1 < B2 is revalidated by construction of the result.

    Accepts a LimitPoint or a LimitCurve and returns the same type.
    """
    lam, c = amap.scale, amap.shift
    if isinstance(obj, LimitPoint):
        s, a1, a2, b1, b2 = obj.s, obj.A1, obj.A2, obj.B1, obj.B2
        if swapped:
            s, a1, a2, b1, b2 = 1.0 - s, a2, a1, b2, b1
        return LimitPoint(s, lam * lam * a1, lam * lam * a2,
                          lam * b1 + c, lam * b2 + c)
    if isinstance(obj, LimitCurve):
        s, a1, a2, b1, b2 = obj.s, obj.A1, obj.A2, obj.B1, obj.B2
        if swapped:
            # reverse so the transformed grid stays increasing
            s, a1, a2, b1, b2 = (1.0 - s)[::-1], a2[::-1], a1[::-1], b2[::-1], b1[::-1]
        meta = dict(obj.meta)
        log = list(meta.get("pushforward", []))
        log.append({"scale": lam, "shift": c, "swapped": bool(swapped)})
        meta["pushforward"] = log
        return LimitCurve(s, lam * lam * a1, lam * lam * a2,
                          lam * b1 + c, lam * b2 + c, obj.method, meta)
    raise TypeError(f"cannot push forward object of type {type(obj).__name__}")
