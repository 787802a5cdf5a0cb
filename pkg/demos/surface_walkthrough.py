"""Step-by-step tour of the closed-form surface route.

Every limit value comes from a rational parametrization with one conformal
parameter u in (1, 2] and three distinguished points tau0, tau1, tau2.
This script walks through the solves for one configuration: normalize to
the star frame, recover u from the gap invariant, find tau0, split off the
other two preimages, and read the limit constants from residues.  It then
tracks the effective gap seen along rays right of the threshold.
"""
import numpy as np

from angelesco import AngelescoSystem, Interval, star_normalize
from angelesco.surface import (gap_ratio, infinity_preimages, pushed_beta,
                               residue_limits, solve_tau0, solve_u,
                               surface_params, threshold_ray)

system = AngelescoSystem(Interval(-2.0, 0.0), Interval(0.25, 1.0))
star, frame = star_normalize(system)
alpha, beta = star.alpha, star.beta
print(f"user intervals: {system.i1.lo:g}..{system.i1.hi:g} and "
      f"{system.i2.lo:g}..{system.i2.hi:g}")
print(f"star frame: [-{alpha:g}, 0] u [{beta:g}, 1] "
      f"(scale {frame.scale:g}, shift {frame.shift:g})")

# the gap invariant pins the conformal parameter
target = beta * (1.0 + alpha) / (alpha + beta)
u = solve_u(alpha, beta)
print(f"\ngap invariant {target:.6f} -> u = {u:.12f} "
      f"(residual {abs(gap_ratio(u) - target):.1e})")

tau0 = solve_tau0(u, alpha)
tau1, tau2 = infinity_preimages(u, tau0)
print(f"preimages of infinity: tau0={tau0:.10f} tau1={tau1:.10f} "
      f"tau2={tau2:.10f}")

vals = residue_limits(surface_params(alpha, beta))
print(f"plateau constants (star frame): A1={vals.A1:.8f} A2={vals.A2:.8f} "
      f"B1={vals.B1:.8f} B2={vals.B2:.8f}")

# rays right of the threshold see a shrinking-then-growing effective gap
theta, s_a = threshold_ray(alpha)
print(f"\nthreshold ray of the touching configuration: s_alpha = {s_a:.10f}")
print(f"{'s':>6} {'beta_s':>12} {'u(s)':>12}")
for s in np.linspace(s_a + 0.02, 0.98, 6):
    b, us, _ = pushed_beta(alpha, float(s))
    print(f"{s:>6.3f} {b:>12.8f} {us:>12.8f}")
print("beta_s -> 0 at the threshold and -> 1 toward s = 1.")
