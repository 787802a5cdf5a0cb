"""How fast the finite-level lattice approaches its limit.

Solves the coefficient lattice at increasing levels, measures the error of
the diagonal ray values at s = 1/2 against the closed-form surface
reference, and shows the gain from Richardson extrapolation with the
half-level snapshot.  The plain error decays like 1/m, so each doubling of
the level should roughly halve it.
"""
import numpy as np

from angelesco import AngelescoSystem, Interval
from angelesco.crossval import convergence_study

system = AngelescoSystem(Interval(-2.0, 0.0), Interval(0.0, 1.0))
levels = (100, 200, 400, 800, 1600)
table = convergence_study(system, 0.5, levels)

print(f"reference at s=0.5: A1={table.reference[0]:.10f} "
      f"A2={table.reference[1]:.10f}")
print(f"{'level':>6} {'plain error':>12} {'ratio':>6} "
      f"{'extrapolated':>13} {'gain':>7}")
plain = table.max_plain()
extra = table.max_extrapolated()
for i, m in enumerate(levels):
    ratio = f"{plain[i - 1] / plain[i]:5.2f}" if i else "    -"
    gain = plain[i] / extra[i]
    print(f"{m:>6} {plain[i]:>12.3e} {ratio:>6} {extra[i]:>13.3e} "
          f"{gain:>6.0f}x")
