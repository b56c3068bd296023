"""Level families as hyperreal stand-ins, and the square of a delta.

Run: python demos/04_levels_and_nonlinear.py
"""
import math

from ultrafun import (DEFAULT_LADDER, GridParams, HyperScalar, UltraFunction, classify_growth,
                      delta, grid_pow, shadow, to_samples)

h = HyperScalar(lambda n: (1 + 1 / n) ** n, label="(1+1/n)^n")
print(h.label, [f"{v.real:.6f}" for v in h.values()])
print("plain shadow:       ", shadow(h))
s = shadow(h, tol=1e-2, extrapolate=True)
print(f"extrapolated shadow: {s.value.real:.6f} (e = {math.e:.6f}), residual {s.residual:.1e}")

for label, gen in [("n^3 + 5", lambda n: n ** 3 + 5), ("2^n", lambda n: 2.0 ** n),
                   ("1/n!", lambda n: 1 / math.factorial(n))]:
    print(f"{label:8s} -> {classify_growth(HyperScalar(gen)).tag.name}")

# Squaring a delta is a grid-wise operation; its integral is 1/eta, which grows like n.
sq = UltraFunction(lambda n: grid_pow(to_samples(delta(n, 0.0)), 2))
I = sq.integral()
print("\nintegral of delta^2 by level:")
for n in DEFAULT_LADDER:
    print(f"  n={n:2d}  {I.at(n).real:12.6f}   1/eta = {1 / GridParams(n).eta:12.6f}")
g = classify_growth(I)
print(f"growth: {g.tag.name}, exponent {g.witness:.6f}, shadow: {shadow(I).value}")
