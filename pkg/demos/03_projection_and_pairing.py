"""Projecting functions and distributions, then pairing them with test functions.

Run: python demos/03_projection_and_pairing.py
"""
import math
import warnings

import numpy as np

from ultrafun import (DistributionSpec, derivative, evaluate, integral_check, pair,
                      project_distribution, project_function)
from ultrafun.errors import GrowthWarning, PrecisionWarning

# Kinked functions converge slowly under the trapezoid rule; the warning says so
# every time. Here we already know.
warnings.simplefilter("ignore", PrecisionWarning)

xs = np.linspace(-3, 3, 601)
for n in (4, 8, 16):
    err = np.max(np.abs(evaluate(project_function("exp(-x^2/2)", n), xs) - np.exp(-xs ** 2 / 2)))
    kink = np.max(np.abs(evaluate(project_function("exp(-abs(x))", n), xs) - np.exp(-np.abs(xs))))
    print(f"n={n:2d}  gaussian sup error {err:.1e}   exp(-|x|) sup error {kink:.1e}")

# A distribution is D^m of a slowly growing base function. Dirac is D^2 ramp.
print("\n<dirac, exp(-x^2/2)> by level:")
with warnings.catch_warnings():
    warnings.simplefilter("ignore", GrowthWarning)
    for n in (4, 8, 16, 32):
        print(f"  n={n:2d}  {pair('dirac', 'exp(-x^2/2)', n).real:.12f}")
print(f"<heaviside, exp(-x^2/2)> at n=16: {pair('heaviside', 'exp(-x^2/2)', 16).real:.8f}"
      f"  (sqrt(pi/2) = {math.sqrt(math.pi / 2):.8f})")

# Differentiating the projection is the same as projecting the derivative.
H = DistributionSpec(1, "ramp(x)", "heaviside")
lhs = derivative(project_distribution(H, 8))
rhs = project_distribution(DistributionSpec(2, "ramp(x)"), 8)
print(f"\n|D P(H) - P(DH)| = {lhs.max_abs_diff(rhs):.1e}")

lhs, rhs = integral_check("exp(-x^2)", 8)
print(f"integral of P(exp(-x^2)) = {lhs.real:.12f}, quad = {rhs:.12f}, sqrt(pi) = {math.sqrt(math.pi):.12f}")
