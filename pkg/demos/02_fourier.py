"""The discrete Fourier transform on V_n: unitarity, plane waves and deltas.

Run: python demos/02_fourier.py
"""
import numpy as np

from ultrafun import (GridParams, GridSamples, check_intertwining, delta, exp_wave, fourier,
                      from_samples, inverse_fourier)
from ultrafun.fourier import SQRT_2PI, corner_free_both_sides
from ultrafun.vspace import inner, random_element

p = GridParams(8)
rng = np.random.default_rng(1)
u, v = random_element(p, rng, corner_free=False), random_element(p, rng, corner_free=False)

print(f"<u, v>    = {inner(u, v):.12f}")
print(f"<Fu, Fv>  = {inner(fourier(u), fourier(v)):.12f}")
print(f"round trip error = {np.max(np.abs(inverse_fourier(fourier(u)).coeffs - u.coeffs)):.2e}")

# A plane wave at a lattice frequency turns into a scaled delta at that frequency.
q = 5 * p.eta
gap = fourier(exp_wave(p, q)) - delta(p, q) * SQRT_2PI
print(f"\nF[exp(i q x)] - sqrt(2 pi) delta_q: max sample = {np.max(np.abs(gap.samples)):.2e}")

# The Gaussian samples are their own transform.
g = np.exp(-p.points ** 2 / 2)
Fg = fourier(from_samples(GridSamples(p, g))).samples
print(f"Gaussian self-duality error = {np.max(np.abs(Fg - g)):.2e}")

# Derivative <-> multiplication by ik. The position identity also needs u(-beta) = 0.
w = corner_free_both_sides(random_element(p, rng, corner_free=False))
rep = check_intertwining(w)
print(f"\nintertwining residuals (relative): D {rep.derivative_residual / rep.norm:.1e}, "
      f"x {rep.position_residual / rep.norm:.1e}")
rep = check_intertwining(exp_wave(p, 0.0))
print(f"for the constant 1, u(-beta) = 1 and the x residual is {rep.position_residual:.6f} (= sqrt(2 pi))")
