"""Deltas on the level-n lattice, and the one mode that spoils Riemann sums.

Run: python demos/01_deltas_and_grid.py
"""
import numpy as np

from ultrafun import GridParams, delta, evaluate, exp_wave, gram_matrix, integral_of_product
from ultrafun.vspace import random_element

p = GridParams(4)
print(f"level {p.n}: {p.size} lattice points, spacing eta = {p.eta:.6f}, half-width beta = {p.beta:.6f}")

# Each delta is a trigonometric polynomial; at lattice points it is 1/eta or 0.
d0 = delta(p, 0.0)
print(f"delta_0(0) = {evaluate(d0, 0.0).real:.6f}   (1/eta = {1 / p.eta:.6f})")
print(f"delta_0(eta) = {abs(evaluate(d0, p.eta)):.2e}")

G = gram_matrix([delta(p, q) for q in p.points])
print(f"Gram matrix of all {p.size} deltas, max |G - I/eta| = {np.max(np.abs(G - np.eye(p.size) / p.eta)):.2e}")

# Integrating against a delta reads off a value, for elements without the corner mode.
rng = np.random.default_rng(0)
u = random_element(p, rng)
q = 3 * p.eta
print(f"\n<u, delta_q> = {integral_of_product(u, delta(p, q)):.12f}")
print(f"u(q)         = {evaluate(u, q):.12f}")

# The lowest frequency, -beta, has no partner at +beta. Its square integrates to
# zero, yet its lattice Riemann sum is 2 beta.
w = exp_wave(p, -p.beta)
riemann = p.eta * np.sum(evaluate(w, p.points) ** 2)
print(f"\ncorner mode: exact integral = {abs(integral_of_product(w, w)):.2e}, Riemann sum = {riemann.real:.6f}")

# The symmetric variant has both extreme frequencies, so every product is summed exactly.
s = GridParams(4, symmetric=True)
lo = exp_wave(s, s.l_min * s.freq_step, symmetric=True)
hi = exp_wave(s, s.l_max * s.freq_step, symmetric=True)
riemann = s.eta * np.sum(evaluate(lo, s.points) * evaluate(hi, s.points))
print(f"symmetric grid ({s.size} points), extreme pair: exact = {integral_of_product(lo, hi).real:.6f}, "
      f"Riemann = {riemann.real:.6f}")
