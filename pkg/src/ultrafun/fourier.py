"""Fourier transform on V_n as a unitary change of basis.

For ``k`` on the lattice, ``u_hat(k) = eta/sqrt(2 pi) * sum_x u(x) exp(-i k x)``.
With ``k = m eta`` and ``x = l eta`` the phase is ``pi l m / n^2 = 2 pi l m / N``,
so after shifting the centred indices ``-n^2..n^2-1`` to ``0..N-1`` this is an
order-``N`` DFT of the samples. The k-domain function is stored as the V_n
element with those samples.

The lattice is self-dual only on the default grid; the symmetric variant is
rejected here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridVariantError
from .fft import get_plan
from .grid import GridParams
from .vspace import (GridSamples, TrigElement, derivative, from_samples, norm,
                     position_op)

SQRT_2PI = math.sqrt(2.0 * math.pi)


def _require_default_grid(params: GridParams):
    if params.symmetric:
        raise GridVariantError("the Fourier transform needs the self-dual default grid")


def _pipa_fast(params: GridParams, samples: np.ndarray, sign: int) -> np.ndarray:
    plan = get_plan(params.size)
    shifted = np.roll(samples, params.l_min)
    if sign < 0:
        spec = plan.forward(shifted)
    else:
        spec = plan.inverse(shifted) * params.size
    return np.roll(spec, -params.l_min) * (params.eta / SQRT_2PI)


def fourier_samples(u: TrigElement) -> np.ndarray:
    """``u_hat(k)`` for every lattice ``k`` (fast path)."""
    _require_default_grid(u.params)
    return _pipa_fast(u.params, u.samples, -1)


def fourier(u: TrigElement) -> TrigElement:
    """The transform as a k-domain element of V_n."""
    return from_samples(GridSamples(u.params, fourier_samples(u)))


def inverse_fourier(v: TrigElement) -> TrigElement:
    """``F^-1[v](x) = eta/sqrt(2 pi) * sum_k v(k) exp(i k x)`` on the lattice."""
    _require_default_grid(v.params)
    return from_samples(GridSamples(v.params, _pipa_fast(v.params, v.samples, +1)))


def fourier_direct(u: TrigElement, sign: int = -1) -> np.ndarray:
    """O(N^2) evaluation of the lattice sum, used to check the fast path."""
    p = u.params
    _require_default_grid(p)
    ls = p.indices
    N = p.size
    phase = (np.outer(ls, ls) % N) / N
    kernel = np.exp(sign * 2j * np.pi * phase)
    return (p.eta / SQRT_2PI) * (kernel @ u.samples)


@dataclass(frozen=True)
class IntertwiningReport:
    derivative_residual: float   # || F[D u] - i * xcheck(F u) ||_max on the lattice
    position_residual: float     # || F[xcheck u] - i * D_k(F u) ||_max on the lattice
    norm: float                  # sqrt((u|u))

    def ok(self, rtol=1e-9) -> bool:
        bound = rtol * self.norm
        return self.derivative_residual <= bound and self.position_residual <= bound


def check_intertwining(u: TrigElement) -> IntertwiningReport:
    """Residuals of ``F D = i k F`` and ``F xcheck = i D_k F``.

    The second identity sees the corner sample ``u(-beta_n)``: the k-domain
    element stores the frequency ``+beta_n`` of the lattice sum as ``-beta_n``,
    so ``D_k`` flips its sign. It holds exactly when ``u(-beta_n) = 0``.
    """
    uh = fourier(u)
    r1 = fourier(derivative(u)).samples - 1j * position_op(uh).samples
    r2 = fourier(position_op(u)).samples - 1j * derivative(uh).samples
    return IntertwiningReport(float(np.max(np.abs(r1))), float(np.max(np.abs(r2))), norm(u))


def corner_free_both_sides(u: TrigElement) -> TrigElement:
    """Remove the corner coefficient and then the corner sample.

    The corner sample is removed with a multiple of the kernel at ``-beta``
    built from the frequencies ``|l| < n^2`` only, so the result has
    ``a_{-n^2} = 0`` and ``u(-beta) = 0``. Both intertwining identities need this.
    """
    _require_default_grid(u.params)
    p = u.params
    a = u.coeffs.copy()
    a[0] = 0.0
    # e(x) = sum_{l > -n^2} exp(i l eta (x + beta)): zero corner coefficient and e(-beta) = N - 1
    ls = p.indices
    e = np.exp(1j * ls * p.eta * p.beta)
    e[0] = 0.0
    value = np.sum(a * np.exp(-1j * ls * p.eta * p.beta))
    a = a - value / (p.size - 1) * e
    return TrigElement(p, a)


def parseval_residual(u: TrigElement, v: TrigElement) -> float:
    """Relative gap between ``(u|v)`` and ``(u_hat|v_hat)``."""
    from .vspace import inner
    lhs = inner(u, v)
    rhs = inner(fourier(u), fourier(v))
    scale = norm(u) * norm(v)
    return abs(lhs - rhs) / scale if scale else abs(lhs - rhs)
