"""Delta ultrafunctions and the canonical basis.

The delta at a lattice point ``q`` has coefficients ``exp(-i l k0 q) / P`` for
every lattice index ``l`` (``P`` the period). On the default grid this kernel
lives in V_n and agrees at every lattice point with the kernel written with
frequencies ``-k``; the two differ only in which copy of the corner frequency
``+-beta_n`` they use, and that copy makes the delta non-real by a single mode
of amplitude ``1/(2 beta_n)`` (see :func:`realness_defect`).

On the lattice, ``delta_q(p) = [p == q] / eta``; the scaled family
``sqrt(eta) * delta_q`` is an orthonormal basis, and an element is recovered
from its samples as ``u = eta * sum_q u(q) delta_q``.
"""
import numpy as np

from .grid import GridParams, grid_params, index_of
from .vspace import (GridSamples, TrigElement, from_samples, inner, integral_of_product,
                     to_samples)

__all__ = ["delta", "delta_offgrid", "to_samples", "from_samples", "canonical_basis",
           "realness_defect", "gram_matrix", "kronecker_spike", "reproduce",
           "orthogonality_residual"]


def _kernel_coeffs(params: GridParams, q: float) -> np.ndarray:
    ls = params.indices
    if params.symmetric:
        phase = np.exp(-1j * ls * params.freq_step * q)
    else:
        # q = j eta on the lattice, so l k0 q = pi l j / n^2: reduce the integer
        # phase mod 2n^2 before exponentiating
        j = q / params.eta
        if float(j).is_integer():
            N = params.size
            phase = np.exp(-2j * np.pi * ((ls * int(j)) % N) / N)
        else:
            phase = np.exp(-1j * ls * params.freq_step * q)
    return phase / params.period


def kronecker_spike(params: GridParams, q: float, height=None) -> GridSamples:
    """Samples equal to ``height`` (default ``1/eta``) at ``q`` and 0 elsewhere."""
    vals = np.zeros(params.size, dtype=complex)
    vals[index_of(q, params) - params.l_min] = 1.0 / params.eta if height is None else height
    return GridSamples(params, vals)


def delta(n, q: float, symmetric: bool = False, tol: float = 1e-9) -> TrigElement:
    """Delta ultrafunction concentrated at the lattice point ``q``.

    Raises :class:`~ultrafun.errors.NotOnGrid` for off-lattice ``q``; use
    :func:`delta_offgrid` for those.
    """
    params = grid_params(n, symmetric)
    l = index_of(q, params, tol)
    q = l * params.eta
    spike = kronecker_spike(params, q)
    return TrigElement(params, _kernel_coeffs(params, q), samples=spike.values)


def delta_offgrid(n, q: float, symmetric: bool = False) -> TrigElement:
    """Reproducing kernel at an arbitrary real ``q`` (non-canonical).

    It satisfies ``integral(v * delta_q) = v(q)`` for corner-free ``v`` but,
    unlike the lattice deltas, its grid samples are not a Kronecker spike.
    """
    params = grid_params(n, symmetric)
    return TrigElement(params, _kernel_coeffs(params, float(q)))


def canonical_basis(n, symmetric: bool = False):
    """The orthonormal family ``sqrt(eta) * delta_q`` over the lattice."""
    params = grid_params(n, symmetric)
    s = np.sqrt(params.eta)
    return [delta(params, q) * s for q in params.points]


def gram_matrix(elements) -> np.ndarray:
    """Hermitian Gram matrix via one matrix product on the coefficient arrays."""
    elements = list(elements)
    A = np.array([u.coeffs for u in elements])
    return elements[0].params.period * (A @ A.conj().T)


def realness_defect(u: TrigElement) -> float:
    """Upper bound on ``sup |Im u(x)|`` from the coefficients of ``(u - conj u)/2i``.

    Exact for a single mode, which is the case for the lattice deltas on the
    default grid (value ``1/(2 beta_n)``); zero on the symmetric grid.
    """
    conj_u = TrigElement(u.params, np.conj(u.coeffs[::-1]), -u.lmax)
    _, a, b = u._aligned(conj_u)
    return float(np.sum(np.abs(a - b)) / 2.0)


def reproduce(v: TrigElement, q_delta: TrigElement) -> complex:
    """``integral(v * delta_q)``, the conjugation-free pairing."""
    return integral_of_product(v, q_delta)


def orthogonality_residual(params: GridParams, a: float, b: float) -> float:
    expected = (1.0 / params.eta) if index_of(a, params) == index_of(b, params) else 0.0
    return abs(inner(delta(params, a), delta(params, b)) - expected)
