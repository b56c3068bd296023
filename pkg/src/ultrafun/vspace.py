"""Elements of V_n as trigonometric coefficient arrays.

A :class:`TrigElement` stores ``u(x) = sum_l a_l exp(i l k0 x)`` where ``k0``
is the frequency step of its grid (``eta_n`` on the default grid) and ``l`` runs
over the lattice indices. Products of two elements are kept exactly, in an
*extended* element whose index range is wider than the grid's; use
:func:`project_to_level` to truncate back onto V_n.

Grid samples and coefficients are related by a DFT of size ``2n^2`` (or
``2n^2+1``) after shifting centred indices to ``0..N-1``:
``u(q_l) = sum_m a_m exp(2 pi i l m / N)`` and ``a_m = (1/N) sum_l u(q_l) exp(-2 pi i l m / N)``.
The shift is ``np.roll(., l_min)``; both directions go through :mod:`ultrafun.fft`.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import FrequencyNotOnGrid, LevelMismatch
from .fft import get_plan
from .grid import GridParams, grid_params, index_of
from .levels import HyperScalar


def _readonly(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def synthesize(params: GridParams, coeffs, lmin=None) -> np.ndarray:
    """Grid samples of a coefficient array (extended ranges are folded mod N first)."""
    N = params.size
    coeffs = np.asarray(coeffs, dtype=complex)
    lmin = params.l_min if lmin is None else lmin
    folded = np.zeros(N, dtype=complex)
    np.add.at(folded, (lmin + np.arange(coeffs.size)) % N, coeffs)
    # folded[j] is the coefficient of frequency index j (mod N)
    values = N * get_plan(N).inverse(folded)
    return np.roll(values, -params.l_min)


def analyze(params: GridParams, values) -> np.ndarray:
    """Coefficients ``a_l, l = l_min..l_max`` of the V_n element with the given samples."""
    N = params.size
    values = np.asarray(values, dtype=complex)
    if values.shape != (N,):
        raise ValueError(f"expected {N} samples, got shape {values.shape}")
    spectrum = get_plan(N).forward(np.roll(values, params.l_min)) / N
    return np.roll(spectrum, -params.l_min)


class TrigElement:
    """A trigonometric polynomial on one level; immutable."""

    def __init__(self, params: GridParams, coeffs, lmin: int | None = None, samples=None):
        self.params = params
        self.coeffs = _readonly(coeffs)
        self.lmin = params.l_min if lmin is None else int(lmin)
        self._samples = None if samples is None else _readonly(samples)
        if self.coeffs.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if not self.extended and self.coeffs.size != params.size:
            raise ValueError(f"V_{params.n} needs {params.size} coefficients, got {self.coeffs.size}")

    @classmethod
    def zeros(cls, params):
        return cls(params, np.zeros(params.size, dtype=complex))

    @property
    def n(self):
        return self.params.n

    @property
    def lmax(self):
        return self.lmin + self.coeffs.size - 1

    @property
    def indices(self):
        return np.arange(self.lmin, self.lmax + 1)

    @property
    def frequencies(self):
        return self.indices * self.params.freq_step

    @property
    def extended(self):
        return self.lmin != self.params.l_min or self.coeffs.size != self.params.size

    def coeff(self, l: int) -> complex:
        i = l - self.lmin
        return complex(self.coeffs[i]) if 0 <= i < self.coeffs.size else 0j

    @property
    def corner(self) -> complex:
        """Coefficient of the unpaired frequency ``-n^2`` (always 0 on the symmetric grid)."""
        if self.params.symmetric:
            return 0j
        return self.coeff(self.params.l_min)

    @property
    def samples(self) -> np.ndarray:
        if self._samples is None:
            self._samples = _readonly(synthesize(self.params, self.coeffs, self.lmin))
        return self._samples

    def __call__(self, x):
        return evaluate(self, x)

    # -- arithmetic ---------------------------------------------------------
    def _aligned(self, other):
        _check_same_level(self, other)
        lo, hi = min(self.lmin, other.lmin), max(self.lmax, other.lmax)
        a = np.zeros(hi - lo + 1, dtype=complex)
        b = np.zeros_like(a)
        a[self.lmin - lo:self.lmax - lo + 1] = self.coeffs
        b[other.lmin - lo:other.lmax - lo + 1] = other.coeffs
        return lo, a, b

    def __add__(self, other):
        if not isinstance(other, TrigElement):
            return NotImplemented
        lo, a, b = self._aligned(other)
        return TrigElement(self.params, a + b, lo)

    def __sub__(self, other):
        if not isinstance(other, TrigElement):
            return NotImplemented
        lo, a, b = self._aligned(other)
        return TrigElement(self.params, a - b, lo)

    def __mul__(self, c):
        if isinstance(c, TrigElement):
            return pointwise_product(self, c)
        return TrigElement(self.params, self.coeffs * complex(c), self.lmin)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return TrigElement(self.params, self.coeffs / complex(c), self.lmin)

    def __neg__(self):
        return TrigElement(self.params, -self.coeffs, self.lmin)

    def max_abs_diff(self, other) -> float:
        _, a, b = self._aligned(other)
        return float(np.max(np.abs(a - b))) if a.size else 0.0

    def allclose(self, other, rtol=1e-12, atol=0.0) -> bool:
        _, a, b = self._aligned(other)
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 0.0)
        return bool(np.max(np.abs(a - b)) <= atol + rtol * scale)

    def __repr__(self):
        ext = ", extended" if self.extended else ""
        return f"TrigElement(n={self.n}, {self.params.variant}{ext}, l={self.lmin}..{self.lmax})"

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        d = {"n": self.n, "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}
        if self.params.symmetric:
            d["grid"] = "symmetric"
        if self.extended:
            d["lmin"] = self.lmin
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "TrigElement":
        params = GridParams(int(d["n"]), d.get("grid", "paper") == "symmetric")
        coeffs = np.array([complex(re, im) for re, im in d["coeffs"]], dtype=complex)
        return cls(params, coeffs, d.get("lmin"))

    @classmethod
    def from_json(cls, text: str) -> "TrigElement":
        return cls.from_dict(json.loads(text))


def _check_same_level(u, v):
    if u.params != v.params:
        raise LevelMismatch(f"elements live on different grids: {u.params} vs {v.params}")


@dataclass(frozen=True, eq=False)
class GridSamples:
    """Values of a sigma-limit function on the lattice (canonical representation)."""

    params: GridParams
    values: np.ndarray

    def __post_init__(self):
        v = _readonly(self.values)
        if v.shape != (self.params.size,):
            raise ValueError(f"expected {self.params.size} samples, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def points(self):
        return self.params.points

    def at(self, q: float, tol: float = 1e-9) -> complex:
        return complex(self.values[index_of(q, self.params, tol) - self.params.l_min])

    def riemann_sum(self) -> complex:
        return complex(self.params.eta * np.sum(self.values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "re", "im"])
        for q, v in zip(self.points, self.values):
            w.writerow([format(float(q), ".17g"), format(v.real, ".17g"), format(v.imag, ".17g")])
        return buf.getvalue()


# -- constructors -------------------------------------------------------------

def constant(n, c=1.0, symmetric=False) -> TrigElement:
    params = grid_params(n, symmetric)
    a = np.zeros(params.size, dtype=complex)
    a[-params.l_min] = c
    return TrigElement(params, a)


def exp_wave(n, k: float, symmetric=False, tol=1e-9) -> TrigElement:
    """``exp(i k x)`` for a lattice frequency ``k``."""
    params = grid_params(n, symmetric)
    l = int(round(k / params.freq_step))
    if not (params.l_min <= l <= params.l_max) or abs(k - l * params.freq_step) > tol:
        raise FrequencyNotOnGrid(k, params.n, tol)
    a = np.zeros(params.size, dtype=complex)
    a[l - params.l_min] = 1.0
    return TrigElement(params, a)


def random_element(n, rng, corner_free=True, symmetric=False) -> TrigElement:
    """Gaussian random coefficients; the corner coefficient is zeroed by default."""
    params = grid_params(n, symmetric)
    a = rng.normal(size=params.size) + 1j * rng.normal(size=params.size)
    u = TrigElement(params, a)
    return zero_corner(u) if corner_free else u


def zero_corner(u: TrigElement) -> TrigElement:
    if u.params.symmetric or u.extended:
        return u
    a = u.coeffs.copy()
    a[0] = 0.0
    return TrigElement(u.params, a)


# -- operations ---------------------------------------------------------------

def evaluate(u: TrigElement, x):
    """``u(x)`` for scalar or array ``x`` by Horner's rule in ``z = exp(i k0 x)``."""
    x_arr = np.asarray(x, dtype=float)
    k0 = u.params.freq_step
    z = np.exp(1j * k0 * x_arr)
    acc = np.zeros(x_arr.shape, dtype=complex)
    for c in u.coeffs[::-1]:
        acc = acc * z + c
    out = acc * np.exp(1j * u.lmin * k0 * x_arr)
    return complex(out) if out.ndim == 0 else out


def derivative(u: TrigElement, order: int = 1) -> TrigElement:
    mult = (1j * u.frequencies) ** order
    return TrigElement(u.params, u.coeffs * mult, u.lmin)


def integral(u: TrigElement) -> complex:
    """Integral over one period: only the zero frequency survives."""
    return complex(u.params.period * u.coeff(0))


def inner(u: TrigElement, v: TrigElement) -> complex:
    """Hermitian product ``(u|v) = integral of u * conj(v)``."""
    _, a, b = u._aligned(v)
    return complex(u.params.period * np.sum(a * np.conj(b)))


def integral_of_product(u: TrigElement, v: TrigElement) -> complex:
    """Conjugation-free ``integral of u * v``: frequencies ``l`` and ``-l`` pair up."""
    _check_same_level(u, v)
    lo = max(u.lmin, -v.lmax)
    hi = min(u.lmax, -v.lmin)
    if hi < lo:
        return 0j
    a = u.coeffs[lo - u.lmin:hi - u.lmin + 1]
    b = v.coeffs[-hi - v.lmin:-lo - v.lmin + 1][::-1]
    return complex(u.params.period * np.sum(a * b))


def norm(u: TrigElement) -> float:
    return float(np.sqrt(inner(u, u).real))


def pointwise_product(u: TrigElement, v: TrigElement) -> TrigElement:
    """Exact product as an extended element (coefficient convolution)."""
    _check_same_level(u, v)
    return TrigElement(u.params, np.convolve(u.coeffs, v.coeffs), u.lmin + v.lmin)


def project_to_level(u: TrigElement) -> TrigElement:
    """Orthogonal projection onto V_n: drop frequencies outside the lattice."""
    p = u.params
    a = np.zeros(p.size, dtype=complex)
    lo, hi = max(u.lmin, p.l_min), min(u.lmax, p.l_max)
    if lo <= hi:
        a[lo - p.l_min:hi - p.l_min + 1] = u.coeffs[lo - u.lmin:hi - u.lmin + 1]
    return TrigElement(p, a)


def to_samples(u: TrigElement) -> GridSamples:
    return GridSamples(u.params, u.samples)


def from_samples(s: GridSamples) -> TrigElement:
    return TrigElement(s.params, analyze(s.params, s.values), samples=s.values)


def position_op(u: TrigElement) -> TrigElement:
    """Multiply the grid samples by the grid coordinate and resynthesize."""
    return from_samples(GridSamples(u.params, u.samples * u.params.points))


def riemann_sum(u: TrigElement) -> complex:
    return complex(u.params.eta * np.sum(u.samples))


def grid_pow(s: GridSamples, exponent) -> GridSamples:
    """Principal-branch power of the sample values; stays a grid function."""
    vals = np.asarray(s.values, dtype=complex)
    if np.isscalar(exponent) and float(np.real(exponent)).is_integer() and np.imag(exponent) == 0:
        out = vals ** int(np.real(exponent))
    else:
        out = np.power(vals, exponent)
    return GridSamples(s.params, out)


def grid_sqrt(s: GridSamples) -> GridSamples:
    return GridSamples(s.params, np.sqrt(np.asarray(s.values, dtype=complex)))


# -- level families -------------------------------------------------------------

class UltraFunction:
    """A sigma-limit function given level by level.

    ``generator(n)`` returns a :class:`TrigElement` (an ultrafunction in V_sigma)
    or a :class:`GridSamples` (a general sigma-limit function on the lattice).
    """

    def __init__(self, generator: Callable[[int], TrigElement | GridSamples]):
        self._generator = generator
        self._levels: dict[int, object] = {}

    def level(self, n: int):
        if n not in self._levels:
            self._levels[n] = self._generator(n)
        return self._levels[n]

    def at(self, x) -> HyperScalar:
        """Value at ``x`` (a real or a level family of positions)."""
        xs = x.at if isinstance(x, HyperScalar) else (lambda n: x)

        def gen(n):
            u = self.level(n)
            xn = xs(n)
            if isinstance(u, GridSamples):
                return u.at(float(np.real(xn)), tol=1e-9)
            return evaluate(u, float(np.real(xn)))

        return HyperScalar(gen)

    def integral(self) -> HyperScalar:
        def gen(n):
            u = self.level(n)
            return u.riemann_sum() if isinstance(u, GridSamples) else integral(u)

        return HyperScalar(gen)

    def derivative(self) -> "UltraFunction":
        return UltraFunction(lambda n: derivative(self.level(n)))


__all__ = [
    "TrigElement", "GridSamples", "UltraFunction", "synthesize", "analyze", "constant",
    "exp_wave", "random_element", "zero_corner", "evaluate", "derivative", "integral",
    "inner", "integral_of_product", "norm", "pointwise_product", "project_to_level",
    "to_samples", "from_samples", "position_op", "riemann_sum", "grid_pow", "grid_sqrt",
]
