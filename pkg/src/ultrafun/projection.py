"""Projection of slowly increasing functions and tempered distributions onto V_n.

A continuous function ``f`` is sent to its orthogonal projection
``f_n = (1/P) sum_k c_k exp(i k x)`` with ``c_k`` the integral of
``f(y) exp(-i k y)`` over one period. A distribution is handled through an
explicit representation ``T = D^m f`` and projected as ``D^m f_n``; pairing
with a test function is then the conjugation-free integral of the product.

The coefficients come from one oversampled trapezoid rule evaluated with a
single FFT, refined by doubling the oversampling factor.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import GridVariantError, GrowthWarning, PrecisionWarning
from .exprlang import FuncExpr, Poly, Var, eval_expr, parse, to_string
from .fft import get_plan
from .grid import GridParams, grid_params
from .levels import DEFAULT_LADDER
from .vspace import GridSamples, TrigElement, derivative, integral, integral_of_product

SQRT_2PI = math.sqrt(2.0 * math.pi)

# a test function is "not rapidly decreasing enough" above this relative tail
TAIL_RATIO = 1e-12


@dataclass(frozen=True)
class SlowFunction:
    """A continuous function with a user-declared polynomial growth order.

    ``expr`` may be given as source text. Growth is not checked on
    construction; see :meth:`check_growth`.
    """

    expr: FuncExpr
    declared_order: int = 0

    def __post_init__(self):
        if isinstance(self.expr, str):
            object.__setattr__(self, "expr", parse(self.expr))
        if int(self.declared_order) != self.declared_order or self.declared_order < 0:
            raise ValueError("declared_order must be a non-negative integer")

    def __call__(self, x):
        return eval_expr(self.expr, x)

    @property
    def source(self) -> str:
        return to_string(self.expr)

    def check_growth(self, ladder=DEFAULT_LADDER, symmetric=False) -> list:
        """Sup of ``|f(q)| / (1 + |q|^k)`` over the lattice, one value per level.

        Emits a :class:`GrowthWarning` when the bound keeps growing with ``n``.
        """
        bounds = []
        for n in ladder:
            q = GridParams(n, symmetric).points
            bounds.append(float(np.max(np.abs(self(q)) / (1.0 + np.abs(q) ** self.declared_order))))
        if len(bounds) >= 2 and bounds[-1] > 1.5 * bounds[-2]:
            warnings.warn(f"{self.source!r} grows faster than |x|^{self.declared_order}: "
                          f"bounds {bounds}", GrowthWarning, stacklevel=2)
        return bounds


def as_slow_function(f, declared_order=0) -> SlowFunction:
    if isinstance(f, SlowFunction):
        return f
    return SlowFunction(f, declared_order)


@dataclass(frozen=True)
class DistributionSpec:
    """``T = D^order base``."""

    order: int
    base: SlowFunction
    label: str | None = None

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 0:
            raise ValueError("distribution order must be an integer >= 0")
        if not isinstance(self.base, SlowFunction):
            object.__setattr__(self, "base", as_slow_function(self.base))

    def to_dict(self) -> dict:
        d = {"order": int(self.order), "base": self.base.source}
        if self.label is not None:
            d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DistributionSpec":
        missing = {"order", "base"} - set(d)
        if missing:
            raise ValueError(f"distribution spec is missing {sorted(missing)}")
        # the growth order only feeds warnings; linear growth covers the catalog bases
        return cls(int(d["order"]), SlowFunction(d["base"], 1), d.get("label"))

    @classmethod
    def from_json(cls, text: str) -> "DistributionSpec":
        return cls.from_dict(json.loads(text))


CATALOG = {
    "dirac": DistributionSpec(2, SlowFunction("ramp(x)", 1), "dirac"),
    "heaviside": DistributionSpec(1, SlowFunction("ramp(x)", 1), "heaviside"),
    "sign": DistributionSpec(1, SlowFunction("abs(x)", 1), "sign"),
    "delta_prime": DistributionSpec(3, SlowFunction("ramp(x)", 1), "delta_prime"),
}


def polynomial(coeffs, label="polynomial") -> DistributionSpec:
    """The regular distribution of ``c0 + c1 x + ...``."""
    coeffs = tuple(float(c) for c in coeffs)
    if not coeffs:
        raise ValueError("polynomial needs at least one coefficient")
    return DistributionSpec(0, SlowFunction(Poly(Var(), coeffs), len(coeffs) - 1), label)


def sinusoid(freq: float, kind: str = "sin", label="sinusoid") -> DistributionSpec:
    if kind not in ("sin", "cos"):
        raise ValueError("kind must be 'sin' or 'cos'")
    return DistributionSpec(0, SlowFunction(f"{kind}({float(freq)!r} * x)", 0), label)


def lookup_distribution(name_or_spec) -> DistributionSpec:
    if isinstance(name_or_spec, DistributionSpec):
        return name_or_spec
    try:
        return CATALOG[name_or_spec]
    except KeyError:
        raise KeyError(f"unknown distribution {name_or_spec!r}; catalog has {sorted(CATALOG)}") from None


@dataclass(frozen=True)
class QuadratureConfig:
    oversampling: int = 8
    refine_tol: float = 1e-10
    max_doublings: int = 6

    def __post_init__(self):
        if int(self.oversampling) != self.oversampling or self.oversampling < 2:
            raise ValueError("oversampling must be an integer >= 2")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")
        if int(self.max_doublings) != self.max_doublings or self.max_doublings < 0:
            raise ValueError("max_doublings must be a non-negative integer")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class QuadratureInfo:
    oversampling: int       # M actually used
    last_change: float      # relative max-norm change of the final doubling
    converged: bool


def _trapezoid_spectrum(params: GridParams, g: np.ndarray, M: int) -> np.ndarray:
    N = params.size
    L = M * N
    h = params.period / L
    spec = get_plan(L).forward(g)
    m = params.indices
    # y_j = -P/2 + j h, so exp(-i k_m y_j) = (-1)^m exp(-2 pi i m j / L)
    return h * np.where(m % 2 == 0, 1.0, -1.0) * spec[m % L]


def _sample_nodes(params: GridParams, M: int) -> np.ndarray:
    L = M * params.size
    return -params.period / 2 + np.arange(L) * (params.period / L)


def quadrature(f, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE, symmetric=False):
    """Coefficients and a :class:`QuadratureInfo` describing the refinement.

    The first node sits on the period boundary and carries the average of
    ``f(-P/2)`` and ``f(P/2)``, which is the periodic trapezoid rule for a
    function that does not wrap around continuously.
    """
    f = as_slow_function(f)
    params = grid_params(n, symmetric)
    M = cfg.oversampling
    g = np.asarray(f(_sample_nodes(params, M)), dtype=complex)
    g[0] = 0.5 * (g[0] + complex(f(params.period / 2)))
    c = _trapezoid_spectrum(params, g, M)
    change = math.inf
    for _ in range(cfg.max_doublings):
        M *= 2
        nodes = _sample_nodes(params, M)
        g2 = np.empty(nodes.size, dtype=complex)
        g2[::2] = g
        g2[1::2] = f(nodes[1::2])
        g = g2
        c_new = _trapezoid_spectrum(params, g, M)
        scale = float(np.max(np.abs(c_new))) or 1.0
        change = float(np.max(np.abs(c_new - c))) / scale
        c = c_new
        if change < cfg.refine_tol:
            return c, QuadratureInfo(M, change, True)
    converged = change < cfg.refine_tol
    if not converged:
        warnings.warn(f"quadrature for {f.source!r} at n={params.n} stopped at M={M} "
                      f"with relative change {change:.3g} > {cfg.refine_tol:g}",
                      PrecisionWarning, stacklevel=3)
    return c, QuadratureInfo(M, change, converged)


def trig_coefficients(f, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE, symmetric=False) -> np.ndarray:
    """``c_k``, the integral of ``f(y) exp(-i k y)`` over one period, for every lattice ``k``."""
    return quadrature(f, n, cfg, symmetric)[0]


def project_function(f, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE, symmetric=False) -> TrigElement:
    params = grid_params(n, symmetric)
    c = trig_coefficients(f, params, cfg)
    return TrigElement(params, c / params.period)


def project_distribution(T, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE, symmetric=False) -> TrigElement:
    T = lookup_distribution(T)
    return derivative(project_function(T.base, n, cfg, symmetric), T.order)


def tail_ratio(phi, n, symmetric=False) -> float:
    """``max |phi(+-beta)| / max |phi|`` over the lattice."""
    phi = as_slow_function(phi)
    params = grid_params(n, symmetric)
    peak = float(np.max(np.abs(phi(params.points))))
    edge = max(abs(phi(-params.beta)), abs(phi(params.beta)))
    return edge / peak if peak else 0.0


def pair(T, phi, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE, symmetric=False) -> complex:
    """``integral(T_n * phi_n)`` for a rapidly decreasing test function ``phi``.

    Rapid decrease is assumed; a :class:`GrowthWarning` is raised when
    ``phi`` is still visible at the edges of the period.
    """
    T = lookup_distribution(T)
    phi = as_slow_function(phi)
    r = tail_ratio(phi, n, symmetric)
    if r > TAIL_RATIO:
        warnings.warn(f"test function {phi.source!r} is not negligible at +-beta_{int(n)} "
                      f"(ratio {r:.3g})", GrowthWarning, stacklevel=2)
    Tn = project_distribution(T, n, cfg, symmetric)
    return integral_of_product(Tn, project_function(phi, n, cfg, symmetric))


def distributional_fourier(T, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> GridSamples:
    """Transform of ``T`` sampled on the frequency lattice.

    Uses the kernel ``exp(-i k x)``; since ``exp(-i k x)`` is in V_n for
    every lattice ``k``, the value is ``(P / sqrt(2 pi)) a_k`` of ``T_n``.
    Only defined on the default grid, whose frequency and position lattices
    coincide.
    """
    params = grid_params(n)
    if params.symmetric:
        raise GridVariantError("distributional_fourier needs the default grid")
    Tn = project_distribution(T, params, cfg)
    return GridSamples(params, Tn.coeffs * (params.period / SQRT_2PI))


@dataclass(frozen=True)
class IntegralCheck:
    lhs: complex          # integral of the projection
    rhs: float            # adaptive quadrature over the real line
    tail: float = field(default=0.0)   # |f| at the ends of the truncated domain

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)

    def __iter__(self):
        return iter((self.lhs, self.rhs))


def integral_check(f, n, cfg: QuadratureConfig = DEFAULT_QUADRATURE, symmetric=False) -> IntegralCheck:
    """Compare the integral of the projection with adaptive quadrature.

    The reference integrates over ``[-beta, beta]`` with a break point at 0
    (where catalog functions have their kinks) and reports ``|f(+-beta)|``
    as the tail indicator.
    """
    f = as_slow_function(f)
    params = grid_params(n, symmetric)
    lhs = integral(project_function(f, params, cfg))
    b = params.beta

    def part(fn):
        return integrate.quad(fn, -b, b, points=[0.0], limit=400, epsabs=1e-14, epsrel=1e-13)[0]

    re = part(lambda x: f(x).real)
    im = part(lambda x: f(x).imag)
    rhs = re if im == 0 else complex(re, im)
    tail = max(abs(f(-b)), abs(f(b)))
    return IntegralCheck(lhs, rhs, tail)
