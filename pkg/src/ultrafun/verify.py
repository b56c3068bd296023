"""Self-check suites run by ``ultrafun verify``.

Each check records a residual and the tolerance it is held to. Random inputs
come from a fixed seed so reports are reproducible.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .delta import delta, gram_matrix
from .fourier import (SQRT_2PI, check_intertwining, corner_free_both_sides, fourier,
                      fourier_direct, fourier_samples, parseval_residual)
from .grid import GridParams, index_of
from .projection import (CATALOG, DistributionSpec, QuadratureConfig, integral_check, pair,
                         project_distribution, project_function)
from .vspace import (TrigElement, evaluate, exp_wave, integral_of_product, norm, random_element,
                     riemann_sum, integral, derivative)

SUITES = ("grid", "delta", "fourier", "projection")
SEED = 20240601


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    level: int
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _rng(n):
    return np.random.default_rng([SEED, n])


def grid_suite(n):
    p = GridParams(n)
    pts = p.points
    yield Check("grid", "size_is_2n2", n, abs(p.size - 2 * n * n), 0)
    yield Check("grid", "beta_eta_is_pi", n, abs(p.beta * p.eta - math.pi), 1e-12)
    yield Check("grid", "uniform_spacing", n, float(np.max(np.abs(np.diff(pts) - p.eta))), 1e-12)
    back = np.array([index_of(q, p) for q in pts])
    yield Check("grid", "index_round_trip", n, float(np.max(np.abs(back - p.indices))), 0)
    rng = _rng(n)
    worst = 0.0
    for _ in range(10):
        u, v = random_element(n, rng), random_element(n, rng)
        exact = integral_of_product(u, v)
        worst = max(worst, abs(exact - p.eta * np.sum(u.samples * v.samples)) / abs(exact))
    yield Check("grid", "riemann_sum_of_products", n, worst, 1e-10)
    u = random_element(n, rng, corner_free=False)
    yield Check("grid", "riemann_sum_single", n, abs(integral(u) - riemann_sum(u)) / norm(u), 1e-10)


def delta_suite(n):
    p = GridParams(n)
    scale = 1.0 / p.eta
    if p.size <= 512:
        G = gram_matrix([delta(p, q) for q in p.points])
        res = float(np.max(np.abs(G - scale * np.eye(p.size))))
        yield Check("delta", "gram_full", n, res, 1e-9 * scale)
    else:
        rng = _rng(n)
        res = 0.0
        for _ in range(100):
            a, b = rng.choice(p.points, 2)
            G = gram_matrix([delta(p, a), delta(p, b)])
            res = max(res, float(np.max(np.abs(G - scale * np.eye(2)))))
        yield Check("delta", "gram_random_pairs", n, res, 1e-9 * scale)
    rng = _rng(n)
    u = random_element(n, rng)
    vals = np.array([integral_of_product(u, delta(p, q)) for q in p.points])
    yield Check("delta", "reproducing", n,
                float(np.max(np.abs(vals - evaluate(u, p.points)))), 1e-10 * norm(u))
    d0 = delta(p, 0.0)
    yield Check("delta", "kronecker_samples", n,
                float(np.max(np.abs(evaluate(d0, p.points) - scale * (p.indices == 0)))), 1e-9 * scale)


def fourier_suite(n):
    p = GridParams(n)
    rng = _rng(n)
    worst = 0.0
    for _ in range(20):
        worst = max(worst, parseval_residual(random_element(n, rng), random_element(n, rng)))
    yield Check("fourier", "parseval", n, worst, 1e-10)
    if n <= 8:
        u = random_element(n, rng)
        yield Check("fourier", "fast_vs_direct", n,
                    float(np.max(np.abs(fourier_samples(u) - fourier_direct(u)))), 1e-11 * max(1.0, norm(u)))
    worst = 0.0
    for l in rng.integers(p.l_min, p.l_max + 1, size=5):
        q = l * p.eta
        worst = max(worst, fourier(exp_wave(p, q)).max_abs_diff(delta(p, q) * SQRT_2PI))
    yield Check("fourier", "basis_exchange", n, worst, 1e-9 * SQRT_2PI / p.eta)
    u = corner_free_both_sides(random_element(n, rng))
    rep = check_intertwining(u)
    yield Check("fourier", "intertwining_derivative", n, rep.derivative_residual, 1e-9 * rep.norm)
    yield Check("fourier", "intertwining_position", n, rep.position_residual, 1e-9 * rep.norm)


def projection_suite(n, cfg: QuadratureConfig | None = None):
    cfg = cfg or QuadratureConfig()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = project_function("exp(-x^2/2)", n, cfg)
        xs = np.linspace(-3, 3, 601)
        if n >= 8:
            yield Check("projection", "gauss_fidelity", n,
                        float(np.max(np.abs(evaluate(g, xs) - np.exp(-xs ** 2 / 2)))), 1e-8)
        p = GridParams(n)
        rng = _rng(n)
        ls = rng.integers(p.l_min + 1, p.l_max + 1, size=3)
        src = " + ".join(f"exp(i * {float(l * p.eta)!r} * x)" for l in ls)
        want = sum((exp_wave(p, l * p.eta) for l in ls), TrigElement.zeros(p))
        got = project_function(src, n, cfg)
        yield Check("projection", "idempotence", n,
                    got.max_abs_diff(want) / float(np.max(np.abs(want.coeffs))), 1e-9)
        worst = 0.0
        for name, T in CATALOG.items():
            a = derivative(project_distribution(T, n, cfg))
            b = project_distribution(DistributionSpec(T.order + 1, T.base), n, cfg)
            worst = max(worst, a.max_abs_diff(b) / float(np.max(np.abs(b.coeffs))))
        yield Check("projection", "derivative_commutes", n, worst, 1e-10)
        if n >= 16:
            yield Check("projection", "pair_dirac_gauss", n,
                        abs(pair("dirac", "exp(-x^2/2)", n, cfg) - 1.0), 1e-6)
        if n >= 8:
            chk = integral_check("exp(-x^2)", n, cfg)
            yield Check("projection", "integral_of_projection", n, chk.gap, 1e-9)


_RUNNERS = {"grid": grid_suite, "delta": delta_suite, "fourier": fourier_suite,
            "projection": projection_suite}


def run_suite(name: str, levels, cfg: QuadratureConfig | None = None) -> list[Check]:
    names = SUITES if name == "all" else (name,)
    unknown = [s for s in names if s not in _RUNNERS]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {SUITES + ('all',)}")
    out = []
    for s in names:
        for n in levels:
            runner = _RUNNERS[s]
            out.extend(runner(n, cfg) if s == "projection" else runner(n))
    return out
