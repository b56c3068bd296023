"""The twelve acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``);
the terminal summary prints one PASS/FAIL line per criterion.
"""
import math
import warnings

import numpy as np
import pytest

from ultrafun.delta import delta, gram_matrix
from ultrafun.fourier import (SQRT_2PI, check_intertwining, corner_free_both_sides, fourier,
                              fourier_direct, fourier_samples)
from ultrafun.grid import GridParams
from ultrafun.levels import (DEFAULT_LADDER, Growth, HyperScalar, classify_growth, hyper_add,
                             hyper_mul, shadow)
from ultrafun.projection import (CATALOG, DistributionSpec, integral_check, pair, polynomial,
                                 project_distribution, project_function, sinusoid)
from ultrafun.vspace import (UltraFunction, derivative, evaluate, exp_wave, grid_pow, inner,
                             integral_of_product, norm, random_element, to_samples)

criterion = pytest.mark.criterion

# ---------------------------------------------------------------- 1


@criterion(1, "Delta orthogonality")
def test_full_gram_matrix_n4():
    p = GridParams(4)
    G = gram_matrix([delta(p, q) for q in p.points])
    assert G.shape == (32, 32)
    assert np.max(np.abs(G - np.eye(32) / p.eta)) <= 1e-9 / p.eta


@criterion(1, "Delta orthogonality")
@pytest.mark.parametrize("n", [16, 32])
def test_random_delta_pairs(n, rng):
    p = GridParams(n)
    worst = 0.0
    for _ in range(100):
        a, b = rng.choice(p.points, size=2)
        expected = 1 / p.eta if a == b else 0.0
        worst = max(worst, abs(inner(delta(p, a), delta(p, b)) - expected))
    assert worst <= 1e-9 / p.eta


# ---------------------------------------------------------------- 2

@criterion(2, "Reproducing property")
def test_reproducing_property(rng):
    p = GridParams(8)
    deltas = [delta(p, q) for q in p.points]
    for _ in range(50):
        u = random_element(p, rng)
        assert u.corner == 0
        got = np.array([integral_of_product(u, d) for d in deltas])
        assert np.max(np.abs(got - evaluate(u, p.points))) <= 1e-10 * norm(u)


# ---------------------------------------------------------------- 3

def _riemann_gap(u, v):
    exact = integral_of_product(u, v)
    riemann = u.params.eta * np.sum(evaluate(u, u.params.points) * evaluate(v, v.params.points))
    return exact, riemann


@criterion(3, "Riemann-sum identity")
@pytest.mark.parametrize("n", [4, 8, 16])
def test_riemann_sum_exact_for_corner_free(n, rng):
    for _ in range(10):
        u, v = random_element(n, rng), random_element(n, rng)
        exact, riemann = _riemann_gap(u, v)
        assert abs(exact - riemann) <= 1e-10 * abs(exact)


@criterion(3, "Riemann-sum identity")
@pytest.mark.parametrize("n", [4, 8, 16])
def test_corner_mode_counterexample(n):
    # u = v = exp(-i beta x): the product integrates to 0, the lattice sum to 2 beta
    p = GridParams(n)
    u = exp_wave(p, -p.beta)
    assert u.corner == 1
    exact, riemann = _riemann_gap(u, u)
    assert abs(exact) < 1e-12
    assert abs(riemann - 2 * p.beta) <= 1e-10 * 2 * p.beta


@criterion(3, "Riemann-sum identity")
@pytest.mark.parametrize("n", [4, 8, 16])
def test_symmetric_grid_restores_exactness(n, rng):
    p = GridParams(n, symmetric=True)
    extreme = exp_wave(p, p.l_min * p.freq_step, symmetric=True)
    pairs = [(extreme, extreme)] + [(random_element(p, rng), random_element(p, rng)) for _ in range(10)]
    for u, v in pairs:
        exact, riemann = _riemann_gap(u, v)
        assert abs(exact - riemann) <= 1e-10 * max(abs(exact), norm(u) * norm(v))


# ---------------------------------------------------------------- 4

@criterion(4, "Fourier unitarity and Parseval")
@pytest.mark.parametrize("n", [4, 8, 16])
def test_parseval(n, rng):
    for _ in range(100):
        u = random_element(n, rng, corner_free=False)
        v = random_element(n, rng, corner_free=False)
        lhs, rhs = inner(u, v), inner(fourier(u), fourier(v))
        assert abs(lhs - rhs) <= 1e-10 * norm(u) * norm(v)


@criterion(4, "Fourier unitarity and Parseval")
@pytest.mark.parametrize("n", [2, 4])
def test_fast_matches_direct(n, rng):
    for _ in range(10):
        u = random_element(n, rng, corner_free=False)
        assert np.max(np.abs(fourier_samples(u) - fourier_direct(u))) <= 1e-11


# ---------------------------------------------------------------- 5

@criterion(5, "Basis exchange")
def test_basis_exchange(rng):
    p = GridParams(8)
    tol = 1e-9 * SQRT_2PI / p.eta
    for q in rng.choice(p.points, size=10, replace=False):
        diff = fourier(exp_wave(p, q)) - delta(p, q) * SQRT_2PI
        assert np.max(np.abs(diff.samples)) <= tol
        assert np.max(np.abs(diff.coeffs)) <= tol


# ---------------------------------------------------------------- 6

@criterion(6, "Intertwining")
@pytest.mark.parametrize("n", [4, 8])
def test_intertwining(n, rng):
    for _ in range(10):
        u = corner_free_both_sides(random_element(n, rng))
        rep = check_intertwining(u)
        assert rep.derivative_residual <= 1e-9 * rep.norm
        assert rep.position_residual <= 1e-9 * rep.norm


# ---------------------------------------------------------------- 7

@criterion(7, "Projection fidelity")
def test_gaussian_fidelity():
    xs = np.linspace(-3, 3, 601)
    g = project_function("exp(-x^2/2)", 8)
    assert np.max(np.abs(evaluate(g, xs) - np.exp(-xs ** 2 / 2))) <= 1e-8


@criterion(7, "Projection fidelity")
def test_abs_exponential_improves_pointwise():
    # tested points: the level-8 lattice in [-3, 3], shared by every finer level
    p8 = GridParams(8)
    xs = p8.points[np.abs(p8.points) <= 3]
    f = np.exp(-np.abs(xs))
    err8 = np.abs(evaluate(project_function("exp(-abs(x))", 8), xs) - f)
    err32 = np.abs(evaluate(project_function("exp(-abs(x))", 32), xs) - f)
    assert np.all(err32 < err8)


# ---------------------------------------------------------------- 8

@criterion(8, "Distributional pairing")
@pytest.mark.filterwarnings("ignore::ultrafun.errors.GrowthWarning")  # exp(-x^2/2) at beta_4 is 1e-11
def test_dirac_pairing_converges():
    errors = [abs(pair("dirac", "exp(-x^2/2)", n) - 1) for n in DEFAULT_LADDER]
    assert errors[DEFAULT_LADDER.levels.index(16)] <= 1e-6
    assert all(b < a for a, b in zip(errors, errors[1:]))


@criterion(8, "Distributional pairing")
def test_heaviside_pairing():
    assert abs(pair("heaviside", "exp(-x^2/2)", 16) - math.sqrt(math.pi / 2)) <= 1e-4


# ---------------------------------------------------------------- 9

_FULL_CATALOG = list(CATALOG.values()) + [polynomial([1, -2, 0.5]), sinusoid(1.0), sinusoid(2.5, "cos")]


@criterion(9, "Derivative commutation")
@pytest.mark.parametrize("n", [4, 8, 16])
@pytest.mark.parametrize("T", _FULL_CATALOG, ids=lambda T: f"{T.label}-{T.base.source}")
def test_derivative_commutes_with_projection(n, T):
    lhs = derivative(project_distribution(T, n))
    rhs = project_distribution(DistributionSpec(T.order + 1, T.base), n)
    assert lhs.max_abs_diff(rhs) <= 1e-10 * np.max(np.abs(rhs.coeffs))


# ---------------------------------------------------------------- 10

@criterion(10, "Integral of projection")
def test_integral_of_gaussian_projection():
    lhs, rhs = integral_check("exp(-x^2)", 8)
    assert abs(lhs - math.sqrt(math.pi)) <= 1e-9
    assert abs(rhs - math.sqrt(math.pi)) <= 1e-9


# ---------------------------------------------------------------- 11

@criterion(11, "Hyperreal layer")
def test_shadow_of_compound_interest():
    s = shadow(HyperScalar(lambda n: (1 + 1 / n) ** n), tol=1e-2, extrapolate=True)
    assert s.finite
    assert s.residual <= 1e-2
    assert abs(s.value - math.e) <= 1e-2


@criterion(11, "Hyperreal layer")
@pytest.mark.parametrize("gen, tag", [
    (lambda n: n ** 3 + 5, Growth.SLOWLY_INCREASING),
    (lambda n: 2.0 ** n, Growth.RAPIDLY_INCREASING_POS),
    (lambda n: 1 / math.factorial(n), Growth.RAPIDLY_DECREASING),
], ids=["n^3+5", "2^n", "1/n!"])
def test_growth_classes(gen, tag):
    assert classify_growth(HyperScalar(gen)).tag is tag


@criterion(11, "Hyperreal layer")
def test_levelwise_arithmetic_is_exact():
    a = HyperScalar(lambda n: math.sin(n) + 1 / n)
    b = HyperScalar(lambda n: math.sqrt(n) - 3j)
    for n in DEFAULT_LADDER:
        assert hyper_add(a, b).at(n) == a.at(n) + b.at(n)
        assert hyper_mul(a, b).at(n) == a.at(n) * b.at(n)
        assert (a - b).at(n) == a.at(n) - b.at(n)
        assert (a / b).at(n) == a.at(n) / b.at(n)


# ---------------------------------------------------------------- 12

@criterion(12, "Nonlinear demo")
def test_delta_squared_integral():
    sq = UltraFunction(lambda n: grid_pow(to_samples(delta(n, 0.0)), 2))
    h = sq.integral()
    for n in DEFAULT_LADDER:
        inv_eta = 1 / GridParams(n).eta
        assert abs(h.at(n) - inv_eta) <= 1e-10 * inv_eta
    g = classify_growth(h)
    assert g.tag is Growth.SLOWLY_INCREASING
    assert abs(g.witness - 1) <= 1e-6


if __name__ == "__main__":
    import sys
    warnings.simplefilter("ignore")
    sys.exit(pytest.main([__file__, "-q"]))
