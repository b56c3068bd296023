import math

import numpy as np
import pytest

from ultrafun.delta import (canonical_basis, delta, delta_offgrid, gram_matrix, realness_defect,
                            reproduce)
from ultrafun.errors import NotOnGrid
from ultrafun.grid import GridParams
from ultrafun.vspace import evaluate, integral, integral_of_product, random_element, synthesize


def test_peak_value():
    assert evaluate(delta(4, 0.0), 0.0) == pytest.approx(4 / math.sqrt(math.pi))


@pytest.mark.parametrize("symmetric", [False, True])
def test_kronecker_samples_from_coefficients(symmetric):
    # evaluate the coefficients, not the cached spike
    p = GridParams(4, symmetric)
    for l in (-16, -3, 0, 7):
        d = delta(p, l * p.eta)
        got = synthesize(p, d.coeffs)
        want = np.where(p.indices == l, 1 / p.eta, 0.0)
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_integral_is_one():
    for q in GridParams(3).points:
        assert integral(delta(3, q)) == pytest.approx(1.0)


def test_canonical_basis_is_orthonormal():
    G = gram_matrix(canonical_basis(3))
    np.testing.assert_allclose(G, np.eye(18), atol=1e-13)


def test_off_lattice_point_is_rejected():
    with pytest.raises(NotOnGrid):
        delta(4, 0.1)


def test_offgrid_kernel_reproduces_corner_free_elements(rng):
    u = random_element(5, rng)
    q = 0.123
    assert abs(reproduce(u, delta_offgrid(5, q)) - evaluate(u, q)) < 1e-10


def test_reproduction_needs_a_corner_free_partner(rng):
    p = GridParams(4)
    u = random_element(p, rng, corner_free=False)
    q = 2 * p.eta
    err = abs(integral_of_product(u, delta(p, q)) - evaluate(u, q))
    # only the unpaired corner term is lost
    assert err == pytest.approx(abs(u.corner), rel=1e-9)


def test_default_grid_deltas_have_one_imaginary_mode():
    p = GridParams(4)
    d = delta(p, 0.0)
    assert realness_defect(d) == pytest.approx(1 / (2 * p.beta))
    xs = np.linspace(-3, 3, 101)
    assert np.max(np.abs(evaluate(d, xs).imag)) <= 1 / (2 * p.beta) + 1e-12


def test_symmetric_grid_deltas_are_real():
    d = delta(4, 0.0, symmetric=True)
    assert realness_defect(d) < 1e-15
    xs = np.linspace(-3, 3, 101)
    assert np.max(np.abs(evaluate(d, xs).imag)) < 1e-13
