"""The level-n lattice, its constants and hyperfinite sums.

At level ``n`` the lattice is ``q_l = l * eta_n`` with ``eta_n = sqrt(pi)/n``
and ``l = -n^2, ..., n^2 - 1``: ``2n^2`` points covering ``[-beta_n, beta_n)``
with ``beta_n = n sqrt(pi)``. Because ``beta_n * eta_n = pi`` the same set
serves as the frequency lattice, which is what makes the Fourier transform a
plain DFT.

The symmetric variant adds ``+n^2 eta_n``. It has ``2n^2 + 1`` points, so the
periodic space built on it has period ``(2n^2 + 1) eta_n = 2 beta_n + eta_n``
and frequency step ``2 pi / period``. That removes the unpaired corner
frequency (real deltas, exact Riemann sums for products), at the price of the
position and frequency lattices no longer coinciding.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import NotOnGrid
from .levels import HyperScalar

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class GridParams:
    n: int
    symmetric: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"level n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def beta(self) -> float:
        return self.n * SQRT_PI

    @property
    def eta(self) -> float:
        return SQRT_PI / self.n

    @property
    def l_min(self) -> int:
        return -self.n * self.n

    @property
    def l_max(self) -> int:
        return self.n * self.n if self.symmetric else self.n * self.n - 1

    @property
    def size(self) -> int:
        return self.l_max - self.l_min + 1

    @property
    def period(self) -> float:
        """Length of the integration window; ``2 beta`` on the default grid."""
        return self.size * self.eta

    @property
    def freq_step(self) -> float:
        """Spacing of the frequency lattice; equals ``eta`` on the default grid."""
        return self.eta if not self.symmetric else 2.0 * math.pi / self.period

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.l_min, self.l_max + 1)

    @property
    def points(self) -> np.ndarray:
        return self.indices * self.eta

    @property
    def frequencies(self) -> np.ndarray:
        return self.indices * self.freq_step

    @property
    def variant(self) -> str:
        return "symmetric" if self.symmetric else "paper"


def grid_params(n, symmetric=False) -> GridParams:
    if isinstance(n, GridParams):
        return n
    return GridParams(int(n), symmetric)


@dataclass(frozen=True)
class SigmaGrid:
    params: GridParams

    @property
    def points(self) -> np.ndarray:
        return self.params.points

    @property
    def indices(self) -> np.ndarray:
        return self.params.indices

    def __len__(self):
        return self.params.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["l", "q"])
        for l, q in zip(self.indices, self.points):
            w.writerow([int(l), format(float(q), ".17g")])
        return buf.getvalue()


def sigma_grid(n, symmetric: bool = False) -> SigmaGrid:
    if not isinstance(n, GridParams) and int(n) < 1:
        raise ValueError(f"level n must be >= 1, got {n!r}")
    return SigmaGrid(grid_params(n, symmetric))


def index_of(q: float, grid, tol: float = 1e-9) -> int:
    """Lattice index ``l`` with ``|q - l eta| <= tol``; raises :class:`NotOnGrid`."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    params = grid.params if isinstance(grid, SigmaGrid) else grid_params(grid)
    l = int(round(q / params.eta))
    if params.l_min <= l <= params.l_max and abs(q - l * params.eta) <= tol:
        return l
    raise NotOnGrid(q, params.n, tol)


@dataclass(frozen=True)
class HyperfiniteFamily:
    """Finite index sets ``Gamma_n`` with values, one pair per level.

    ``index_set(n)`` returns an array of indices (typically lattice points);
    ``value(n, k)`` is evaluated on that whole array at once.
    """

    index_set: Callable[[int], Iterable]
    value: Callable[[int, np.ndarray], np.ndarray]

    def terms(self, n: int) -> np.ndarray:
        ks = np.asarray(list(self.index_set(n)), dtype=float)
        return np.broadcast_to(np.asarray(self.value(n, ks), dtype=complex), ks.shape)


def hyperfinite_sum(fam: HyperfiniteFamily) -> HyperScalar:
    return HyperScalar(lambda n: complex(np.sum(fam.terms(n))))


def sigma_family(value: Callable[[int, np.ndarray], np.ndarray], symmetric=False) -> HyperfiniteFamily:
    """Hyperfinite family indexed by the lattice itself."""
    return HyperfiniteFamily(lambda n: GridParams(n, symmetric).points, value)
