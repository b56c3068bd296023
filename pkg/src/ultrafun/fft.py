"""Mixed-radix FFT plans with a Bluestein fallback for large prime factors.

Transform sizes in this package are ``2n^2`` (the default grid), ``2n^2 + 1``
(the symmetric grid) and oversampled multiples of those, so powers of two are
the exception rather than the rule. A plan factors the size once, caches the
twiddle tables, and runs a batched decimation-in-time recursion. Prime factors
up to ``DENSE_RADIX_LIMIT`` are applied as small dense DFT matrices; larger
primes go through a chirp-z (Bluestein) convolution on a power-of-two plan.

Conventions follow numpy: ``forward`` computes ``X_k = sum_j x_j exp(-2 pi i jk/N)``
and ``inverse`` includes the ``1/N`` factor.
"""
from functools import lru_cache

import numpy as np

DENSE_RADIX_LIMIT = 31


def _factorize(n):
    factors = []
    while n % 4 == 0:
        factors.append(4)
        n //= 4
    while n % 2 == 0:
        factors.append(2)
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            factors.append(p)
            n //= p
        p += 2
    if n > 1:
        factors.append(n)
    return factors


def _unit_roots(numer, denom):
    """exp(-2 pi i numer/denom) with the integer phase reduced first."""
    return np.exp(-2j * np.pi * (np.asarray(numer) % denom) / denom)


class _DenseKernel:
    def __init__(self, p):
        r = np.arange(p)
        self.matrix = _unit_roots(np.outer(r, r), p)

    def __call__(self, y):
        # y: (B, p, m), DFT along axis 1
        return np.matmul(self.matrix, y)


class _BluesteinKernel:
    """Length-p DFT as a circular convolution of length L = 2^k >= 2p - 1."""

    def __init__(self, p):
        self.p = p
        L = 1
        while L < 2 * p - 1:
            L *= 2
        self.L = L
        j = np.arange(p)
        # exp(-i pi j^2 / p), with j^2 reduced mod 2p to keep the phase exact
        self.chirp = np.exp(-1j * np.pi * ((j * j) % (2 * p)) / p)
        b = np.zeros(L, dtype=complex)
        b[:p] = np.conj(self.chirp)
        b[L - p + 1:] = np.conj(self.chirp[1:][::-1])
        self.conv_plan = get_plan(L)
        self.b_hat = self.conv_plan.forward(b)

    def transform_last(self, x):
        lead = x.shape[:-1]
        a = np.zeros(lead + (self.L,), dtype=complex)
        a[..., :self.p] = x * self.chirp
        c = self.conv_plan.inverse(self.conv_plan.forward(a) * self.b_hat)
        return c[..., :self.p] * self.chirp

    def __call__(self, y):
        return np.swapaxes(self.transform_last(np.swapaxes(y, 1, 2)), 1, 2)


class FourierPlan:
    """Precomputed factorization and twiddles for transforms of one size."""

    def __init__(self, size):
        size = int(size)
        if size < 1:
            raise ValueError(f"transform size must be positive, got {size}")
        self.size = size
        self.factors = tuple(_factorize(size)) if size > 1 else ()
        self._stages = []
        remaining = size
        for p in self.factors:
            m = remaining // p
            r = np.arange(p)[:, None]
            k1 = np.arange(m)[None, :]
            twiddle = _unit_roots(r * k1, remaining)
            kernel = _DenseKernel(p) if p <= DENSE_RADIX_LIMIT else _BluesteinKernel(p)
            self._stages.append((p, m, twiddle, kernel))
            remaining = m

    @property
    def uses_bluestein(self):
        return any(isinstance(stage[3], _BluesteinKernel) for stage in self._stages)

    def _run(self, x, stage):
        if stage == len(self._stages):
            return x
        p, m, twiddle, kernel = self._stages[stage]
        batch = x.shape[0]
        sub = x.reshape(batch, m, p).transpose(0, 2, 1).reshape(batch * p, m)
        y = self._run(sub, stage + 1).reshape(batch, p, m)
        return kernel(y * twiddle).reshape(batch, p * m)

    def forward(self, x):
        x = np.asarray(x, dtype=complex)
        if x.shape[-1] != self.size:
            raise ValueError(f"plan size {self.size} does not match input length {x.shape[-1]}")
        lead = x.shape[:-1]
        out = self._run(x.reshape(-1, self.size), 0)
        return out.reshape(lead + (self.size,))

    def inverse(self, X):
        X = np.asarray(X, dtype=complex)
        return np.conj(self.forward(np.conj(X))) / self.size


@lru_cache(maxsize=64)
def get_plan(size):
    """Shared, immutable plan for ``size`` (plans are safe to use from several threads)."""
    return FourierPlan(size)


def dft_direct(x):
    """O(N^2) reference DFT with exact integer phase reduction."""
    x = np.asarray(x, dtype=complex)
    N = x.shape[-1]
    j = np.arange(N)
    return x @ _unit_roots(np.outer(j, j), N).T
