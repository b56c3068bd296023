"""Level families as a stand-in for tempered hyperreal and hypercomplex numbers.

A tempered hyperreal is a class of slowly increasing sequences modulo the
rapidly decreasing ones, taken along an ultrafilter. An ultrafilter cannot be
built, so a finite, increasing :class:`LevelLadder` replaces "almost every
level": identities are checked at every rung, and asymptotic questions
(growth class, shadow, infinitesimal closeness) are answered heuristically
from the values on the ladder.
"""
from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DivisionByZeroAtLevel

DEFAULT_LEVELS = (4, 8, 16, 32)

# slope drift (change of local log-log slope per doubling of n) that marks a
# family as rapidly increasing or decreasing
RAPID_DRIFT = 1.0

# fitted exponent above which a slowly increasing family is an infinite number
INFINITE_EXPONENT = 0.5


@dataclass(frozen=True)
class LevelLadder:
    levels: tuple = DEFAULT_LEVELS

    def __post_init__(self):
        levels = tuple(int(n) for n in self.levels)
        if not levels:
            raise ValueError("a level ladder needs at least one level")
        if any(n < 2 for n in levels):
            raise ValueError(f"ladder levels must be >= 2, got {levels}")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError(f"ladder levels must be strictly increasing, got {levels}")
        object.__setattr__(self, "levels", levels)

    def __iter__(self):
        return iter(self.levels)

    def __len__(self):
        return len(self.levels)

    @property
    def top(self):
        return self.levels[-1]


DEFAULT_LADDER = LevelLadder()


def _as_generator(value) -> Callable[[int], complex]:
    if isinstance(value, HyperScalar):
        return value.at
    if callable(value):
        return value
    c = complex(value)
    return lambda n: c


class HyperScalar:
    """A lazily evaluated family ``n -> value`` standing in for an element of C-bar.

    The generator must be deterministic. Values are cached per level; the cache
    is guarded by a lock so a family may be evaluated from several threads.
    """

    def __init__(self, generator: Callable[[int], complex], label: str | None = None):
        self._generator = generator
        self._cache: dict[int, complex] = {}
        self._lock = threading.Lock()
        self.label = label

    @classmethod
    def constant(cls, c):
        c = complex(c)
        return cls(lambda n: c, label=repr(c))

    def at(self, n: int) -> complex:
        n = int(n)
        with self._lock:
            if n in self._cache:
                return self._cache[n]
        value = complex(self._generator(n))
        with self._lock:
            return self._cache.setdefault(n, value)

    __call__ = at

    def values(self, ladder: Iterable[int] = DEFAULT_LADDER) -> np.ndarray:
        return np.array([self.at(n) for n in ladder], dtype=complex)

    @property
    def cached(self) -> dict:
        with self._lock:
            return dict(self._cache)

    def __add__(self, other):
        return hyper_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return hyper_sub(self, other)

    def __rsub__(self, other):
        return hyper_sub(other, self)

    def __mul__(self, other):
        return hyper_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return hyper_div(self, other)

    def __rtruediv__(self, other):
        return hyper_div(other, self)

    def __neg__(self):
        g = self.at
        return HyperScalar(lambda n: -g(n))

    def __repr__(self):
        shown = ", ".join(f"{n}: {v:.6g}" for n, v in sorted(self.cached.items()))
        name = self.label or "HyperScalar"
        return f"<{name} {{{shown}}}>"


def hyper_add(a, b) -> HyperScalar:
    fa, fb = _as_generator(a), _as_generator(b)
    return HyperScalar(lambda n: fa(n) + fb(n))


def hyper_sub(a, b) -> HyperScalar:
    fa, fb = _as_generator(a), _as_generator(b)
    return HyperScalar(lambda n: fa(n) - fb(n))


def hyper_mul(a, b) -> HyperScalar:
    fa, fb = _as_generator(a), _as_generator(b)
    return HyperScalar(lambda n: fa(n) * fb(n))


def hyper_div(a, b) -> HyperScalar:
    fa, fb = _as_generator(a), _as_generator(b)

    def gen(n):
        d = fb(n)
        if d == 0:
            raise DivisionByZeroAtLevel(n)
        return fa(n) / d

    return HyperScalar(gen)


class Growth(enum.Enum):
    SLOWLY_INCREASING = "SlowlyIncreasing"
    RAPIDLY_INCREASING_POS = "RapidlyIncreasingPos"
    RAPIDLY_INCREASING_NEG = "RapidlyIncreasingNeg"
    RAPIDLY_DECREASING = "RapidlyDecreasing"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class GrowthClass:
    tag: Growth
    witness: float  # fitted exponent, or the last local slope for rapid classes

    @property
    def is_rapid(self):
        return self.tag in (Growth.RAPIDLY_INCREASING_POS, Growth.RAPIDLY_INCREASING_NEG,
                            Growth.RAPIDLY_DECREASING)


def _loglog(h: HyperScalar, ladder: Sequence[int]):
    vals = h.values(ladder)
    mags = np.abs(vals)
    logn = np.log(np.asarray(ladder, dtype=float))
    return vals, mags, logn


def classify_growth(h: HyperScalar, ladder: LevelLadder = DEFAULT_LADDER) -> GrowthClass:
    """Heuristic growth class of a level family from a log-log fit over the ladder.

    Local slopes of ``log|h(n)|`` against ``log n`` are computed between
    consecutive levels. If they drift by more than ``RAPID_DRIFT`` per doubling
    of ``n`` the family is reported as rapidly increasing (sign taken from the
    real part at the top levels) or rapidly decreasing; otherwise the least-squares
    slope is the witness exponent of a slowly increasing family.
    """
    levels = list(ladder)
    if len(levels) < 3:
        raise ValueError("classify_growth needs a ladder with at least 3 levels")
    vals, mags, logn = _loglog(h, levels)
    if not np.all(np.isfinite(mags)):
        return GrowthClass(Growth.INDETERMINATE, math.nan)
    if np.all(mags == 0):
        return GrowthClass(Growth.RAPIDLY_DECREASING, -math.inf)
    if np.any(mags == 0):
        # zeros at isolated levels: a log fit is meaningless
        if mags[-1] == 0 and mags[-2] == 0:
            return GrowthClass(Growth.RAPIDLY_DECREASING, -math.inf)
        return GrowthClass(Growth.INDETERMINATE, math.nan)

    logm = np.log(mags)
    slopes = np.diff(logm) / np.diff(logn)
    mid = 0.5 * (logn[1:] + logn[:-1])
    drift = np.diff(slopes) / (np.diff(mid) / math.log(2.0))
    fit = float(np.polyfit(logn, logm, 1)[0])

    if np.all(drift > RAPID_DRIFT) and slopes[-1] > 0:
        top = vals[-2:].real
        if np.all(top > 0):
            return GrowthClass(Growth.RAPIDLY_INCREASING_POS, float(slopes[-1]))
        if np.all(top < 0):
            return GrowthClass(Growth.RAPIDLY_INCREASING_NEG, float(slopes[-1]))
        return GrowthClass(Growth.INDETERMINATE, float(slopes[-1]))
    if np.all(drift < -RAPID_DRIFT) and slopes[-1] < 0:
        return GrowthClass(Growth.RAPIDLY_DECREASING, float(slopes[-1]))
    if np.all(np.abs(drift) <= RAPID_DRIFT):
        return GrowthClass(Growth.SLOWLY_INCREASING, fit)
    return GrowthClass(Growth.INDETERMINATE, fit)


class Infinity(enum.Enum):
    PLUS = "PlusInfinity"
    MINUS = "MinusInfinity"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ShadowResult:
    value: complex | Infinity
    residual: float

    @property
    def finite(self):
        return not isinstance(self.value, Infinity)


def _richardson(ladder, vals):
    # first-order extrapolation assuming h(n) = L + C/n + ...
    n = np.asarray(ladder, dtype=float)
    return (n[1:] * vals[1:] - n[:-1] * vals[:-1]) / (n[1:] - n[:-1])


def shadow(h: HyperScalar, ladder: LevelLadder = DEFAULT_LADDER, tol: float = 1e-8,
           extrapolate: bool = False) -> ShadowResult:
    """Standard part estimate from agreement of the last two ladder levels.

    With ``extrapolate=True`` the last two levels are first combined by a
    first-order Richardson step, which needs at least three levels.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    levels = list(ladder)
    vals = h.values(levels)
    if extrapolate and len(levels) >= 3:
        vals = _richardson(levels, vals)
    if len(vals) >= 2:
        residual = float(abs(vals[-1] - vals[-2]))
    else:
        residual = 0.0
    if np.isfinite(residual) and residual <= tol:
        v = complex(vals[-1])
        return ShadowResult(v.real if v.imag == 0 else v, residual)
    if len(levels) >= 3:
        g = classify_growth(h, ladder if isinstance(ladder, LevelLadder) else LevelLadder(tuple(levels)))
        if g.tag is Growth.RAPIDLY_INCREASING_POS:
            return ShadowResult(Infinity.PLUS, residual)
        if g.tag is Growth.RAPIDLY_INCREASING_NEG:
            return ShadowResult(Infinity.MINUS, residual)
        if g.tag is Growth.SLOWLY_INCREASING and g.witness > INFINITE_EXPONENT:
            # polynomial growth is not rapid, but the hyperreal is still infinite
            sign = np.sign(h.at(levels[-1]).real)
            if sign > 0:
                return ShadowResult(Infinity.PLUS, residual)
            if sign < 0:
                return ShadowResult(Infinity.MINUS, residual)
    return ShadowResult(Infinity.INDETERMINATE, residual)


def infinitely_close(a, b, ladder: LevelLadder = DEFAULT_LADDER, tol: float = 1e-8) -> bool:
    """True when ``a - b`` looks infinitesimal on the ladder."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = hyper_sub(a, b)
    if len(ladder) >= 3 and classify_growth(d, ladder).tag is Growth.RAPIDLY_DECREASING:
        return True
    mags = np.abs(d.values(ladder))
    if mags[-1] > tol:
        return False
    return bool(np.all(mags == 0) or np.all(np.diff(mags) < 0))
