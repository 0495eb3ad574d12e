"""Integer-order Bessel functions of the first kind and their zeros.

Small arguments use the Maclaurin series; larger ones use Miller's backward
recurrence normalised with ``J_0 + 2 * sum(J_2k) = 1``. Both paths accept
scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 50
MAX_SERIES_TERMS = 200
SCAN_STEP = 0.05
BISECT_TOL = 1e-13
MAX_BISECT_ITER = 200


class DomainError(ValueError):
    """Argument outside the supported domain."""


class ConvergenceError(RuntimeError):
    """A root search failed to converge (numeric bug, not bad input)."""


@dataclass(frozen=True)
class BesselZero:
    order: int
    index: int
    value: float

    def __float__(self) -> float:
        return self.value


def _series_limit(m: int) -> float:
    # cancellation in the alternating series stays below ~1e-15 absolute here
    return 6.0 + 0.6 * m


def _check(m, x) -> np.ndarray:
    if not isinstance(m, (int, np.integer)) or m < 0 or m > MAX_ORDER:
        raise DomainError(f"order must be an integer in [0, {MAX_ORDER}], got {m!r}")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("argument must be finite")
    if np.any(x < 0):
        raise DomainError("argument must be non-negative")
    return x


def _series(m: int, x: np.ndarray) -> np.ndarray:
    h = 0.5 * x
    h2 = h * h
    term = h**m / math.factorial(m)
    total = term.copy()
    for k in range(1, MAX_SERIES_TERMS + 1):
        term = -term * h2 / (k * (k + m))
        total += term
        if k > h.max(initial=0.0) + 1 and np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _miller(m: int, x: np.ndarray) -> np.ndarray:
    n = max(m, int(x.max()))
    start = 2 * ((n + int(math.sqrt(40 * n)) + 20) // 2)
    j_next = np.zeros_like(x)
    j = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    out = np.zeros_like(x)
    for k in range(start, 0, -1):
        j_next, j = j, 2.0 * k / x * j - j_next
        if k - 1 == m:
            out = j.copy()
        if k > 1 and (k - 1) % 2 == 0:
            norm += 2.0 * j
        big = np.abs(j) > 1e250
        if big.any():
            for arr in (j_next, j, norm, out):
                arr[big] *= 1e-250
    norm += j
    return out / norm


def _jn(m: int, x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    small = x <= _series_limit(m)
    if small.any():
        out[small] = _series(m, x[small])
    if (~small).any():
        out[~small] = _miller(m, x[~small])
    return out


def _wrap(result: np.ndarray, like):
    if np.ndim(like) == 0:
        return float(result.reshape(()))
    return result


def bessel_j(m: int, x):
    """J_m(x) for integer order 0 <= m <= 50 and finite x >= 0."""
    xa = _check(m, x)
    return _wrap(_jn(m, xa.reshape(-1)).reshape(xa.shape), x)


def bessel_j_prime(m: int, x):
    """Derivative J_m'(x), via (J_{m-1} - J_{m+1}) / 2 (and -J_1 for m = 0)."""
    xa = _check(m, x)
    if m + 1 > MAX_ORDER:
        raise DomainError(f"derivative needs order {m + 1} > {MAX_ORDER}")
    flat = xa.reshape(-1)
    if m == 0:
        d = -_jn(1, flat)
    else:
        d = 0.5 * (_jn(m - 1, flat) - _jn(m + 1, flat))
    return _wrap(d.reshape(xa.shape), x)


def _nth_root(f, m: int, n: int) -> float:
    if n < 1:
        raise DomainError(f"zero index must be >= 1, got {n}")
    lo = max(0.5, m / 2.0)
    found = 0
    # scan in chunks so large n does not need a huge upfront grid
    while lo < 1e4:
        grid = lo + SCAN_STEP * np.arange(2001)
        vals = f(m, grid)
        sign_change = np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]
        for i in sign_change:
            found += 1
            if found == n:
                return _bisect(lambda t: f(m, t), grid[i], grid[i + 1])
        lo = grid[-1]
    raise ConvergenceError(f"zero {n} of order {m} not bracketed")


def _bisect(g, a: float, b: float) -> float:
    ga = g(a)
    if ga == 0.0:
        return float(a)
    for _ in range(MAX_BISECT_ITER):
        mid = 0.5 * (a + b)
        gm = g(mid)
        if gm == 0.0:
            return float(mid)
        if (gm < 0) == (ga < 0):
            a, ga = mid, gm
        else:
            b = mid
        if b - a <= BISECT_TOL:
            return float(0.5 * (a + b))
    raise ConvergenceError(f"bisection did not converge on [{a}, {b}]")


@lru_cache(maxsize=None)
def bessel_zero(m: int, n: int) -> BesselZero:
    """n-th positive zero of J_m (the origin is never counted)."""
    _check(m, 0.0)
    return BesselZero(m, n, _nth_root(bessel_j, m, n))


@lru_cache(maxsize=None)
def bessel_prime_zero(m: int, n: int) -> float:
    """n-th positive zero of J_m'. For m = 0 the trivial root at 0 is skipped."""
    _check(m, 0.0)
    return _nth_root(bessel_j_prime, m, n)
