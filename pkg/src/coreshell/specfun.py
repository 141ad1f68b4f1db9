"""Confluent hypergeometric functions for real parameters.

Kummer's M(a, b; z) is evaluated for real or complex z, and the decaying
companion U(a, b; x) (Tricomi's function) for real x > 0.  Both are solutions
of

    z w'' + (b - z) w' - a w = 0.

Strategy:

* M: Maclaurin series near the origin, the Kummer transformation
  M(a, b; z) = e^z M(b - a, b; -z) for Re z < 0, the exponential asymptotic
  series for real z > 40, and Taylor re-expansion of the ODE along the ray
  from the origin everywhere the plain series would cancel (large imaginary
  part).  Re-expansion keeps full precision on the imaginary axis, where the
  series loses roughly e^|z| digits.
* U: asymptotic series at x = 40 (truncation error ~e^-40), then Taylor
  re-expansion inward to the requested x.  U dominates M on an inward path,
  so the continuation is stable.

Kernels are numba-compiled scalar loops; the public functions accept scalars
or numpy arrays.
"""
from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np
from numba import njit

__all__ = [
    "ConvergenceError",
    "HypergeometricArgs",
    "kummer_m",
    "kummer_m_derivative",
    "kummer_m_pair",
    "decaying_companion",
    "decaying_companion_derivative",
    "decaying_companion_pair",
]

SERIES_TOL = 1e-16
MAX_TERMS = 10_000
ASYMPTOTIC_Z = 40.0  # real z beyond which M uses its exponential expansion
SERIES_REACH = 4.0  # plain series used while |z| - Re z stays below this
STEP = 2.0  # max Taylor re-expansion step
U_START = 40.0  # U is seeded from its asymptotic series here


class ConvergenceError(ArithmeticError):
    """A series did not converge within the term cap."""


class HypergeometricArgs(NamedTuple):
    a: float
    b: float
    z: complex


@njit(cache=True)
def _series_pair(a, b, z):
    # t_{k+1} = t_k (a+k)/(b+k) z/(k+1);  dM/dz terms d_k = t_k (a+k)/(b+k)
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    dterm = (a / b) + 0.0j
    dtotal = dterm
    k = 0
    while k < MAX_TERMS:
        ratio = (a + k) / (b + k) * z / (k + 1)
        term = term * ratio
        k += 1
        dterm = term * ((a + k) / (b + k))
        total += term
        dtotal += dterm
        if term == 0.0:
            return total, dtotal, True
        if abs(ratio) < 1.0 and abs(term) < SERIES_TOL * abs(total) and abs(dterm) < SERIES_TOL * abs(dtotal):
            return total, dtotal, True
    return total, dtotal, False


@njit(cache=True)
def _m_asymptotic_real(a, b, x):
    # M(a,b;x) ~ G(b)/G(a) e^x x^(a-b) sum_s (b-a)_s (1-a)_s / s! x^-s, x real >> 1.
    # The algebraic companion term is O(e^-x) relative and dropped.
    term = 1.0
    total = 1.0
    prev = 1.0
    for s in range(200):
        nxt = term * (b - a + s) * (1.0 - a + s) / ((s + 1) * x)
        if nxt == 0.0:
            break
        if abs(nxt) > abs(prev) and s > 0:
            break
        total += nxt
        prev = term
        term = nxt
        if abs(term) < SERIES_TOL * abs(total):
            break
    # gamma ratio through lgamma keeps large b finite
    sign = math.copysign(1.0, math.gamma(b)) * math.copysign(1.0, math.gamma(a))
    log_pref = math.lgamma(b) - math.lgamma(a) + x + (a - b) * math.log(x)
    return sign * math.exp(log_pref) * total


@njit(cache=True)
def _taylor_step(a, b, z0, w, dw, h):
    """Advance (w, w') of the Kummer ODE from z0 to z0 + h by local Taylor series.

    Needs |h| < |z0| (the only singular point is the origin).
    """
    d0 = w
    d1 = dw * h
    total = d0 + d1
    dtotal = d1 + 0.0j
    scale = abs(d0) + abs(d1)
    if scale == 0.0:
        return w, dw
    k = 0
    while k < 2000:
        d2 = ((k + a) * d0 * h * h - (k + 1) * (k + b - z0) * d1 * h) / (z0 * (k + 1) * (k + 2))
        total += d2
        dtotal += (k + 2) * d2
        if abs(d1) + abs(d2) < 1e-17 * scale and k > 2:
            break
        d0 = d1
        d1 = d2
        k += 1
    return total, dtotal / h


@njit(cache=True)
def _m_pair_right(a, b, z):
    # Re z >= 0
    if z == 0:
        return 1.0 + 0.0j, (a / b) + 0.0j
    if z.imag == 0.0 and z.real > ASYMPTOTIC_Z:
        # the asymptotic expansion's leading gamma ratio vanishes for a = 0, -1, ...
        if not (a <= 0.0 and a == math.floor(a)):
            m = _m_asymptotic_real(a, b, z.real)
            dm = (a / b) * _m_asymptotic_real(a + 1.0, b + 1.0, z.real)
            return m + 0.0j, dm + 0.0j
    if abs(z) - z.real <= SERIES_REACH:
        m, dm, ok = _series_pair(a, b, z)
        if not ok:
            raise ArithmeticError("Kummer series did not converge")
        return m, dm
    radius = abs(z)
    z0 = z * (SERIES_REACH / radius)
    w, dw, ok = _series_pair(a, b, z0)
    if not ok:
        raise ArithmeticError("Kummer series did not converge")
    return _continue_ray(a, b, z0, w, dw, z)


@njit(cache=True)
def _m_pair(a, b, z):
    if z.real < 0.0:
        # Kummer transformation: M(a,b;z) = e^z M(b-a,b;-z)
        m, dm = _m_pair_right(b - a, b, -z)
        ez = cmath.exp(z)
        return ez * m, ez * (m - dm)
    return _m_pair_right(a, b, z)


@njit(cache=True)
def _continue_ray(a, b, z_from, w, dw, z_to):
    n = int(math.ceil(abs(z_to - z_from) / STEP))
    if n == 0:
        return w, dw
    h = (z_to - z_from) / n
    for j in range(n):
        w, dw = _taylor_step(a, b, z_from + j * h, w, dw, h)
    return w, dw


@njit(cache=True)
def _m_pair_array(a, b, z):
    # Points sharing a ray are chained outward from one another, so an r-grid
    # at fixed energy costs one continuation path instead of one per point.
    out = np.empty(z.size, dtype=np.complex128)
    dout = np.empty(z.size, dtype=np.complex128)
    order = np.argsort(np.abs(z))
    have_prev = False
    z_prev = 0.0j
    w_prev = 0.0j
    dw_prev = 0.0j
    for i in order:
        zi = z[i]
        chained = False
        if have_prev and zi.real >= 0.0 and abs(zi) - zi.real > SERIES_REACH:
            if abs(zi / abs(zi) - z_prev / abs(z_prev)) < 1e-14:
                w_prev, dw_prev = _continue_ray(a, b, z_prev, w_prev, dw_prev, zi)
                z_prev = zi
                chained = True
        if not chained:
            w_prev, dw_prev = _m_pair(a, b, zi)
            z_prev = zi
            have_prev = zi.real >= 0.0 and abs(zi) - zi.real > SERIES_REACH
        out[i] = w_prev
        dout[i] = dw_prev
    return out, dout


@njit(cache=True)
def _u_asymptotic(a, b, x):
    # U(a,b;x) ~ x^-a sum_s (a)_s (a-b+1)_s / s! (-x)^-s
    term = 1.0
    total = 1.0
    dtotal = -a
    prev = 1.0
    for s in range(400):
        nxt = -term * (a + s) * (a - b + 1.0 + s) / ((s + 1) * x)
        if nxt == 0.0:
            break
        if s > 0 and abs(nxt) > abs(prev):
            break
        total += nxt
        dtotal += nxt * (-a - s - 1.0)
        prev = term
        term = nxt
        if abs(term) < SERIES_TOL * abs(total):
            break
    xa = x ** (-a)
    return xa * total, xa * dtotal / x


@njit(cache=True)
def _u_inward(a, b, z, w, dw, x):
    """Continue (U, U') from z down to x < z."""
    target = max(x, SERIES_REACH)
    if z > target:
        n = int(math.ceil((z - target) / STEP))
        h = (target - z) / n
        for j in range(n):
            w, dw = _taylor_step(a, b, (z + j * h) + 0.0j, w, dw, h + 0.0j)
        z = target
    if x < z:
        # geometric approach to the origin keeps |h| <= |z0| / 2
        n = int(math.ceil(math.log(z / x) / math.log(2.0)))
        rho = (x / z) ** (1.0 / n)
        for j in range(n):
            znext = x if j == n - 1 else z * rho
            w, dw = _taylor_step(a, b, z + 0.0j, w, dw, (znext - z) + 0.0j)
            z = znext
    return w, dw


@njit(cache=True)
def _u_pair(a, b, x):
    if x >= U_START:
        return _u_asymptotic(a, b, x)
    u, du = _u_asymptotic(a, b, U_START)
    w, dw = _u_inward(a, b, U_START, u + 0.0j, du + 0.0j, x)
    return w.real, dw.real


@njit(cache=True)
def _u_pair_array(a, b, x):
    # chained inward through the sorted points, largest first
    out = np.empty(x.size)
    dout = np.empty(x.size)
    order = np.argsort(-x)
    z = U_START
    u, du = _u_asymptotic(a, b, U_START)
    w = u + 0.0j
    dw = du + 0.0j
    for i in order:
        xi = x[i]
        if xi >= U_START:
            out[i], dout[i] = _u_asymptotic(a, b, xi)
            continue
        w, dw = _u_inward(a, b, z, w, dw, xi)
        z = xi
        out[i] = w.real
        dout[i] = dw.real
    return out, dout


def _check_b(b):
    if not b > 0:
        raise ValueError(f"second Kummer parameter must be positive, got b={b}")


def kummer_m_pair(a, b, z):
    """Return ``(M(a, b; z), dM/dz)`` for scalar or array ``z``."""
    a = float(a)
    b = float(b)
    _check_b(b)
    if np.ndim(z) == 0:
        try:
            return _m_pair(a, b, complex(z))
        except ArithmeticError as exc:
            raise ConvergenceError(f"M({a}, {b}; {z}): {exc}") from None
    zz = np.asarray(z, dtype=np.complex128)
    try:
        m, dm = _m_pair_array(a, b, zz.ravel())
    except ArithmeticError as exc:
        raise ConvergenceError(f"M({a}, {b}; z): {exc}") from None
    return m.reshape(zz.shape), dm.reshape(zz.shape)


def kummer_m(a, b, z):
    """Kummer's confluent hypergeometric function M(a, b; z).

    Args:
        a: first parameter (real).
        b: second parameter, b > 0.
        z: complex argument, scalar or array.

    Returns:
        complex value(s); exactly 1 at z = 0.
    """
    return kummer_m_pair(a, b, z)[0]


def kummer_m_derivative(a, b, z):
    """dM/dz via the contiguous relation (a/b) M(a+1, b+1; z)."""
    _check_b(b)
    return (a / b) * kummer_m(a + 1.0, b + 1.0, z)


def decaying_companion_pair(a, b, x):
    """Return ``(U(a, b; x), dU/dx)`` for real ``x > 0`` (scalar or array)."""
    a = float(a)
    b = float(b)
    _check_b(b)
    if not a > 0:
        raise ValueError(f"decaying companion needs a > 0, got a={a}")
    if np.ndim(x) == 0:
        x = float(x)
        if not x > 0:
            raise ValueError(f"decaying companion is defined for x > 0, got {x}")
        return _u_pair(a, b, x)
    xx = np.asarray(x, dtype=float)
    if np.any(~(xx > 0)):
        raise ValueError("decaying companion is defined for x > 0 only")
    u, du = _u_pair_array(a, b, xx.ravel())
    return u.reshape(xx.shape), du.reshape(xx.shape)


def decaying_companion(a, b, x):
    """Tricomi's U(a, b; x), the solution that behaves like x^-a as x -> inf."""
    return decaying_companion_pair(a, b, x)[0]


def decaying_companion_derivative(a, b, x):
    """dU/dx via the contiguous relation -a U(a+1, b+1; x)."""
    return -a * decaying_companion(a + 1.0, b + 1.0, x)
