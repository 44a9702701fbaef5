"""Hot numeric loops, JIT-compiled with numba when available.

Set ``PWBIF_DISABLE_NUMBA=1`` to force the pure-Python/numpy fallback;
the same function bodies run either way, so results agree up to JIT
floating-point details.  ``benchmarks/bench_kernels.py`` compares the
two paths.

All linear-map kernels take the branch slopes (a left, b right) and
offsets (ml, mr) of the map  x < 0 -> ml + a*x,  x > 0 -> -mr + b*x,
with the right-lateral image used when an iterate hits 0 exactly.
"""

from __future__ import annotations

import math
import os

import numpy as np

DIVERGENCE_BOUND = 1e8


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


NUMBA_DISABLED = _env_flag("PWBIF_DISABLE_NUMBA")

if not NUMBA_DISABLED:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def jit(fn):
    if HAVE_NUMBA:
        return njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# piecewise-linear map iteration
# ---------------------------------------------------------------------------

@jit
def pw_linear_iterate(a, b, ml, mr, x0, n):
    """n iterates of the linear piecewise map; early exit on divergence."""
    x = x0
    for _ in range(n):
        if x < 0.0:
            x = ml + a * x
        else:
            x = -mr + b * x
        if x > DIVERGENCE_BOUND or x < -DIVERGENCE_BOUND:
            return x
    return x


@jit
def pw_linear_trajectory(a, b, ml, mr, x0, out):
    """Fill out[0..n] with x0 and its iterates; returns divergence index or -1."""
    n = out.shape[0] - 1
    x = x0
    out[0] = x
    for k in range(n):
        if x < 0.0:
            x = ml + a * x
        else:
            x = -mr + b * x
        out[k + 1] = x
        if x > DIVERGENCE_BOUND or x < -DIVERGENCE_BOUND:
            return k + 1
    return -1


# ---------------------------------------------------------------------------
# degree-one lift of the reduced circle map (linear branches)
#
# On [0,1): F(y) = al + a*y for y < c, and b*(y - c) + 1 for y >= c, with
# al = (ml + mr - a*mr)/(ml + mr) and c = mr/(ml + mr).  Extended by
# F(y + k) = F(y) + k.  At exact integers the right-lateral value is the
# y=0 branch; the left-lateral value is the y->1- limit plus the wrap.
# ---------------------------------------------------------------------------

@jit
def lift_linear_step(al, a, b, c, y, left_at_int):
    base = math.floor(y)
    u = y - base
    if u == 0.0 and left_at_int:
        return b * (1.0 - c) + 1.0 + (base - 1.0)
    if u < c:
        return al + a * u + base
    return b * (u - c) + 1.0 + base


@jit
def lift_linear_travel(al, a, b, c, y0, n, left_at_int):
    """F^n(y0) for the piecewise-linear lift."""
    y = y0
    for _ in range(n):
        y = lift_linear_step(al, a, b, c, y, left_at_int)
    return y


@jit
def lift_linear_residual(al, a, b, c, y0, q, p):
    """G(y0) = F^q(y0) - y0 - p (right-lateral images at integers)."""
    y = y0
    for _ in range(q):
        y = lift_linear_step(al, a, b, c, y, False)
    return y - y0 - p


@jit
def lift_linear_residual_grid(al, a, b, c, q, p, out):
    """G sampled on the uniform grid y = i/m over [0, 1)."""
    m = out.shape[0]
    for i in range(m):
        out[i] = lift_linear_residual(al, a, b, c, i / m, q, p)


# ---------------------------------------------------------------------------
# integrate-and-fire stroboscopic map, linear field f(x) = fc*x + fe, fc < 0
# ---------------------------------------------------------------------------

SPIKE_CAP = 10_000


@jit
def if_strobo_linear(x0, fc, fe, amp, d, period, theta):
    """One stroboscopic step: (state at time T, spike count).

    Pulse phase integrates xdot = fc*x + fe + amp with reset x=theta -> 0,
    all in closed form; off phase relaxes toward -fe/fc.  Returns spike
    count -1 if the reset cap is exceeded.
    """
    x = x0
    spikes = 0
    remaining = d * period
    x_on = -(fe + amp) / fc
    if remaining > 0.0:
        while True:
            if x_on <= theta or x >= x_on:
                # no crossing reachable; relax until pulse ends
                x = x_on + (x - x_on) * math.exp(fc * remaining)
                break
            t_cross = math.log((theta - x_on) / (x - x_on)) / fc
            if t_cross > remaining:
                x = x_on + (x - x_on) * math.exp(fc * remaining)
                break
            spikes += 1
            if spikes > SPIKE_CAP:
                return x, -1
            x = 0.0
            remaining -= t_cross
    x_off = -fe / fc
    x = x_off + (x - x_off) * math.exp(fc * (1.0 - d) * period)
    return x, spikes


@jit
def if_lift_travel(x0, n, fc, fe, amp, d, period, theta, sigma):
    """n lift steps of the map induced on [0, theta) with discontinuity sigma.

    Returns (final state, wrap count); a lift crossing happens exactly at
    the iterates landing at or right of sigma.
    """
    x = x0
    wraps = 0
    for _ in range(n):
        if x >= sigma:
            wraps += 1
        x, sp = if_strobo_linear(x, fc, fe, amp, d, period, theta)
        if sp < 0:
            return x, -1
    return x, wraps


@jit
def if_lift_residual(x0, q, p, fc, fe, amp, d, period, theta, sigma, s_left, s_right):
    """Lift residual F^q - id - p for the induced map, in circle coordinates.

    s_left/s_right are the lateral images of sigma; the affine circle
    coordinate is y = (x - s_right)/(s_left - s_right).
    """
    x = x0
    wraps = 0
    for _ in range(q):
        if x >= sigma:
            wraps += 1
        x, sp = if_strobo_linear(x, fc, fe, amp, d, period, theta)
        if sp < 0:
            return math.nan
    den = s_left - s_right
    return (x - x0) / den + (wraps - p)


@jit
def if_lift_residual_grid(q, p, fc, fe, amp, d, period, theta, sigma, s_left, s_right, out):
    m = out.shape[0]
    for i in range(m):
        x0 = theta * i / m
        out[i] = if_lift_residual(x0, q, p, fc, fe, amp, d, period, theta, sigma, s_left, s_right)


# ---------------------------------------------------------------------------
# planar relay stroboscopic map: y' = R y + mu(side), side by sign of
# sigma(y) = y1 - ystar + c1*y2
# ---------------------------------------------------------------------------

@jit
def planar_trajectory(r11, r12, r21, r22, mlx, mly, mrx, mry, c1, ystar, x0, y0, out):
    """Fill out[k] = (x_k, y_k, sigma_k); returns divergence index or -1."""
    n = out.shape[0]
    x = x0
    y = y0
    for k in range(n):
        s = x - ystar + c1 * y
        out[k, 0] = x
        out[k, 1] = y
        out[k, 2] = s
        if s < 0.0:
            xn = r11 * x + r12 * y + mlx
            yn = r21 * x + r22 * y + mly
        else:
            xn = r11 * x + r12 * y + mrx
            yn = r21 * x + r22 * y + mry
        x = xn
        y = yn
        if abs(x) > DIVERGENCE_BOUND or abs(y) > DIVERGENCE_BOUND:
            return k
    return -1


@jit
def planar_iterate(r11, r12, r21, r22, mlx, mly, mrx, mry, c1, ystar, x0, y0, n):
    x = x0
    y = y0
    for _ in range(n):
        s = x - ystar + c1 * y
        if s < 0.0:
            xn = r11 * x + r12 * y + mlx
            yn = r21 * x + r22 * y + mly
        else:
            xn = r11 * x + r12 * y + mrx
            yn = r21 * x + r22 * y + mry
        x = xn
        y = yn
        if abs(x) > DIVERGENCE_BOUND or abs(y) > DIVERGENCE_BOUND:
            return x, y
    return x, y


def warmup() -> None:
    """Trigger JIT compilation of every kernel (no-op without numba)."""
    pw_linear_iterate(0.5, 0.5, 1.0, 1.0, 0.1, 4)
    pw_linear_trajectory(0.5, 0.5, 1.0, 1.0, 0.1, np.empty(4))
    lift_linear_travel(0.75, 0.5, 0.5, 0.5, 0.25, 4, False)
    lift_linear_residual(0.75, 0.5, 0.5, 0.5, 0.25, 2, 1)
    lift_linear_residual_grid(0.75, 0.5, 0.5, 0.5, 2, 1, np.empty(8))
    if_strobo_linear(0.1, -0.5, 0.2, 1.0, 0.5, 1.9, 1.0)
    if_lift_travel(0.1, 4, -0.5, 0.2, 1.0, 0.5, 1.9, 1.0, 0.5)
    if_lift_residual(0.1, 2, 1, -0.5, 0.2, 1.0, 0.5, 1.9, 1.0, 0.5, 0.9, 0.1)
    if_lift_residual_grid(2, 1, -0.5, 0.2, 1.0, 0.5, 1.9, 1.0, 0.5, 0.9, 0.1, np.empty(8))
    planar_trajectory(0.9, 0.0, 0.0, 0.9, 0.1, 0.0, -0.1, 0.0, 1.0, 0.0, 0.1, 0.1, np.empty((4, 3)))
    planar_iterate(0.9, 0.0, 0.0, 0.9, 0.1, 0.0, -0.1, 0.0, 1.0, 0.0, 0.1, 0.1, 4)
