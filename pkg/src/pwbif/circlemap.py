"""Reduction to a degree-one circle map, rotation numbers, rational locking.

For an orientation-preserving map with positive offsets, the change of
coordinate  phi(x) = (x + mu_right)/(mu_left + mu_right)  sends the
trapping interval to [0, 1] and the map to an increasing circle map with
break point c = phi(0) and a nonnegative jump at the wrap point.  The
degree-one lift F of that circle map drives everything here: the
rotation estimate (F^N(x) - x)/N carries the a-priori error bound 1/N,
and a rational lock p/q is certified by a root of F^q - id - p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .farey import Rational
from .pwmap import PiecewiseMap1D, MapError

LOCK_TOL = 1e-10
DEFAULT_N = 100_000
DEFAULT_QMAX = 100
_GRID = 4096


class CircleError(MapError):
    pass


class NonOrientableError(CircleError):
    pass


class NegativeGapError(CircleError):
    pass


class CircleReduction:
    """An orientation-preserving map rewritten as a circle map on [0, 1)."""

    def __init__(self, source: PiecewiseMap1D):
        ml, mr = source.mu_left, source.mu_right
        if ml <= 0.0 or mr <= 0.0:
            raise CircleError(f"reduction needs positive offsets, got ({ml:g}, {mr:g})")
        info = source.classification()
        if not info["left_increasing"]:
            raise NonOrientableError("left branch not increasing")
        if not info["right_increasing"]:
            raise NonOrientableError("right branch not increasing")
        self.source = source
        self.span = ml + mr
        self.c = mr / self.span
        # lateral images of the wrap point 0 ~ 1 in reduced coordinates
        self.at_zero_plus = self.phi(source.full_left(-mr))
        self.at_one_minus = self.phi(source.full_right(ml))
        self.gap = self.at_zero_plus - self.at_one_minus
        if self.gap < -1e-14:
            raise NegativeGapError(
                f"negative gap {self.gap:.3e} at the wrap point: rotation-interval regime, out of scope")
        self.weak_expansion = not info["contracting"]
        self._verify_monotone()

    def phi(self, x: float) -> float:
        return (x + self.source.mu_right) / self.span

    def phi_inv(self, y: float) -> float:
        return y * self.span - self.source.mu_right

    def forward(self, y: float) -> float:
        """Circle image of y in [0, 1); right-lateral value at y = 0."""
        if y < self.c:
            return self.phi(self.source.full_left(self.phi_inv(y)))
        if y > self.c:
            return self.phi(self.source.full_right(self.phi_inv(y)))
        return 0.0

    def linear_params(self):
        """(al, a, b, c) of the piecewise-linear lift when branches are linear."""
        params = self.source.linear_params()
        if params is None:
            return None
        a, b, ml, mr = params
        al = (ml + mr - a * mr) / (ml + mr)
        return (al, a, b, self.c)

    def _verify_monotone(self, samples: int = 1024) -> None:
        for lo, hi in ((0.0, self.c), (self.c, 1.0)):
            ys = np.linspace(lo + 1e-9, hi - 1e-9, samples)
            vals = np.array([self.forward(y) for y in ys])
            if np.any(np.diff(vals) <= 0.0):
                raise CircleError("reduced map is not increasing between break points")
        if abs(self.forward(self.c - 1e-12) - 1.0) > 1e-6:
            raise CircleError("reduced map does not reach 1 at the break point")


def reduce_to_circle(m: PiecewiseMap1D) -> CircleReduction:
    return CircleReduction(m)


class LiftedCircleMap:
    """Degree-one lift of a circle reduction: F(x + 1) = F(x) + 1.

    Bi-valued at integers; iteration takes the right-lateral value unless
    asked otherwise.  Linear sources run through the jitted kernels.
    """

    degree = 1

    def __init__(self, reduction: CircleReduction):
        self.reduction = reduction
        self.c = reduction.c
        self.gap = reduction.gap
        self.weak_expansion = reduction.weak_expansion
        self._lin = reduction.linear_params()

    def value(self, x: float, left_at_int: bool = False) -> float:
        base = math.floor(x)
        u = x - base
        if u == 0.0 and left_at_int:
            return self.reduction.at_one_minus + 1.0 + (base - 1.0)
        if u < self.c:
            return self.reduction.phi(self.reduction.source.full_left(self.reduction.phi_inv(u))) + base
        v = self.reduction.phi(self.reduction.source.full_right(self.reduction.phi_inv(u)))
        return v + 1.0 + base

    def travel(self, y0: float, n: int, left_at_int: bool = False) -> float:
        """F^n(y0)."""
        if self._lin is not None:
            al, a, b, c = self._lin
            return _kernels.lift_linear_travel(al, a, b, c, y0, n, left_at_int)
        y = y0
        for _ in range(n):
            y = self.value(y, left_at_int)
        return y

    def residual(self, y0: float, q: int, p: int) -> float:
        """G(y0) = F^q(y0) - y0 - p."""
        if self._lin is not None:
            al, a, b, c = self._lin
            return _kernels.lift_linear_residual(al, a, b, c, y0, q, p)
        return self.travel(y0, q) - y0 - p

    def residual_grid(self, q: int, p: int, m: int = _GRID) -> np.ndarray:
        out = np.empty(m)
        if self._lin is not None:
            al, a, b, c = self._lin
            _kernels.lift_linear_residual_grid(al, a, b, c, q, p, out)
            return out
        for i in range(m):
            out[i] = self.residual(i / m, q, p)
        return out

    def grid_point(self, i: int, m: int = _GRID) -> float:
        return i / m


class RigidLift:
    """Lift of the rigid rotation y -> y + shift (mod 1); zero gap."""

    degree = 1

    def __init__(self, shift: float):
        self.shift = float(shift)
        self.c = 1.0 - (self.shift % 1.0)
        self.gap = 0.0
        self.weak_expansion = False

    def value(self, x: float, left_at_int: bool = False) -> float:
        return x + self.shift

    def travel(self, y0: float, n: int, left_at_int: bool = False) -> float:
        return y0 + n * self.shift

    def residual(self, y0: float, q: int, p: int) -> float:
        return q * self.shift - p

    def residual_grid(self, q: int, p: int, m: int = _GRID) -> np.ndarray:
        return np.full(m, q * self.shift - p)

    def grid_point(self, i: int, m: int = _GRID) -> float:
        return i / m


@dataclass
class RotationResult:
    estimate: float
    error_bound: float
    locked: Rational | None
    lock_residual: float
    periodic_point: float | None
    one_sided: bool
    boundary_sensitive: bool
    weak_expansion: bool

    @property
    def resolved(self) -> bool:
        return self.locked is not None


def _sb_candidate(estimate: float, err: float, q_max: int) -> tuple[int, int] | None:
    """The unique rational with q <= q_max inside the estimate window, if any.

    Walks the Stern-Brocot tree toward the window; uniqueness follows
    from err < 1/(2*q_max^2).
    """
    for p, q in ((0, 1), (1, 1)):
        if abs(p / q - estimate) <= err:
            return (p, q)
    lo, hi = (0, 1), (1, 1)
    while True:
        med = (lo[0] + hi[0], lo[1] + hi[1])
        if med[1] > q_max:
            return None
        value = med[0] / med[1]
        if abs(value - estimate) <= err:
            return med
        if value < estimate:
            lo = med
        else:
            hi = med


def lock_rational(F, estimate: float, err: float, q_max: int = DEFAULT_QMAX,
                  lock_tol: float = LOCK_TOL):
    """Try to certify a rational rotation number near the estimate.

    Returns (Rational, periodic point on the circle, residual, one_sided)
    or None.  A lock is certified by bisecting F^q - id - p over a sign
    change located on a 4096-point grid; if the residual only touches
    zero without a sign change, the one-sided (bifurcation-value) case is
    reported.
    """
    if err >= 1.0 / (2.0 * q_max * q_max):
        raise CircleError(f"estimate error {err:g} too large for q_max={q_max}")
    cand = _sb_candidate(estimate, err, q_max)
    if cand is None:
        return None
    p, q = cand

    grid = F.residual_grid(q, p, _GRID)
    finite = np.isfinite(grid)
    if not finite.all():
        return None

    sign_changes = np.nonzero(np.diff(np.signbit(grid)))[0]
    best = None
    for i in sign_changes:
        a, b = F.grid_point(int(i), _GRID), F.grid_point(int(i) + 1, _GRID)
        ga = F.residual(a, q, p)
        for _ in range(200):
            mid = 0.5 * (a + b)
            gm = F.residual(mid, q, p)
            if gm == 0.0:
                a = b = mid
                break
            if (ga < 0.0) == (gm < 0.0):
                a, ga = mid, gm
            else:
                b = mid
        x_star = 0.5 * (a + b)
        res = abs(F.residual(x_star, q, p))
        if res < lock_tol and (best is None or res < best[2]):
            best = (Rational(p, q), x_star, res, False)
    if best is not None:
        return best

    i_min = int(np.argmin(np.abs(grid)))
    if abs(grid[i_min]) < lock_tol:
        return (Rational(p, q), F.grid_point(i_min, _GRID), abs(grid[i_min]), True)
    return None


def rotation_number(F, n_iter: int = DEFAULT_N, q_max: int = DEFAULT_QMAX,
                    lock_tol: float = LOCK_TOL, seed: float | None = None) -> RotationResult:
    """Rotation estimate with its 1/N bound, plus an attempted lock.

    The seed defaults to c/2, safely off the break point.  A parallel run
    taking left-lateral values at integers flags boundary-sensitive
    parameters when the two estimates disagree beyond 2/N.
    """
    if n_iter < 100:
        raise CircleError("need at least 100 iterations")
    y0 = (F.c / 2.0) if seed is None else seed
    est = (F.travel(y0, n_iter, False) - y0) / n_iter
    est_left = (F.travel(y0, n_iter, True) - y0) / n_iter
    bound = 1.0 / n_iter
    sensitive = abs(est - est_left) > 2.0 * bound

    # the 1/N bound only resolves Farey gaps down to denominators ~ sqrt(N/2)
    q_cap = min(q_max, int(math.sqrt(0.5 / bound - 1)))
    locked = lock_residual = point = None
    one_sided = False
    hit = lock_rational(F, est, bound, q_cap, lock_tol) if q_cap >= 1 else None
    if hit is not None:
        locked, point, lock_residual, one_sided = hit
    return RotationResult(
        estimate=est,
        error_bound=bound,
        locked=locked,
        lock_residual=math.inf if lock_residual is None else lock_residual,
        periodic_point=point,
        one_sided=one_sided,
        boundary_sensitive=sensitive,
        weak_expansion=getattr(F, "weak_expansion", False),
    )


def verify_pq_ordering(F, orbit: np.ndarray, p: int, tol: float = 1e-8) -> bool:
    """Check the twist property: the lift sends x_i to x_{i+p} along the cycle.

    ``orbit`` holds the q periodic points sorted spatially on [0, 1).
    Both the one-step indexing and the q-step translation F^q = id + p
    are verified.
    """
    q = len(orbit)
    pts = np.asarray(orbit, dtype=float)
    if q == 0 or np.any(np.diff(pts) <= 0.0):
        raise CircleError("orbit must be nonempty and sorted strictly increasing")
    for i in range(q):
        j = i + p
        target = pts[j % q] + (j // q)
        if abs(F.value(pts[i]) - target) > tol:
            return False
        if abs(F.residual(pts[i], q, p)) > tol:
            return False
    return True


def classify_omega_limit(F, n_iter: int = DEFAULT_N, q_max: int = DEFAULT_QMAX,
                         hole_steps: int = 2000, tail: int = 512):
    """Classify the attractor of the circle map: periodic, cantor-like, undecided.

    Rational locking wins when it certifies.  Otherwise, with a positive
    gap, the images of the wrap-point hole are accumulated; if the orbit
    tail stays outside their union (an open set of positive sampled
    measure) the verdict is the heuristic 'cantor-like' label.
    """
    rr = rotation_number(F, n_iter, q_max)
    if rr.locked is not None:
        return ("periodic", rr)
    if F.gap <= 0.0:
        return ("undecided", "no lock and zero gap: conjugacy ambiguous")

    red = F.reduction
    lo, hi = red.at_one_minus, red.at_zero_plus
    intervals = []
    total = 0.0
    for _ in range(hole_steps):
        if lo <= red.c <= hi:
            return ("undecided", "hole image straddles the break point")
        lo2, hi2 = red.forward(lo), red.forward(hi)
        if hi2 < lo2:
            return ("undecided", "hole image wrapped")
        intervals.append((lo2, hi2))
        total += hi2 - lo2
        lo, hi = lo2, hi2

    y = F.c / 2.0
    burn = max(0, n_iter - tail)
    y = F.travel(y, burn) % 1.0
    for _ in range(tail):
        y = red.forward(y)
        for a, b in intervals:
            if a + 1e-12 < y < b - 1e-12:
                return ("undecided", "orbit tail enters a hole image")
    return ("cantor-like", {"hole_measure_lb": total, "gap": F.gap})
