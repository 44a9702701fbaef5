"""The one-boundary piecewise-smooth map: branches, itineraries, attractors.

The full map is  x < 0 -> mu_left + left(x),  x > 0 -> -mu_right + right(x)
with both branch functions fixing the origin.  The value at x = 0 follows
the map's boundary rule; plain iteration always takes the right-lateral
image, and iterates entering the ``BOUNDARY_EPS`` band around 0 are
reported as border-collision candidates instead of being given a symbol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .farey import Rational
from .symbolic import SymbolicWord, minimal_rotation_index

BOUNDARY_EPS = 1e-12
DIVERGENCE_BOUND = _kernels.DIVERGENCE_BOUND
_ORIGIN_TOL = 1e-12

BOUNDARY_RULES = ("left-image", "right-image", "bivalued")


class MapError(Exception):
    """Base error for map construction and iteration."""


class DivergenceError(MapError):
    def __init__(self, state: float, step: int):
        super().__init__(f"trajectory diverged (|x| > {DIVERGENCE_BOUND:g}) at step {step}")
        self.state = state
        self.step = step


class BoundaryCollisionError(MapError):
    """An iterate fell inside the boundary band; its symbol is undefined."""

    def __init__(self, state: float, step: int):
        super().__init__(f"iterate {step} at x={state:.3e} collides with the boundary")
        self.state = state
        self.step = step


class Branch:
    """One smooth branch of the map, fixing the origin.

    The derivative is analytic when supplied, otherwise a central
    difference with step 1e-6 * max(1, |x|).
    """

    def __init__(self, fn, deriv=None, name: str = "custom"):
        value = fn(0.0)
        if not math.isfinite(value) or abs(value) > _ORIGIN_TOL:
            raise MapError(f"branch must fix the origin, got f(0)={value!r}")
        self._fn = fn
        self._deriv = deriv
        self.name = name

    def __call__(self, x: float) -> float:
        return self._fn(x)

    def derivative(self, x: float) -> float:
        if self._deriv is not None:
            return self._deriv(x)
        h = 1e-6 * max(1.0, abs(x))
        return (self._fn(x + h) - self._fn(x - h)) / (2.0 * h)

    @property
    def slope(self) -> float | None:
        """Constant slope for linear branches, else None."""
        return None


class LinearBranch(Branch):
    """f(x) = slope * x; the form every demo family in the scans uses."""

    def __init__(self, slope: float):
        self._slope = float(slope)
        super().__init__(lambda x: self._slope * x, lambda x: self._slope, name=f"linear({slope})")

    @property
    def slope(self) -> float:
        return self._slope


@dataclass
class OrbitRecord:
    """A detected periodic orbit, points in dynamical order."""

    points: np.ndarray
    word: SymbolicWord
    period: int
    eta: Rational
    stable: bool
    multiplier: float

    def __repr__(self):
        return (f"OrbitRecord(period={self.period}, word={self.word}, eta={self.eta}, "
                f"stable={self.stable}, multiplier={self.multiplier:.3g})")


@dataclass
class AperiodicReport:
    """No period found below the cap; eta estimated from the orbit tail."""

    eta_estimate: float
    tail_length: int
    last_state: float


class PiecewiseMap1D:
    """Two smooth branches with offsets and the discontinuity at x = 0."""

    def __init__(self, left: Branch, right: Branch, mu_left: float, mu_right: float,
                 boundary_rule: str = "bivalued"):
        if boundary_rule not in BOUNDARY_RULES:
            raise MapError(f"boundary_rule must be one of {BOUNDARY_RULES}")
        self.left = left
        self.right = right
        self.mu_left = float(mu_left)
        self.mu_right = float(mu_right)
        self.boundary_rule = boundary_rule
        self._classification = None

    # -- evaluation ---------------------------------------------------------

    def full_left(self, x: float) -> float:
        return self.mu_left + self.left(x)

    def full_right(self, x: float) -> float:
        return -self.mu_right + self.right(x)

    def apply(self, x: float):
        """Branch-dispatched image; at x = 0 follows the boundary rule.

        Under the bivalued rule the image of 0 is the pair of lateral
        values (mu_left, -mu_right).
        """
        if not math.isfinite(x):
            raise MapError(f"non-finite state {x!r}")
        if x < 0.0:
            return self.full_left(x)
        if x > 0.0:
            return self.full_right(x)
        if self.boundary_rule == "left-image":
            return self.mu_left
        if self.boundary_rule == "right-image":
            return -self.mu_right
        return (self.mu_left, -self.mu_right)

    def step(self, x: float) -> float:
        """Iteration image: right-lateral value at x = 0 exactly."""
        if x < 0.0:
            return self.full_left(x)
        return self.full_right(x)

    def derivative(self, x: float) -> float:
        return self.left.derivative(x) if x < 0.0 else self.right.derivative(x)

    def linear_params(self):
        """(a, b, mu_left, mu_right) when both branches are linear, else None."""
        a, b = self.left.slope, self.right.slope
        if a is None or b is None:
            return None
        return (a, b, self.mu_left, self.mu_right)

    # -- classification -----------------------------------------------------

    def absorbing_interval(self) -> tuple[float, float]:
        """A hull that traps forward orbits, used for sampling and seeding.

        Increasing-increasing maps trap [-mu_right, mu_left]; with a
        decreasing right branch the lower end is the image of mu_left.
        """
        pts = [self.mu_left, -self.mu_right, self.full_right(self.mu_left),
               self.full_left(-self.mu_right)]
        lo, hi = min(pts), max(pts)
        if hi - lo < 1e-9:
            lo, hi = lo - 1e-9, hi + 1e-9
        return lo, hi

    def classification(self, samples: int = 1024) -> dict:
        """Sampled monotonicity/contraction flags with a 1% safety margin.

        Advisory only: slope conditions are open-interval hypotheses, so
        violations produce warnings, never construction failures.
        """
        if self._classification is not None:
            return self._classification
        lo, hi = self.absorbing_interval()
        lo = min(lo, -1e-6)
        hi = max(hi, 1e-6)
        xs_left = np.linspace(lo, -1e-9, samples)
        xs_right = np.linspace(1e-9, hi, samples)
        dl = np.array([self.left.derivative(x) for x in xs_left])
        dr = np.array([self.right.derivative(x) for x in xs_right])
        info = {
            "left_increasing": bool(dl.min() > 0.0),
            "right_increasing": bool(dr.min() > 0.0),
            "right_decreasing": bool(dr.max() < 0.0),
            "sup_abs_left": float(np.abs(dl).max()),
            "sup_abs_right": float(np.abs(dr).max()),
        }
        info["contracting"] = bool(max(info["sup_abs_left"], info["sup_abs_right"]) * 1.01 < 1.0)
        warnings = []
        if not info["left_increasing"]:
            warnings.append("left branch not increasing on the sampled interval")
        if not (info["right_increasing"] or info["right_decreasing"]):
            warnings.append("right branch changes monotonicity on the sampled interval")
        if not info["contracting"]:
            warnings.append("map not contracting on the sampled interval (1% margin)")
        info["warnings"] = warnings
        self._classification = info
        return info

    def __repr__(self):
        return (f"PiecewiseMap1D(left={self.left.name}, right={self.right.name}, "
                f"mu_left={self.mu_left:g}, mu_right={self.mu_right:g})")


def map_from_spec(spec: dict, mu_left: float | None = None, mu_right: float | None = None) -> PiecewiseMap1D:
    """Build a map from a JSON-style spec dict (kind 'linear' for now).

    Offsets given as arguments override the spec values; model-backed
    specs are resolved by the CLI layer before reaching here.
    """
    kind = spec.get("kind", "linear")
    if kind != "linear":
        raise MapError(f"unknown map kind {kind!r}")
    ml = spec.get("mu_left") if mu_left is None else mu_left
    mr = spec.get("mu_right") if mu_right is None else mu_right
    if ml is None or mr is None:
        raise MapError("map spec needs mu_left and mu_right (or explicit offsets)")
    return PiecewiseMap1D(
        LinearBranch(spec["slope_left"]),
        LinearBranch(spec["slope_right"]),
        ml,
        mr,
        spec.get("boundary_rule", "bivalued"),
    )


# ---------------------------------------------------------------------------
# iteration, itineraries, attractor detection
# ---------------------------------------------------------------------------

def _symbol(x: float, step: int, boundary_eps: float) -> str:
    if abs(x) < boundary_eps:
        raise BoundaryCollisionError(x, step)
    return "R" if x > 0.0 else "L"


def itinerary(m: PiecewiseMap1D, x0: float, n: int, boundary_eps: float = BOUNDARY_EPS):
    """First n symbols of the itinerary of x0 plus the n+1 visited states."""
    if n < 1:
        raise MapError("need n >= 1 symbols")
    states = np.empty(n + 1)
    symbols = []
    x = float(x0)
    for k in range(n):
        states[k] = x
        symbols.append(_symbol(x, k, boundary_eps))
        x = m.step(x)
        if abs(x) > DIVERGENCE_BOUND:
            raise DivergenceError(x, k + 1)
    states[n] = x
    return SymbolicWord.from_string("".join(symbols)), states


def apply_word(m: PiecewiseMap1D, word: SymbolicWord, x: float) -> float:
    """Compose the full branches along the word (first symbol applied first).

    Dispatch is by symbol, not by sign, so the composition shadows the
    word even slightly off the orbit.
    """
    for s in word:
        x = m.full_left(x) if s == "L" else m.full_right(x)
    return x


def _burn_in(m: PiecewiseMap1D, x0: float, n: int) -> float:
    params = m.linear_params()
    if params is not None:
        a, b, ml, mr = params
        x = _kernels.pw_linear_iterate(a, b, ml, mr, x0, n)
    else:
        x = x0
        for k in range(n):
            x = m.step(x)
            if abs(x) > DIVERGENCE_BOUND:
                raise DivergenceError(x, k)
    if abs(x) > DIVERGENCE_BOUND or not math.isfinite(x):
        raise DivergenceError(x, n)
    return x


def _window(m: PiecewiseMap1D, x0: float, length: int) -> np.ndarray:
    out = np.empty(length + 1)
    params = m.linear_params()
    if params is not None:
        a, b, ml, mr = params
        bad = _kernels.pw_linear_trajectory(a, b, ml, mr, x0, out)
        if bad >= 0:
            raise DivergenceError(out[bad], bad)
    else:
        x = x0
        out[0] = x
        for k in range(length):
            x = m.step(x)
            out[k + 1] = x
            if abs(x) > DIVERGENCE_BOUND:
                raise DivergenceError(x, k + 1)
    return out


def _refine_cycle(m: PiecewiseMap1D, word: SymbolicWord, x_hat: float, tol: float) -> float:
    """One round of cycle-closure bisection on the word-composed map."""
    def g(x):
        return apply_word(m, word, x) - x

    delta = max(tol, 1e-13)
    cap = 0.9 * abs(x_hat) if x_hat != 0.0 else tol
    a = b = None
    for _ in range(60):
        lo, hi = x_hat - delta, x_hat + delta
        if g(lo) * g(hi) <= 0.0:
            a, b = lo, hi
            break
        delta *= 2.0
        if delta > cap:
            break
    if a is None:
        return x_hat
    ga = g(a)
    for _ in range(200):
        mid = 0.5 * (a + b)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (ga < 0.0) == (gm < 0.0):
            a, ga = mid, gm
        else:
            b = mid
        if b - a < 1e-16 * max(1.0, abs(mid)):
            break
    return 0.5 * (a + b)


def find_attractor(m: PiecewiseMap1D, x0: float, burn_in: int = 10_000,
                   max_period: int = 200, tol: float = 1e-10,
                   boundary_eps: float = BOUNDARY_EPS):
    """Detect the attractor reached from x0 by forward iteration.

    After the burn-in, the least period <= max_period closing a full
    cycle to within tol is accepted, the cycle point is refined by
    bisection on the word-composed map, and an :class:`OrbitRecord` is
    returned.  If no period closes, an :class:`AperiodicReport` carries
    the R-fraction of a length-4096 tail.  Divergence and boundary
    collisions raise.
    """
    x = _burn_in(m, x0, burn_in)
    w = _window(m, x, 2 * max_period)
    if np.any(np.abs(w) < boundary_eps):
        k = int(np.argmax(np.abs(w) < boundary_eps))
        raise BoundaryCollisionError(w[k], burn_in + k)

    period = 0
    for k in range(1, max_period + 1):
        if abs(w[k] - w[0]) < tol and np.all(np.abs(w[k:2 * k + 1] - w[:k + 1]) < tol):
            period = k
            break

    if period == 0:
        tail = _window(m, w[-1], 4096)
        eta_est = float(np.mean(tail > 0.0))
        return AperiodicReport(eta_est, tail.size, float(tail[-1]))

    word = SymbolicWord.from_string(
        "".join(_symbol(w[i], i, boundary_eps) for i in range(period)))
    # canonicalize the cycle to start at the minimal-rotation phase
    k0 = minimal_rotation_index(word)
    word = word.rotate(k0)
    w = w[k0:k0 + period + 1]
    x_star = _refine_cycle(m, word, float(w[0]), tol)

    points = np.empty(period)
    mult = 1.0
    xi = x_star
    for i in range(period):
        points[i] = xi
        sym = _symbol(xi, i, boundary_eps)
        if sym != word.symbol(i):
            # refinement pushed the point across the boundary; keep the raw cycle
            points[i] = w[i]
            xi = w[i]
        mult *= m.derivative(xi)
        xi = m.step(xi)

    return OrbitRecord(
        points=points,
        word=word,
        period=period,
        eta=Rational(word.r_count, period),
        stable=abs(mult) < 1.0,
        multiplier=float(mult),
    )
