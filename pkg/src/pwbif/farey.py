"""Exact rational arithmetic, Farey sequences, neighbor tests and parent decomposition.

All rationals are kept in canonical reduced form with nonnegative
numerator.  Denominators are capped at 2**31 so that the determinant
test ``r*q - p*s`` never overflows 64-bit arithmetic even if the values
end up in fixed-width storage downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

MAX_DEN = 2**31


class FareyDomainError(ValueError):
    """Raised for arguments outside the supported rational domain."""


@total_ordering
@dataclass(frozen=True)
class Rational:
    """Reduced fraction p/q with p >= 0, q >= 1.

    Instances are immutable value types, totally ordered by
    cross-multiplication, and hashable so they can key plateau tables.
    """

    p: int
    q: int = 1

    def __post_init__(self):
        p, q = self.p, self.q
        if q == 0:
            raise FareyDomainError("zero denominator")
        if q < 0:
            p, q = -p, -q
        if p < 0:
            raise FareyDomainError("negative rationals are not supported")
        g = math.gcd(p, q)
        if g > 1:
            p //= g
            q //= g
        if q > MAX_DEN:
            raise FareyDomainError(f"denominator {q} exceeds limit {MAX_DEN}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __lt__(self, other: "Rational") -> bool:
        return self.p * other.q < other.p * self.q

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rational):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __float__(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> "Rational":
        """Parse 'p/q' (or a bare integer) into a reduced Rational."""
        parts = text.strip().split("/")
        if len(parts) == 1:
            return cls(int(parts[0]), 1)
        if len(parts) == 2:
            return cls(int(parts[0]), int(parts[1]))
        raise FareyDomainError(f"cannot parse rational from {text!r}")

    @property
    def in_unit_interval(self) -> bool:
        return self.p <= self.q


@dataclass(frozen=True)
class FareyParents:
    """The ordered pair of Farey parents of a tree node.

    Satisfies left < right, the determinant-1 neighbor identity, and
    mediant(left, right) reproduces the child.
    """

    left: Rational
    right: Rational


def _require_unit(x: Rational, what: str) -> None:
    if not x.in_unit_interval:
        raise FareyDomainError(f"{what} must lie in [0, 1], got {x}")


def farey_sequence(n: int) -> list[Rational]:
    """All reduced fractions in [0,1] with denominator <= n, ascending.

    Uses the classic next-term recurrence, so the whole sequence is
    produced in O(length) without sorting.
    """
    if n < 1:
        raise FareyDomainError(f"order must be >= 1, got {n}")
    seq = [Rational(0, 1)]
    a, b, c, d = 0, 1, 1, n
    while c <= n:
        seq.append(Rational(c, d))
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return seq


def mediant(a: Rational, b: Rational) -> Rational:
    """Farey sum (p+r)/(q+s) of an ordered pair a < b, in reduced form."""
    if not a < b:
        raise FareyDomainError(f"mediant requires a < b, got {a} >= {b}")
    return Rational(a.p + b.p, a.q + b.q)


def is_neighbor_pair(a: Rational, b: Rational) -> bool:
    """True iff a < b are Farey neighbors: b.p*a.q - a.p*b.q == 1."""
    if not a < b:
        raise FareyDomainError(f"neighbor test requires a < b, got {a} >= {b}")
    return b.p * a.q - a.p * b.q == 1


def farey_parents(x: Rational) -> FareyParents:
    """The unique neighbor pair (a, b) with a < x < b and mediant(a, b) == x.

    Solved in O(log q) with a modular inverse rather than walking tree
    levels: the parents' denominators are p^-1 mod q and its complement.
    """
    _require_unit(x, "tree node")
    if x.q == 1:
        raise FareyDomainError(f"{x} is a tree root and has no parents")
    p, q = x.p, x.q
    bq = pow(p, -1, q)          # left parent denominator
    ap = (p * bq - 1) // q      # left parent numerator
    left = Rational(ap, bq)
    right = Rational(p - ap, q - bq)
    return FareyParents(left, right)
