"""Algebra of periodic {L,R} sequences.

A :class:`SymbolicWord` is one period of an itinerary, stored as a packed
bit vector (R = 1, bit i = symbol at position i).  Words compare through
their infinite periodic extensions under L < R.  On top of the order we
build minimal/maximal rotations (Booth's algorithm), the eta-number,
exhaustive enumeration of W(p, q), the p,q-ordering test, maximin/minimax
tests, and the Farey tree of words via parent concatenation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .farey import Rational, farey_parents

#: exhaustive-enumeration ceiling for maximin/minimax and W(p,q) listings
ENUMERATION_MAX_Q = 24


class WordError(ValueError):
    """Raised for words outside an operation's domain."""


class CapacityError(WordError):
    """Raised when an exhaustive enumeration would exceed the budget."""


@dataclass(frozen=True)
class SymbolicWord:
    """Finite block over {L, R}; represents the periodic sequence block^inf.

    Equality is literal, not up to rotation; use :func:`minimal_rotation`
    to canonicalize a rotation class.
    """

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise WordError("empty word")
        if self.bits < 0 or self.bits >> self.n:
            raise WordError("bit vector wider than word length")

    @classmethod
    def from_string(cls, text: str) -> "SymbolicWord":
        text = text.strip()
        if not text or set(text) - {"L", "R"}:
            raise WordError(f"word must be a nonempty string over L/R, got {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "R":
                bits |= 1 << i
        return cls(bits, len(text))

    @classmethod
    def from_symbols(cls, symbols) -> "SymbolicWord":
        return cls.from_string("".join(symbols))

    def symbol(self, i: int) -> str:
        """Symbol at position i of the infinite extension."""
        return "R" if (self.bits >> (i % self.n)) & 1 else "L"

    def __str__(self) -> str:
        return "".join(self.symbol(i) for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return (self.symbol(i) for i in range(self.n))

    @property
    def r_count(self) -> int:
        return self.bits.bit_count()

    @property
    def l_count(self) -> int:
        return self.n - self.r_count

    def concat(self, other: "SymbolicWord") -> "SymbolicWord":
        return SymbolicWord(self.bits | (other.bits << self.n), self.n + other.n)

    def __add__(self, other: "SymbolicWord") -> "SymbolicWord":
        return self.concat(other)

    def rotate(self, k: int) -> "SymbolicWord":
        """Block starting k positions later (the k-fold shift)."""
        k %= self.n
        if k == 0:
            return self
        low = self.bits >> k
        high = (self.bits & ((1 << k) - 1)) << (self.n - k)
        return SymbolicWord(low | high, self.n)

    def is_primitive(self) -> bool:
        """True iff the block is not a repetition of a shorter block."""
        for d in range(1, self.n):
            if self.n % d == 0 and self.rotate(d) == self:
                return False
        return True


def compare_words(a: SymbolicWord, b: SymbolicWord) -> int:
    """Lexicographic order of the infinite extensions a^inf vs b^inf.

    Returns -1, 0 or 1.  At most lcm(|a|, |b|) positions are examined
    before the extensions are provably equal.
    """
    horizon = math.lcm(a.n, b.n)
    for j in range(horizon):
        sa = (a.bits >> (j % a.n)) & 1
        sb = (b.bits >> (j % b.n)) & 1
        if sa != sb:
            return -1 if sa < sb else 1
    return 0


def shift(w: SymbolicWord, k: int = 1) -> SymbolicWord:
    """k-fold shift: the first symbol moves to the last position, k times."""
    if k < 0:
        raise WordError("shift count must be >= 0")
    return w.rotate(k)


def _booth_least(seq: list[int]) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm)."""
    n = len(seq)
    s = seq + seq
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def _bit_list(w: SymbolicWord) -> list[int]:
    return [(w.bits >> i) & 1 for i in range(w.n)]


def minimal_rotation_index(w: SymbolicWord) -> int:
    """Offset k such that w.rotate(k) is the minimal rotation."""
    return _booth_least(_bit_list(w))


def minimal_rotation(w: SymbolicWord) -> SymbolicWord:
    """The rotation of w whose infinite extension is smallest."""
    return w.rotate(minimal_rotation_index(w))


def maximal_rotation(w: SymbolicWord) -> SymbolicWord:
    """The rotation of w whose infinite extension is largest."""
    return w.rotate(_booth_least([1 - b for b in _bit_list(w)]))


def eta_number(w: SymbolicWord) -> Rational:
    """(count of R) / length, reduced."""
    return Rational(w.r_count, w.n)


def enumerate_wpq(p: int, q: int, up_to_rotation: bool = False) -> list[SymbolicWord]:
    """All length-q blocks with exactly p R symbols.

    With ``up_to_rotation`` the minimal representative of each rotation
    class is returned instead (sorted ascending).
    """
    if q < 1 or p < 0 or p > q:
        raise WordError(f"need 0 <= p <= q with q >= 1, got p={p}, q={q}")
    if q > ENUMERATION_MAX_Q:
        raise CapacityError(f"enumeration limited to q <= {ENUMERATION_MAX_Q}, got q={q}")
    words = []
    for positions in combinations(range(q), p):
        bits = 0
        for i in positions:
            bits |= 1 << i
        words.append(SymbolicWord(bits, q))
    if not up_to_rotation:
        return words
    classes = {minimal_rotation(w) for w in words}
    return sorted(classes, key=_bit_list)


def _check_primitive_coprime(w: SymbolicWord, op: str, require_coprime: bool = True) -> tuple[int, int]:
    if not w.is_primitive():
        raise WordError(f"{op} requires a primitive word, got {w}")
    p, q = w.r_count, w.n
    if require_coprime and math.gcd(p, q) != 1:
        raise WordError(f"{op} requires coprime (p, q), got ({p}, {q})")
    return p, q


def is_pq_ordered(w: SymbolicWord) -> tuple[bool, int | None]:
    """Whether sorting the shifts of w lexicographically steps by a constant k.

    Returns (flag, k).  The q shifts of a primitive block are pairwise
    distinct so the sort is strict; w is p,q-ordered when the sorted
    shift offsets form an arithmetic progression mod q.
    """
    _check_primitive_coprime(w, "p,q-ordering")
    q = w.n
    if q == 1:
        return True, 0
    order = sorted(range(q), key=lambda i: _bit_list(w.rotate(i)))
    k = (order[1] - order[0]) % q
    for j in range(1, q):
        if (order[j] - order[j - 1]) % q != k:
            return False, None
    return True, k


@lru_cache(maxsize=None)
def _maximin_class(p: int, q: int) -> SymbolicWord:
    """Minimal representative of the unique maximin rotation class."""
    classes = enumerate_wpq(p, q, up_to_rotation=True)
    return classes[-1]


@lru_cache(maxsize=None)
def _minimax_class(p: int, q: int) -> SymbolicWord:
    """Smallest maximal rotation over all classes of W(p, q)."""
    maxima = [maximal_rotation(w) for w in enumerate_wpq(p, q, up_to_rotation=True)]
    return min(maxima, key=_bit_list)


def is_maximin(w: SymbolicWord) -> bool:
    """True iff min-rotation(w) is the largest minimal rotation over W(p,q)."""
    p, q = _check_primitive_coprime(w, "maximin test")
    return minimal_rotation(w) == _maximin_class(p, q)


def is_minimax(w: SymbolicWord) -> bool:
    """True iff max-rotation(w) is the smallest maximal rotation over W(p,q)."""
    p, q = _check_primitive_coprime(w, "minimax test")
    return maximal_rotation(w) == _minimax_class(p, q)


@lru_cache(maxsize=None)
def _farey_word_cached(p: int, q: int) -> SymbolicWord:
    if (p, q) == (0, 1):
        return SymbolicWord.from_string("L")
    if (p, q) == (1, 1):
        return SymbolicWord.from_string("R")
    parents = farey_parents(Rational(p, q))
    left = _farey_word_cached(parents.left.p, parents.left.q)
    right = _farey_word_cached(parents.right.p, parents.right.q)
    word = left + right
    # concatenation of minimal parents must already be minimal; a failure
    # here would mean the tree construction itself broke
    if word != minimal_rotation(word):
        raise WordError(f"tree word for {p}/{q} is not minimal: {word}")
    return word


def farey_word(x: Rational) -> SymbolicWord:
    """The word at node x of the Farey tree of symbolic sequences.

    farey_word(0/1) = L, farey_word(1/1) = R, and every interior node is
    the concatenation of its parents' words (left parent first).
    """
    if not x.in_unit_interval:
        raise WordError(f"tree node must lie in [0, 1], got {x}")
    return _farey_word_cached(x.p, x.q)
