"""Exact arithmetic kernel for (alpha, beta)-transformations.

The map under study sends x to beta*x + alpha (mod 1) on [0, 1). All
scalars are exact rationals: digit decisions sit on interval boundaries
and floats would misclassify them. The two boundary expansions

* ``a`` -- the digit sequence of the orbit of 0 (lower orbit), and
* ``b`` -- the digit limit from the left at 1 (upper orbit),

parameterize everything else in the package: the language, the graph,
the word surgery and the pressure machinery all consult them through
the lazily-extended :class:`Boundary` cache.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DomainError

Rational = Fraction
Digit = int
Word = tuple  # tuple of small ints; the universal currency of the package

ZERO = Fraction(0)
ONE = Fraction(1)

# Digits are meant to be tiny; reject absurd alphabets up front.
MAX_LAMBDA = 2**6 - 1


@dataclass(frozen=True)
class Params:
    """Validated parameter pair (alpha, beta) with derived alphabet data.

    Attributes
    ----------
    alpha, beta : Fraction
        Exact parameters with 0 <= alpha < 1 < beta.
    lam : int
        Largest digit: ceil(alpha + beta) - 1. The alphabet is
        {0, ..., lam}.
    main_mode : bool
        True when beta > 3 and alpha*beta = 1, the regime in which the
        word surgery and the pressure estimates are defined.

    Examples
    --------
    >>> p = Params.make("2/7", "7/2")
    >>> p.lam, p.main_mode
    (3, True)
    """

    alpha: Fraction
    beta: Fraction
    lam: int = field(init=False)
    main_mode: bool = field(init=False)

    def __post_init__(self) -> None:
        alpha, beta = Fraction(self.alpha), Fraction(self.beta)
        if not (0 <= alpha < 1):
            raise DomainError(f"alpha must lie in [0, 1), got {alpha}")
        if not (beta > 1):
            raise DomainError(f"beta must exceed 1, got {beta}")
        lam = math.ceil(alpha + beta) - 1
        if lam > MAX_LAMBDA:
            raise DomainError(f"alphabet size {lam + 1} exceeds the supported maximum")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "main_mode", beta > 3 and alpha * beta == 1)

    @classmethod
    def make(cls, alpha: str | int | Fraction, beta: str | int | Fraction) -> "Params":
        """Build Params from "p/q" strings, ints or Fractions."""
        return cls(parse_rational(alpha), parse_rational(beta))

    @property
    def alphabet(self) -> range:
        return range(self.lam + 1)


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse an exact rational given as "p/q", an integer string, or a number.

    Decimal input is rejected: "3.5" would silently lose exactness had it
    gone through float, so the caller must write "7/2".
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational {text!r}: {exc}") from None
    try:
        return Fraction(int(text))
    except ValueError:
        raise DomainError(
            f"bad rational {text!r}: use p/q or an integer (decimals are not accepted)"
        ) from None


def format_rational(x: Fraction) -> str:
    """Serialize num/den with an explicit denominator, e.g. Fraction(1) -> "1/1"."""
    return f"{x.numerator}/{x.denominator}"


def lower_step(p: Params, x: Rational) -> tuple[Digit, Rational]:
    """One step of the lower orbit: x in [0,1) -> (digit, next point).

    The digit is floor(beta*x + alpha) and the next point is the fractional
    part, again in [0, 1).

    >>> p = Params.make("2/7", "7/2")
    >>> lower_step(p, Fraction(2, 7))
    (1, Fraction(2, 7))
    """
    if not (0 <= x < 1):
        raise DomainError(f"lower orbit point must lie in [0, 1), got {x}")
    t = p.beta * x + p.alpha
    d = math.floor(t)
    return d, t - d


def upper_step(p: Params, x: Rational) -> tuple[Digit, Rational]:
    """One step of the upper orbit: x in (0,1] -> (digit, next point).

    Uses the left-limit convention digit = ceil(beta*x + alpha) - 1, which
    keeps the orbit inside (0, 1]; iterating from x = 1 produces the digit
    sequence b.

    >>> p = Params.make("2/7", "7/2")
    >>> upper_step(p, Fraction(1))
    (3, Fraction(11, 14))
    """
    if not (0 < x <= 1):
        raise DomainError(f"upper orbit point must lie in (0, 1], got {x}")
    t = p.beta * x + p.alpha
    d = math.ceil(t) - 1
    return d, t - d


class Boundary:
    """Lazily extended caches of the two boundary expansions.

    ``a_at(k)`` / ``b_at(k)`` use 1-based indices to mirror the usual
    subscript notation a_1 a_2 ... . Orbit points are memoized alongside
    digits, so extending by one digit is O(1); extension happens under a
    lock, while reads of already generated prefixes are safe from any
    thread.
    """

    def __init__(self, p: Params) -> None:
        self.params = p
        self._lock = threading.Lock()
        # _x_orbit[i] is the point from which _x_digits[i] is produced.
        self._a_digits: list[Digit] = []
        self._a_orbit: list[Rational] = [ZERO]
        self._b_digits: list[Digit] = []
        self._b_orbit: list[Rational] = [ONE]

    def _extend_a(self, n: int) -> None:
        with self._lock:
            while len(self._a_digits) < n:
                d, nxt = lower_step(self.params, self._a_orbit[-1])
                self._a_digits.append(d)
                self._a_orbit.append(nxt)

    def _extend_b(self, n: int) -> None:
        with self._lock:
            while len(self._b_digits) < n:
                d, nxt = upper_step(self.params, self._b_orbit[-1])
                self._b_digits.append(d)
                self._b_orbit.append(nxt)

    def a_prefix(self, n: int) -> Word:
        self._extend_a(n)
        return tuple(self._a_digits[:n])

    def b_prefix(self, n: int) -> Word:
        self._extend_b(n)
        return tuple(self._b_digits[:n])

    def a_at(self, k: int) -> Digit:
        """k-th digit of a, k >= 1."""
        self._extend_a(k)
        return self._a_digits[k - 1]

    def b_at(self, k: int) -> Digit:
        """k-th digit of b, k >= 1."""
        self._extend_b(k)
        return self._b_digits[k - 1]

    def a_orbit_at(self, k: int) -> Rational:
        """Orbit point from which the (k+1)-th digit of a is produced (k >= 0)."""
        self._extend_a(k)
        return self._a_orbit[k]

    def b_orbit_at(self, k: int) -> Rational:
        self._extend_b(k)
        return self._b_orbit[k]


_BOUNDARIES: dict[tuple[Fraction, Fraction], Boundary] = {}
_BOUNDARIES_LOCK = threading.Lock()


def boundary(p: Params) -> Boundary:
    """Shared Boundary cache for these parameters."""
    key = (p.alpha, p.beta)
    with _BOUNDARIES_LOCK:
        cache = _BOUNDARIES.get(key)
        if cache is None:
            cache = _BOUNDARIES[key] = Boundary(p)
        return cache


def expansion_of_zero(p: Params, n: int) -> Word:
    """First n digits of a, by iterating lower_step from 0.

    >>> expansion_of_zero(Params.make("2/7", "7/2"), 5)
    (0, 1, 1, 1, 1)
    """
    if n < 0:
        raise DomainError("digit count must be nonnegative")
    return boundary(p).a_prefix(n)


def expansion_of_one(p: Params, n: int) -> Word:
    """First n digits of b, by iterating upper_step from 1.

    >>> expansion_of_one(Params.make("2/7", "7/2"), 10)
    (3, 3, 0, 1, 2, 3, 0, 3, 0, 2)
    """
    if n < 0:
        raise DomainError("digit count must be nonnegative")
    return boundary(p).b_prefix(n)


def itinerary(p: Params, x: Rational, n: int) -> Word:
    """Length-n itinerary of x in [0, 1) under the lower orbit.

    The digit at each step is the index k of the interval
    J_k = [(k - alpha)/beta, (k + 1 - alpha)/beta) containing the current
    point, which is exactly floor(beta*x + alpha).
    """
    if n < 0:
        raise DomainError("digit count must be nonnegative")
    if not (0 <= x < 1):
        raise DomainError(f"itinerary start must lie in [0, 1), got {x}")
    digits: list[Digit] = []
    for _ in range(n):
        d, x = lower_step(p, x)
        digits.append(d)
    return tuple(digits)


def orbit_points(p: Params, which: str, n: int, x: Rational | None = None) -> list[Rational]:
    """Orbit points paired with the first n digits of an expansion.

    ``which`` is "zero", "one" or "point" (the latter requires ``x``).
    Entry i is the point from which digit i is produced.
    """
    if n < 0:
        raise DomainError("digit count must be nonnegative")
    bd = boundary(p)
    if which == "zero":
        return [bd.a_orbit_at(k) for k in range(n)]
    if which == "one":
        return [bd.b_orbit_at(k) for k in range(n)]
    if which == "point":
        if x is None:
            raise DomainError("an explicit start point is required")
        pts = []
        for _ in range(n):
            pts.append(x)
            _, x = lower_step(p, x)
        return pts
    raise DomainError(f"unknown expansion selector {which!r}")


def partial_sum(p: Params, digits: Iterable[Digit]) -> Rational:
    """Reconstruct sum_m (digit_m - alpha) / beta^m from a digit prefix.

    The full series converges to the expanded point; the truncation error
    is bounded by the geometric tail beta^-n * (1 + alpha).
    """
    acc = ZERO
    power = ONE
    for d in digits:
        power /= p.beta
        acc += (d - p.alpha) * power
    return acc
