"""Exact rational statistical angles and the integer machinery around them.

Reduced fractions, the Thomae map, Farey sequences (full and windowed), best
rational approximation of floating inputs, and prime generation. Everything is
exact integer/rational arithmetic; floats enter only through the explicit
approximation and conversion helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import DomainError
from .numerics import TWO_PI

__all__ = [
    "ReducedFraction",
    "StatAngle",
    "reduce_fraction",
    "thomae",
    "farey_sequence",
    "farey_interval",
    "farey_bracket",
    "farey_successor",
    "approximate_rational",
    "primes_up_to",
    "nth_prime",
]

# Canonical lowest-terms rational with positive denominator; stdlib Fraction
# already guarantees every invariant we need (gcd(|num|, den) = 1, den >= 1,
# zero as 0/1, value-based ordering and hashing).
ReducedFraction = Fraction


def reduce_fraction(p: int, q: int) -> Fraction:
    """Canonical lowest-terms fraction p/q with positive denominator.

    Parameters
    ----------
    p : int
        Numerator, any sign.
    q : int
        Denominator, must be nonzero; its sign is absorbed into the numerator.

    Raises
    ------
    DomainError
        If ``q == 0``.
    """
    if q == 0:
        raise DomainError("denominator zero")
    return Fraction(p, q)


def thomae(x: Fraction | int) -> Fraction:
    """Thomae map on exact rationals: p/q in lowest terms maps to 1/q.

    Defined on exact rationals only; an irrational argument is not
    representable here and is modelled elsewhere as the q -> infinity limit
    along rational approximants.
    """
    return Fraction(1, Fraction(x).denominator)


def farey_bracket(x: Fraction, order: int) -> tuple[Fraction, Fraction]:
    """Neighbours (u, v) of ``x`` among order-n Farey fractions, u <= x <= v.

    ``u == v == x`` exactly when ``x`` itself has denominator <= order.
    Uses a batched Stern-Brocot descent, so the cost is logarithmic in the
    denominators rather than linear in ``order``.
    """
    if order < 1:
        raise DomainError("Farey order must be >= 1")
    if not 0 <= x <= 1:
        raise DomainError("farey_bracket expects x in [0, 1]")
    if x.denominator <= order:
        return x, x
    p, q = x.numerator, x.denominator
    a, b, c, d = 0, 1, 1, 1
    while b + d <= order:
        # x lies strictly between a/b and c/d; advance the side whose mediant
        # chain stays on x's side, as many steps as the order cap allows.
        if p * (b + d) >= (a + c) * q:
            k = min((p * b - a * q) // (c * q - p * d), (order - b) // d)
            a, b = a + k * c, b + k * d
        else:
            k = min((c * q - p * d) // (p * b - a * q), (order - d) // b)
            c, d = c + k * a, d + k * b
    return Fraction(a, b), Fraction(c, d)


def farey_successor(f: Fraction, order: int) -> Fraction | None:
    """Next fraction after ``f`` in the order-n Farey sequence, None past 1/1."""
    if order < 1:
        raise DomainError("Farey order must be >= 1")
    if f >= 1:
        return None
    h, k = f.numerator, f.denominator
    if k > order:
        raise DomainError("fraction does not belong to this Farey sequence")
    # Right neighbour h'/k' satisfies h' k - h k' = 1 with order - k < k' <= order.
    k0 = (-pow(h, -1, k)) % k if k > 1 else 0
    kp = k0 + ((order - k0) // k) * k
    hp = (1 + h * kp) // k
    return Fraction(hp, kp)


def farey_interval(order: int, lo: Fraction | int | str,
                   hi: Fraction | int | str) -> Iterator[Fraction]:
    """Iterate order-n Farey fractions inside [lo, hi], ascending.

    The window must satisfy 0 <= lo < hi <= 1; a window containing no
    fraction yields nothing (not an error). Enumeration starts from the
    Stern-Brocot bracket of ``lo`` and runs the standard next-term
    recurrence, so narrow windows never materialize the whole sequence.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not (0 <= lo < hi <= 1):
        raise DomainError("window must satisfy 0 <= lo < hi <= 1")
    u, v = farey_bracket(lo, order)
    cur = v  # smallest order-n fraction >= lo
    if cur > hi:
        return
    yield cur
    nxt = farey_successor(cur, order)
    if nxt is None or nxt > hi:
        return
    yield nxt
    a, b, c, d = cur.numerator, cur.denominator, nxt.numerator, nxt.denominator
    while True:
        t = (order + b) // d
        a, b, c, d = c, d, t * c - a, t * d - b
        if c > d * hi:
            return
        yield Fraction(c, d)


def farey_sequence(order: int) -> list[Fraction]:
    """All irreducible fractions p/q with q <= order in [0, 1], ascending."""
    return list(farey_interval(order, Fraction(0), Fraction(1)))


def approximate_rational(x: float, q_max: int) -> Fraction:
    """Best rational approximation to ``x`` with denominator <= q_max.

    Walks the continued-fraction convergents of the exact binary value of
    ``x`` and compares the final convergent against the best admissible
    semiconvergent. Ties are broken toward the smaller denominator, then
    toward the smaller value.

    Raises
    ------
    DomainError
        For non-finite ``x`` or ``q_max < 1``.
    """
    if not math.isfinite(x):
        raise DomainError("cannot approximate a non-finite value")
    if q_max < 1:
        raise DomainError("q_max must be >= 1")
    target = Fraction(x)
    if target.denominator <= q_max:
        return target
    p0, q0, p1, q1 = 0, 1, 1, 0
    n, d = target.numerator, target.denominator
    while True:
        a = n // d
        if q0 + a * q1 > q_max:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q0 + a * q1
        n, d = d, n - a * d
    t = (q_max - q0) // q1
    semi = Fraction(p0 + t * p1, q0 + t * q1)
    conv = Fraction(p1, q1)
    return min((conv, semi), key=lambda f: (abs(target - f), f.denominator, f))


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending (Eratosthenes sieve); requires n >= 2."""
    if n < 2:
        raise DomainError("primes_up_to requires n >= 2")
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def nth_prime(index: int) -> int:
    """The index-th prime, 1-based: nth_prime(1) == 2."""
    if index < 1:
        raise DomainError("prime index is 1-based and must be >= 1")
    if index < 6:
        return [2, 3, 5, 7, 11][index - 1]
    # Rosser-style upper bound, then sieve once.
    bound = int(index * (math.log(index) + math.log(math.log(index)))) + 10
    primes = primes_up_to(bound)
    return primes[index - 1]


@dataclass(frozen=True)
class StatAngle:
    """Statistical rotation angle chi, stored as exact turns chi / (2 pi).

    Turns are kept exactly as given, not reduced modulo a period: bosonic
    phases are periodic with period 1 in turns while fermionic phases
    (carrying the half-integer offset) have period 2, so each consumer picks
    its own canonical representative via :meth:`bosonic` or :meth:`fermionic`.
    """

    turns: Fraction

    @property
    def chi_radians(self) -> float:
        return TWO_PI * float(self.turns)

    @property
    def denominator(self) -> int:
        return self.turns.denominator

    def bosonic(self) -> "StatAngle":
        """Canonical representative with turns reduced modulo 1."""
        return StatAngle(self.turns % 1)

    def fermionic(self) -> "StatAngle":
        """Canonical representative with turns reduced modulo 2."""
        return StatAngle(self.turns % 2)

    @classmethod
    def from_fraction(cls, p: int, q: int) -> "StatAngle":
        return cls(reduce_fraction(p, q))

    @classmethod
    def from_radians(cls, chi: float, q_max: int = 10 ** 6) -> "StatAngle":
        return cls(approximate_rational(chi / TWO_PI, q_max))

    @classmethod
    def parse(cls, text: str, q_max: int = 10 ** 6) -> "StatAngle":
        """Parse 'p/q' turn strings exactly, or decimal turns via rational approximation."""
        s = text.strip()
        if "/" in s:
            num, _, den = s.partition("/")
            return cls(reduce_fraction(int(num), int(den)))
        return cls(approximate_rational(float(s), q_max))
