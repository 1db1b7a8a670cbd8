"""Divisibility structure of Fibonacci numbers.

Covers the gcd theorem, Euclid step counting on consecutive terms, the two
prime-index divisibility theorems, and factorization of small terms.
"""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from enum import Enum

from .errors import IndexRangeError, PreconditionError
from .sequence import fib, fib_fast

FACTOR_MAX_INDEX = 100
PRIMITIVE_MAX_INDEX = 50
TRIAL_LIMIT = 10**6

# Deterministic for all n < 3.3e24 (covers the 64-bit range and more).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@functools.cache
def _primes() -> tuple[int, ...]:
    return tuple(_small_primes(TRIAL_LIMIT))


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    # Brent's variant; returns a nontrivial factor of composite odd n.
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_integer(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{prime: exponent}``."""
    if n < 1:
        raise PreconditionError("can only factor positive integers")
    factors: dict[int, int] = {}
    for p in _primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    rng = random.Random(0x5EED)
    while stack:
        m = stack.pop()
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(factors.items()))


@dataclass(frozen=True)
class Factorization:
    subject: int
    factors: tuple[tuple[int, int], ...]

    def product(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.factors)

    def render(self, n: int | None = None, superscript: bool = False) -> str:
        """Table line ``n : value = p^e x q ...``; units and primes are listed bare.

        ``superscript=True`` writes exponents as ``2⁴`` instead of ``2^4``.
        """
        head = f"{self.subject}" if n is None else f"{n} : {self.subject}"
        if len(self.factors) == 0 or self.factors == ((self.subject, 1),):
            return head
        parts = []
        for p, e in self.factors:
            if e == 1:
                parts.append(str(p))
            elif superscript:
                parts.append(f"{p}{str(e).translate(_SUPERSCRIPT)}")
            else:
                parts.append(f"{p}^{e}")
        return f"{head} = {' x '.join(parts)}"


@dataclass(frozen=True)
class EuclidTrace:
    steps: tuple[tuple[int, int, int, int], ...]

    @property
    def count(self) -> int:
        return len(self.steps)

    @property
    def gcd(self) -> int:
        return self.steps[-1][1]


class Side(str, Enum):
    P_MINUS_1 = "p_minus_1"
    P_PLUS_1 = "p_plus_1"


@dataclass(frozen=True)
class Theorem6Witness:
    p: int
    side: Side
    divided_value: int

    @property
    def index(self) -> int:
        return self.p - 1 if self.side is Side.P_MINUS_1 else self.p + 1


def _require_positive_index(*ns: int) -> None:
    for n in ns:
        if not isinstance(n, int) or n < 1:
            raise IndexRangeError(f"index must be a positive integer, got {n!r}")


def fib_gcd(m: int, n: int) -> tuple[int, int]:
    """``gcd(u_m, u_n) == u_gcd(m, n)``; returns ``(gcd(m, n), u_gcd)``."""
    _require_positive_index(m, n)
    d = math.gcd(m, n)
    return d, fib_fast(d)


def consecutive_coprime(n: int) -> bool:
    _require_positive_index(n)
    return math.gcd(fib(n), fib(n + 1)) == 1


def divides_iff(m: int, n: int) -> tuple[bool, bool]:
    """Return ``(u_m | u_n, m | n)``; the two always agree for ``n >= m >= 3``."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 3:
        raise PreconditionError("divides_iff requires m >= 3 (u_1 = u_2 = 1 divide everything)")
    if n < m:
        raise PreconditionError(f"divides_iff requires n >= m, got m={m}, n={n}")
    return fib_fast(n) % fib_fast(m) == 0, n % m == 0


def euclid_trace(a: int, b: int) -> EuclidTrace:
    """Rows ``(dividend, divisor, quotient, remainder)`` of Euclid's algorithm."""
    if b < 1:
        raise PreconditionError("divisor must be >= 1")
    if a < b:
        raise PreconditionError(f"euclid_trace requires a >= b, got a={a}, b={b}")
    steps = []
    while True:
        q, r = divmod(a, b)
        steps.append((a, b, q, r))
        if r == 0:
            return EuclidTrace(tuple(steps))
        a, b = b, r


def lame_pair(n: int) -> tuple[int, int, int]:
    """``(u_{n+2}, u_{n+1}, steps)``; Euclid needs exactly ``n`` divisions."""
    _require_positive_index(n)
    a, b = fib_fast(n + 2), fib_fast(n + 1)
    return a, b, euclid_trace(a, b).count


def theorem6_witness(p: int) -> Theorem6Witness:
    """For a prime ``p > 5``, exactly one of ``u_{p-1}``, ``u_{p+1}`` is divisible by p."""
    if p <= 5:
        raise PreconditionError(f"p must be a prime > 5, got {p}")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    lo, hi = fib_fast(p - 1), fib_fast(p + 1)
    lo_div, hi_div = lo % p == 0, hi % p == 0
    if lo_div == hi_div:
        raise AssertionError(f"divisibility dichotomy failed for p={p}")
    if lo_div:
        return Theorem6Witness(p, Side.P_MINUS_1, lo)
    return Theorem6Witness(p, Side.P_PLUS_1, hi)


def theorem7_check(p: int) -> bool:
    """If ``p >= 7`` is prime, ``p = 2 or 4 (mod 5)`` and ``2p - 1`` is prime, then ``2p - 1 | u_p``.

    Raises PreconditionError naming the unmet hypothesis.
    """
    if p < 7 or not is_prime(p):
        raise PreconditionError(f"p must be a prime >= 7, got {p}")
    if p % 5 not in (2, 4):
        raise PreconditionError(f"residue class: p = {p % 5} (mod 5), need 2 or 4")
    q = 2 * p - 1
    if not is_prime(q):
        raise PreconditionError(f"compositeness: 2p - 1 = {q} is not prime")
    return fib_fast(p) % q == 0


def theorem7_qualifies(p: int) -> bool:
    return p >= 7 and is_prime(p) and p % 5 in (2, 4) and is_prime(2 * p - 1)


def factorize_fib(n: int) -> Factorization:
    if not isinstance(n, int) or n < 0:
        raise IndexRangeError(f"index must be >= 0, got {n!r}")
    if n > FACTOR_MAX_INDEX:
        raise IndexRangeError(f"factorize_fib supports n <= {FACTOR_MAX_INDEX}, got {n}")
    value = fib_fast(n)
    if value == 0:
        return Factorization(0, ())
    return Factorization(value, tuple(factor_integer(value).items()))


def primitive_divisors(n: int) -> frozenset[int]:
    """Primes dividing ``u_n`` that divide no earlier term."""
    _require_positive_index(n)
    if n > PRIMITIVE_MAX_INDEX:
        raise IndexRangeError(f"primitive_divisors supports n <= {PRIMITIVE_MAX_INDEX}, got {n}")
    seen: set[int] = set()
    for k in range(1, n):
        seen |= factorize_fib(k).primes
    return frozenset(factorize_fib(n).primes - seen)
