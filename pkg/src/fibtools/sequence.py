"""Exact evaluation of Fibonacci-type sequences and their classical identities.

Indexing is 0-based with ``fib(0) == 0``, ``fib(1) == fib(2) == 1``.  The
1-based presentation ``u_1 = u_2 = 1`` is the same sequence, so no index
translation happens anywhere in this package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from fractions import Fraction

from .errors import FibError, IndexRangeError

BINET_MAX_INDEX = 70


@dataclass(frozen=True)
class GeneralizedSpec:
    """Seeds of ``b_1 = alpha, b_2 = beta, b_n = b_{n-1} + b_{n-2}``."""

    alpha: int
    beta: int


@dataclass(frozen=True)
class RatioSample:
    n: int
    ratio: Decimal
    exact: Fraction


class IdentityId(str, Enum):
    CASSINI = "cassini"
    ADDITION = "addition"
    SQUARE_DIFF = "square_diff"
    SUM_FIRST = "sum_first"
    GROWTH = "growth"
    ELEVEN_B7 = "eleven_b7"


def _check_index(n: int, lo: int = 0) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"index must be an int, got {type(n).__name__}")
    if n < lo:
        raise IndexRangeError(f"index must be >= {lo}, got {n}")


def fib(n: int) -> int:
    """Return ``u_n`` by straightforward iteration of the recurrence."""
    _check_index(n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _fib_pair(n: int) -> tuple[int, int]:
    # (F(n), F(n+1)) by fast doubling, scanning bits of n from the top.
    a, b = 0, 1
    for bit in bin(n)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def fib_fast(n: int) -> int:
    """Return ``u_n`` using the doubling formulas.

    ``F(2k) = F(k) * (2F(k+1) - F(k))`` and ``F(2k+1) = F(k)^2 + F(k+1)^2``
    both fall out of the addition formula with ``m = k`` and ``m = k + 1``.
    The number of big-integer multiplications is proportional to the bit
    length of ``n``.
    """
    _check_index(n)
    return _fib_pair(n)[0]


def fib_naive(n: int) -> int:
    """Doubly recursive reference definition; exponential, capped at 30."""
    _check_index(n)
    if n > 30:
        raise IndexRangeError("naive recursion is limited to n <= 30")
    if n < 2:
        return n
    return fib_naive(n - 1) + fib_naive(n - 2)


def binet_nearest(n: int) -> int:
    """Return ``floor(phi**n / sqrt(5) + 1/2)`` evaluated in binary64.

    Only valid for ``1 <= n <= 70``; beyond that the float rounding error
    exceeds half a unit and the result is wrong, so we refuse.
    """
    _check_index(n)
    if not 1 <= n <= BINET_MAX_INDEX:
        raise IndexRangeError(
            f"binet_nearest supports 1 <= n <= {BINET_MAX_INDEX}, got {n}; "
            "use fib() or fib_fast() for exact values"
        )
    sqrt5 = math.sqrt(5.0)
    phi = (1.0 + sqrt5) / 2.0
    return math.floor(phi**n / sqrt5 + 0.5)


def generalized_term(spec: GeneralizedSpec, n: int) -> int:
    """``b_n`` for the given seeds, via ``alpha*u_{n-2} + beta*u_{n-1}``."""
    _check_index(n, 1)
    if n == 1:
        return spec.alpha
    if n == 2:
        return spec.beta
    f_prev2, f_prev1 = _fib_pair(n - 2)
    return spec.alpha * f_prev2 + spec.beta * f_prev1


def generalized_sum(spec: GeneralizedSpec, n: int) -> int:
    """``b_1 + ... + b_n`` in closed form: ``alpha*u_n + beta*(u_{n+1} - 1)``."""
    _check_index(n, 1)
    f_n, f_n1 = _fib_pair(n)
    return spec.alpha * f_n + spec.beta * (f_n1 - 1)


def sum_first(n: int) -> int:
    """``u_1 + ... + u_n == u_{n+2} - 1``."""
    _check_index(n, 1)
    return fib_fast(n + 2) - 1


def tribonacci(seeds: tuple[int, int, int], n: int) -> int:
    """n-th term (1-based) of the order-3 recurrence started from ``seeds``."""
    _check_index(n, 1)
    if len(seeds) != 3:
        raise FibError("tribonacci needs exactly three seeds")
    a, b, c = seeds
    if n <= 3:
        return seeds[n - 1]
    for _ in range(n - 3):
        a, b, c = b, c, a + b + c
    return c


def _round_ratio(num: int, den: int, digits: int = 6) -> Decimal:
    # Exact integer division scaled to 9 places, then half-up to `digits`.
    scaled = (num * 10**9) // den
    return (Decimal(scaled) / Decimal(10**9)).quantize(
        Decimal(1).scaleb(-digits), rounding=ROUND_HALF_UP
    )


def ratio_table(n_max: int, digits: int = 6) -> list[RatioSample]:
    """Consecutive ratios ``u_n / u_{n-1}`` for ``n = 2..n_max``."""
    _check_index(n_max, 2)
    rows = []
    prev, cur = 1, 1
    for n in range(2, n_max + 1):
        rows.append(RatioSample(n, _round_ratio(cur, prev, digits), Fraction(cur, prev)))
        prev, cur = cur, prev + cur
    return rows


def cassini_value(n: int) -> int:
    """``u_n^2 - u_{n+1} u_{n-1}``, which equals ``(-1)**(n-1)``."""
    _check_index(n, 1)
    f_prev, f_n = _fib_pair(n - 1)
    return f_n * f_n - (f_n + f_prev) * f_prev


_ARITY = {
    IdentityId.CASSINI: 1,
    IdentityId.ADDITION: 2,
    IdentityId.SQUARE_DIFF: 1,
    IdentityId.SUM_FIRST: 1,
    IdentityId.GROWTH: 1,
    IdentityId.ELEVEN_B7: 2,
}


def verify_identity(identity: IdentityId | str, *params: int) -> int:
    """Return left side minus right side of the named identity.

    Zero means the identity holds.  ``growth`` instead returns
    ``u_{5n+2} - 10**n``, which must be positive.  ``eleven_b7`` takes the
    seed pair ``(alpha, beta)`` and returns ``sum(b_1..b_10) - 11*b_7``.
    """
    try:
        ident = IdentityId(identity)
    except ValueError:
        raise FibError(f"unknown identity {identity!r}") from None
    if len(params) != _ARITY[ident]:
        raise FibError(
            f"{ident.value} takes {_ARITY[ident]} parameter(s), got {len(params)}"
        )

    if ident is IdentityId.ELEVEN_B7:
        spec = GeneralizedSpec(*params)
        return generalized_sum(spec, 10) - 11 * generalized_term(spec, 7)

    for p in params:
        _check_index(p, 1)

    if ident is IdentityId.CASSINI:
        (n,) = params
        return cassini_value(n) - (-1) ** (n - 1)
    if ident is IdentityId.ADDITION:
        m, n = params
        if m < 2:
            raise IndexRangeError("addition identity requires m >= 2")
        return fib(m + n) - (fib(m - 1) * fib(n) + fib(m) * fib(n + 1))
    if ident is IdentityId.SQUARE_DIFF:
        (n,) = params
        return fib(n + 2) ** 2 - fib(n) ** 2 - fib(2 * n + 2)
    if ident is IdentityId.SUM_FIRST:
        (n,) = params
        return sum(fib(i) for i in range(1, n + 1)) - sum_first(n)
    # growth
    (n,) = params
    return fib_fast(5 * n + 2) - 10**n
