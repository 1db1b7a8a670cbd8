"""Zeckendorf representation and the Fibonacci universal code built on it.

Indices follow the package-wide convention (``fib(2) == 1``); the smallest
usable index is 2 so that the value 1 has a single slot.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import PreconditionError

# _FIBS[k] == fib(k + 2); grown on demand under _GROW, append-only.
_FIBS: list[int] = [1, 2]
_GROW = threading.Lock()


def _extend(done) -> None:
    with _GROW:
        while not done():
            _FIBS.append(_FIBS[-1] + _FIBS[-2])


def _fib_at(i: int) -> int:
    if len(_FIBS) <= i - 2:
        _extend(lambda: len(_FIBS) > i - 2)
    return _FIBS[i - 2]


def _top_offset(n: int) -> int:
    # Offset of the largest Fibonacci number <= n.
    if _FIBS[-1] <= n:
        _extend(lambda: _FIBS[-1] > n)
    lo, hi = 0, len(_FIBS) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _FIBS[mid] <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class ZeckRepr:
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        _validate(self.indices)

    @property
    def value(self) -> int:
        return sum(_fib_at(i) for i in self.indices)

    def render(self) -> str:
        """``u4 + u7 + u9 = 3 + 13 + 34``"""
        terms = " + ".join(f"u{i}" for i in self.indices)
        values = " + ".join(str(_fib_at(i)) for i in self.indices)
        return f"{terms} = {values}"


def _validate(indices: tuple[int, ...]) -> None:
    if not indices:
        raise PreconditionError("empty representation (zero is not encodable)")
    prev = None
    for i in indices:
        if not isinstance(i, int) or i < 2:
            raise PreconditionError(f"index {i!r} below the floor of 2")
        if prev is not None:
            if i == prev:
                raise PreconditionError(f"duplicate index {i}")
            if i < prev:
                raise PreconditionError("indices must be strictly increasing")
            if i == prev + 1:
                raise PreconditionError(f"consecutive indices {prev}, {i}")
        prev = i


def zeck_encode(n: int) -> ZeckRepr:
    """Greedy decomposition: repeatedly take the largest Fibonacci number <= n."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"Zeckendorf encoding needs n >= 1, got {n!r}")
    picked = []
    offset = _top_offset(n)
    while n:
        if _FIBS[offset] <= n:
            n -= _FIBS[offset]
            picked.append(offset + 2)
            offset -= 2
        else:
            offset -= 1
    return ZeckRepr(tuple(reversed(picked)))


def zeck_decode(r: ZeckRepr | tuple[int, ...] | list[int]) -> int:
    if not isinstance(r, ZeckRepr):
        r = ZeckRepr(tuple(r))
    return r.value


def fib_code(n: int) -> str:
    """Fibonacci codeword of ``n``: bit ``i - 2`` set per index ``i``, then a final ``1``.

    Least-significant (index 2) bit comes first, so every codeword ends in ``11``.
    """
    indices = zeck_encode(n).indices
    bits = ["0"] * (indices[-1] - 1)
    for i in indices:
        bits[i - 2] = "1"
    return "".join(bits) + "1"


def fib_code_decode(bits: str) -> int:
    if set(bits) - {"0", "1"}:
        raise PreconditionError(f"codeword contains non-binary characters: {bits!r}")
    if not bits.endswith("11"):
        raise PreconditionError(f"codeword {bits!r} lacks the '11' terminator")
    body = bits[:-1]
    if "11" in body:
        raise PreconditionError(f"codeword {bits!r} has an interior '11'")
    return sum(_fib_at(pos + 2) for pos, b in enumerate(body) if b == "1")


def fib_code_stream(bits: str) -> list[int]:
    """Split a concatenation of codewords and decode each one."""
    out, start, i = [], 0, 0
    while i < len(bits):
        if bits[i] == "1" and i + 1 < len(bits) and bits[i + 1] == "1":
            out.append(fib_code_decode(bits[start : i + 2]))
            start = i = i + 2
        else:
            i += 1
    if start != len(bits):
        raise PreconditionError("trailing bits without a terminator")
    return out
