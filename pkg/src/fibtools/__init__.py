"""Exact Fibonacci arithmetic, golden-ratio geometry and Fibonacci market tools."""
from .errors import FibError, IndexRangeError, PreconditionError
from .sequence import (
    GeneralizedSpec,
    IdentityId,
    binet_nearest,
    fib,
    fib_fast,
    generalized_sum,
    generalized_term,
    ratio_table,
    sum_first,
    tribonacci,
    verify_identity,
)
from .zeckendorf import ZeckRepr, fib_code, fib_code_decode, zeck_decode, zeck_encode

__all__ = [
    "FibError",
    "GeneralizedSpec",
    "IdentityId",
    "IndexRangeError",
    "PreconditionError",
    "ZeckRepr",
    "binet_nearest",
    "fib",
    "fib_code",
    "fib_code_decode",
    "fib_fast",
    "generalized_sum",
    "generalized_term",
    "ratio_table",
    "sum_first",
    "tribonacci",
    "verify_identity",
    "zeck_decode",
    "zeck_encode",
]
