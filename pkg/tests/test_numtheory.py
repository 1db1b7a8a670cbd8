import math

import pytest
from hypothesis import given, strategies as st

from fibtools.errors import IndexRangeError, PreconditionError
from fibtools.numtheory import (
    Side,
    consecutive_coprime,
    divides_iff,
    euclid_trace,
    factor_integer,
    factorize_fib,
    fib_gcd,
    is_prime,
    lame_pair,
    primitive_divisors,
    theorem6_witness,
    theorem7_check,
    theorem7_qualifies,
)
from fibtools.sequence import fib


def _trial_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_is_prime_against_trial_division():
    for n in range(-3, 5000):
        assert is_prime(n) == _trial_is_prime(n), n
    assert is_prime(6168709)
    assert not is_prime(2**61 + 1)
    assert is_prime(2**61 - 1)


@given(st.integers(1, 10**12))
def test_factor_integer_product(n):
    f = factor_integer(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)


def test_factor_integer_needs_rho():
    # Both factors above the trial-division bound.
    p, q = 1000003, 1000033
    assert factor_integer(p * q) == {p: 1, q: 1}


def test_fib_gcd_paper_example():
    assert fib_gcd(16, 12) == (4, 3)
    assert math.gcd(987, 144) == 3
    assert fib_gcd(37, 19) == (1, 1)
    assert math.gcd(fib(37), fib(19)) == 1
    assert fib_gcd(9, 9) == (9, 34)


def test_fib_gcd_against_bigint_gcd():
    fibs = [fib(i) for i in range(121)]
    for m in range(1, 121):
        for n in range(1, 121):
            assert fib_gcd(m, n)[1] == math.gcd(fibs[m], fibs[n])


def test_consecutive_coprime():
    assert consecutive_coprime(7)
    assert consecutive_coprime(1)
    assert all(consecutive_coprime(n) for n in range(1, 301))


def test_divides_iff():
    assert divides_iff(4, 20) == (True, True)
    assert 6765 % 3 == 0 and 6765 % 5 == 0
    assert divides_iff(5, 12) == (False, False)
    assert divides_iff(7, 7) == (True, True)
    for m in range(3, 61):
        for n in range(m, 61):
            a, b = divides_iff(m, n)
            assert a == b


@pytest.mark.parametrize("m, n", [(2, 10), (1, 5), (5, 4)])
def test_divides_iff_precondition(m, n):
    with pytest.raises(PreconditionError):
        divides_iff(m, n)


def test_euclid_paper_example():
    t = euclid_trace(21, 13)
    assert t.count == 6
    assert t.gcd == 1
    assert t.steps[0] == (21, 13, 1, 8)
    assert [s[2] for s in t.steps] == [1, 1, 1, 1, 1, 2]


def test_euclid_trace_invariants():
    t = euclid_trace(10946, 6765)
    assert t.count == 19
    for (a, b, q, r), nxt in zip(t.steps, t.steps[1:] + ((None,) * 4,)):
        assert 0 <= r < b and a == q * b + r
        if nxt[0] is not None:
            assert (nxt[0], nxt[1]) == (b, r)
    assert t.steps[-1][3] == 0
    assert euclid_trace(12, 12).count == 1


def test_euclid_rejects_zero():
    with pytest.raises(PreconditionError):
        euclid_trace(5, 0)


def test_lame_pair():
    assert lame_pair(6) == (21, 13, 6)
    assert lame_pair(1) == (2, 1, 1)
    assert lame_pair(30) == (fib(32), fib(31), 30)
    for n in range(1, 31):
        assert lame_pair(n)[2] == n


@pytest.mark.parametrize("p, side, value", [(13, Side.P_PLUS_1, 377), (11, Side.P_MINUS_1, 55), (7, Side.P_PLUS_1, 21)])
def test_theorem6_examples(p, side, value):
    w = theorem6_witness(p)
    assert w.side is side and w.divided_value == value
    assert value % p == 0


@pytest.mark.parametrize("p", [4, 5, 9, 21])
def test_theorem6_rejects(p):
    with pytest.raises(PreconditionError):
        theorem6_witness(p)


def test_theorem7():
    assert theorem7_check(37)
    assert fib(37) == 73 * 149 * 2221
    assert theorem7_check(7) and fib(7) == 13
    with pytest.raises(PreconditionError, match="compositeness"):
        theorem7_check(17)
    with pytest.raises(PreconditionError, match="residue"):
        theorem7_check(11)
    qualifying = [p for p in range(500) if theorem7_qualifies(p)]
    assert 37 in qualifying and 7 in qualifying
    assert all(theorem7_check(p) for p in qualifying)


def test_factorize_examples():
    f = factorize_fib(19)
    assert f.factors == ((37, 1), (113, 1))
    assert factorize_fib(1).factors == ()
    assert factorize_fib(50).factors == ((5, 2), (11, 1), (101, 1), (151, 1), (3001, 1))
    assert factorize_fib(12).render(12) == "12 : 144 = 2^4 x 3^2"
    assert factorize_fib(12).render(12, superscript=True) == "12 : 144 = 2⁴ x 3²"


def test_factorize_budget():
    f = factorize_fib(100)
    assert f.product() == fib(100)
    with pytest.raises(IndexRangeError):
        factorize_fib(101)


def test_ek1_table(data_dir):
    expected = (data_dir / "ek1.txt").read_text(encoding="utf-8").splitlines()
    got = [factorize_fib(n).render(n, superscript=True) for n in range(51)]
    assert got == expected
    for n in range(1, 51):
        f = factorize_fib(n)
        assert f.product() == fib(n) == f.subject


def test_primitive_divisors():
    assert 29 in primitive_divisors(14)
    assert primitive_divisors(12) == frozenset()
    assert primitive_divisors(6) == frozenset()
    empty = [n for n in range(1, 51) if not primitive_divisors(n)]
    assert empty == [1, 2, 6, 12]
    with pytest.raises(IndexRangeError):
        primitive_divisors(51)
