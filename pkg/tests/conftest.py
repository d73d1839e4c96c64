import pytest
from sympy import Matrix


def sympy_det_mod(rows, p):
    return int(Matrix(rows).det(method="bareiss")) % p


def sm_rows(p, d, m, start=1):
    n = (p - 1) // 2
    return [[pow(i * i + d * j * j, m, p) for j in range(start, n + 1)] for i in range(start, n + 1)]


def brute_sm(p, d, m):
    """S_m(d, p) from scratch: plain pow entries, sympy's integer determinant."""
    return sympy_det_mod(sm_rows(p, d, m), p)


def squares_mod(p):
    return {x * x % p for x in range(1, p)}


def brute_legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in squares_mod(p) else -1


@pytest.fixture
def small_primes():
    return [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]
