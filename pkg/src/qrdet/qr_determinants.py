"""Determinant families built from the binary form i^2 + d j^2 over F_p.

All builders index rows by i and columns by j starting at 1 (0 for the
extended family), matching the usual statement of these determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

import numpy as np

from .fp_arith import FieldElement, check_odd_prime, factorial_mod, is_prime, legendre
from .fp_linalg import SquareMatrix, det_elimination, integer_det_leibniz, ORACLE_MAX_ORDER


@dataclass(frozen=True)
class DeterminantFamilyParams:
    p: int
    d: int
    m: int = 0

    def __post_init__(self) -> None:
        check_odd_prime(self.p)
        if self.p < 5:
            raise ValueError(f"need p >= 5, got {self.p}")
        if self.d % self.p == 0:
            raise ValueError(f"p divides d ({self.d})")
        if self.m < 0:
            raise ValueError(f"m must be non-negative, got {self.m}")
        object.__setattr__(self, "d", self.d % self.p)

    @property
    def n(self) -> int:
        return (self.p - 1) // 2

    @property
    def in_defined_range(self) -> bool:
        """Whether (p-1)/2 <= m <= p-1, the range where S_m is defined."""
        return self.n <= self.m <= self.p - 1


@lru_cache(maxsize=256)
def _power_table(p: int, m: int) -> np.ndarray:
    """r**m mod p for every residue r; 0**0 == 1."""
    table = np.array([pow(r, m, p) for r in range(p)], dtype=np.int64)
    table.flags.writeable = False
    return table


def _form_residues(p: int, d: int, start: int) -> np.ndarray:
    n = (p - 1) // 2
    idx = np.arange(start, n + 1, dtype=np.int64)
    sq = idx * idx % p
    return (sq[:, None] + (d % p) * sq[None, :]) % p


def build_sm_matrix(params: DeterminantFamilyParams) -> SquareMatrix:
    """[(i^2 + d j^2)^m]_{1 <= i, j <= (p-1)/2} mod p."""
    p = params.p
    return SquareMatrix(_power_table(p, params.m)[_form_residues(p, params.d, 1)], p)


def compute_sm(params: DeterminantFamilyParams) -> FieldElement:
    return det_elimination(build_sm_matrix(params))


def sm(p: int, d: int, m: int) -> FieldElement:
    """Shorthand for ``compute_sm(DeterminantFamilyParams(p, d, m))``."""
    return compute_sm(DeterminantFamilyParams(p, d, m))


def _symbol_table(p: int) -> np.ndarray:
    half = (p - 1) // 2
    return np.array([0] + [1 if pow(r, half, p) == 1 else -1 for r in range(1, p)], dtype=np.int64)


def legendre_symbol_rows(p: int, d: int) -> list[list[int]]:
    """((i^2 + d j^2)/p) as a signed {-1, 0, 1} integer matrix."""
    DeterminantFamilyParams(p, d)
    return _symbol_table(p)[_form_residues(p, d, 1)].tolist()


def build_legendre_matrix(p: int, d: int) -> SquareMatrix:
    return SquareMatrix.from_rows(legendre_symbol_rows(p, d), p)


def compute_s(p: int, d: int) -> FieldElement:
    return det_elimination(build_legendre_matrix(p, d))


def compute_s_integer(p: int, d: int) -> int:
    """Exact integer value of the Legendre-symbol determinant (small p only)."""
    rows = legendre_symbol_rows(p, d)
    if len(rows) > ORACLE_MAX_ORDER:
        raise ValueError(f"integer determinant only for (p-1)/2 <= {ORACLE_MAX_ORDER}")
    return integer_det_leibniz(rows)


def build_extended_matrix(p: int, d: int, m: int) -> SquareMatrix:
    """[(i^2 + d j^2)^m]_{0 <= i, j <= (p-1)/2}; requires (p-1)/2 < m < p-1."""
    params = DeterminantFamilyParams(p, d, m)
    if not params.n < m < p - 1:
        raise ValueError(f"extended matrix needs (p-1)/2 < m < p-1, got m={m} for p={p}")
    return SquareMatrix(_power_table(p, m)[_form_residues(p, params.d, 0)], p)


def compute_extended_det(p: int, d: int, m: int) -> FieldElement:
    return det_elimination(build_extended_matrix(p, d, m))


def wilson_half_value(p: int) -> FieldElement:
    """(-1)^((p+1)/2) * (((p-1)/2)!)^2, which Wilson's theorem pins to 1."""
    f = factorial_mod((p - 1) // 2, p)
    sign = -1 if ((p + 1) // 2) % 2 else 1
    return f * f * sign


def lemma21_product(p: int) -> FieldElement:
    """prod_{1 <= i < j <= (p-1)/2} (j^2 - i^2) mod p."""
    check_odd_prime(p)
    if p < 5:
        raise ValueError(f"need p >= 5, got {p}")
    n = (p - 1) // 2
    acc = 1
    for j in range(2, n + 1):
        for i in range(1, j):
            acc = acc * (j * j - i * i) % p
    return FieldElement(acc, p)


def lemma21_expected(p: int) -> FieldElement:
    if p % 4 == 1:
        return -factorial_mod((p - 1) // 2, p)
    return FieldElement(1, p)


def theorem21_product(p: int) -> FieldElement:
    """prod_{1 <= i < j <= (p-1)/2} (i^2 - j^2)(1/i^2 - 1/j^2) mod p."""
    check_odd_prime(p)
    if p < 5:
        raise ValueError(f"need p >= 5, got {p}")
    n = (p - 1) // 2
    inv_sq = [0] + [pow(i * i, p - 2, p) for i in range(1, n + 1)]
    acc = 1
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            acc = acc * (i * i - j * j) * (inv_sq[i] - inv_sq[j]) % p
    return FieldElement(acc, p)


def theorem21_expected(p: int) -> FieldElement:
    return FieldElement(-1 if (p // 4) % 2 else 1, p)


def subset_product_lhs(n: int, m: int, q: int | None = None) -> int:
    """Product over all m-subsets of {1..n} of the subset's element product.

    Exact when ``q`` is None, otherwise reduced mod q. For large n the
    subsets are not enumerated; the product is built by the recursion on
    whether n belongs to the subset.
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    if comb(n, m) <= 50_000:
        acc = 1
        for subset in combinations(range(1, n + 1), m):
            acc *= prod(subset)
            if q is not None:
                acc %= q
        return acc
    if q is None:
        raise ValueError("exact mode limited to small subset counts")
    return subset_products_upto(n, m, q)[m]


def subset_products_upto(n: int, top: int, q: int) -> list[int]:
    """Entry j is the product over j-subsets of {1..n} of their element
    products, mod the prime q > n, for j = 0..top.

    Built by the recursion on whether i belongs to the subset; exponents
    are subset counts, reduced mod q - 1.
    """
    F = [1] * (top + 1)
    C = [1] + [0] * top
    for i in range(1, n + 1):
        for j in range(min(i, top), 0, -1):
            F[j] = F[j] * F[j - 1] * pow(i, C[j - 1] % (q - 1), q) % q
            C[j] += C[j - 1]
    return F


def lemma22_sides(n: int, m: int, q: int) -> tuple[int, int]:
    """(subset product, (n!)^binom(n-1, m-1)), both reduced mod the prime q > n."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    if not is_prime(q) or q <= n:
        raise ValueError(f"auxiliary modulus must be a prime > n, got {q}")
    e = comb(n - 1, m - 1)
    return subset_product_lhs(n, m, q), pow(factorial(n) % q, e % (q - 1), q)


def lemma22_identity_check(n: int, m: int, q: int | None = None) -> bool:
    """Check that the subset product equals (n!)^binom(n-1, m-1).

    With ``q`` None the comparison is over the integers; otherwise both
    sides are reduced mod the prime q > n and the exponent mod q - 1.
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    if q is None:
        return subset_product_lhs(n, m) == factorial(n) ** comb(n - 1, m - 1)
    lhs, rhs = lemma22_sides(n, m, q)
    return lhs == rhs
