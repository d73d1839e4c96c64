"""Exact arithmetic in the prime field F_p.

Moduli are odd primes below 2**31, so every product of two canonical
residues fits in a signed 64-bit integer. That bound is what lets the
linear-algebra layer hand whole rows to numpy int64 kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_MODULUS = 1 << 31
FACTORIAL_TABLE_LIMIT = 10**6

# Deterministic for n < 3.4e14, far past MAX_MODULUS.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


class ModulusMismatch(ValueError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


@lru_cache(maxsize=4096)
def is_prime(x: int) -> bool:
    """Deterministic Miller-Rabin for the supported range."""
    if x < 2:
        return False
    for q in _MR_BASES:
        if x % q == 0:
            return x == q
    d, s = x - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or p >= MAX_MODULUS or not is_prime(p):
        raise ValueError(f"p must be an odd prime below 2^31, got {p!r}")


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A residue mod an odd prime, always stored canonically in [0, p)."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        check_odd_prime(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def half_order(self) -> int:
        """n = (p - 1) / 2 for the element's modulus."""
        return (self.modulus - 1) // 2

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"moduli differ: {self.modulus} vs {other.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v, self.modulus)

    def __add__(self, other):
        return fe_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return fe_sub(self, other)

    def __rsub__(self, other):
        return fe_neg(fe_sub(self, other))

    def __mul__(self, other):
        return fe_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return fe_neg(self)

    def __pow__(self, e: int):
        return fe_pow(self, e)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self._new(other)
        return fe_mul(self, fe_inv(other))

    def __rtruediv__(self, other: int):
        return fe_mul(fe_inv(self), other)

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"

    def signed(self) -> int:
        """Representative in (-p/2, p/2)."""
        v = self.value
        return v - self.modulus if v > self.modulus // 2 else v


def fe_add(a: FieldElement, b: FieldElement | int) -> FieldElement:
    return a._new(a.value + a._coerce(b))


def fe_sub(a: FieldElement, b: FieldElement | int) -> FieldElement:
    return a._new(a.value - a._coerce(b))


def fe_neg(a: FieldElement) -> FieldElement:
    return a._new(-a.value)


def fe_mul(a: FieldElement, b: FieldElement | int) -> FieldElement:
    return a._new(a.value * a._coerce(b))


def fe_pow(a: FieldElement, e: int) -> FieldElement:
    """a**e with 0**0 == 1."""
    if e < 0:
        raise ValueError("negative exponent; use fe_inv")
    return a._new(pow(a.value, e, a.modulus))


def fe_inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.modulus}")
    return a._new(pow(a.value, a.modulus - 2, a.modulus))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1}, by Euler's criterion."""
    check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def symbol_as_field(s: int, p: int) -> FieldElement:
    if s not in (-1, 0, 1):
        raise ValueError(f"not a symbol value: {s}")
    return FieldElement(s, p)


@lru_cache(maxsize=64)
def _factorial_table(p: int) -> tuple[int, ...]:
    table = [1] * p
    for k in range(1, p):
        table[k] = table[k - 1] * k % p
    return tuple(table)


def _factorial_int(k: int, p: int) -> int:
    if p <= FACTORIAL_TABLE_LIMIT:
        return _factorial_table(p)[k]
    acc = 1
    for j in range(2, k + 1):
        acc = acc * j % p
    return acc


def factorial_mod(k: int, p: int) -> FieldElement:
    check_odd_prime(p)
    if not 0 <= k < p:
        raise ValueError(f"factorial_mod needs 0 <= k < p, got k={k}, p={p}")
    return FieldElement(_factorial_int(k, p), p)


def double_factorial_mod(k: int, p: int) -> FieldElement:
    """k!! mod p, with 0!! = (-1)!! = 1."""
    check_odd_prime(p)
    if not -1 <= k < p:
        raise ValueError(f"double_factorial_mod needs -1 <= k < p, got k={k}")
    acc = 1
    for j in range(k, 1, -2):
        acc = acc * j % p
    return FieldElement(acc, p)


def binomial_mod(m: int, k: int, p: int) -> FieldElement:
    check_odd_prime(p)
    if not 0 <= k <= m < p:
        raise ValueError(f"binomial_mod needs 0 <= k <= m < p, got m={m}, k={k}, p={p}")
    num = _factorial_int(m, p)
    den = _factorial_int(k, p) * _factorial_int(m - k, p) % p
    return FieldElement(num * pow(den, p - 2, p), p)


def least_nonresidue(p: int) -> int:
    check_odd_prime(p)
    s = 2
    while legendre(s, p) != -1:
        s += 1
    return s


def primes_between(lo: int, hi: int) -> list[int]:
    """Odd primes in [lo, hi]."""
    return [q for q in range(max(lo, 3), hi + 1) if is_prime(q)]
