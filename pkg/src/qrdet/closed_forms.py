"""Closed-form predictions for the S_m(d, p) family and related congruences.

Every value here is computed from binomials, factorials and Legendre
symbols alone; nothing in this module evaluates a determinant except the
symbol checks, which compare a prediction against ``qr_determinants.sm``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .fp_arith import (
    FieldElement,
    binomial_mod,
    check_odd_prime,
    double_factorial_mod,
    factorial_mod,
    least_nonresidue,
    legendre,
)
from .qr_determinants import sm
from .reports import TheoremReport, judge


class HypothesisError(ValueError):
    """Parameters fall outside the range where a stated result applies."""


@dataclass(frozen=True)
class DecompositionResult:
    a: FieldElement
    b: FieldElement
    product: FieldElement


@dataclass(frozen=True)
class TwoSquares:
    """p = x^2 + y^2 with x = 1 (mod 4) and y = ((p-1)/2)! x (mod p)."""

    x: int
    y: int
    p: int


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _check_decomposition_range(p: int, d: int, m: int) -> int:
    check_odd_prime(p)
    if p <= 5:
        raise HypothesisError(f"decomposition needs p > 5, got {p}")
    if d % p == 0:
        raise HypothesisError(f"p divides d ({d})")
    n = (p - 1) // 2
    if not n < m < p - 1:
        raise HypothesisError(f"decomposition needs (p-1)/2 < m < p-1, got m={m} for p={p}")
    return n


def theorem22_am(p: int, d: int, m: int) -> FieldElement:
    n = _check_decomposition_range(p, d, m)
    e = legendre(d, p)
    acc = FieldElement(1, p)
    for k in range((m - n - 1) // 2 + 1):
        acc *= binomial_mod(m, k, p) + binomial_mod(m, m - n - k, p) * e
    # range() is empty for a non-positive bound, which is the convention wanted
    for k in range(n - 1 - m // 2):
        acc *= binomial_mod(m, m - n + 1 + k, p)
    return acc


def theorem22_bm(p: int, d: int, m: int) -> FieldElement:
    n = _check_decomposition_range(p, d, m)
    e = legendre(d, p)
    dd = FieldElement(d, p)
    if m % 2 == 0 and n % 2 == 0:
        return (-dd) ** (n // 2) * (1 + e) * binomial_mod(m, (m - n) // 2, p) * binomial_mod(m, m // 2, p)
    if m % 2 == 0:
        return binomial_mod(m, m // 2, p) * (_sign((n - 1) // 2) * e ** (m // 2))
    if n % 2 == 0:
        return dd ** (n // 2) * (_sign(n // 2 + 1) * e ** ((m - 1) // 2))
    return binomial_mod(m, (m - n) // 2, p) * (_sign((n - 1) // 2) * (1 + e))


def theorem22_decompose(p: int, d: int, m: int) -> DecompositionResult:
    a = theorem22_am(p, d, m)
    b = theorem22_bm(p, d, m)
    return DecompositionResult(a, b, a * a * b)


def tC_sp2_closed_form(p: int, d: int) -> FieldElement:
    """Predicted S_{p-2}(d, p) when -d is a nonzero square mod p."""
    check_odd_prime(p)
    if legendre(-d, p) != 1:
        raise HypothesisError(f"needs (-d/p) = 1, got d={d}, p={p}")
    if p % 4 == 3:
        return FieldElement(0, p)
    df = double_factorial_mod((p - 3) // 2, p)
    return FieldElement(d, p) ** ((p - 1) // 4) * df * df * _sign((p + 3) // 4)


def _require_minus_d_nonresidue(p: int, d: int) -> None:
    check_odd_prime(p)
    if legendre(-d, p) != -1:
        raise HypothesisError(f"needs (-d/p) = -1, got d={d}, p={p}")


def sun_prior_sp2(p: int, d: int) -> FieldElement:
    """Earlier evaluation of S_{p-2}(d, p) for (-d/p) = -1."""
    _require_minus_d_nonresidue(p, d)
    if p % 4 == 1:
        return FieldElement(d, p) ** ((p - 1) // 4)
    return FieldElement(_sign((p + 1) // 4), p)


def sun_prior_sp3(p: int, d: int) -> FieldElement:
    """Earlier evaluation of S_{p-3}(d, p) for (-d/p) = -1.

    The value (1/4) prod_{r=1}^{floor(p/4)} (r + 1/4)^2, all in F_p.
    """
    _require_minus_d_nonresidue(p, d)
    quarter = 1 / FieldElement(4, p)
    acc = quarter
    for r in range(1, p // 4 + 1):
        t = quarter + r
        acc *= t * t
    return acc


def tD_sp3_symbol_check(p: int, d: int, s_value: FieldElement | None = None) -> list[TheoremReport]:
    """Symbol claims for S_{p-3}(d, p), p = 1 (mod 4).

    Always checks (6 S_{p-3} / p) != -1. When (d/p) = 1 and p = 5 (mod 12)
    also checks (S_{p-3} / p) = (-1)^((p+3)/4).
    """
    check_odd_prime(p)
    if p <= 3 or p % 4 != 1 or d % p == 0:
        raise HypothesisError(f"needs p = 1 (mod 4) and p not dividing d, got p={p}, d={d}")
    m = p - 3
    s = sm(p, d, m) if s_value is None else s_value
    dr = d % p
    out = [
        judge("T-D", "six-s-not-nonresidue", -1, legendre(6 * s.value, p),
              p=p, d=dr, m=m, relation="ne", kind="symbol"),
    ]
    if legendre(d, p) == 1 and p % 12 == 5:
        out.append(
            judge("T-D", "s-symbol", _sign((p + 3) // 4), legendre(s.value, p),
                  p=p, d=dr, m=m, kind="symbol")
        )
    return out


def tE_sp4_symbol_check(p: int, d: int, s_value: FieldElement | None = None) -> TheoremReport:
    """(S_{p-4}(d, p) / p) = -1 exactly when p = 3 or 7 (mod 20), for (d/p) = 1."""
    check_odd_prime(p)
    if p <= 4 or legendre(d, p) != 1:
        raise HypothesisError(f"needs p > 4 and (d/p) = 1, got p={p}, d={d}")
    m = p - 4
    s = sm(p, d, m) if s_value is None else s_value
    relation = "eq" if p % 20 in (3, 7) else "ne"
    reason = None
    if m <= (p - 1) // 2:
        reason = "boundary: m = p-4 is not above (p-1)/2"
    return judge("T-E", "s-symbol", -1, legendre(s.value, p),
                 p=p, d=d % p, m=m, relation=relation, kind="symbol", reason=reason)


def _sqrt_minus_one(p: int) -> int:
    return pow(least_nonresidue(p), (p - 1) // 4, p)


def two_squares(p: int) -> TwoSquares:
    """Normalized representation p = x^2 + y^2 for p = 1 (mod 4)."""
    check_odd_prime(p)
    if p % 4 != 1:
        raise HypothesisError(f"needs p = 1 (mod 4), got {p}")
    a, b = p, _sqrt_minus_one(p)
    bound = isqrt(p)
    while b > bound:
        a, b = b, a % b
    x = b
    y = isqrt(p - x * x)
    if x * x + y * y != p:
        raise ArithmeticError(f"descent failed for p={p}")
    if x % 2 == 0:
        x, y = y, x
    if x % 4 != 1:
        x = -x
    if (y - factorial_mod((p - 1) // 2, p).value * x) % p != 0:
        y = -y
    return TwoSquares(x, y, p)


def remark_delta(s: int, p: int) -> int:
    check_odd_prime(p)
    if p % 4 != 1 or legendre(s, p) != -1:
        raise HypothesisError(f"needs p = 1 (mod 4) and s a nonresidue, got s={s}, p={p}")
    half_fact = factorial_mod((p - 1) // 2, p).value
    return 1 if pow(s, (p - 1) // 4, p) == half_fact else -1


def character_sum(p: int, s: int) -> int:
    """sum_{k=1}^{(p-1)/2} (k(k^2 + s) / p) as an integer."""
    return sum(legendre(k * (k * k + s), p) for k in range(1, (p - 1) // 2 + 1))


def remark_character_sum_check(
    p: int,
    s: int,
    d: int,
    *,
    sp2_d: FieldElement | None = None,
    sp2_one: FieldElement | None = None,
) -> list[TheoremReport]:
    """S_{p-2}(d,p) = -2y d^((p-1)/4) and S_{p-2}(1,p) = 2 delta(s,p) sum."""
    check_odd_prime(p)
    if p % 4 != 1 or legendre(s, p) != -1 or legendre(d, p) != 1:
        raise HypothesisError(f"needs p = 1 (mod 4), s nonresidue, d residue; got p={p}, s={s}, d={d}")
    ts = two_squares(p)
    m = p - 2
    observed_d = sm(p, d, m) if sp2_d is None else sp2_d
    observed_1 = sm(p, 1, m) if sp2_one is None else sp2_one
    predicted_d = FieldElement(-2 * ts.y, p) * FieldElement(d, p) ** ((p - 1) // 4)
    delta = remark_delta(s, p)
    total = character_sum(p, s)
    return [
        judge("REMARK", "sp2-two-squares", predicted_d, observed_d,
              p=p, d=d % p, m=m, witness={"x": ts.x, "y": ts.y}),
        judge("REMARK", "character-sum", FieldElement(2 * delta * total, p), observed_1,
              p=p, d=1, m=m, witness={"s": s, "delta": delta, "sum": total}),
    ]
