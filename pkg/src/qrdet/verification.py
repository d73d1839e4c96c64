"""Sweep engine: enumerate (p, d, m), run every applicable check, report.

Work is split by prime. Each prime produces a sorted list of reports, and
primes are emitted in increasing order, so the stream is deterministic
whether or not a process pool is used.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from math import comb
from typing import Iterator, Sequence

from . import closed_forms as cf
from .fp_arith import (
    MAX_MODULUS,
    FieldElement,
    binomial_mod,
    double_factorial_mod,
    factorial_mod,
    is_prime,
    least_nonresidue,
    legendre,
    primes_between,
)
from .fp_linalg import (
    ORACLE_MAX_ORDER,
    SquareMatrix,
    det_elimination,
    det_permutation_oracle,
    krattenthaler_det,
    polynomial_product_matrix,
)
from .qr_determinants import (
    compute_extended_det,
    compute_s,
    compute_s_integer,
    lemma21_expected,
    lemma21_product,
    subset_products_upto,
    sm,
    theorem21_expected,
    theorem21_product,
    wilson_half_value,
)
from .reports import CHECK_IDS, FAIL, PASS, SKIPPED, TheoremReport, judge, skipped

D_MODES = ("all", "sampled", "explicit")
M_MODES = ("tail", "full", "explicit")
AUX_POLY_TRIALS = 4


@dataclass(frozen=True)
class SweepConfig:
    p_min: int = 5
    p_max: int = 61
    d_mode: str = "all"
    d_count: int = 8  # per symbol class, sampled mode only
    d_values: tuple[int, ...] = ()
    m_mode: str = "full"
    m_values: tuple[int, ...] = ()
    checks: tuple[str, ...] = CHECK_IDS
    rng_seed: int = 0
    emit_skipped: bool = False

    def __post_init__(self) -> None:
        if self.p_min < 5:
            raise ValueError(f"p_min must be >= 5, got {self.p_min}")
        if self.p_max >= MAX_MODULUS:
            raise ValueError("p_max must be below 2^31")
        if self.p_min > self.p_max:
            raise ValueError(f"empty prime range [{self.p_min}, {self.p_max}]")
        if self.d_mode not in D_MODES:
            raise ValueError(f"d_mode must be one of {D_MODES}, got {self.d_mode!r}")
        if self.m_mode not in M_MODES:
            raise ValueError(f"m_mode must be one of {M_MODES}, got {self.m_mode!r}")
        if self.d_mode == "explicit" and not self.d_values:
            raise ValueError("explicit d_mode needs d_values")
        if self.d_mode == "sampled" and self.d_count < 1:
            raise ValueError("sampled d_mode needs d_count >= 1")
        if self.m_mode == "explicit" and not self.m_values:
            raise ValueError("explicit m_mode needs m_values")
        if any(m < 0 for m in self.m_values):
            raise ValueError("m values must be non-negative")
        unknown = [c for c in self.checks if c not in CHECK_IDS]
        if unknown or not self.checks:
            raise ValueError(f"unknown or empty checks {unknown}; valid: {', '.join(CHECK_IDS)}")
        object.__setattr__(self, "checks", tuple(c for c in CHECK_IDS if c in self.checks))

    def primes(self) -> list[int]:
        return primes_between(self.p_min, self.p_max)

    def d_values_for(self, p: int) -> list[int]:
        if self.d_mode == "all":
            return list(range(1, p))
        if self.d_mode == "explicit":
            return sorted({d % p for d in self.d_values} - {0})
        rng = random.Random(f"{self.rng_seed}:d:{p}")
        residues = [d for d in range(1, p) if legendre(d, p) == 1]
        nonresidues = [d for d in range(1, p) if legendre(d, p) == -1]
        picked = rng.sample(residues, min(self.d_count, len(residues)))
        picked += rng.sample(nonresidues, min(self.d_count, len(nonresidues)))
        return sorted(picked)

    def m_values_for(self, p: int) -> list[int]:
        n = (p - 1) // 2
        if self.m_mode == "full":
            return list(range(n + 1, p - 1))
        if self.m_mode == "tail":
            return sorted({p - 2, p - 3, p - 4})
        return sorted(set(self.m_values))


def tier_config(tier: int, rng_seed: int = 0) -> SweepConfig:
    """Preset sweep spaces, sized so that each tier runs at desk scale."""
    if tier == 1:
        return SweepConfig(5, 61, "all", m_mode="full", rng_seed=rng_seed)
    if tier == 2:
        return SweepConfig(5, 149, "all", m_mode="tail", rng_seed=rng_seed)
    if tier == 3:
        return SweepConfig(150, 499, "sampled", d_count=8, m_mode="tail", rng_seed=rng_seed)
    raise ValueError(f"tier must be 1, 2 or 3, got {tier}")


class _PrimeUnit:
    """All checks for one prime, sharing a determinant cache."""

    def __init__(self, p: int, config: SweepConfig) -> None:
        self.p = p
        self.n = (p - 1) // 2
        self.config = config
        self.ds = config.d_values_for(p)
        self.ms = config.m_values_for(p)
        self._sm: dict[tuple[int, int], FieldElement] = {}
        self.out: list[TheoremReport] = []

    def s_m(self, d: int, m: int) -> FieldElement:
        key = (d, m)
        if key not in self._sm:
            self._sm[key] = sm(self.p, d, m)
        return self._sm[key]

    def skip(self, check: str, claim: str, reason: str, *, boundary: bool = False, d=None, m=None) -> None:
        # Boundary skips are always shown: the check was asked for at a prime
        # below the smallest one its statement covers.
        if boundary or self.config.emit_skipped:
            self.out.append(skipped(check, claim, reason, p=self.p, d=d, m=m))

    def in_open_range(self, m: int) -> bool:
        return self.n < m < self.p - 1

    def run(self) -> list[TheoremReport]:
        for check in self.config.checks:
            getattr(self, "check_" + check.replace("-", "_").replace(".", "_"))()
        self.out.sort(key=TheoremReport.sort_key)
        return self.out

    def check_THM2_2(self) -> None:
        p = self.p
        for d in self.ds:
            for m in self.ms:
                if p <= 5:
                    self.skip("THM2.2", "decomposition", "p <= 5", boundary=True, d=d, m=m)
                elif not self.in_open_range(m):
                    self.skip("THM2.2", "decomposition", "m outside ((p-1)/2, p-1)", d=d, m=m)
                else:
                    dec = cf.theorem22_decompose(p, d, m)
                    self.out.append(judge(
                        "THM2.2", "decomposition", dec.product, self.s_m(d, m), p=p, d=d, m=m,
                        witness={"a": dec.a.value, "b": dec.b.value},
                    ))

    def check_T_A(self) -> None:
        p = self.p
        for d in self.ds:
            for m in self.ms:
                if p <= 5:
                    self.skip("T-A", "vanishes", "p <= 5", boundary=True, d=d, m=m)
                elif legendre(d, p) != -1 or not self.in_open_range(m) or (m - self.n) % 2:
                    self.skip("T-A", "vanishes", "outside hypothesis", d=d, m=m)
                else:
                    self.out.append(judge("T-A", "vanishes", FieldElement(0, p), self.s_m(d, m), p=p, d=d, m=m))

    def check_T_B(self) -> None:
        p = self.p
        for d in self.ds:
            for m in self.ms:
                if p % 4 != 1 or legendre(d, p) != 1 or not self.in_open_range(m) or m % 2 == 0:
                    self.skip("T-B", "s-symbol", "outside hypothesis", d=d, m=m)
                else:
                    self.out.append(judge(
                        "T-B", "s-symbol", -1, legendre(self.s_m(d, m).value, p),
                        p=p, d=d, m=m, relation="ne", kind="symbol",
                    ))

    def check_T_C(self) -> None:
        p, m = self.p, self.p - 2
        for d in self.ds:
            if legendre(-d, p) != 1:
                self.skip("T-C", "sp2", "(-d/p) != 1", d=d, m=m)
                continue
            self.out.append(judge("T-C", "sp2", cf.tC_sp2_closed_form(p, d), self.s_m(d, m), p=p, d=d, m=m))

    def check_SUN_PRIOR(self) -> None:
        p = self.p
        for d in self.ds:
            if legendre(-d, p) != -1:
                self.skip("SUN-PRIOR", "sp2", "(-d/p) != -1", d=d, m=p - 2)
                self.skip("SUN-PRIOR", "sp3", "(-d/p) != -1", d=d, m=p - 3)
                continue
            self.out.append(judge("SUN-PRIOR", "sp2", cf.sun_prior_sp2(p, d), self.s_m(d, p - 2), p=p, d=d, m=p - 2))
            self.out.append(judge("SUN-PRIOR", "sp3", cf.sun_prior_sp3(p, d), self.s_m(d, p - 3), p=p, d=d, m=p - 3))

    def check_T_D(self) -> None:
        p, m = self.p, self.p - 3
        for d in self.ds:
            if p % 4 != 1:
                self.skip("T-D", "six-s-not-nonresidue", "p != 1 (mod 4)", d=d, m=m)
                continue
            self.out.extend(cf.tD_sp3_symbol_check(p, d, self.s_m(d, m)))

    def check_T_E(self) -> None:
        p, m = self.p, self.p - 4
        for d in self.ds:
            if legendre(d, p) != 1:
                self.skip("T-E", "s-symbol", "(d/p) != 1", d=d, m=m)
            elif p < 7:
                self.skip("T-E", "s-symbol", "boundary: p < 7", boundary=True, d=d, m=m)
            else:
                self.out.append(cf.tE_sp4_symbol_check(p, d, self.s_m(d, m)))

    def check_S_MATRIX(self) -> None:
        p = self.p
        exact = self.n <= ORACLE_MAX_ORDER
        for d in self.ds:
            s = compute_s(p, d)
            if legendre(d, p) == -1:
                self.out.append(judge("S-MATRIX", "vanishes", FieldElement(0, p), s, p=p, d=d))
                if exact:
                    self.out.append(judge("S-MATRIX", "vanishes-exact", 0, compute_s_integer(p, d),
                                          p=p, d=d, kind="int"))
            else:
                self.out.append(judge("S-MATRIX", "minus-s-residue", 1, legendre(-s.value, p),
                                      p=p, d=d, kind="symbol"))

    def check_EXTENDED(self) -> None:
        p = self.p
        for d in self.ds:
            for m in self.ms:
                if not self.in_open_range(m):
                    self.skip("EXTENDED", "vanishes", "m outside ((p-1)/2, p-1)", d=d, m=m)
                    continue
                self.out.append(judge("EXTENDED", "vanishes", FieldElement(0, p),
                                      compute_extended_det(p, d, m), p=p, d=d, m=m))

    def check_REMARK(self) -> None:
        p = self.p
        if p % 4 != 1:
            self.skip("REMARK", "two-squares", "p != 1 (mod 4)")
            return
        self.out.extend(remark_prime_reports(p))
        s = least_nonresidue(p)
        sp2_one = self.s_m(1, p - 2)
        for d in self.ds:
            if legendre(d, p) != 1:
                self.skip("REMARK", "sp2-two-squares", "(d/p) != 1", d=d, m=p - 2)
                continue
            sp2, charsum = cf.remark_character_sum_check(
                p, s, d, sp2_d=self.s_m(d, p - 2), sp2_one=sp2_one
            )
            self.out.append(sp2)
        self.out.append(charsum_report(p, s, sp2_one))

    def check_AUX(self) -> None:
        self.out.extend(aux_prime_reports(self.p, self.config.rng_seed))


def remark_prime_reports(p: int) -> list[TheoremReport]:
    """Checks on the normalized two-square representation of p = 1 (mod 4)."""
    ts = cf.two_squares(p)
    x, y = ts.x, ts.y
    w = {"x": x, "y": y}
    half = (p - 1) // 2
    df = double_factorial_mod((p - 3) // 2, p)
    return [
        judge("REMARK", "sum-of-squares", p, x * x + y * y, p=p, kind="int", witness=w),
        judge("REMARK", "x-mod-4", 1, x % 4, p=p, kind="int", witness=w),
        judge("REMARK", "y-congruence", factorial_mod(half, p) * x, FieldElement(y, p), p=p, witness=w),
        judge("REMARK", "gauss", binomial_mod(half, half // 2, p), FieldElement(2 * x, p), p=p, witness=w),
        judge("REMARK", "double-factorial", df * df * legendre(2, p), FieldElement(2 * y, p), p=p, witness=w),
    ]


def charsum_report(p: int, s: int, sp2_one: FieldElement | None = None) -> TheoremReport:
    return cf.remark_character_sum_check(p, s, 1, sp2_d=sp2_one, sp2_one=sp2_one)[1]


def aux_prime_reports(p: int, rng_seed: int = 0) -> list[TheoremReport]:
    n = (p - 1) // 2
    out = [
        judge("AUX", "wilson-half", FieldElement(1, p), wilson_half_value(p), p=p),
        judge("AUX", "square-difference-product", lemma21_expected(p), lemma21_product(p), p=p),
        judge("AUX", "inverse-square-product", theorem21_expected(p), theorem21_product(p), p=p),
    ]
    lhs = subset_products_upto(n, n, p)
    fact = factorial_mod(n, p).value
    for m in range(1, n + 1):
        rhs = pow(fact, comb(n - 1, m - 1) % (p - 1), p)
        out.append(judge("AUX", "subset-product", rhs, lhs[m], p=p, m=m, kind="int", witness={"n": n}))
    rng = random.Random(f"{rng_seed}:aux:{p}")
    for t in range(AUX_POLY_TRIALS):
        closed, direct, order = _polynomial_det_trial(rng, p)
        out.append(judge("AUX", f"polynomial-det-{t}", closed, direct, p=p, witness={"order": order}))
    return out


def prime_reports(p: int, config: SweepConfig) -> list[TheoremReport]:
    return _PrimeUnit(p, config).run()


def run_sweep(config: SweepConfig, jobs: int = 1) -> Iterator[TheoremReport]:
    """Yield every report of the sweep, ordered by p, then check, d, m."""
    primes = config.primes()
    if jobs <= 1:
        for p in primes:
            yield from prime_reports(p, config)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        try:
            for batch in pool.map(partial(prime_reports, config=config), primes):
                yield from batch
        finally:
            pool.shutdown(wait=False, cancel_futures=True)


@dataclass
class SweepSummary:
    by_check: dict[str, Counter] = field(default_factory=lambda: defaultdict(Counter))

    def add(self, report: TheoremReport) -> None:
        self.by_check[report.check_id][report.status] += 1

    def total(self, status: str) -> int:
        return sum(c[status] for c in self.by_check.values())

    @property
    def checks_run(self) -> int:
        return sum(sum(c.values()) for c in self.by_check.values())

    def to_json(self, wall_seconds: float | None) -> dict:
        return {
            "summary": True,
            "checks_run": self.checks_run,
            "pass": self.total(PASS),
            "fail": self.total(FAIL),
            "skipped": self.total(SKIPPED),
            "wall_seconds": wall_seconds,
            "by_check": {
                c: {s: self.by_check[c][s] for s in (PASS, FAIL, SKIPPED)}
                for c in CHECK_IDS
                if c in self.by_check
            },
        }


def summarize(reports) -> SweepSummary:
    summary = SweepSummary()
    for r in reports:
        summary.add(r)
    return summary


def _random_vector(rng: random.Random, n: int, p: int) -> list[FieldElement]:
    return [FieldElement(rng.randrange(p), p) for _ in range(n)]


def _polynomial_det_trial(rng: random.Random, p: int, max_order: int = 6):
    n = rng.randint(1, max_order)
    coeffs = _random_vector(rng, n, p)
    xs = _random_vector(rng, n, p)
    ys = _random_vector(rng, n, p)
    if n > 1 and rng.random() < 0.1:
        i, j = rng.sample(range(n), 2)
        xs[j] = xs[i]
    closed = krattenthaler_det(coeffs, xs, ys)
    direct = det_elimination(polynomial_product_matrix(coeffs, xs, ys))
    return closed, direct, n


def _random_matrix(rng: random.Random, n: int, p: int) -> SquareMatrix:
    rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
    roll = rng.random()
    if n > 1 and roll < 0.1:
        i, j = rng.sample(range(n), 2)
        rows[j] = list(rows[i])
    elif n > 1 and roll < 0.2:
        # sparse, so zero pivots and row swaps actually occur
        rows = [[v if rng.random() < 0.3 else 0 for v in row] for row in rows]
    return SquareMatrix.from_rows(rows, p)


@dataclass
class IdentitySummary:
    trials: int
    polynomial_failures: list[dict] = field(default_factory=list)
    oracle_failures: list[dict] = field(default_factory=list)
    orders_seen: Counter = field(default_factory=Counter)
    primes_seen: Counter = field(default_factory=Counter)

    @property
    def failures(self) -> int:
        return len(self.polynomial_failures) + len(self.oracle_failures)

    def to_json(self, wall_seconds: float | None) -> dict:
        run = 2 * self.trials
        return {
            "summary": True,
            "checks_run": run,
            "pass": run - self.failures,
            "fail": self.failures,
            "skipped": 0,
            "wall_seconds": wall_seconds,
            "polynomial_failures": len(self.polynomial_failures),
            "oracle_failures": len(self.oracle_failures),
            "primes": {str(k): v for k, v in sorted(self.primes_seen.items())},
        }


def run_randomized_identities(
    p_set: Sequence[int], trials: int, rng_seed: int, max_oracle_order: int = 7
) -> IdentitySummary:
    """Random instances of the polynomial-product determinant identity and of
    elimination versus permutation expansion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    primes = sorted(set(p_set))
    if not primes:
        raise ValueError("p_set is empty")
    for p in primes:
        if p < 3 or not is_prime(p) or p >= MAX_MODULUS:
            raise ValueError(f"not an odd prime below 2^31: {p}")
    rng = random.Random(rng_seed)
    summary = IdentitySummary(trials)
    for t in range(trials):
        p = rng.choice(primes)
        summary.primes_seen[p] += 1
        closed, direct, n = _polynomial_det_trial(rng, p)
        if closed != direct:
            summary.polynomial_failures.append(
                {"trial": t, "p": p, "order": n, "predicted": closed.value, "observed": direct.value}
            )
        k = rng.randint(1, max_oracle_order)
        summary.orders_seen[k] += 1
        M = _random_matrix(rng, k, p)
        fast, slow = det_elimination(M), det_permutation_oracle(M)
        if fast != slow:
            summary.oracle_failures.append(
                {"trial": t, "p": p, "order": k, "rows": M.rows(), "elimination": fast.value, "oracle": slow.value}
            )
    return summary
