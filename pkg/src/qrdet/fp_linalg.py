"""Dense determinants over F_p.

``det_elimination`` is the production path (numpy int64 row operations,
safe because p < 2**31). ``det_permutation_oracle`` is a deliberately
naive Leibniz expansion in pure Python, kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fp_arith import FieldElement, ModulusMismatch, check_odd_prime

ORACLE_MAX_ORDER = 9


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """n x n matrix of canonical residues mod p.

    Storage is a read-only int64 array indexed from 0; ``entry`` uses the
    1-based (i, j) convention of the determinant families.
    """

    entries: np.ndarray
    modulus: int

    def __post_init__(self) -> None:
        check_odd_prime(self.modulus)
        a = np.array(self.entries, dtype=np.int64, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        a %= self.modulus
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> SquareMatrix:
        return cls(np.asarray(rows, dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> SquareMatrix:
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def entry(self, i: int, j: int) -> int:
        return int(self.entries[i - 1, j - 1])

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(self.entries.T, self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"SquareMatrix({self.rows()}, mod {self.modulus})"


def det_elimination(M: SquareMatrix) -> FieldElement:
    """Determinant by normalize-and-eliminate Gaussian elimination."""
    p = M.modulus
    a = M.entries.copy()
    n = a.shape[0]
    det = 1
    for k in range(n):
        nz = np.flatnonzero(a[k:, k])
        if nz.size == 0:
            return FieldElement(0, p)
        r = k + int(nz[0])
        if r != k:
            a[[k, r]] = a[[r, k]]
            det = -det
        pivot = int(a[k, k])
        det = det * pivot % p
        if k + 1 == n:
            break
        inv = pow(pivot, p - 2, p)
        row = a[k, k + 1 :] * inv % p
        col = a[k + 1 :, k]
        # col * row < p**2 < 2**62, so one reduction after subtracting suffices
        tail = a[k + 1 :, k + 1 :]
        tail -= np.outer(col, row)
        tail %= p
    return FieldElement(det, p)


def integer_det_leibniz(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant as the signed sum over all n! permutations.

    The sum is walked row by row; choosing column j for row i contributes
    one inversion per still-unused column left of j, which fixes the sign
    incrementally. Zero entries prune the whole subtree of permutations.
    """
    n = len(rows)
    if n > ORACLE_MAX_ORDER:
        raise ValueError(f"permutation expansion capped at order {ORACLE_MAX_ORDER}, got {n}")
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")

    def expand(i: int, free: tuple[int, ...]) -> int:
        if i == n:
            return 1
        total = 0
        row = rows[i]
        for pos, j in enumerate(free):
            v = row[j]
            if v:
                term = v * expand(i + 1, free[:pos] + free[pos + 1 :])
                total += -term if pos % 2 else term
        return total

    return expand(0, tuple(range(n)))


def det_permutation_oracle(M: SquareMatrix) -> FieldElement:
    return FieldElement(integer_det_leibniz(M.rows()), M.modulus)


def _shared_modulus(*seqs: Sequence[FieldElement]) -> int:
    moduli = {x.modulus for s in seqs for x in s}
    if len(moduli) != 1:
        raise ModulusMismatch(f"expected one modulus, got {sorted(moduli)}")
    return moduli.pop()


def krattenthaler_det(
    coeffs: Sequence[FieldElement],
    xs: Sequence[FieldElement],
    ys: Sequence[FieldElement],
) -> FieldElement:
    """Closed form of det[P(x_i y_j)] for P = sum_k coeffs[k] t^k, deg P < n.

    Returns coeffs[0]...coeffs[n-1] * prod_{i<j} (x_i - x_j)(y_i - y_j).
    """
    n = len(coeffs)
    if n < 1 or len(xs) != n or len(ys) != n:
        raise ValueError(f"need n >= 1 and equal lengths, got {n}, {len(xs)}, {len(ys)}")
    p = _shared_modulus(coeffs, xs, ys)
    acc = 1
    for c in coeffs:
        acc = acc * c.value % p
    for i in range(n):
        for j in range(i + 1, n):
            acc = acc * (xs[i].value - xs[j].value) * (ys[i].value - ys[j].value) % p
    return FieldElement(acc, p)


def polynomial_product_matrix(
    coeffs: Sequence[FieldElement],
    xs: Sequence[FieldElement],
    ys: Sequence[FieldElement],
) -> SquareMatrix:
    """The matrix [P(x_i y_j)] whose determinant ``krattenthaler_det`` predicts."""
    n = len(coeffs)
    if len(xs) != n or len(ys) != n:
        raise ValueError("length mismatch")
    p = _shared_modulus(coeffs, xs, ys)
    rows = []
    for x in xs:
        row = []
        for y in ys:
            t = x.value * y.value % p
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * t + c.value) % p
            row.append(acc)
        rows.append(row)
    return SquareMatrix.from_rows(rows, p)
