"""Dense matrices over an :class:`~ovoidcodes.field.ExtField`.

Entries are integer element encodings held in a 2-D ``int64`` array. All
routines are exact; pivoting takes the first nonzero entry.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Mat:
    field: object
    data: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.data, dtype=np.int64)
        if d.ndim == 1:
            d = d.reshape(1, -1) if d.size else d.reshape(0, 0)
        if d.ndim != 2:
            raise ValueError("matrix data must be 2-D")
        if d.size and (d.min() < 0 or d.max() >= self.field.q):
            raise ValueError("matrix entry outside the field")
        self.data = d

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T.copy())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.field == other.field
                and self.shape == other.shape and bool(np.all(self.data == other.data)))

    def __matmul__(self, other: "Mat") -> "Mat":
        return matmul(self, other)

    def to_json(self) -> list:
        F = self.field
        return [[F.coeffs(v) for v in row] for row in self.data.tolist()]

    @classmethod
    def from_json(cls, field, rows) -> "Mat":
        data = [[field.from_coeffs(c) for c in row] for row in rows]
        return cls(field, np.array(data, dtype=np.int64).reshape(len(data), -1))

    @classmethod
    def zeros(cls, field, r: int, c: int) -> "Mat":
        return cls(field, np.zeros((r, c), dtype=np.int64))

    @classmethod
    def identity(cls, field, k: int) -> "Mat":
        return cls(field, np.eye(k, dtype=np.int64))


def matmul(A: Mat, B: Mat) -> Mat:
    if A.field != B.field:
        raise ValueError("field mismatch")
    if A.cols != B.rows:
        raise ValueError("shape mismatch")
    F = A.field
    out = np.zeros((A.rows, B.cols), dtype=np.int64)
    for t in range(A.cols):
        out = F.add_arr(out, F.mul_arr(A.data[:, t:t + 1], B.data[t:t + 1, :]))
    return Mat(F, out)


def rref(M: Mat) -> tuple[Mat, int, list[int]]:
    """Gauss-Jordan form, rank and pivot columns."""
    F = M.field
    A = M.data.copy()
    r, c = A.shape
    pivots: list[int] = []
    row = 0
    for col in range(c):
        if row == r:
            break
        nz = np.nonzero(A[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        lead = int(A[row, col])
        if lead != 1:
            A[row] = F.mul_arr(A[row], F.inv(lead))
        others = np.nonzero(A[:, col])[0]
        others = others[others != row]
        if others.size:
            factors = A[others, col][:, None]
            A[others] = F.sub_arr(A[others], F.mul_arr(factors, A[row][None, :]))
        pivots.append(col)
        row += 1
    return Mat(F, A), len(pivots), pivots


def rank(M: Mat) -> int:
    return rref(M)[1]


def row_space_basis(M: Mat) -> Mat:
    R, k, _ = rref(M)
    return Mat(M.field, R.data[:k])


def kernel_basis(M: Mat) -> Mat:
    """Rows spanning {x : M x^T = 0}."""
    F = M.field
    R, k, pivots = rref(M)
    c = M.cols
    free = [j for j in range(c) if j not in set(pivots)]
    out = np.zeros((len(free), c), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(pivots):
            out[t, pc] = F.neg(int(R.data[i, f]))
    return Mat(F, out.reshape(len(free), c))


def inverse(M: Mat) -> Mat:
    F = M.field
    k = M.rows
    if M.cols != k:
        raise ValueError("matrix is not square")
    aug = Mat(F, np.concatenate([M.data, np.eye(k, dtype=np.int64)], axis=1))
    R, _, pivots = rref(aug)
    if pivots[:k] != list(range(k)):
        raise ZeroDivisionError("matrix is singular")
    return Mat(F, R.data[:, k:])


def random_invertible(field, k: int, seed: int | None = None) -> Mat:
    """Uniform rejection sample of an invertible k x k matrix."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    while True:
        M = Mat(field, rng.integers(0, field.q, size=(k, k), dtype=np.int64))
        if rank(M) == k:
            return M


def same_row_space(A: Mat, B: Mat) -> bool:
    if A.field != B.field or A.cols != B.cols:
        return False
    return row_space_basis(A) == row_space_basis(B)
