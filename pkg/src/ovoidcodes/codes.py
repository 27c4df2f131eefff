"""Linear codes over constructed fields: enumeration, distances, duals."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .field import ExtField, FieldElement
from .geometry import normalize_rows
from .linalg import Mat, kernel_basis, rref

DEFAULT_BUDGET_LOG2 = 24
# rows in the precomputed low-digit table are capped at this many entries
_TABLE_ENTRIES = 1 << 22


class BudgetExceeded(RuntimeError):
    def __init__(self, required_log2: float, budget_log2: float):
        self.required_log2 = required_log2
        self.budget_log2 = budget_log2
        super().__init__(f"enumeration needs 2^{required_log2:.2f} codewords, "
                         f"budget is 2^{budget_log2:g}")


def default_budget_log2() -> float:
    env = os.environ.get("OVOID_BUDGET_LOG2")
    return float(env) if env else DEFAULT_BUDGET_LOG2


class LinearCode:
    """A code given by a (possibly redundant) generator matrix."""

    def __init__(self, generator: Mat, name: str = ""):
        self.generator = generator
        self.field: ExtField = generator.field
        self.name = name
        self._rref = None

    @classmethod
    def from_rows(cls, field: ExtField, rows, name: str = "") -> "LinearCode":
        return cls(Mat(field, np.asarray(rows, dtype=np.int64)), name)

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self._reduced()[1]

    @property
    def dimension(self) -> int:
        return self.k

    def _reduced(self):
        if self._rref is None:
            self._rref = rref(self.generator)
        return self._rref

    def basis(self) -> Mat:
        R, k, _ = self._reduced()
        return Mat(self.field, R.data[:k])

    def encode(self, message: Sequence[int | FieldElement]) -> np.ndarray:
        F = self.field
        msg = np.array([m.value if isinstance(m, FieldElement) else int(m) for m in message],
                       dtype=np.int64)
        if len(msg) != self.generator.rows:
            raise ValueError("message length must equal the number of generator rows")
        out = np.zeros(self.n, dtype=np.int64)
        for i, m in enumerate(msg.tolist()):
            if m:
                out = F.add_arr(out, F.mul_arr(m, self.generator.data[i]))
        return out

    def same_as(self, other: "LinearCode") -> bool:
        return (self.field == other.field and self.n == other.n
                and self.basis() == other.basis())

    def params(self) -> tuple[int, int]:
        return self.n, self.k

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "generator": self.generator.to_json()}

    @classmethod
    def from_json(cls, d: Mapping) -> "LinearCode":
        F = ExtField.from_json(d["field"])
        return cls(Mat.from_json(F, d["generator"]))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"LinearCode{label}[{self.n}, {self.k}] over GF({self.field.q})"


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[tuple[int, int], ...]
    meta: dict = dc_field(default_factory=dict, compare=False)

    @classmethod
    def from_mapping(cls, m: Mapping[int, int], **meta) -> "WeightDistribution":
        rows = tuple(sorted((int(w), int(c)) for w, c in m.items() if c))
        return cls(rows, dict(meta))

    @classmethod
    def from_array(cls, arr: np.ndarray, **meta) -> "WeightDistribution":
        return cls.from_mapping({w: int(c) for w, c in enumerate(arr.tolist()) if c}, **meta)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def min_nonzero_weight(self) -> int | None:
        nz = [w for w, _ in self.counts if w > 0]
        return min(nz) if nz else None

    def nonzero_weights(self) -> int:
        return sum(1 for w, _ in self.counts if w > 0)

    def to_json(self) -> list[list[int]]:
        return [[w, c] for w, c in self.counts]

    def __eq__(self, other) -> bool:
        if isinstance(other, WeightDistribution):
            return self.counts == other.counts
        if isinstance(other, Mapping):
            return self.as_dict() == {int(w): int(c) for w, c in other.items() if c}
        return NotImplemented


# -- enumeration ----------------------------------------------------------------

def expand_to_prime_rows(C: LinearCode) -> tuple[np.ndarray, int]:
    """Independent GF(p) rows spanning C, one digit block of width F.n per coordinate.

    Returns (rows, block). Each reduced generator row g is expanded into the
    F.n vectors x^j * g written as coefficient digits.
    """
    F = C.field
    B = C.basis().data
    if F.n == 1:
        return B.astype(np.int64), 1
    out = []
    for g in B:
        for j in range(F.n):
            out.append(F.digits_arr(F.mul_arr(F.p**j, g)).reshape(-1))
    rows = np.array(out, dtype=np.int64).reshape(len(out), C.n * F.n)
    return rows, F.n


def _gray_offset(t: int, hi_rows: np.ndarray, p: int) -> np.ndarray:
    """Codeword offset at position t of the modular p-ary Gray walk."""
    r = hi_rows.shape[0]
    d = [(t // p**j) % p for j in range(r + 1)]
    off = np.zeros(hi_rows.shape[1], dtype=np.int64)
    for j in range(r):
        g = (d[j] - d[j + 1]) % p
        if g:
            off = (off + g * hi_rows[j]) % p
    return off


def _weights_of(block_vals: np.ndarray, n: int, block: int) -> np.ndarray:
    if block == 1:
        return np.count_nonzero(block_vals, axis=1)
    return block_vals.reshape(block_vals.shape[0], n, block).any(axis=2).sum(axis=1)


def _walk(low: np.ndarray, hi_rows: np.ndarray, p: int, n: int, block: int,
          start: int, stop: int) -> np.ndarray:
    hist = np.zeros(n + 1, dtype=np.int64)
    off = _gray_offset(start, hi_rows, p).astype(low.dtype)
    hi_cast = hi_rows.astype(low.dtype)
    for t in range(start, stop):
        if p == 2:
            vals = low ^ off
        else:
            vals = low + off
            vals %= p
        hist += np.bincount(_weights_of(vals, n, block), minlength=n + 1)
        if t + 1 < stop:
            # digit that changes between t and t+1: count of trailing (p-1) digits
            i, u = 0, t
            while u % p == p - 1:
                u //= p
                i += 1
            if p == 2:
                off ^= hi_cast[i]
            else:
                off += hi_cast[i]
                off %= p
    return hist


def enumerate_weights(rows: np.ndarray, p: int, block: int = 1, workers: int = 1) -> np.ndarray:
    """Histogram of block weights over the GF(p)-span of independent ``rows``.

    Low rows are tabulated once (each table entry is a previous entry plus a
    scaled row); the remaining rows are walked in modular Gray order, so each
    step adds exactly one generator row to the running offset.
    """
    r, N = rows.shape
    n = N // block
    dtype = np.uint8 if p < 128 else np.int64
    cap = max(1, _TABLE_ENTRIES // max(N, 1))
    r_lo = 0
    while r_lo < r and p ** (r_lo + 1) <= cap:
        r_lo += 1
    low = np.zeros((1, N), dtype=dtype)
    for j in range(r_lo):
        row = rows[j].astype(dtype)
        parts = [low]
        cur = low
        for _ in range(p - 1):
            cur = (cur ^ row) if p == 2 else ((cur + row) % p).astype(dtype)
            parts.append(cur)
        low = np.concatenate(parts)
    hi_rows = rows[r_lo:]
    total = p ** hi_rows.shape[0]
    workers = max(1, min(workers, total))
    bounds = [total * w // workers for w in range(workers + 1)]
    if workers == 1:
        return _walk(low, hi_rows, p, n, block, 0, total)
    with ThreadPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(lambda w: _walk(low, hi_rows, p, n, block, bounds[w], bounds[w + 1]),
                            range(workers)))
    return np.sum(parts, axis=0)


def check_budget(q: int, k: int, budget_log2: float | None) -> None:
    budget = default_budget_log2() if budget_log2 is None else budget_log2
    need = k * math.log2(q)
    if need > budget + 1e-9:
        raise BudgetExceeded(need, budget)


def weight_distribution(C: LinearCode, budget_log2: float | None = None,
                        workers: int = 1) -> WeightDistribution:
    F = C.field
    check_budget(F.q, C.k, budget_log2)
    if C.k == 0:
        return WeightDistribution.from_mapping({0: 1})
    rows, block = expand_to_prime_rows(C)
    hist = enumerate_weights(rows, F.p, block, workers)
    wd = WeightDistribution.from_array(hist)
    assert wd.total() == F.q ** C.k
    return wd


def min_distance(C: LinearCode, budget_log2: float | None = None, workers: int = 1) -> int | None:
    """Least nonzero weight; None for the zero code."""
    return weight_distribution(C, budget_log2, workers).min_nonzero_weight()


def codewords(C: LinearCode, budget_log2: float | None = 20) -> np.ndarray:
    """All codewords as rows of element encodings (small codes only)."""
    F = C.field
    check_budget(F.q, C.k, budget_log2)
    words = np.zeros((1, C.n), dtype=np.int64)
    for g in C.basis().data:
        scaled = F.mul_arr(F.elements()[:, None], g[None, :])
        words = F.add_arr(words[:, None, :], scaled[None, :, :]).reshape(-1, C.n)
    return words


# -- dual distance by dependent-column search -----------------------------------

@dataclass(frozen=True)
class DualDistance:
    """``value`` is exact when ``exact``; otherwise the dual distance exceeds ``value - 1``."""
    value: int
    exact: bool

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">{self.value - 1}"


def _key_weights(F: ExtField, k: int) -> np.ndarray | None:
    if k * math.log2(F.q) >= 62:
        return None
    return np.array([F.q**i for i in range(k)], dtype=np.int64)


def _row_keys(rows: np.ndarray, weights) -> np.ndarray:
    if weights is not None:
        return rows @ weights
    out = np.empty(len(rows), dtype=object)
    out[:] = [r.tobytes() for r in np.ascontiguousarray(rows)]
    return out


def _pair_combos(F: ExtField, cols: np.ndarray, i: int):
    """Normalized c_i + lam * c_j for j > i and every nonzero lam."""
    rest = cols[i + 1:]
    lams = np.arange(1, F.q, dtype=np.int64)
    comb = F.add_arr(cols[i][None, None, :], F.mul_arr(lams[None, :, None], rest[:, None, :]))
    comb = comb.reshape(-1, cols.shape[1])
    js = np.repeat(np.arange(i + 1, len(cols)), len(lams))
    return normalize_rows(F, comb), js


def dual_min_distance_upto(C: LinearCode, t_max: int = 4) -> DualDistance:
    """Minimum distance of the dual code, found as the smallest dependent column set.

    Exact when it is at most ``t_max``; otherwise ``DualDistance(t_max + 1, False)``.
    """
    if not 1 <= t_max <= 5:
        raise ValueError("t_max must be in 1..5")
    F = C.field
    G = C.basis().data
    k, n = G.shape
    if k == 0:
        return DualDistance(1, True) if n else DualDistance(1, False)
    cols = G.T.copy()
    if np.any(np.all(cols == 0, axis=1)):
        return DualDistance(1, True)
    if t_max < 2:
        return DualDistance(2, False)
    weights = _key_weights(F, k)
    cols = normalize_rows(F, cols)
    col_keys = _row_keys(cols, weights)
    if len(np.unique(col_keys)) < n:
        return DualDistance(2, True)
    if t_max < 3:
        return DualDistance(3, False)
    col_set = np.sort(col_keys)
    pair_keys = []
    for i in range(n - 1):
        comb, _ = _pair_combos(F, cols, i)
        keys = _row_keys(comb, weights)
        if np.any(np.isin(keys, col_set, assume_unique=False)):
            return DualDistance(3, True)
        if t_max >= 4:
            pair_keys.append(keys)
    if t_max < 4:
        return DualDistance(4, False)
    # With no dependency among <= 3 columns, two distinct pair combinations can
    # only coincide when their index pairs are disjoint.
    all_pairs = np.concatenate(pair_keys) if pair_keys else np.zeros(0, dtype=col_keys.dtype)
    if all_pairs.size and len(np.unique(all_pairs)) < all_pairs.size:
        return DualDistance(4, True)
    if t_max < 5:
        return DualDistance(5, False)
    work = math.comb(n, 3) * (F.q - 1) ** 2
    if work > 5 * 10**7:
        raise ValueError(f"triple search too large ({work} combinations); lower t_max")
    pair_set = np.sort(all_pairs)
    lams = np.arange(1, F.q, dtype=np.int64)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            rest = cols[j + 1:]
            base = F.add_arr(cols[i][None, :], F.mul_arr(lams[:, None], cols[j][None, :]))
            comb = F.add_arr(base[:, None, None, :],
                             F.mul_arr(lams[None, :, None, None], rest[None, None, :, :]))
            keys = _row_keys(normalize_rows(F, comb.reshape(-1, k)), weights)
            if np.any(np.isin(keys, pair_set)):
                return DualDistance(5, True)
    return DualDistance(6, False)


def dual_code(C: LinearCode) -> LinearCode:
    return LinearCode(kernel_basis(C.generator), name=f"dual of {C.name}" if C.name else "")


def apply_monomial(C: LinearCode, perm: Sequence[int], scalars: Sequence[int | FieldElement] | None = None) -> LinearCode:
    """Column j of the result is scalars[j] times column perm[j] of C."""
    F = C.field
    n = C.n
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of range(n)")
    if scalars is None:
        sc = np.ones(n, dtype=np.int64)
    else:
        sc = np.array([s.value if isinstance(s, FieldElement) else int(s) for s in scalars], dtype=np.int64)
        if len(sc) != n:
            raise ValueError("need one scalar per coordinate")
        if np.any(sc == 0):
            raise ValueError("monomial scalars must be nonzero")
    G = C.generator.data[:, perm]
    return LinearCode(Mat(F, F.mul_arr(G, sc[None, :])))


def code_from_points(points) -> LinearCode:
    from .geometry import generator_from_points
    return LinearCode(generator_from_points(points))
