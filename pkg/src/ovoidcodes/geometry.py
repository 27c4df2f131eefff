"""Point sets in PG(3, q): elliptic quadrics, Tits ovoids, and cap checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import ExtField, FieldElement, FieldError
from .linalg import Mat


def normalize_rows(F: ExtField, rows: np.ndarray) -> np.ndarray:
    """Scale each nonzero row so its last nonzero entry is 1. Zero rows stay zero."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return rows.copy()
    nz = rows != 0
    k = rows.shape[1]
    last = k - 1 - np.argmax(nz[:, ::-1], axis=1)
    lead = rows[np.arange(rows.shape[0]), last]
    zero = lead == 0
    lead = np.where(zero, 1, lead)
    out = F.mul_arr(rows, F.inv_arr(lead)[:, None])
    return out


@dataclass(frozen=True)
class ProjPoint:
    field: ExtField
    coords: tuple[int, int, int, int]

    @classmethod
    def from_coords(cls, field: ExtField, coords: Sequence[int | FieldElement]) -> "ProjPoint":
        vals = [c.value if isinstance(c, FieldElement) else int(c) for c in coords]
        if len(vals) != 4:
            raise ValueError("points of PG(3, q) have four coordinates")
        if not any(vals):
            raise ValueError("the zero vector is not a projective point")
        norm = normalize_rows(field, np.array([vals]))[0]
        return cls(field, tuple(int(v) for v in norm))

    def to_json(self) -> list[list[int]]:
        return [self.field.coeffs(v) for v in self.coords]


class PointSet:
    """Ordered distinct points; row i of ``coords`` is column i of the generator."""

    def __init__(self, field: ExtField, coords: np.ndarray | Iterable[Sequence[int]]):
        self.field = field
        arr = np.asarray(coords, dtype=np.int64).reshape(-1, 4)
        if np.any(np.all(arr == 0, axis=1)):
            raise ValueError("the zero vector is not a projective point")
        arr = normalize_rows(field, arr)
        if len({tuple(r) for r in arr.tolist()}) != len(arr):
            raise ValueError("point set contains duplicate points")
        self.coords = arr

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        for row in self.coords.tolist():
            yield ProjPoint(self.field, tuple(row))

    def __getitem__(self, i: int) -> ProjPoint:
        return ProjPoint(self.field, tuple(int(v) for v in self.coords[i]))

    def export_lines(self) -> list[str]:
        """One point per line, coordinates as coefficient arrays."""
        import json
        return [json.dumps(pt.to_json(), separators=(",", ":")) for pt in self]


SPECIAL_POINT = (0, 0, 1, 0)


def _affine_grid(F: ExtField) -> tuple[np.ndarray, np.ndarray]:
    el = F.elements()
    x = np.repeat(el, F.q)
    y = np.tile(el, F.q)
    return x, y


def _with_special(F: ExtField, x, y, z) -> PointSet:
    pts = np.stack([x, y, z, np.ones_like(x)], axis=1)
    pts = np.concatenate([pts, np.array([SPECIAL_POINT], dtype=np.int64)])
    return PointSet(F, pts)


def elliptic_quadric(F: ExtField, a: int | FieldElement) -> PointSet:
    """Points (x, y, x^2 + xy + a y^2, 1) in (x, y) order, then (0, 0, 1, 0).

    Any ``a`` is accepted; only irreducible x^2 + x + a gives an ovoid.
    """
    if F.q <= 2:
        raise FieldError("elliptic quadric needs q > 2")
    a = a.value if isinstance(a, FieldElement) else int(a)
    x, y = _affine_grid(F)
    z = F.add_arr(F.add_arr(F.mul_arr(x, x), F.mul_arr(x, y)), F.mul_arr(a, F.mul_arr(y, y)))
    return _with_special(F, x, y, z)


def tits_ovoid(F: ExtField) -> PointSet:
    """Points (x, y, x^s + xy + y^(s+2), 1) and (0, 0, 1, 0), s = 2^(e+1), q = 2^(2e+1)."""
    if F.p != 2 or F.n % 2 == 0 or F.n < 3:
        raise FieldError("Tits ovoid needs GF(2^(2e+1)) with e >= 1")
    e = (F.n - 1) // 2
    sigma = 2 ** (e + 1)
    x, y = _affine_grid(F)
    z = F.add_arr(F.add_arr(F.pow_arr(x, sigma), F.mul_arr(x, y)), F.pow_arr(y, sigma + 2))
    return _with_special(F, x, y, z)


def generator_from_points(S: PointSet) -> Mat:
    if len(S) == 0:
        raise ValueError("empty point set")
    return Mat(S.field, S.coords.T.copy())


def _keys(F: ExtField, rows: np.ndarray) -> np.ndarray:
    return rows @ np.array([F.q**i for i in range(rows.shape[1])], dtype=np.int64)


def is_cap(S: PointSet, return_witness: bool = False):
    """True iff no three points of S are collinear.

    Three points P_i, P_j, P_k (i < j < k) are collinear exactly when P_j and
    P_k project to the same point from P_i. The projection reduces a point by
    P_i along P_i's last nonzero coordinate and renormalizes, so each i costs
    one pass over the later points. The reported witness is the
    lexicographically least collinear triple.
    """
    F = S.field
    pts = S.coords
    n = len(pts)
    for i in range(n - 2):
        base = pts[i]
        t = int(np.nonzero(base)[0][-1])  # base[t] == 1 after normalization
        rest = pts[i + 1:]
        reduced = F.sub_arr(rest, F.mul_arr(rest[:, t:t + 1], base[None, :]))
        keys = _keys(F, normalize_rows(F, reduced))
        uniq, first, counts = np.unique(keys, return_index=True, return_counts=True)
        if np.any(counts > 1):
            best = None
            for key in uniq[counts > 1]:
                idx = np.nonzero(keys == key)[0][:2]
                cand = (i, i + 1 + int(idx[0]), i + 1 + int(idx[1]))
                if best is None or cand < best:
                    best = cand
            return (False, best) if return_witness else False
    return (True, None) if return_witness else True


def collinear(F: ExtField, p1, p2, p3) -> bool:
    """Brute-force rank test of three points: True iff the 3 x 4 matrix has rank < 3."""
    from .linalg import rank
    return rank(Mat(F, np.array([p1, p2, p3], dtype=np.int64))) < 3
