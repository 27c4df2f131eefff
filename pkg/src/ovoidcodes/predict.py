"""Closed-form weight distributions and bound checks.

Each table is a list of (weight, multiplicity) expressions evaluated with
integer arithmetic at one parameter point. Powers of sqrt(-1) must come out
real; a non-real power raises :class:`ClaimError` for that point only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .charsum import i_power_real
from .codes import WeightDistribution

TABLES = ("T1", "T2", "T3", "T4", "T5", "T6")


class ClaimError(ValueError):
    """A closed form cannot be evaluated at the requested parameters."""


@dataclass(frozen=True)
class PredictedDistribution:
    source: str
    params: dict
    rows: tuple[tuple[int, int], ...]
    dimension: int
    base: int
    raw_rows: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def distribution(self) -> WeightDistribution:
        return WeightDistribution(self.rows)

    def total(self) -> int:
        return sum(c for _, c in self.rows)

    def min_distance(self) -> int:
        return min(w for w, _ in self.rows if w > 0)

    def to_json(self) -> list[list[int]]:
        return [[w, c] for w, c in self.rows]


def _assemble(source: str, params: dict, raw: list[tuple[int, int]], base: int, dim: int) -> PredictedDistribution:
    merged: dict[int, int] = {}
    for w, c in raw:
        if c < 0:
            raise ClaimError(f"{source} {params}: negative multiplicity {c} at weight {w}")
        if c:
            merged[w] = merged.get(w, 0) + c
    rows = tuple(sorted(merged.items()))
    out = PredictedDistribution(source, dict(params), rows, dim, base, tuple(raw))
    if out.total() != base**dim:
        raise ClaimError(f"{source} {params}: multiplicities sum to {out.total()}, not {base}^{dim}")
    return out


def _half(x: int) -> int:
    if x % 2:
        raise ClaimError(f"odd numerator {x} in a halved multiplicity")
    return x // 2


def predict_ovoid_code(q: int) -> PredictedDistribution:
    if q <= 2:
        raise ValueError("q must exceed 2")
    raw = [(0, 1), (q * q - q, (q * q - q) * (q * q + 1)), (q * q, (q - 1) * (q * q + 1))]
    return _assemble("ovoid", {"q": q}, raw, q, 4)


def _table1(m: int) -> list[tuple[int, int]]:
    return [
        (0, 1),
        (2 ** (2 * m), 1),
        (2 ** (2 * m - 1), 2 * (2 ** (2 * m) - 1)),
        (2 ** (2 * m - 1) - 2 ** (m - 1), 2 ** (2 * m) * (2 ** (m - 1) - 1)),
        (2 ** (2 * m - 1) + 2 ** (m - 1), 2 ** (2 * m) * (2 ** (m - 1) - 1)),
        (2 ** (2 * m - 1) - 2 ** (m - 1) + 1, 2 ** (3 * m - 1)),
        (2 ** (2 * m - 1) + 2 ** (m - 1) + 1, 2 ** (3 * m - 1)),
    ]


def _table2(p: int, m: int) -> list[tuple[int, int]]:
    big = p ** (2 * m - 1)
    sm = p ** (m - 1)
    return [
        (0, 1),
        (p ** (2 * m), p - 1),
        (big * (p - 1), p * (p ** (2 * m) - 1)),
        ((big + sm) * (p - 1), p ** (2 * m) * (sm - 1)),
        (big * (p - 1) - sm, p ** (2 * m) * (sm - 1) * (p - 1)),
        ((big + sm) * (p - 1) + 1, p ** (3 * m - 1) * (p - 1)),
        (big * (p - 1) - sm + 1, p ** (3 * m - 1) * (p - 1) ** 2),
    ]


def _table3(p: int, m: int) -> list[tuple[int, int]]:
    big = p ** (2 * m - 1)
    sm = p ** (m - 1)
    return [
        (0, 1),
        (p ** (2 * m), p - 1),
        (big * (p - 1), p * (p ** (2 * m) - 1)),
        ((big - sm) * (p - 1), p ** (2 * m) * (sm - 1)),
        (big * (p - 1) + sm, p ** (2 * m) * (sm - 1) * (p - 1)),
        ((big - sm) * (p - 1) + 1, p ** (3 * m - 1) * (p - 1)),
        (big * (p - 1) + sm + 1, p ** (3 * m - 1) * (p - 1) ** 2),
    ]


def _table4(p: int, m: int) -> list[tuple[int, int]]:
    eps = i_power_real((p - 1) * m // 2)
    h = p ** (m // 2)
    g = p ** ((3 * m - 2) // 2)
    sm = p ** (m - 1)
    big = p ** (2 * m - 1)
    rows = [
        (0, 1),
        (p ** (2 * m), p - 1),
        (big * (p - 1), (p**m - 1) * (p ** (2 * m) + p)),
        (big * (p - 1) + 1, p ** (2 * m) * (p**m - 1) * (p - 1)),
    ]
    w1 = sm * (p - 1) * (p**m + h * eps)
    w2 = sm * (p**m * (p - 1) - h * eps)
    w3 = sm * (p - 1) * (p**m - h * eps)
    w4 = sm * (p**m * (p - 1) + h * eps)
    rows += [
        (w1, _half(big - p**m - (p - 1) * g * eps)),
        (w1 + 1, _half((p - 1) * (big + g * eps))),
        (w2, _half((p - 1) * (big - p**m - (p - 1) * g * eps))),
        (w2 + 1, _half((p - 1) ** 2 * (big + g * eps))),
        (w3, _half(big - p**m + (p - 1) * g * eps)),
        (w3 + 1, _half((p - 1) * (big - g * eps))),
        (w4, _half((p - 1) * (big - p**m + (p - 1) * g * eps))),
        (w4 + 1, _half((p - 1) ** 2 * (big - g * eps))),
    ]
    return rows


def _table5(p: int, m: int) -> list[tuple[int, int]]:
    eps = i_power_real((p - 1) * (m + 1) // 2)
    big = p ** (2 * m - 1)
    lead = p ** ((3 * m - 1) // 2)
    inner = p ** ((m - 1) // 2) * (p - 1)
    v1 = lead * (inner - eps)
    v2 = lead * (inner + eps)
    return [
        (0, 1),
        (p ** (2 * m), p - 1),
        (big * (p - 1), p**m * (p ** (m - 1) - 1) * (p ** (m + 1) - p + 1) + p * (p ** (2 * m) - 1)),
        (big * (p - 1) + 1, big * (p - 1) * (p ** (m + 1) - p + 1)),
        (v1, _half(p**m * (p ** (m - 1) - 1) * (p - 1))),
        (v1 + 1, _half(big * (p - 1) ** 2)),
        (v2, _half(p**m * (p ** (m - 1) - 1) * (p - 1))),
        (v2 + 1, _half(big * (p - 1) ** 2)),
    ]


def _table6(e: int) -> list[tuple[int, int]]:
    n = 2 ** (4 * e + 2)
    half = 2 ** (4 * e + 1)
    d = 2 ** (2 * e)
    return [
        (0, 1),
        (n, 1),
        (half, 2 * (n - 1)),
        (half + d, n * (d - 1)),
        (half - d, n * (d - 1)),
        (half + d + 1, 2 ** (6 * e + 2)),
        (half - d + 1, 2 ** (6 * e + 2)),
    ]


def predict_table(which: str, p: int | None = None, m: int | None = None,
                  e: int | None = None) -> PredictedDistribution:
    which = which.upper()
    if which == "T1":
        if p not in (None, 2) or m is None or m < 2:
            raise ValueError("T1 needs p = 2 and m > 1")
        return _assemble("T1", {"p": 2, "m": m}, _table1(m), 2, 3 * m + 1)
    if which in ("T2", "T3", "T4", "T5"):
        if p is None or m is None or p < 3 or m < 2:
            raise ValueError(f"{which} needs odd p and m > 1")
        if which == "T4" and m % 2:
            raise ValueError("T4 needs even m")
        if which == "T5" and m % 2 == 0:
            raise ValueError("T5 needs odd m")
        build: Callable = {"T2": _table2, "T3": _table3, "T4": _table4, "T5": _table5}[which]
        try:
            raw = build(p, m)
        except ArithmeticError as exc:
            raise ClaimError(f"{which} p={p} m={m}: {exc}") from exc
        return _assemble(which, {"p": p, "m": m}, raw, p, 3 * m + 1)
    if which == "T6":
        if e is None or e < 1:
            raise ValueError("T6 needs e >= 1")
        return _assemble("T6", {"e": e}, _table6(e), 2, 6 * e + 4)
    raise ValueError(f"unknown table {which!r}")


A_CLASSES = ("irreducible", "reducible", "quarter_even", "quarter_odd")


def predict_concluding_min_distance(p: int, m: int, a_class: str) -> int:
    if p % 2 == 0:
        raise ValueError("p must be odd")
    base = p ** (2 * m - 1) * (p - 1)
    if a_class == "irreducible":
        return base - p ** (m - 1)
    if a_class == "reducible":
        return base - p ** (m - 1) * (p - 1)
    if a_class == "quarter_even":
        if m % 2:
            raise ValueError("quarter_even needs even m")
        return base - p ** (m - 1) * (p - 1) * p ** (m // 2)
    if a_class == "quarter_odd":
        if m % 2 == 0:
            raise ValueError("quarter_odd needs odd m")
        return base - p ** (m - 1) * p ** ((m + 1) // 2)
    raise ValueError(f"unknown a class {a_class!r}")


def griesmer_length(q: int, k: int, d: int) -> int:
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    return sum(-(-d // q**i) for i in range(k))


def meets_griesmer(q: int, n: int, k: int, d: int) -> bool:
    return n == griesmer_length(q, k, d)


def sphere_packing_max_d(p: int, n: int, k: int) -> int:
    """Largest d allowed by the sphere-packing bound, never above n - k + 1."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    room = p ** (n - k)
    vol = 0
    t = 0
    while t <= n:
        vol += (p - 1) ** t * math.comb(n, t)
        if vol > room:
            break
        t += 1
    # t is the first radius that does not fit, so radius t - 1 is the largest
    return min(2 * (t - 1) + 2, n - k + 1)
