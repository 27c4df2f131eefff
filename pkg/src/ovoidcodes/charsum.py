"""Exact character sums in Z[zeta_p].

``CycInt`` stores sum_j c_j zeta^j over the basis zeta^0 .. zeta^(p-2); the
power zeta^(p-1) is rewritten as -(1 + zeta + ... + zeta^(p-2)).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import (ExtField, FieldError, IRREDUCIBLE, REDUCIBLE_DISTINCT, REDUCIBLE_DOUBLE,
                    quadratic_root_test, quarter)


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_powers(cls, p: int, counts: Sequence[int]) -> "CycInt":
        """sum_e counts[e] * zeta^e for e in 0..p-1 (longer inputs are folded mod p)."""
        full = [0] * p
        for e, c in enumerate(counts):
            full[e % p] += int(c)
        top = full[p - 1]
        return cls(p, tuple(c - top for c in full[:p - 1]))

    @classmethod
    def integer(cls, p: int, value: int) -> "CycInt":
        return cls.from_powers(p, [value])

    @classmethod
    def zeta(cls, p: int, e: int = 1) -> "CycInt":
        counts = [0] * p
        counts[e % p] = 1
        return cls.from_powers(p, counts)

    def _same(self, other: "CycInt | int") -> "CycInt":
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if other.p != self.p:
            raise ValueError(f"cyclotomic mismatch: p={self.p} vs p={other.p}")
        return other

    def __add__(self, other):
        o = self._same(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        o = self._same(other)
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        acc[(i + j) % p] += a * b
        return CycInt.from_powers(p, acc)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        return isinstance(other, CycInt) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def embed_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.p)
        return sum(c * z**j for j, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt(p={self.p}, {list(self.coeffs)})"


def cyc_sum(F: ExtField, exponents, weights=None) -> CycInt:
    """sum_x w_x zeta^(e_x) for prime-field exponents e_x."""
    e = np.asarray(exponents, dtype=np.int64).reshape(-1)
    w = None if weights is None else np.asarray(weights, dtype=np.int64).reshape(-1)
    counts = np.bincount(e % F.p, weights=w, minlength=F.p)
    return CycInt.from_powers(F.p, [int(round(c)) for c in counts])


def additive_character_sum(F: ExtField, a: int) -> CycInt:
    """sum_x zeta^Tr(a x)."""
    el = F.elements()
    return cyc_sum(F, F.trace_arr(F.mul_arr(a, el)))


def multiplicative_character_sum(F: ExtField, j: int) -> complex:
    """sum over nonzero x of psi_j(x) with psi_j(g^k) = exp(2 pi i j k / (q - 1))."""
    k = F._log[1:]
    return complex(np.exp(2j * np.pi * j * k / (F.q - 1)).sum())


def _require_odd(F: ExtField) -> None:
    if F.p == 2:
        raise FieldError("needs odd characteristic")


def gauss_sum_quadratic(F: ExtField) -> CycInt:
    """G(eta, chi) = sum over nonzero x of eta(x) zeta^Tr(x), by direct summation."""
    _require_odd(F)
    el = F.elements()[1:]
    return cyc_sum(F, F.trace_arr(el), F.eta_arr(el))


def gauss_sum_closed_form(p: int, m: int) -> complex:
    """(-1)^(m-1) * i^(((p-1)/2)^2 m) * sqrt(q)."""
    e = ((p - 1) // 2) ** 2 * m
    return (-1) ** (m - 1) * (1j ** (e % 4)) * math.sqrt(p**m)


def verify_lemma5(F: ExtField, rel_tol: float = 1e-6) -> bool:
    _require_odd(F)
    G = gauss_sum_quadratic(F)
    eta_m1 = int(F.eta_arr(np.int64(F.neg(1))))
    exact = G * G == eta_m1 * F.q
    target = gauss_sum_closed_form(F.p, F.n)
    numeric = abs(G.embed_complex() - target) <= rel_tol * abs(target)
    return exact and numeric


def weil_sum_quadratic(F: ExtField, a2: int, a1: int, a0: int) -> CycInt:
    """sum_c zeta^Tr(a2 c^2 + a1 c + a0), by direct summation."""
    _require_odd(F)
    if a2 == 0:
        raise ValueError("a2 must be nonzero")
    c = F.elements()
    f = F.add_arr(F.add_arr(F.mul_arr(a2, F.mul_arr(c, c)), F.mul_arr(a1, c)), a0)
    return cyc_sum(F, F.trace_arr(f))


def weil_sum_closed_form(F: ExtField, a2: int, a1: int, a0: int) -> CycInt:
    """chi(a0 - a1^2 (4 a2)^-1) * eta(a2) * G(eta, chi)."""
    four_a2 = F.mul(F.prime_element(4), a2)
    shift = F.sub(a0, F.mul(F.mul(a1, a1), F.inv(four_a2)))
    chi = CycInt.zeta(F.p, F.trace(shift))
    eta = int(F.eta_arr(np.int64(a2)))
    return chi * eta * gauss_sum_quadratic(F)


def verify_lemma6(F: ExtField, a2: int, a1: int, a0: int) -> bool:
    return weil_sum_quadratic(F, a2, a1, a0) == weil_sum_closed_form(F, a2, a1, a0)


def verify_eta_shift(F: ExtField, a: int) -> bool:
    """eta(a - 1/4) is (-1)^((q+1)/2) for irreducible x^2+x+a, (-1)^((q-1)/2) otherwise."""
    _require_odd(F)
    kind = quadratic_root_test(a, F)
    if kind == REDUCIBLE_DOUBLE:
        raise ValueError("a = 1/4: neither sign identity applies")
    val = int(F.eta_arr(np.int64(F.sub(a, quarter(F)))))
    expected = (-1) ** ((F.q + 1) // 2) if kind == IRREDUCIBLE else (-1) ** ((F.q - 1) // 2)
    return val == expected


def verify_parity_lemmas(p: int, m: int) -> bool:
    if p % 2 == 0:
        raise ValueError("p must be odd")
    q = p**m
    base = ((p - 1) // 2) ** 2 * m
    return (base + (q + 1) // 2) % 2 == 1 and (base + (q - 1) // 2) % 2 == 0


def count_eta_trace_classes(F: ExtField) -> tuple[int, int, int, int]:
    """Counts of nonzero w by (eta(w), Tr(w) == 0):

    (square, Tr 0), (square, Tr != 0), (nonsquare, Tr 0), (nonsquare, Tr != 0).
    """
    _require_odd(F)
    el = F.elements()[1:]
    eta = F.eta_arr(el)
    tr0 = F.trace_arr(el) == 0
    sq = eta == 1
    return (int(np.sum(sq & tr0)), int(np.sum(sq & ~tr0)),
            int(np.sum(~sq & tr0)), int(np.sum(~sq & ~tr0)))


def i_power_real(e: int) -> int:
    """i^e for even e; odd exponents have no integer value."""
    if e % 2:
        raise ArithmeticError(f"i^{e} is not real")
    return 1 if e % 4 == 0 else -1


def eta_trace_closed_forms(p: int, m: int) -> tuple[int, int, int, int]:
    if m % 2 == 0:
        s = (p - 1) * p ** ((m - 2) // 2) * i_power_real((p - 1) * m // 2)
        t = p ** ((m - 2) // 2) * i_power_real((p - 1) * m // 2)
        vals = (p ** (m - 1) - 1 - s, (p - 1) * (p ** (m - 1) + t),
                p ** (m - 1) - 1 + s, (p - 1) * (p ** (m - 1) - t))
    else:
        vals = (p ** (m - 1) - 1, p ** (m - 1) * (p - 1), p ** (m - 1) - 1, p ** (m - 1) * (p - 1))
    assert all(v % 2 == 0 for v in vals)
    return tuple(v // 2 for v in vals)


def verify_lemma11(F: ExtField) -> bool:
    return count_eta_trace_classes(F) == eta_trace_closed_forms(F.p, F.n)
