"""Finite fields GF(p^n) over the prime field.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` is the
coefficient of ``x**i`` modulo the field's irreducible polynomial. The
encoding gives array-friendly storage; :class:`FieldElement` wraps a single
value for scalar use, while the ``*_arr`` methods of :class:`ExtField` work on
numpy integer arrays and are what the enumeration code relies on.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_SIZE = 2**20


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low-to-high -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, f, p)


def _poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return _trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial given low-to-high."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob(k: int) -> list[int]:
        r = x
        for _ in range(k):
            r = _poly_powmod(r, p, f, p)
        return r

    if _poly_sub(frob(n), x, p):
        return False
    for r in prime_factors(n):
        g = _poly_gcd(f, _poly_sub(frob(n // r), x, p), p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p: int, n: int) -> list[int]:
    """Least monic irreducible of degree n, ordered by integer encoding."""
    for low in range(p**n):
        coeffs = [(low // p**i) % p for i in range(n)] + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")


# -- the field ---------------------------------------------------------------

class ExtField:
    """GF(p^n) represented over GF(p) with a fixed monic irreducible modulus."""

    def __init__(self, p: int, n: int, modulus: Sequence[int] | None = None,
                 max_size: int | None = DEFAULT_MAX_SIZE):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be >= 1")
        if max_size is not None and p**n > max_size:
            raise FieldError(f"GF({p}^{n}) exceeds the size limit {max_size}")
        if modulus is None:
            modulus = least_irreducible(p, n)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != n + 1 or not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is not a monic irreducible of degree {n}")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self._powers = np.array([p**i for i in range(n)], dtype=np.int64)
        self._build_tables()

    # construction ----------------------------------------------------------

    def _scalar_mul_poly(self, a: int, b: int) -> int:
        pa, pb = self.coeffs(a), self.coeffs(b)
        prod = _poly_mulmod(_trim(pa), _trim(pb), list(self.modulus), self.p)
        return sum(c * self.p**i for i, c in enumerate(prod))

    def _mul_by_const_table(self, g: int) -> np.ndarray:
        p, n = self.p, self.n
        if p == 2:
            mod_int = sum(c << i for i, c in enumerate(self.modulus))
            cur = np.arange(self.q, dtype=np.int64)
            acc = np.zeros_like(cur)
            for i in range(n):
                if (g >> i) & 1:
                    acc ^= cur
                cur = cur << 1
                cur ^= np.where(cur >> n, mod_int, 0)
            return acc
        digits = self.digits_arr(np.arange(self.q, dtype=np.int64))
        neg_mod = np.array([(-c) % p for c in self.modulus[:n]], dtype=np.int64)
        gd = self.coeffs(g)
        acc = np.zeros_like(digits)
        cur = digits
        for i in range(n):
            if gd[i]:
                acc = (acc + gd[i] * cur) % p
            top = cur[:, n - 1:n]
            shifted = np.concatenate([np.zeros((self.q, 1), dtype=np.int64), cur[:, :n - 1]], axis=1)
            cur = (shifted + top * neg_mod) % p
        return acc @ self._powers

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = prime_factors(order) if order > 1 else []
        prim = None
        for g in range(1, q):
            pw = [self._scalar_pow_poly(g, order // r) for r in factors]
            if all(v != 1 for v in pw):
                prim = g
                break
        assert prim is not None
        self.primitive = prim
        step = self._mul_by_const_table(prim).tolist()
        exp = [0] * order
        v = 1
        for k in range(order):
            exp[k] = v
            v = step[v]
        self._exp = np.array(exp, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[self._exp] = np.arange(order, dtype=np.int64)
        self._log = log
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self._exp[(-log[1:]) % order]
        self._inv = inv
        # Tr(x^i) for the monomial basis; the absolute trace is linear in digits.
        tr = []
        for i in range(self.n):
            xi = self.p**i
            s = 0
            for k in range(self.n):
                s = self.add(s, self.pow(xi, self.p**k))
            tr.append(s)
        self._trace_basis = np.array(tr, dtype=np.int64)

    def _scalar_pow_poly(self, a: int, e: int) -> int:
        res = _poly_powmod(_trim(self.coeffs(a)), e, list(self.modulus), self.p)
        return sum(c * self.p**i for i, c in enumerate(res))

    # identity --------------------------------------------------------------

    @property
    def descriptor(self) -> tuple:
        return (self.p, self.n, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExtField) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, n={self.n}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, d: dict) -> "ExtField":
        return cls(d["p"], d["n"], d.get("modulus"))

    # elements ----------------------------------------------------------------

    def __call__(self, value: int | Sequence[int]) -> "FieldElement":
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if not 0 <= v < self.q:
                raise FieldError(f"{v} is not an element encoding of GF({self.q})")
        else:
            v = self.from_coeffs(value)
        return FieldElement(self, v)

    def coeffs(self, v: int) -> list[int]:
        return [(int(v) // self.p**i) % self.p for i in range(self.n)]

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.n or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficient vector {list(coeffs)} for GF({self.q})")
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs))

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def x(self) -> int:
        """Encoding of the class of x (the image of 1 when n == 1)."""
        return self.p if self.n > 1 else 1 % self.q

    # scalar ops on encodings -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        return int(self.add_arr(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        return int(self.neg_arr(np.int64(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._inv[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return int(self._log[a])

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        from math import gcd
        return (self.q - 1) // gcd(self.q - 1, self.log(a))

    def prime_element(self, c: int) -> int:
        """Encoding of the integer c in the prime subfield."""
        return c % self.p

    # vectorized ops --------------------------------------------------------

    def digits_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.p

    def from_digits_arr(self, d) -> np.ndarray:
        return np.asarray(d, dtype=np.int64) @ self._powers

    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._powers.tolist():
            out += ((a // pw + b // pw) % self.p) * pw
        return out

    def neg_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.n == 1:
            return (-a) % self.p
        out = np.zeros_like(a)
        for pw in self._powers.tolist():
            out += ((-(a // pw)) % self.p) * pw
        return out

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a * b) % self.p
        la = self._log[a]
        lb = self._log[b]
        out = self._exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def pow_arr(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self._exp[(self._log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def trace_arr(self, a) -> np.ndarray:
        """Absolute trace Tr_{q/p}, returned as prime-field encodings."""
        return (self.digits_arr(a) @ self._trace_basis) % self.p

    def relative_trace_arr(self, a, s: int) -> np.ndarray:
        if s < 1 or self.n % s:
            raise FieldError(f"{s} does not divide {self.n}")
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        for j in range(self.n // s):
            out = self.add_arr(out, self.pow_arr(a, self.p ** (s * j)))
        return out

    def eta_arr(self, a) -> np.ndarray:
        if self.p == 2:
            raise FieldError("quadratic character needs odd characteristic")
        a = np.asarray(a, dtype=np.int64)
        val = np.where(self._log[a] % 2 == 0, 1, -1)
        return np.where(a == 0, 0, val)

    # ---------------------------------------------------------------------

    def trace(self, a: int) -> int:
        return int(self.trace_arr(np.int64(a)))

    def relative_trace(self, a: int, s: int) -> int:
        return int(self.relative_trace_arr(np.int64(a), s))

    def in_subfield(self, a, s: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return self.pow_arr(a, self.p**s) == a

    def subfield_elements(self, s: int) -> np.ndarray:
        if self.n % s:
            raise FieldError(f"{s} does not divide {self.n}")
        el = self.elements()
        return el[self.in_subfield(el, s)]


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, n: int, max_size: int | None) -> ExtField:
    return ExtField(p, n, max_size=max_size)


def make_field(p: int, n: int = 1, max_size: int | None = DEFAULT_MAX_SIZE) -> ExtField:
    """Deterministic GF(p^n) with the least monic irreducible modulus."""
    return _cached_field(p, n, max_size)


@dataclass(frozen=True)
class FieldElement:
    field: ExtField
    value: int

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("arithmetic between elements of different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.prime_element(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.prime_element(int(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.descriptor, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def to_json(self) -> list[int]:
        return self.coeffs

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return f"GF({self.field.q})[{' + '.join(terms) or '0'}]"


def absolute_trace(x: FieldElement) -> FieldElement:
    return FieldElement(x.field, x.field.trace(x.value))


def relative_trace(x: FieldElement, s: int) -> FieldElement:
    """Tr from GF(p^n) down to GF(p^s); the value stays in the big field."""
    return FieldElement(x.field, x.field.relative_trace(x.value, s))


def quadratic_character(x: FieldElement) -> int:
    return int(x.field.eta_arr(np.int64(x.value)))


IRREDUCIBLE = "irreducible"
REDUCIBLE_DISTINCT = "reducible_distinct"
REDUCIBLE_DOUBLE = "reducible_double"


def quadratic_root_test(a: FieldElement | int, field: ExtField | None = None) -> str:
    """Classify x^2 + x + a over the field of ``a``."""
    if isinstance(a, FieldElement):
        field, a = a.field, a.value
    F = field
    if F.p == 2:
        return IRREDUCIBLE if F.trace(a) == 1 else REDUCIBLE_DISTINCT
    disc = F.sub(1, F.mul(F.prime_element(4), a))
    if disc == 0:
        return REDUCIBLE_DOUBLE
    return REDUCIBLE_DISTINCT if F.eta_arr(np.int64(disc)) == 1 else IRREDUCIBLE


def quarter(F: ExtField) -> int:
    """Encoding of 4^{-1} in odd characteristic."""
    return F.inv(F.prime_element(4))


def a_values_by_class(F: ExtField) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {IRREDUCIBLE: [], REDUCIBLE_DISTINCT: [], REDUCIBLE_DOUBLE: []}
    for a in range(F.q):
        out[quadratic_root_test(a, F)].append(a)
    return out


# -- subfields and bases -----------------------------------------------------

class SubfieldEmbedding:
    """Isomorphism between make_field(p, s) and the fixed field of Frob^s in F."""

    def __init__(self, F: ExtField, s: int):
        if s < 1 or F.n % s:
            raise FieldError(f"{s} does not divide {F.n}")
        self.big = F
        self.s = s
        self.small = F if s == F.n and F == make_field(F.p, F.n, None) else make_field(F.p, s, None)
        K = self.small
        if K is F:
            to_big = F.elements()
        else:
            theta = self._find_root(F, K.modulus)
            # K element sum c_i x^i  ->  sum c_i theta^i
            theta_pows = np.array([F.pow(theta, i) for i in range(s)], dtype=np.int64)
            digits = K.digits_arr(K.elements())
            to_big = np.zeros(K.q, dtype=np.int64)
            for i in range(s):
                to_big = F.add_arr(to_big, F.mul_arr(digits[:, i] % F.p, theta_pows[i]))
        self.to_big = to_big
        to_small = np.full(F.q, -1, dtype=np.int64)
        to_small[to_big] = np.arange(K.q, dtype=np.int64)
        self.to_small = to_small

    @staticmethod
    def _find_root(F: ExtField, modulus: Sequence[int]) -> int:
        el = F.elements()
        acc = np.zeros(F.q, dtype=np.int64)
        for i, c in enumerate(modulus):
            if c:
                acc = F.add_arr(acc, F.mul_arr(F.prime_element(c), F.pow_arr(el, i)))
        roots = np.nonzero(acc == 0)[0]
        if roots.size == 0:
            raise FieldError("subfield modulus has no root in the big field")
        return int(roots[0])

    def down(self, a) -> np.ndarray:
        out = self.to_small[np.asarray(a, dtype=np.int64)]
        if np.any(out < 0):
            raise FieldError("value outside the subfield")
        return out

    def up(self, a) -> np.ndarray:
        return self.to_big[np.asarray(a, dtype=np.int64)]


@functools.lru_cache(maxsize=None)
def subfield_embedding(F: ExtField, s: int) -> SubfieldEmbedding:
    return SubfieldEmbedding(F, s)


@dataclass(frozen=True)
class Basis:
    """A basis of GF(p^n) over its subfield GF(p^s); elements are encodings."""
    field: ExtField
    elements: tuple[int, ...]
    s: int = 1

    def __post_init__(self):
        if len(self.elements) != self.field.n // self.s:
            raise FieldError("basis has the wrong number of elements")
        if _gram_rank(self) != len(self.elements):
            raise FieldError("elements are not linearly independent over the subfield")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _gram(B: Basis):
    from .linalg import Mat
    F, emb = B.field, subfield_embedding(B.field, B.s)
    el = np.array(B.elements, dtype=np.int64)
    prods = F.mul_arr(el[:, None], el[None, :])
    return Mat(emb.small, emb.down(F.relative_trace_arr(prods, B.s)))


def _gram_rank(B: Basis) -> int:
    from .linalg import rank
    return rank(_gram(B))


def polynomial_basis(F: ExtField, s: int = 1) -> Basis:
    """{1, x, ..., x^(n/s - 1)}; x generates F over every subfield."""
    return Basis(F, tuple(F.pow(F.x, i) if F.n > 1 else 1 for i in range(F.n // s)), s)


def dual_basis(B: Basis) -> Basis:
    """The basis {b_j} with Tr(a_i b_j) = [i == j]."""
    from .linalg import inverse
    F, emb = B.field, subfield_embedding(B.field, B.s)
    ginv = inverse(_gram(B)).data
    el = np.array(B.elements, dtype=np.int64)
    out = []
    for j in range(len(el)):
        coeffs = emb.up(ginv[:, j])
        terms = F.mul_arr(coeffs, el)
        acc = 0
        for t in terms.tolist():
            acc = F.add(acc, t)
        out.append(acc)
    return Basis(F, tuple(out), B.s)


def transform_basis(B: Basis, T) -> Basis:
    """New basis a'_j = sum_i T[i, j] a_i for an invertible matrix T over the subfield."""
    F, emb = B.field, subfield_embedding(B.field, B.s)
    T = np.asarray(getattr(T, "data", T), dtype=np.int64)
    el = np.array(B.elements, dtype=np.int64)
    out = []
    for j in range(len(el)):
        terms = F.mul_arr(emb.up(T[:, j]), el)
        acc = 0
        for t in terms.tolist():
            acc = F.add(acc, t)
        out.append(acc)
    return Basis(F, tuple(out), B.s)


def elements_from_json(F: ExtField, data: Iterable[Sequence[int]]) -> list[int]:
    return [F.from_coeffs(c) for c in data]
