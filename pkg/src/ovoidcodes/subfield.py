"""Subfield codes, their trace description, and subfield subcodes.

For a code C over GF(p^n) and a subfield GF(p^s), the subfield code replaces
every generator entry g by the column (Tr(g a_1), ..., Tr(g a_t)), where
{a_l} is a basis of GF(p^n) over GF(p^s) and Tr is the relative trace.
Codes over the subfield are returned over ``make_field(p, s)`` via a fixed
embedding; see :class:`~ovoidcodes.field.SubfieldEmbedding`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import LinearCode, check_budget
from .field import (Basis, ExtField, FieldElement, FieldError, dual_basis,
                    polynomial_basis, subfield_embedding, transform_basis)
from .linalg import Mat, kernel_basis, matmul, random_invertible, same_row_space


@dataclass(frozen=True)
class SubfieldContext:
    field: ExtField
    s: int
    basis: Basis
    dual: Basis

    @property
    def embedding(self):
        return subfield_embedding(self.field, self.s)

    @property
    def subfield(self) -> ExtField:
        return self.embedding.small

    @property
    def degree(self) -> int:
        return self.field.n // self.s


def make_context(F: ExtField, s: int = 1, basis: Basis | Sequence[int] | None = None) -> SubfieldContext:
    if s < 1 or F.n % s:
        raise FieldError(f"{s} does not divide {F.n}")
    if basis is None:
        basis = polynomial_basis(F, s)
    elif not isinstance(basis, Basis):
        basis = Basis(F, tuple(int(b) for b in basis), s)
    if basis.field != F or basis.s != s:
        raise FieldError("basis does not belong to this tower")
    return SubfieldContext(F, s, basis, dual_basis(basis))


def random_context(F: ExtField, s: int = 1, seed: int | None = None) -> SubfieldContext:
    """Polynomial basis pushed through a random invertible matrix over the subfield."""
    base = polynomial_basis(F, s)
    K = subfield_embedding(F, s).small
    T = random_invertible(K, len(base), seed)
    return make_context(F, s, transform_basis(base, T))


def _check_field(C: LinearCode, ctx: SubfieldContext) -> None:
    if C.field != ctx.field:
        raise FieldError("code field does not match the subfield context")


def subfield_code_expand(C: LinearCode, ctx: SubfieldContext) -> LinearCode:
    """Subfield code from the literal block expansion of C's generator.

    Row l of block i is (Tr(g_i1 a_l), ..., Tr(g_in a_l)). All k * (n/s) rows
    are kept; the dimension is the rank.
    """
    _check_field(C, ctx)
    F, emb = ctx.field, ctx.embedding
    G = C.generator.data
    alphas = np.array(ctx.basis.elements, dtype=np.int64)
    prods = F.mul_arr(G[:, None, :], alphas[None, :, None])  # (k, t, n)
    traced = F.relative_trace_arr(prods, ctx.s).reshape(-1, C.n)
    return LinearCode(Mat(emb.small, emb.down(traced)), name=f"subfield code of {C.name}".strip())


def subfield_code(C: LinearCode, s: int = 1) -> LinearCode:
    return subfield_code_expand(C, make_context(C.field, s))


def subfield_code_trace_oracle(C: LinearCode, message: Sequence[int | FieldElement],
                               s: int = 1) -> np.ndarray:
    """Codeword (Tr(sum_i a_i g_i1), ..., Tr(sum_i a_i g_in)) over the subfield."""
    F = C.field
    if len(message) != C.generator.rows:
        raise ValueError("message length must equal the number of generator rows")
    word = C.encode(message)
    emb = subfield_embedding(F, s)
    return emb.down(F.relative_trace_arr(word, s))


def trace_oracle_image(C: LinearCode, s: int = 1, budget_log2: float = 18) -> np.ndarray:
    """Distinct trace-oracle codewords over every message in GF(p^n)^k0."""
    F = C.field
    k0 = C.generator.rows
    check_budget(F.q, k0, budget_log2)
    words = np.zeros((1, C.n), dtype=np.int64)
    for g in C.generator.data:
        scaled = F.mul_arr(F.elements()[:, None], g[None, :])
        words = F.add_arr(words[:, None, :], scaled[None, :, :]).reshape(-1, C.n)
        words = np.unique(words, axis=0)
    emb = subfield_embedding(F, s)
    return np.unique(emb.down(F.relative_trace_arr(words, s)), axis=0)


def verify_trace_representation(C: LinearCode, ctx: SubfieldContext, budget_log2: float = 18) -> bool:
    """Set equality of the trace-oracle image and the expanded code's codewords."""
    from .codes import codewords
    oracle = trace_oracle_image(C, ctx.s, budget_log2)
    expanded = codewords(subfield_code_expand(C, ctx), budget_log2)
    expanded = np.unique(expanded, axis=0)
    return oracle.shape == expanded.shape and bool(np.all(oracle == expanded))


def verify_basis_independence(C: LinearCode, ctx1: SubfieldContext, ctx2: SubfieldContext) -> bool:
    if ctx1.field != ctx2.field or ctx1.s != ctx2.s:
        raise FieldError("contexts describe different towers")
    return same_row_space(subfield_code_expand(C, ctx1).generator,
                          subfield_code_expand(C, ctx2).generator)


def verify_generator_independence(C: LinearCode, ctx: SubfieldContext, seed: int | None = None) -> bool:
    """Expanding T * G for a random invertible T gives the same row space."""
    T = random_invertible(C.field, C.generator.rows, seed)
    other = LinearCode(matmul(T, C.generator))
    return same_row_space(subfield_code_expand(C, ctx).generator,
                          subfield_code_expand(other, ctx).generator)


def subfield_subcode(C: LinearCode, s: int = 1) -> LinearCode:
    """Codewords of C whose coordinates all lie in GF(p^s), as a code over GF(p^s).

    Messages are written as m_i = sum_l t_il a_l over the polynomial basis,
    which starts with 1. A codeword coordinate c lies in the subfield exactly
    when its dual-basis coordinates Tr(c b_l) vanish for l >= 1, which gives
    linear constraints on t over the subfield.
    """
    F = C.field
    ctx = make_context(F, s)
    emb = ctx.embedding
    K = emb.small
    G = C.basis().data
    k, n = G.shape
    if k == 0:
        return LinearCode(Mat(K, np.zeros((0, n), dtype=np.int64)))
    alphas = np.array(ctx.basis.elements, dtype=np.int64)
    betas = np.array(ctx.dual.elements, dtype=np.int64)
    t = len(alphas)
    # unknown (i, l) contributes alpha_l * g_i to the codeword
    contrib = F.mul_arr(alphas[None, :, None], G[:, None, :]).reshape(k * t, n)
    if t == 1:
        solutions = np.eye(k, dtype=np.int64)
    else:
        cons = F.mul_arr(contrib[:, None, :], betas[None, 1:, None])  # (kt, t-1, n)
        cons = emb.down(F.relative_trace_arr(cons, s)).reshape(k * t, -1).T
        solutions = kernel_basis(Mat(K, cons)).data
    rows = []
    for sol in solutions:
        coeffs = emb.up(sol)
        word = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeffs.tolist(), contrib):
            if c:
                word = F.add_arr(word, F.mul_arr(c, row))
        rows.append(emb.down(word))
    data = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    return LinearCode(Mat(K, data), name=f"subfield subcode of {C.name}".strip())
