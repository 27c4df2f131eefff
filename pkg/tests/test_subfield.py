import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ovoidcodes.codes import (LinearCode, apply_monomial, codewords, dual_code,
                              dual_min_distance_upto, min_distance)
from ovoidcodes.families import elliptic_code, pick_a, tits_code
from ovoidcodes.field import make_field, subfield_embedding
from ovoidcodes.linalg import Mat, random_invertible, same_row_space
from ovoidcodes.subfield import (make_context, random_context, subfield_code, subfield_code_expand,
                                 subfield_code_trace_oracle, subfield_subcode, verify_basis_independence,
                                 verify_generator_independence, verify_trace_representation)


def ovoid(p, m):
    F = make_field(p, m)
    return F, elliptic_code(F, pick_a(F))


def test_full_degree_is_identity():
    F, C = ovoid(2, 2)
    S = subfield_code(C, s=2)
    assert S.field == F
    assert same_row_space(S.generator, C.generator)


def test_dimensions():
    _, C = ovoid(2, 2)
    assert subfield_code(C).k == 7
    assert subfield_code(tits_code(make_field(2, 3))).k == 10


def test_expansion_keeps_every_row():
    _, C = ovoid(3, 2)
    assert subfield_code(C).generator.rows == 8


def test_zero_message():
    _, C = ovoid(2, 2)
    assert not np.any(subfield_code_trace_oracle(C, [0, 0, 0, 0]))


def test_trace_formula_for_the_quadric():
    F, C = ovoid(3, 2)
    a = pick_a(F)
    rng = np.random.default_rng(5)
    pts = [tuple(c) for c in C.generator.data.T.tolist()]
    for _ in range(10):
        u, v, w, h = (int(t) for t in rng.integers(0, F.q, size=4))
        word = subfield_code_trace_oracle(C, [u, v, w, h])
        for (x, y, _, last), got in zip(pts[:-1], word[:-1].tolist()):
            assert last == 1
            g = F.add(F.add(F.mul(u, x), F.mul(v, y)),
                      F.mul(w, F.add(F.add(F.mul(x, x), F.mul(x, y)), F.mul(a, F.mul(y, y)))))
            # the constant term contributes Tr(h), which runs over all of GF(p)
            assert got == (F.trace(g) + F.trace(h)) % F.p
        assert word[-1] == F.trace(w)


@pytest.mark.parametrize("p,m,s", [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 4, 1), (2, 4, 2)])
def test_trace_representation(p, m, s):
    F, C = ovoid(p, m)
    assert verify_trace_representation(C, make_context(F, s))


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3)])
def test_trace_representation_with_random_basis(p, m):
    F, C = ovoid(p, m)
    assert verify_trace_representation(C, random_context(F, 1, 9))


def test_basis_independence_gf9():
    F, C = ovoid(3, 2)
    ctx = make_context(F)
    assert verify_basis_independence(C, ctx, ctx)
    assert verify_basis_independence(C, ctx, random_context(F, 1, 17))


@pytest.mark.parametrize("p,m,s", [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 4, 2), (5, 2, 1)])
def test_basis_independence_random_pairs(p, m, s):
    F, C = ovoid(p, m)
    for seed in range(5):
        assert verify_basis_independence(C, random_context(F, s, seed), random_context(F, s, seed + 50))


def test_generator_independence():
    F, C = ovoid(2, 2)
    ctx = make_context(F)
    for seed in range(10):
        assert verify_generator_independence(C, ctx, seed)
    # T = identity
    S1 = subfield_code_expand(C, ctx)
    S2 = subfield_code_expand(LinearCode(C.generator), ctx)
    assert same_row_space(S1.generator, S2.generator)


def test_subfield_code_is_not_subcode():
    F, C = ovoid(2, 2)
    sub = subfield_subcode(C)
    assert sub.k <= 4 and sub.k != subfield_code(C).k


def _brute_subcode_size(C, s):
    F = C.field
    inside = set(subfield_embedding(F, s).to_big.tolist())
    return sum(all(v in inside for v in w) for w in codewords(C).tolist())


@pytest.mark.parametrize("p,m,s", [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 4, 2)])
def test_subcode_matches_brute_force(p, m, s):
    F, C = ovoid(p, m)
    if F.q ** 4 > 2**16:
        pytest.skip("too many codewords")
    sub = subfield_subcode(C, s)
    assert (p**s) ** sub.k == _brute_subcode_size(C, s)


def test_subcode_of_subfield_defined_code():
    F = make_field(2, 2)
    C = LinearCode(Mat(F, [[1, 0, 1, 1], [0, 1, 1, 0]]))
    sub = subfield_subcode(C)
    assert sub.k == 2
    K = sub.field
    assert same_row_space(sub.generator, Mat(K, [[1, 0, 1, 1], [0, 1, 1, 0]]))


def test_subcode_of_zero_code():
    F = make_field(3, 2)
    C = LinearCode(Mat(F, np.zeros((1, 3), dtype=np.int64)))
    assert subfield_subcode(C).k == 0


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2)])
def test_permutation_transfer(p, m):
    F, C = ovoid(p, m)
    ctx = make_context(F)
    S = subfield_code_expand(C, ctx)
    rng = np.random.default_rng(p * 10 + m)
    for _ in range(5):
        perm = rng.permutation(C.n)
        scal = rng.integers(1, p, size=C.n)  # nonzero prime-field scalars commute with the trace
        lhs = subfield_code_expand(apply_monomial(C, perm, emb_up(F, scal)), ctx)
        rhs = apply_monomial(S, perm, scal)
        assert same_row_space(lhs.generator, rhs.generator)


def emb_up(F, scal):
    return subfield_embedding(F, 1).up(scal)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 4)]), st.integers(3, 16),
       st.integers(1, 3), st.integers(0, 2**31))
def test_subfield_dual_distance_not_smaller(pn, n, k, seed):
    F = make_field(*pn)
    rng = np.random.default_rng(seed)
    C = LinearCode(Mat(F, rng.integers(0, F.q, size=(k, n))))
    d = dual_min_distance_upto(C, 5)
    ds = dual_min_distance_upto(subfield_code(C), 5)
    if d.exact:
        assert ds.value >= d.value
    elif ds.exact:
        pytest.fail(f"subfield dual distance {ds.value} below the bound {d}")


def test_subfield_dual_distance_by_enumeration():
    # same inequality, with both sides from full enumeration of the duals
    F = make_field(2, 2)
    rng = np.random.default_rng(4)
    for _ in range(10):
        C = LinearCode(Mat(F, rng.integers(0, F.q, size=(6, 8))))
        S = subfield_code(C)
        d = min_distance(dual_code(C))
        ds = min_distance(dual_code(S))
        if d is not None:
            assert ds is None or ds >= d
