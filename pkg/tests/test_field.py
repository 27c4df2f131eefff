import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ovoidcodes.field import (Basis, ExtField, FieldError, IRREDUCIBLE, REDUCIBLE_DISTINCT,
                              REDUCIBLE_DOUBLE, absolute_trace, dual_basis, is_irreducible,
                              least_irreducible, make_field, polynomial_basis, quadratic_character,
                              quadratic_root_test, quarter, relative_trace, subfield_embedding,
                              transform_basis)

import oracles

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2)]


# -- construction ------------------------------------------------------------------

def test_gf4_modulus():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_prime_field_modulus_is_x():
    F = make_field(3, 1)
    assert F.modulus == (0, 1) and F.q == 3


def test_gf8_modulus():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (2, 5)])
def test_least_irreducible_matches_trial_division(p, n):
    f = least_irreducible(p, n)
    assert oracles.has_root_free_factorisation(f, p)
    # every monic polynomial before it in integer order is reducible
    for low in itertools.product(range(p), repeat=n):
        g = list(reversed(low))  # increasing integer order of sum c_i p^i
        cand = list(g) + [1]
        if sum(c * p**i for i, c in enumerate(cand)) >= sum(c * p**i for i, c in enumerate(f)):
            continue
        assert not oracles.has_root_free_factorisation(cand, p)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2)])
def test_rabin_agrees_with_trial_division(p, n):
    for low in itertools.product(range(p), repeat=n):
        f = list(low) + [1]
        assert is_irreducible(f, p) == oracles.has_root_free_factorisation(f, p)


def test_non_prime_characteristic_rejected():
    with pytest.raises(FieldError):
        make_field(4, 1)


def test_size_cap():
    with pytest.raises(FieldError):
        ExtField(2, 21)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        ExtField(2, 2, modulus=[1, 0, 1])


def test_json_round_trip():
    F = make_field(3, 2)
    assert F.to_json() == {"p": 3, "n": 2, "modulus": [1, 0, 1]}
    assert ExtField.from_json(F.to_json()) == F


# -- arithmetic --------------------------------------------------------------------

def test_gf4_w_squared():
    F = make_field(2, 2)
    w = F(F.x)
    assert w * w == F([1, 1])


def test_gf3_inverse_of_two():
    F = make_field(3, 1)
    assert F(2).inverse() == F(2)


def test_cross_field_arithmetic_raises():
    with pytest.raises(FieldError):
        make_field(2, 2)(1) + make_field(2, 3)(1)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        make_field(5, 1)(0).inverse()


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (5, 2)])
def test_mul_matches_polynomial_oracle(p, n):
    F = make_field(p, n)
    mod = list(F.modulus)
    el = F.elements()
    table = F.mul_arr(el[:, None], el[None, :])
    for a in range(F.q):
        for b in range(F.q):
            assert table[a, b] == oracles.field_mul(a, b, p, n, mod)


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_primitive_element_has_full_order(p, n):
    F = make_field(p, n)
    assert F.order(F.primitive) == F.q - 1
    assert all(F.order(g) < F.q - 1 for g in range(1, F.primitive))


field_strategy = st.sampled_from(SMALL_FIELDS).map(lambda pn: make_field(*pn))


@st.composite
def field_and_elements(draw, count=3):
    F = draw(field_strategy)
    vals = [F(draw(st.integers(0, F.q - 1))) for _ in range(count)]
    return F, vals


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero() == a and a * F.one() == a
    assert a - a == F.zero()
    if a:
        assert a * a.inverse() == F.one()


@given(field_and_elements(count=2))
def test_frobenius_is_additive(data):
    F, (a, b) = data
    p = F.p
    assert (a + b) ** p == a**p + b**p


@given(field_and_elements(count=1))
def test_element_to_the_q_is_itself(data):
    F, (a,) = data
    assert a ** F.q == a


def test_array_and_scalar_ops_agree():
    F = make_field(3, 2)
    el = F.elements()
    for a in range(F.q):
        for b in range(F.q):
            assert F.add_arr(el, b)[a] == F.add(a, b)
            assert F.sub_arr(el, b)[a] == F.sub(a, b)
            assert F.mul_arr(el, b)[a] == F.mul(a, b)
    assert np.all(F.mul_arr(F.inv_arr(el[1:]), el[1:]) == 1)


# -- traces ------------------------------------------------------------------------

def test_trace_gf4_examples():
    F = make_field(2, 2)
    assert absolute_trace(F(0)) == F(0)
    assert absolute_trace(F(F.x)) == F(1)


def test_trace_gf9_of_one():
    F = make_field(3, 2)
    assert F.trace(1) == 2


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_trace_matches_frobenius_sum(p, n):
    F = make_field(p, n)
    mod = list(F.modulus)
    for a in range(F.q):
        t = oracles.trace_by_frobenius(a, p, n, mod)
        assert t < p  # lands in the prime field
        assert F.trace(a) == t


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_trace_is_balanced(p, n):
    F = make_field(p, n)
    counts = np.bincount(F.trace_arr(F.elements()), minlength=p)
    assert np.all(counts == F.q // p)


def test_relative_trace_gf16_to_gf4():
    F = make_field(2, 4)
    for a in range(F.q):
        expected = F.add(a, F.pow(a, 4))
        assert F.relative_trace(a, 2) == expected
        assert F.pow(expected, 4) == expected


def test_relative_trace_degenerate_cases():
    F = make_field(2, 4)
    for a in range(F.q):
        assert F.relative_trace(a, 4) == a
        assert F.relative_trace(a, 1) == F.trace(a)
    x = F(F.x)
    assert relative_trace(x, 1) == absolute_trace(x)


def test_relative_trace_needs_divisor():
    with pytest.raises(FieldError):
        make_field(2, 3).relative_trace(1, 2)


@pytest.mark.parametrize("p,n,s", [(2, 4, 2), (3, 2, 1), (2, 6, 3), (2, 6, 2)])
def test_relative_trace_transitive(p, n, s):
    F = make_field(p, n)
    emb = subfield_embedding(F, s)
    el = F.elements()
    inner = emb.down(F.relative_trace_arr(el, s))
    assert np.all(emb.small.trace_arr(inner) == F.trace_arr(el))


# -- quadratic character -----------------------------------------------------------

def test_eta_examples():
    assert quadratic_character(make_field(3, 2)(1)) == 1
    F9 = make_field(3, 2)
    assert quadratic_character(F9(F9.neg(1))) == 1
    F3 = make_field(3, 1)
    assert quadratic_character(F3(2)) == -1


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2), (5, 2), (3, 3), (7, 2)])
def test_eta_by_square_listing(p, n):
    F = make_field(p, n)
    el = F.elements()
    squares = set(F.mul_arr(el, el)[1:].tolist())
    eta = F.eta_arr(el[1:])
    assert np.sum(eta == 1) == (F.q - 1) // 2
    for a, e in zip(el[1:].tolist(), eta.tolist()):
        assert (e == 1) == (a in squares)


@given(field_and_elements(count=2).filter(lambda d: d[0].p > 2))
def test_eta_is_multiplicative(data):
    F, (a, b) = data
    if a and b:
        assert quadratic_character(a * b) == quadratic_character(a) * quadratic_character(b)


def test_eta_needs_odd_characteristic():
    with pytest.raises(FieldError):
        quadratic_character(make_field(2, 2)(1))


# -- x^2 + x + a -------------------------------------------------------------------

def _brute_class(F, a):
    roots = [x for x in range(F.q) if F.add(F.add(F.mul(x, x), x), a) == 0]
    if not roots:
        return IRREDUCIBLE
    return REDUCIBLE_DOUBLE if len(roots) == 1 else REDUCIBLE_DISTINCT


def test_root_test_examples():
    F = make_field(3, 2)
    assert quadratic_root_test(F(0)) == REDUCIBLE_DISTINCT
    assert quadratic_root_test(F(quarter(F))) == REDUCIBLE_DOUBLE
    G = make_field(2, 2)
    assert quadratic_root_test(G(G.x)) == IRREDUCIBLE


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_root_test_matches_root_search(p, n):
    F = make_field(p, n)
    for a in range(F.q):
        assert quadratic_root_test(a, F) == _brute_class(F, a)


# -- subfields and bases -----------------------------------------------------------

@pytest.mark.parametrize("p,n,s", [(2, 4, 2), (2, 6, 2), (2, 6, 3), (3, 2, 1), (3, 4, 2)])
def test_embedding_is_a_field_homomorphism(p, n, s):
    F = make_field(p, n)
    emb = subfield_embedding(F, s)
    K = emb.small
    el = K.elements()
    up = emb.up(el)
    assert np.all(F.pow_arr(up, p**s) == up)
    assert np.all(emb.up(K.add_arr(el[:, None], el[None, :])) == F.add_arr(up[:, None], up[None, :]))
    assert np.all(emb.up(K.mul_arr(el[:, None], el[None, :])) == F.mul_arr(up[:, None], up[None, :]))
    assert np.all(emb.down(up) == el)


def _trace_gram(B, D):
    F = B.field
    emb = subfield_embedding(F, B.s)
    return [[int(emb.down(F.relative_trace(F.mul(b, d), B.s))) for d in D] for b in B]


def test_dual_basis_gf4():
    F = make_field(2, 2)
    B = Basis(F, (1, F.x))
    D = dual_basis(B)
    # direct evaluation of the four trace values
    assert [[F.trace(F.mul(b, d)) for d in D] for b in B] == [[1, 0], [0, 1]]


def test_polynomial_basis_gf8_gram():
    F = make_field(2, 3)
    B = polynomial_basis(F)
    assert B.elements == (1, 2, 4)
    gram = [[F.trace(F.mul(b, c)) for c in B] for b in B]
    brute = [[oracles.trace_by_frobenius(oracles.field_mul(b, c, 2, 3, list(F.modulus)), 2, 3,
                                         list(F.modulus)) for c in B] for b in B]
    assert gram == brute


@pytest.mark.parametrize("p,n,s", [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 4, 2), (5, 2, 1), (3, 3, 1)])
def test_dual_basis_properties(p, n, s):
    F = make_field(p, n)
    B = polynomial_basis(F, s)
    D = dual_basis(B)
    t = len(B)
    assert _trace_gram(B, D) == [[int(i == j) for j in range(t)] for i in range(t)]
    assert dual_basis(D).elements == B.elements


def test_dependent_basis_rejected():
    F = make_field(2, 2)
    with pytest.raises(FieldError):
        Basis(F, (1, 1))


def test_transformed_basis_dual_is_involutive():
    from ovoidcodes.linalg import random_invertible
    F = make_field(3, 3)
    B = transform_basis(polynomial_basis(F), random_invertible(make_field(3, 1), 3, 7))
    assert dual_basis(dual_basis(B)).elements == B.elements
