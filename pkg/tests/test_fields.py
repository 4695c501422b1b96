import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from a1lab.errors import InputError, ReductionError, UnsupportedError
from a1lab.exactalg import (ExtensionField, PrimeField, RationalField, embedding, extension_of,
                            field_from_json, is_irreducible, is_prime, make_extension,
                            parse_field_option)


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_is_prime_matches_trial_division():
    for n in range(-3, 3000):
        assert is_prime(n) == naive_is_prime(n)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))
    assert is_prime(18446744073709551557)  # largest prime below 2^64
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_prime_field_rejects_composite():
    with pytest.raises(InputError):
        PrimeField(9)


def test_make_extension_degree_one_is_prime_field():
    assert make_extension(3, 1) == PrimeField(3)


def brute_irreducible_quadratics(p):
    # monic x^2 + b x + c with no root in F_p, scanned c0 fastest like the encoding
    out = []
    for code in range(p * p):
        c, b = code % p, code // p
        if all((x * x + b * x + c) % p for x in range(p)):
            out.append((c, b, 1))
    return out


@pytest.mark.parametrize("p", [3, 5, 7])
def test_make_extension_first_irreducible_quadratic(p):
    K = make_extension(p, 2)
    assert isinstance(K, ExtensionField)
    assert tuple(K.modulus) == brute_irreducible_quadratics(p)[0]
    assert make_extension(p, 2) == K


def test_known_moduli():
    assert tuple(make_extension(3, 2).modulus) == (1, 0, 1)
    assert tuple(make_extension(7, 3).modulus) == (2, 0, 0, 1)
    assert tuple(make_extension(7, 4).modulus) == (1, 1, 0, 0, 1)


def test_extension_degree_out_of_range():
    with pytest.raises(UnsupportedError):
        make_extension(3, 5)
    with pytest.raises(UnsupportedError):
        make_extension(3, 0)


def test_char_two_construction_allowed():
    K = make_extension(2, 2)
    assert K.order == 4 and tuple(K.modulus) == (1, 1, 1)


def test_is_irreducible_quartic_with_quadratic_factor():
    # (x^2+1)^2 = x^4 + 2x^2 + 1 over F_3 has no roots but is reducible
    assert not is_irreducible([1, 0, 2, 0, 1], 3)


@pytest.mark.parametrize("p,r", [(3, 2), (5, 2), (7, 2), (3, 3)])
def test_field_axioms_exhaustive_small(p, r):
    K = make_extension(p, r)
    elems = list(K.elements())
    assert len(elems) == p**r
    for a in elems[1:]:
        assert K.mul(a, K.inv(a)) == K.one
    rng = random.Random(1)
    for _ in range(300):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.add(a, K.neg(a)) == K.zero


def test_mul_against_polynomial_reduction():
    K = make_extension(5, 2)  # x^2 + 2
    a, b = K.from_digits([1, 2]), K.from_digits([3, 4])  # 1+2x, 3+4x
    # (1+2x)(3+4x) = 3 + 10x + 8x^2 = 3 + 0x + 8*(-2) = -13 = 2 mod 5
    assert K.digits(K.mul(a, b)) == [2, 0]


@pytest.mark.parametrize("p,r", [(3, 2), (5, 3), (7, 2), (2, 3), (7, 4)])
def test_frobenius_is_ring_homomorphism(p, r):
    K = make_extension(p, r)
    rng = random.Random(p * 10 + r)
    for _ in range(120):
        a, b = K.random_element(rng), K.random_element(rng)
        assert K.frobenius(K.add(a, b)) == K.add(K.frobenius(a), K.frobenius(b))
        assert K.frobenius(K.mul(a, b)) == K.mul(K.frobenius(a), K.frobenius(b))
        assert K.pow(a, p) == K.frobenius(a)


def test_rational_field_exact():
    Q = RationalField()
    assert Q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert Q.from_literal("-3/6") == Fraction(-1, 2)
    assert Q.to_literal(Fraction(4, 2)) == "2"


def test_reduction_of_rationals():
    F5 = PrimeField(5)
    assert F5.coerce(Fraction(1, 2)) == 3
    with pytest.raises(ReductionError):
        F5.coerce(Fraction(1, 5))


def test_embedding_into_extension_is_homomorphism():
    K = make_extension(3, 2)
    L = make_extension(3, 4)
    emb = embedding(K, L)
    for a in K.elements():
        for b in K.elements():
            assert emb(K.mul(a, b)) == L.mul(emb(a), emb(b))
            assert emb(K.add(a, b)) == L.add(emb(a), emb(b))
    assert len({emb(a) for a in K.elements()}) == 9


def test_extension_of_prime_field():
    assert extension_of(PrimeField(5), 2) == make_extension(5, 2)
    assert extension_of(make_extension(3, 2), 2) == make_extension(3, 4)


@given(st.integers(0, 48), st.integers(0, 48))
def test_extension_literals_roundtrip(a, b):
    K = make_extension(7, 2)
    assert K.from_literal(K.to_literal(a)) == a
    assert K.from_literal(K.to_literal(K.mul(a, b))) == K.mul(a, b)


def test_field_json_roundtrip():
    for K in (RationalField(), PrimeField(11), make_extension(5, 3)):
        assert field_from_json(K.to_json()) == K


def test_parse_field_option():
    assert parse_field_option("7") == PrimeField(7)
    assert parse_field_option("5,2") == make_extension(5, 2)
    with pytest.raises(InputError):
        parse_field_option("6")
    with pytest.raises(InputError):
        parse_field_option("x")
