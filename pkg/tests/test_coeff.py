from fractions import Fraction

import pytest

from algebra.coeff import (
    FieldSpec,
    cyclotomic_poly,
    from_domain,
    parse_scalar,
    primitive_root,
    root_power,
    serialize,
    sympy_domain,
    to_domain,
)


def test_cyclotomic_polys_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_polys_against_sympy():
    sp = pytest.importorskip("sympy")
    x = sp.Symbol("x")
    for n in range(1, 25):
        coeffs = sp.Poly(sp.cyclotomic_poly(n, x), x).all_coeffs()
        assert cyclotomic_poly(n) == tuple(int(c) for c in reversed(coeffs))


@pytest.mark.parametrize("p,n,root", [(7, 3, 2), (31, 3, 5), (13, 4, 5), (11, 5, 3)])
def test_primitive_root_prime_fields(p, n, root):
    e = primitive_root(FieldSpec.prime(p, n))
    assert e == root
    assert e ** n == 1
    assert all(e ** k != 1 for k in range(1, n))


def test_prime_field_without_root_is_rejected():
    with pytest.raises(ValueError, match="no primitive 5-th root"):
        FieldSpec.prime(7, 5)
    with pytest.raises(ValueError, match="no primitive 4-th root"):
        FieldSpec.prime(7, 4)
    with pytest.raises(ValueError):
        FieldSpec.parse("prime:7", 4)
    assert FieldSpec.prime(13, 4).n == 4


def test_cyclotomic_root_relations(q3):
    e = primitive_root(q3)
    assert e ** 3 == 1
    assert e != 1
    assert 1 + e + e ** 2 == 0
    assert root_power(q3, 4) == e
    assert root_power(q3, -1) == e ** 2


def test_cyclotomic_inverse(q3, rng):
    e = primitive_root(q3)
    # 1 + e = -e^2, so its inverse is -e
    assert (1 + e).inv() == -e
    checked = 0
    while checked < 50:
        x = q3.random_element(rng)
        if x.is_zero():
            continue
        assert x * x.inv() == 1
        assert x / x == 1
        checked += 1


def test_zero_has_no_inverse(q3, f7):
    with pytest.raises(ZeroDivisionError):
        q3.zero().inv()
    with pytest.raises(ZeroDivisionError):
        f7.one() / 0


def test_fractions_in_prime_field(f7):
    half = f7.element(Fraction(1, 2))
    assert half * 2 == 1
    assert half == 4
    with pytest.raises(ZeroDivisionError):
        f7.element(Fraction(1, 7))


def test_mixed_fields_rejected(f7, f31):
    with pytest.raises(ValueError):
        f7.one() + f31.one()


def test_serialize_and_parse(q3):
    x = q3.element([1, -2])
    assert serialize(x) == "1 - 2*e^1"
    assert serialize(q3.zero()) == "0"
    assert serialize(q3.element(Fraction(1, 2))) == "1/2"
    assert serialize(q3.element([0, 1])) == "e^1"
    assert parse_scalar("1 - 2*e", q3) == x
    assert parse_scalar(serialize(x), q3) == x
    assert parse_scalar("e^4", q3) == primitive_root(q3)
    with pytest.raises(ValueError):
        parse_scalar("x0 + 1", q3)


def test_field_parse_and_labels():
    assert FieldSpec.parse("prime:7", 3) == FieldSpec.prime(7, 3)
    assert FieldSpec.parse("31", 3) == FieldSpec.prime(31, 3)
    assert FieldSpec.parse("Cyclotomic", 5) == FieldSpec.cyclotomic(5)
    assert FieldSpec.prime(7, 3).label == "prime:7"
    assert FieldSpec.cyclotomic(4).label == "cyclotomic:4"
    assert FieldSpec.cyclotomic(4).proof_grade
    assert not FieldSpec.prime(13, 4).proof_grade
    assert FieldSpec.cyclotomic(5).degree == 4
    with pytest.raises(ValueError):
        FieldSpec.parse("reals", 3)
    with pytest.raises(ValueError):
        FieldSpec.prime(8, 3)


def test_small_inverses(f7, q3):
    assert f7.element(2).inv() == 4
    assert f7.one().inv() == 1
    e = primitive_root(q3)
    assert e.inv() == e ** 2 == q3.element([-1, -1])
    assert primitive_root(FieldSpec.prime(5, 1)) == 1


@pytest.mark.parametrize("field", [FieldSpec.prime(31, 3), FieldSpec.cyclotomic(5)])
def test_field_axioms_randomized(field, rng):
    for _ in range(40):
        a, b, c = (field.random_element(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == 0
        if not a.is_zero():
            assert a * a.inv() == 1
        assert parse_scalar(serialize(a), field) == a


@pytest.mark.parametrize("field", [FieldSpec.prime(31, 3), FieldSpec.cyclotomic(3), FieldSpec.cyclotomic(5), FieldSpec.cyclotomic(1)])
def test_sympy_domain_bridge(field, rng):
    K = sympy_domain(field)
    assert K.is_Field
    for _ in range(20):
        a, b = field.random_element(rng), field.random_element(rng)
        assert from_domain(to_domain(a), field) == a
        assert from_domain(to_domain(a) * to_domain(b), field) == a * b
    e = to_domain(primitive_root(field))
    assert e ** field.n == K.one
