import pytest

from algebra.coeff import FieldSpec
from algebra.groebner import member, normal_form
from algebra.multipoly import Poly, RingHom, apply_hom, parse_poly, product
from fermat.arrangement import (
    LinearPrime,
    build_config,
    c_prime,
    enumerate_flats,
    expected_prime_count,
    fermat_form,
    hyperplane_factors,
    j_prime,
    verify_lemma1,
)


@pytest.mark.parametrize("N,n,field,count", [
    (2, 3, FieldSpec.prime(7, 3), 12),
    (3, 3, FieldSpec.prime(7, 3), 42),
    (2, 5, FieldSpec.prime(11, 5), 28),
    (2, 4, FieldSpec.cyclotomic(4), 19),
])
def test_prime_counts(N, n, field, count):
    cfg = build_config(N, n, field)
    assert len(cfg.primes) == count == expected_prime_count(N, n)
    assert len(cfg.c_primes) == (N + 1) * N // 2


def test_prime_order_and_labels(q3):
    cfg = build_config(2, 3, q3)
    labels = [P.label for P in cfg.primes]
    assert labels[:2] == ["J(0,1,2;0,0)", "J(0,1,2;0,1)"]
    assert labels[-3:] == ["C(0,1)", "C(0,2)", "C(1,2)"]
    assert cfg.prime("C(0,2)").forms == (Poly.var(0, 3, q3), Poly.var(2, 3, q3))
    with pytest.raises(KeyError):
        cfg.prime("C(0,3)")


def test_fermat_form_small(q3):
    F = fermat_form(2, 3, q3)
    expected = parse_poly("(x0^3 - x1^3)*(x0^3 - x2^3)*(x1^3 - x2^3)", 3, q3)
    assert F == expected
    assert F.degree() == 9
    assert len(fermat_form(3, 3, q3)) == 24


def test_build_config_rejects_bad_input(q3, f7):
    with pytest.raises(ValueError):
        build_config(1, 3, q3)
    with pytest.raises(ValueError):
        build_config(2, 2, FieldSpec.cyclotomic(2))
    with pytest.raises(ValueError):
        build_config(2, 4, f7)
    with pytest.raises(ValueError):
        build_config(2, 5, FieldSpec.prime(7, 5))


def test_dependent_forms_rejected(q3):
    x0 = Poly.var(0, 3, q3)
    with pytest.raises(ValueError):
        LinearPrime(("C", 0, 1), (x0, x0.scale(2)))


def test_fermat_form_vanishes_on_every_prime(cfg23_f7):
    for P in cfg23_f7.primes:
        assert member(cfg23_f7.F, P.ideal())


def test_lemma1_small(cfg23_f7, cfg33_f7):
    for cfg in (cfg23_f7, cfg33_f7):
        report = verify_lemma1(cfg)
        assert report.passed
        assert report.flats_found == len(cfg.primes)
        for row in report.rows:
            assert row["vanishing_factors"] == (3 if row["prime"].startswith("J") else cfg.n)
        assert all(report.c_generation.values())


def test_lemma1_n5():
    report = verify_lemma1(build_config(2, 5, FieldSpec.prime(11, 5)))
    assert report.passed
    assert report.flats_found == 28


def test_lemma1_flags_missing_prime(f7):
    cfg = build_config(2, 3, f7)
    cfg.primes = cfg.primes[1:]
    report = verify_lemma1(cfg)
    assert not report.passed
    assert len(report.extra) == 1
    assert report.extra[0]["count"] == 3


def test_enumerate_flats_on_coordinate_planes(q3):
    x = [Poly.var(i, 3, q3) for i in range(3)]
    # three lines through a point in P^2: one flat
    flats = enumerate_flats([x[0], x[1], x[0] - x[1]], 3)
    assert len(flats) == 1
    assert flats[0].factors == (0, 1, 2)
    assert enumerate_flats([x[0], x[1], x[2]], 3) == []


def test_hyperplane_factors_and_prime_membership(q3):
    cfg = build_config(2, 3, q3)
    factors = hyperplane_factors(cfg)
    assert len(factors) == 9
    P = j_prime(0, 1, 2, 1, 2, 3, q3)
    assert P.contains_form(P.forms[0] - P.forms[1])
    assert not P.contains_form(Poly.var(0, 3, q3))
    assert c_prime(0, 1, 3, q3).kind == "C"


def test_configuration_dump_is_stable(q3):
    a = build_config(2, 3, q3)
    b = build_config(2, 3, q3)
    assert a.digest() == b.digest()
    data = a.to_dict()
    assert data["schema"] == 1
    assert data["counts"] == {"primes": 12, "J": 9, "C": 3}
    assert data["degree_F"] == 9
    assert build_config(2, 3, FieldSpec.prime(7, 3)).digest() != a.digest()


def test_factors_multiply_back_to_f(q3):
    cfg = build_config(2, 3, q3)
    assert product(hyperplane_factors(cfg), 3, q3) == cfg.F


def test_f_is_symmetric_up_to_sign(q3):
    cfg = build_config(3, 3, q3)
    swap = RingHom(tuple(Poly.var(i, 4, q3) for i in (1, 0, 2, 3)))
    image = apply_hom(swap, cfg.F)
    assert image == cfg.F or image == -cfg.F


def test_no_two_primes_define_the_same_flat(cfg23_f7):
    keys = [P.key for P in cfg23_f7.primes]
    assert len(set(keys)) == len(keys)
    P = cfg23_f7.prime("J(0,1,2;0,0)")
    assert normal_form(parse_poly("x1 - x2", 3, cfg23_f7.field), P.ideal().groebner()).is_zero()
