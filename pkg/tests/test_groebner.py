from fractions import Fraction

import pytest

from algebra.coeff import FieldSpec
from algebra.groebner import (
    Ideal,
    ResourceGuard,
    ResourceLimitExceeded,
    buchberger,
    contains,
    dump_basis,
    intersect,
    intersect_all,
    is_groebner,
    member,
    normal_form,
    power,
    same_ideal,
)
from algebra.multipoly import GREVLEX, LEX, Poly, parse_poly, random_poly

F31 = FieldSpec.prime(31, 3)


def _random_ideal(rng, nvars, field, count, max_degree=3):
    gens = []
    while len(gens) < count:
        g = random_poly(rng, nvars, field, max_degree=max_degree, max_terms=3)
        if not g.is_zero():
            gens.append(g)
    return Ideal(tuple(gens), nvars, field)


def test_textbook_basis(rational):
    I = Ideal.of([parse_poly("x0^2 - x1", 2, rational), parse_poly("x0*x1 - 1", 2, rational)])
    G = I.groebner(LEX)
    assert G.reduced
    assert {g.to_text(LEX) for g in G.basis} == {"x0 - x1^2", "x1^3 - 1"}
    assert is_groebner(G)


def test_unit_ideal(rational):
    I = Ideal.of([parse_poly("x0", 2, rational), parse_poly("x0 + 1", 2, rational)])
    G = I.groebner()
    assert G.is_unit()
    assert G.basis == (Poly.one(2, rational),)


def test_randomized_engine_properties(rng):
    guard = ResourceGuard(max_degree=30, max_basis=400, time_budget=300)
    for trial in range(200):
        nvars = 2 + trial % 2
        I = _random_ideal(rng, nvars, F31, 2)
        G = buchberger(I, GREVLEX, guard)
        assert is_groebner(G)
        for g in I.generators:
            assert normal_form(g, G).is_zero()
        f = random_poly(rng, nvars, F31, max_degree=4, max_terms=4)
        r = normal_form(f, G)
        assert normal_form(r, G) == r
        assert normal_form(f - r, G).is_zero()


def test_intersection_membership_randomized(rng):
    guard = ResourceGuard(max_degree=30, max_basis=400, time_budget=300)
    outcomes = {True: 0, False: 0}
    for trial in range(200):
        nvars = 2 + trial % 2
        count = 2 if nvars == 2 else 2 + (trial // 2) % 2
        degree = 4 if nvars == 2 else 2
        I = _random_ideal(rng, nvars, F31, count, degree)
        J = _random_ideal(rng, nvars, F31, count, degree)
        K = intersect(I, J, guard)
        for g in K.generators:
            assert member(g, I) and member(g, J)
        assert member(I.generators[0] * J.generators[-1], K)
        cofactor = random_poly(rng, nvars, F31, max_degree=2, max_terms=2)
        candidates = [
            random_poly(rng, nvars, F31, max_degree=4, max_terms=3),
            I.generators[-1] * cofactor,
            I.generators[0] * J.generators[0] * cofactor + J.generators[-1],
        ]
        for f in candidates:
            inside = member(f, K)
            assert inside == (member(f, I) and member(f, J))
            outcomes[inside] += 1
    assert outcomes[True] > 0 and outcomes[False] > 0


def test_intersection_of_coordinate_lines(rational):
    x = [Poly.var(i, 3, rational) for i in range(3)]
    I = Ideal.of([x[0], x[1]])
    J = Ideal.of([x[0], x[2]])
    K = intersect(I, J)
    assert same_ideal(K, Ideal.of([x[0], x[1] * x[2]]))
    L = intersect_all([I, J, Ideal.of([x[1], x[2]])])
    assert same_ideal(L, Ideal.of([x[0] * x[1], x[0] * x[2], x[1] * x[2]]))


def test_power_and_containment(rational):
    x0, x1 = Poly.var(0, 2, rational), Poly.var(1, 2, rational)
    I = Ideal.of([x0, x1])
    I2 = power(I, 2)
    assert len(I2.generators) == 3
    assert contains(I, I2)
    assert not contains(I2, I)
    assert member(x0 * x1, I2)
    with pytest.raises(ValueError):
        power(I, 0)


def test_resource_guard_trips(rational):
    x0, x1 = Poly.var(0, 2, rational), Poly.var(1, 2, rational)
    I = Ideal.of([x0 ** 3 - x1 ** 2, x0 * x1 ** 2 - x1 - 1])
    with pytest.raises(ResourceLimitExceeded):
        buchberger(I, LEX, ResourceGuard(max_degree=2))
    with pytest.raises(ValueError):
        ResourceGuard(max_basis=0)


def test_guard_from_config():
    guard = ResourceGuard.from_config({"FERMAT_MAX_DEGREE": "12", "FERMAT_TIME_BUDGET": 5})
    assert guard.max_degree == 12
    assert guard.max_basis == 2000
    assert guard.time_budget == 5.0


def test_dump_basis(rational):
    G = Ideal.of([parse_poly("x0^2 - x1", 2, rational)]).groebner()
    text = dump_basis(G)
    assert text.splitlines()[0] == "# groebner basis order=grevlex field=cyclotomic:1 nvars=2 size=1"
    assert text.splitlines()[1] == "x0^2 - x1"


def _to_sympy_terms(g, gens, sp):
    return {
        m: Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1]))
        for m, c in sp.Poly(g, *gens).terms()
    }


def test_reduced_bases_match_sympy(rational, rng):
    sp = pytest.importorskip("sympy")
    gens = sp.symbols("x0:3")
    for _ in range(15):
        I = _random_ideal(rng, 3, rational, 2)
        ours = {g.monic() for g in I.groebner(GREVLEX).basis}
        exprs = [sp.sympify(g.to_text().replace("^", "**")) for g in I.generators]
        theirs = set()
        for g in sp.groebner(exprs, *gens, order="grevlex"):
            poly = Poly(3, rational, _to_sympy_terms(g, gens, sp))
            theirs.add(poly.monic())
        assert ours == theirs


def test_small_worked_examples(q3, rational):
    x = [Poly.var(i, 3, rational) for i in range(3)]
    assert Ideal.of([x[0]]).groebner().basis == (x[0],)
    G = Ideal.of([x[0] ** 2, x[0] * x[1]]).groebner()
    assert set(G.basis) == {x[0] ** 2, x[0] * x[1]}
    assert normal_form(x[0] ** 2, [x[0] - x[1]]) == x[1] ** 2
    assert normal_form(Poly.one(3, rational), G) == 1
    K = intersect(Ideal.of([x[0]]), Ideal.of([x[1]]))
    assert K.generators == (x[0] * x[1],)
    I = Ideal.of([x[0] ** 2 - x[1] * x[2], x[1] ** 2])
    assert same_ideal(intersect(I, I), I)
    assert not contains(Ideal.of([x[0]]), Ideal.of([x[1]]))

    e = [Poly.var(i, 3, q3) for i in range(3)]
    from algebra.coeff import root_power
    L = Ideal.of([e[0] - e[1].scale(root_power(q3, 1)), e[0] - e[2].scale(root_power(q3, 2))])
    basis = L.groebner().basis
    assert len(basis) == 2
    assert all(g.degree() == 1 and g.leading_coeff() == 1 for g in basis)


def test_membership_is_order_independent(rng):
    for _ in range(20):
        I = _random_ideal(rng, 2, F31, 2)
        f = random_poly(rng, 2, F31, max_degree=3, max_terms=3)
        g = I.generators[0] * random_poly(rng, 2, F31, max_degree=2, max_terms=2)
        for h in (f, g):
            lex = normal_form(h, I.groebner(LEX)).is_zero()
            grevlex = normal_form(h, I.groebner(GREVLEX)).is_zero()
            assert lex == grevlex
