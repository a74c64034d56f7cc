"""Buchberger engine and ideal arithmetic.

Bases are computed with the normal selection strategy (smallest lcm first,
ties broken by pair index) and Buchberger's coprime and chain criteria, then
minimalized and interreduced to a reduced basis with monic elements.

Intersections use the auxiliary-variable construction
``<t*I, (1-t)*J>`` eliminated under a block order; the auxiliary variable is
always variable 0 of the extended ring.
"""
from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging
import os
import time

from sympy.polys.monomials import monomial_div, monomial_divides, monomial_ldiv, monomial_lcm, monomial_mul

from algebra.coeff import FieldSpec
from algebra.multipoly import GREVLEX, Monomial, Poly, TermOrder, elimination, monomials_coprime

log = logging.getLogger(__name__)

# If FERMAT_DEBUG=1 is set, enable debug logging for this module
if os.getenv("FERMAT_DEBUG") == "1":
    if not log.handlers:
        h = logging.StreamHandler()
        h.setFormatter(logging.Formatter("%(levelname)s:%(name)s: %(message)s"))
        log.addHandler(h)
    log.setLevel(logging.DEBUG)


class ResourceLimitExceeded(RuntimeError):
    """A Gröbner computation outgrew its configured caps."""


@dataclass
class ResourceGuard:
    max_degree: int = 40
    max_basis: int = 2000
    time_budget: float = 600.0
    started: float = dc_field(default_factory=time.monotonic)

    def __post_init__(self):
        if self.max_degree <= 0 or self.max_basis <= 0 or self.time_budget <= 0:
            raise ValueError("resource caps must be positive")

    @classmethod
    def from_config(cls, cfg: Dict) -> "ResourceGuard":
        return cls(
            max_degree=int(cfg.get("FERMAT_MAX_DEGREE", 40)),
            max_basis=int(cfg.get("FERMAT_MAX_BASIS", 2000)),
            time_budget=float(cfg.get("FERMAT_TIME_BUDGET", 600.0)),
        )

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def check(self, basis_size: int = 0, degree: int = 0, where: str = "buchberger") -> None:
        if degree > self.max_degree:
            raise ResourceLimitExceeded(f"{where}: degree {degree} exceeds cap {self.max_degree}")
        if basis_size > self.max_basis:
            raise ResourceLimitExceeded(f"{where}: basis size {basis_size} exceeds cap {self.max_basis}")
        if self.elapsed > self.time_budget:
            raise ResourceLimitExceeded(
                f"{where}: time budget of {self.time_budget:.0f}s exhausted after {self.elapsed:.1f}s"
            )


@dataclass(frozen=True)
class GroebnerBasis:
    basis: Tuple[Poly, ...]
    order: TermOrder
    reduced: bool
    nvars: int
    field: FieldSpec

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit(self) -> bool:
        return any(g.degree() == 0 for g in self.basis)

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self)

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self).is_zero()


@dataclass(eq=False)
class Ideal:
    """Finitely generated ideal; equality of ideals is ``same_ideal``."""

    generators: Tuple[Poly, ...]
    nvars: int
    field: FieldSpec
    _bases: Dict[TermOrder, GroebnerBasis] = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.nvars != self.nvars or g.field != self.field:
                raise ValueError("ideal generators must live in the ideal's ring")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)

    @classmethod
    def of(cls, polys: Sequence[Poly]) -> "Ideal":
        if not polys:
            raise ValueError("Ideal.of needs at least one polynomial to infer the ring")
        return cls(tuple(polys), polys[0].nvars, polys[0].field)

    def groebner(self, order: TermOrder = GREVLEX, guard: Optional[ResourceGuard] = None) -> GroebnerBasis:
        gb = self._bases.get(order)
        if gb is None:
            gb = buchberger(self, order, guard)
            self._bases[order] = gb
        return gb

    def compact_generators(self) -> Tuple[Poly, ...]:
        """The reduced grevlex basis when already known, else the generators."""
        gb = self._bases.get(GREVLEX)
        return gb.basis if gb is not None else self.generators


def _reduce(f: Poly, divisors: Sequence[Poly], order: TermOrder) -> Poly:
    p = dict(f.terms)
    rem = {}
    leads = [(g.leading_monomial(order), g.leading_coeff(order).inv(), g) for g in divisors]
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, inv_lc, g in leads:
            shift = monomial_div(m, lm)
            if shift is not None:
                q = c * inv_lc
                for gm, gc in g.terms.items():
                    t = monomial_mul(gm, shift)
                    v = p.get(t)
                    nv = -(q * gc) if v is None else v - q * gc
                    if nv.is_zero():
                        p.pop(t, None)
                    else:
                        p[t] = nv
                break
        else:
            rem[m] = c
            del p[m]
    return Poly._raw(f.nvars, f.field, rem)


def normal_form(
    f: Poly,
    G: Union[GroebnerBasis, Sequence[Poly]],
    order: Optional[TermOrder] = None,
) -> Poly:
    """Fully reduced remainder of ``f`` against ``G``."""
    if isinstance(G, GroebnerBasis):
        divisors, order = G.basis, G.order
        if f.nvars != G.nvars or f.field != G.field:
            raise ValueError("normal_form: polynomial and basis live in different rings")
    else:
        divisors = list(G)
        order = order or GREVLEX
    return _reduce(f, divisors, order)


def s_polynomial(f: Poly, g: Poly, order: TermOrder = GREVLEX) -> Poly:
    lm_f, lc_f = f.leading_term(order)
    lm_g, lc_g = g.leading_term(order)
    lcm = monomial_lcm(lm_f, lm_g)
    return f.mul_term(monomial_ldiv(lcm, lm_f), lc_f.inv()) - g.mul_term(monomial_ldiv(lcm, lm_g), lc_g.inv())


def _pair(i: int, j: int) -> Tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _interreduce(polys: List[Poly], order: TermOrder) -> List[Poly]:
    lms = [g.leading_monomial(order) for g in polys]
    keep = []
    for i, g in enumerate(polys):
        redundant = any(
            j != i and monomial_divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i)
            for j in range(len(polys))
        )
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        out.append(_reduce(g, others, order).monic(order))
    out.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return out


def buchberger(I: Ideal, order: TermOrder = GREVLEX, guard: Optional[ResourceGuard] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``I`` under ``order``."""
    key = order.key
    basis: List[Poly] = [g.monic(order) for g in I.generators if not g.is_zero()]
    lms: List[Monomial] = [g.leading_monomial(order) for g in basis]
    pairs: Dict[Tuple[int, int], Monomial] = {}
    for j in range(len(basis)):
        for i in range(j):
            pairs[(i, j)] = monomial_lcm(lms[i], lms[j])
    unit = any(g.degree() == 0 for g in basis)
    skipped = 0
    while pairs and not unit:
        i, j = min(pairs, key=lambda ij: (key(pairs[ij]), ij))
        lcm = pairs.pop((i, j))
        if monomials_coprime(lms[i], lms[j]):
            skipped += 1
            continue
        if any(
            k != i and k != j
            and monomial_divides(lms[k], lcm)
            and _pair(i, k) not in pairs
            and _pair(j, k) not in pairs
            for k in range(len(basis))
        ):
            skipped += 1
            continue
        r = _reduce(s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        h = len(basis)
        basis.append(r)
        lm_r = r.leading_monomial(order)
        lms.append(lm_r)
        for k in range(h):
            pairs[(k, h)] = monomial_lcm(lms[k], lm_r)
        if r.degree() == 0:
            unit = True
        if guard is not None:
            guard.check(len(basis), r.degree())
        log.debug("buchberger: basis=%d pending pairs=%d new degree=%d", len(basis), len(pairs), r.degree())
    if unit:
        reduced = [Poly.one(I.nvars, I.field)]
    else:
        reduced = _interreduce(basis, order)
    log.debug("buchberger: done, %d elements (%d pairs skipped by criteria)", len(reduced), skipped)
    return GroebnerBasis(tuple(reduced), order, True, I.nvars, I.field)


def is_groebner(G: GroebnerBasis) -> bool:
    """Every S-polynomial of basis pairs reduces to zero."""
    for i in range(len(G.basis)):
        for j in range(i + 1, len(G.basis)):
            if not normal_form(s_polynomial(G.basis[i], G.basis[j], G.order), G).is_zero():
                return False
    return True


def _embed(f: Poly, factor: Poly) -> Poly:
    lifted = Poly._raw(f.nvars + 1, f.field, {(0,) + m: c for m, c in f.terms.items()})
    return lifted * factor


def intersect(I: Ideal, J: Ideal, guard: Optional[ResourceGuard] = None) -> Ideal:
    """Generators of I ∩ J; the result carries its reduced grevlex basis."""
    if I.nvars != J.nvars or I.field != J.field:
        raise ValueError("intersect: ideals live in different rings")
    n, k = I.nvars, I.field
    if not I.generators or not J.generators:
        return Ideal((), n, k)
    t = Poly.var(0, n + 1, k)
    one_minus_t = Poly.one(n + 1, k) - t
    gens = [_embed(f, t) for f in I.compact_generators()]
    gens += [_embed(g, one_minus_t) for g in J.compact_generators()]
    G = buchberger(Ideal(tuple(gens), n + 1, k), elimination(1), guard)
    kept = [
        Poly._raw(n, k, {m[1:]: c for m, c in g.terms.items()})
        for g in G.basis
        if all(m[0] == 0 for m in g.terms)
    ]
    kept.sort(key=lambda g: GREVLEX.key(g.leading_monomial(GREVLEX)))
    result = Ideal(tuple(kept), n, k)
    result._bases[GREVLEX] = GroebnerBasis(tuple(kept), GREVLEX, True, n, k)
    return result


def intersect_all(ideals: Iterable[Ideal], guard: Optional[ResourceGuard] = None) -> Ideal:
    """Left-to-right iterated intersection."""
    acc = None
    for step, J in enumerate(ideals):
        acc = J if acc is None else intersect(acc, J, guard)
        if step:
            log.debug("intersect_all: step %d, %d generators", step, len(acc.generators))
    if acc is None:
        raise ValueError("intersect_all needs at least one ideal")
    return acc


def power(I: Ideal, r: int) -> Ideal:
    """I^r generated by all r-fold products of generators (duplicates pruned)."""
    if not isinstance(r, int) or r < 1:
        raise ValueError("ideal power requires r >= 1")
    gens = I.compact_generators()
    if r == 1:
        return Ideal(tuple(gens), I.nvars, I.field)
    seen = set()
    products = []
    for combo in combinations_with_replacement(range(len(gens)), r):
        p = gens[combo[0]]
        for idx in combo[1:]:
            p = p * gens[idx]
        if p not in seen:
            seen.add(p)
            products.append(p)
    return Ideal(tuple(products), I.nvars, I.field)


def member(f: Poly, I: Ideal, guard: Optional[ResourceGuard] = None) -> bool:
    return normal_form(f, I.groebner(GREVLEX, guard)).is_zero()


def contains(I: Ideal, J: Ideal, guard: Optional[ResourceGuard] = None) -> bool:
    """True iff J ⊆ I."""
    G = I.groebner(GREVLEX, guard)
    return all(normal_form(g, G).is_zero() for g in J.generators)


def same_ideal(I: Ideal, J: Ideal, guard: Optional[ResourceGuard] = None) -> bool:
    return contains(I, J, guard) and contains(J, I, guard)


def dump_basis(G: GroebnerBasis) -> str:
    header = f"# groebner basis order={G.order.name} field={G.field.label} nvars={G.nvars} size={len(G.basis)}"
    return "\n".join([header] + [g.to_text() for g in G.basis]) + "\n"
