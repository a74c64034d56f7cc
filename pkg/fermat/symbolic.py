"""Symbolic powers of Fermat configuration ideals.

Every listed prime P is generated by two independent linear forms, so P^m is
P-primary and I^(m) is the intersection of the P^m. Membership in P^m is read
off as the order of vanishing along V(P): rewrite f in coordinates where the
two forms become variables y0, y1 and take the smallest (y0, y1)-degree.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import comb, inf
from typing import Dict, List, Optional, Tuple
import logging

from algebra.groebner import Ideal, ResourceGuard, intersect_all, power
from algebra.linear import invert, rref
from algebra.multipoly import Monomial, Poly, RingHom, apply_hom
from fermat.arrangement import Configuration, LinearPrime

log = logging.getLogger(__name__)

INFINITE_ORDER = inf


@dataclass(frozen=True)
class AdaptedCoordinates:
    """Linear change of variables sending the prime's forms to y0, y1.

    y0 and y1 occupy the pivot slots; every other slot keeps its x variable.
    ``forward`` writes the y-slots in x, ``inverse`` writes x in the y-slots.
    """

    prime: LinearPrime
    slots: Tuple[int, int]
    forward: RingHom
    inverse: RingHom

    def to_adapted(self, f: Poly) -> Poly:
        return apply_hom(self.inverse, f)

    def from_adapted(self, g: Poly) -> Poly:
        return apply_hom(self.forward, g)


@lru_cache(maxsize=4096)
def adapted_coords(P: LinearPrime) -> AdaptedCoordinates:
    field, nvars = P.field, P.nvars
    rows = P.rows
    # pivots are searched right to left so the leftmost variables stay free
    _, pivots = rref(rows, field, columns=range(nvars - 1, -1, -1))
    if len(pivots) != 2:
        raise ValueError(f"forms of {P.label} are dependent")
    slots = tuple(sorted(pivots))
    block = [[rows[k][s] for s in slots] for k in range(2)]
    ainv = invert(block, field)
    rest = [i for i in range(nvars) if i not in slots]

    forward = [Poly.var(i, nvars, field) for i in range(nvars)]
    forward[slots[0]] = P.forms[0]
    forward[slots[1]] = P.forms[1]

    inverse = [Poly.var(i, nvars, field) for i in range(nvars)]
    for a in range(2):
        expr = Poly.zero(nvars, field)
        for b in range(2):
            coef = ainv[a][b]
            if coef.is_zero():
                continue
            y_b = Poly.var(slots[b], nvars, field)
            shift = Poly(nvars, field, {_unit(i, nvars): rows[b][i] for i in rest})
            expr = expr + (y_b - shift).scale(coef)
        inverse[slots[a]] = expr
    return AdaptedCoordinates(P, slots, RingHom(tuple(forward)), RingHom(tuple(inverse)))


def _unit(i: int, nvars: int) -> Monomial:
    m = [0] * nvars
    m[i] = 1
    return tuple(m)


class _GradedSubstitution:
    """y-graded pieces of f written in adapted coordinates, built lazily."""

    def __init__(self, coords: AdaptedCoordinates):
        self.coords = coords
        s0, s1 = coords.slots
        self.slots = (s0, s1)
        nvars = coords.prime.nvars
        field = coords.prime.field
        self.nvars, self.field = nvars, field
        self.linear: List[Poly] = []
        self.shift: List[Poly] = []
        for s in self.slots:
            img = coords.inverse.images[s]
            lin = {m: c for m, c in img.terms.items() if m[s0] or m[s1]}
            self.linear.append(Poly(nvars, field, lin))
            self.shift.append(Poly(nvars, field, {m: c for m, c in img.terms.items() if m not in lin}))
        self._pieces: Dict[Tuple[int, int, int], Poly] = {}
        self._pairs: Dict[Tuple[int, int, int], Poly] = {}

    def piece(self, a: int, e: int, j: int) -> Poly:
        """Degree-j part of (Y_a + L_a)^e: C(e, j) Y_a^j L_a^(e-j)."""
        key = (a, e, j)
        if key not in self._pieces:
            self._pieces[key] = ((self.linear[a] ** j) * (self.shift[a] ** (e - j))).scale(comb(e, j))
        return self._pieces[key]

    def pair(self, e0: int, e1: int, d: int) -> Poly:
        key = (e0, e1, d)
        if key not in self._pairs:
            acc = Poly.zero(self.nvars, self.field)
            for j0 in range(max(0, d - e1), min(d, e0) + 1):
                acc = acc + self.piece(0, e0, j0) * self.piece(1, e1, d - j0)
            self._pairs[key] = acc
        return self._pairs[key]

    def graded_part(self, f: Poly, d: int) -> Poly:
        s0, s1 = self.slots
        acc: Dict[Monomial, object] = {}
        for m, c in f.terms.items():
            e0, e1 = m[s0], m[s1]
            if e0 + e1 < d:
                continue
            rest = list(m)
            rest[s0] = rest[s1] = 0
            contribution = self.pair(e0, e1, d).mul_term(tuple(rest), c)
            for mm, cc in contribution.terms.items():
                s = acc.get(mm)
                acc[mm] = cc if s is None else s + cc
        return Poly(self.nvars, self.field, acc)


def vanishing_order(f: Poly, P: LinearPrime, at_most: Optional[int] = None):
    """Largest m with f in P^m (INFINITE_ORDER for f = 0).

    With ``at_most`` set, stops early and returns ``at_most`` once the order is
    known to reach it.
    """
    if f.nvars != P.nvars or f.field != P.field:
        raise ValueError("vanishing_order: polynomial and prime live in different rings")
    if f.is_zero():
        return INFINITE_ORDER
    graded = _GradedSubstitution(adapted_coords(P))
    s0, s1 = graded.slots
    top = max(m[s0] + m[s1] for m in f.terms)
    for d in range(top + 1):
        if at_most is not None and d >= at_most:
            return at_most
        if not graded.graded_part(f, d).is_zero():
            return d
    raise RuntimeError(f"nonzero polynomial lost all terms in adapted coordinates for {P.label}")


def in_symbolic_power(f: Poly, cfg: Configuration, m: int) -> bool:
    """f in I^(m), i.e. f vanishes to order >= m along every listed flat."""
    if m < 1:
        raise ValueError("symbolic power index must be >= 1")
    for P in cfg.primes:
        if vanishing_order(f, P, at_most=m) < m:
            log.debug("order of vanishing along %s is below %d", P.label, m)
            return False
    return True


@dataclass
class SymbolicReport:
    N: int
    n: int
    m: int
    backend: str
    rows: List[Dict]

    @property
    def passed(self) -> bool:
        return all(row["pass"] for row in self.rows)

    def to_dict(self) -> Dict:
        return {
            "N": self.N,
            "n": self.n,
            "m": self.m,
            "backend": self.backend,
            "passed": self.passed,
            "rows": self.rows,
        }


def symbolic_report(f: Poly, cfg: Configuration, m: int) -> SymbolicReport:
    rows = []
    for P in cfg.primes:
        order = vanishing_order(f, P)
        rows.append({
            "prime": P.label,
            "order": "inf" if order == INFINITE_ORDER else order,
            "threshold": m,
            "pass": order >= m,
        })
    return SymbolicReport(cfg.N, cfg.n, m, cfg.field.label, rows)


def symbolic_power_ideal(cfg: Configuration, m: int, guard: Optional[ResourceGuard] = None) -> Ideal:
    """Generators of I^(m) as the intersection of the P^m (small cases only)."""
    if m < 1:
        raise ValueError("symbolic power index must be >= 1")
    if cfg.N > 2 or m > 4:
        log.warning("symbolic_power_ideal(N=%d, m=%d): explicit intersection may be very slow", cfg.N, m)
    return intersect_all((power(P.ideal(), m) for P in cfg.primes), guard)
