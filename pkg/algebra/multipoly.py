"""Multivariate polynomials over a ``FieldSpec``.

Monomials are dense exponent tuples of length ``nvars``. Polynomials are
immutable maps from monomial to nonzero ``FieldScalar``. Monomial arithmetic
and the term orders come from ``sympy.polys``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging
import random

from sympy.polys.monomials import monomial_div, monomial_gcd, monomial_mul
from sympy.polys.orderings import MonomialOrder, ProductOrder, grevlex, lex

from algebra.coeff import CYCLOTOMIC, FieldScalar, FieldSpec, root_power, serialize
from algebra.grammar import parse_expression

log = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

LT, EQ, GT = -1, 0, 1


class NotDivisible(ValueError):
    """Raised when an exact division leaves a remainder."""


def monomials_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(monomial_gcd(a, b))


@lru_cache(maxsize=None)
def _sympy_order(kind: str, block: int) -> MonomialOrder:
    if kind == "lex":
        return lex
    if kind == "grevlex":
        return grevlex
    return ProductOrder(
        (grevlex, lambda m: m[:block]),
        (grevlex, lambda m: m[block:]),
    )


@lru_cache(maxsize=1 << 18)
def _order_key(kind: str, block: int, m: Monomial) -> tuple:
    return _sympy_order(kind, block)(m)


@dataclass(frozen=True)
class TermOrder:
    """lex, grevlex, or a block order whose first ``block`` variables dominate.

    Within each block the block order is grevlex, so dropping the first block
    from an elimination basis leaves a grevlex basis of the elimination ideal.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block order needs a first block of size >= 1")

    @classmethod
    def parse(cls, name: str) -> "TermOrder":
        raw = (name or "").strip().lower()
        if raw.startswith("block:"):
            return cls("block", int(raw.split(":", 1)[1]))
        return cls(raw)

    @property
    def name(self) -> str:
        return f"block:{self.block}" if self.kind == "block" else self.kind

    @property
    def monomial_order(self) -> MonomialOrder:
        return _sympy_order(self.kind, self.block)

    def key(self, m: Monomial):
        return _order_key(self.kind, self.block, m)


LEX = TermOrder("lex")
GREVLEX = TermOrder("grevlex")


def elimination(k: int) -> TermOrder:
    return TermOrder("block", k)


def compare(m1: Monomial, m2: Monomial, order: TermOrder = GREVLEX) -> int:
    if len(m1) != len(m2):
        raise ValueError("monomials from different rings")
    k1, k2 = order.key(m1), order.key(m2)
    if k1 == k2:
        return EQ
    return GT if k1 > k2 else LT


Scalarish = Union[FieldScalar, int, Fraction]


class Poly:
    __slots__ = ("nvars", "field", "terms", "_lead")

    def __init__(self, nvars: int, field: FieldSpec, terms: Optional[Dict[Monomial, FieldScalar]] = None):
        self.nvars = nvars
        self.field = field
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not live in {nvars} variables")
            c = field.element(c)
            if not c.is_zero():
                clean[tuple(m)] = c
        self.terms = clean
        self._lead = {}

    @classmethod
    def _raw(cls, nvars: int, field: FieldSpec, terms: Dict[Monomial, FieldScalar]) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.field = field
        p.terms = terms
        p._lead = {}
        return p

    # -- constructors --

    @classmethod
    def zero(cls, nvars: int, field: FieldSpec) -> "Poly":
        return cls._raw(nvars, field, {})

    @classmethod
    def constant(cls, value: Scalarish, nvars: int, field: FieldSpec) -> "Poly":
        return cls(nvars, field, {(0,) * nvars: field.element(value)})

    @classmethod
    def one(cls, nvars: int, field: FieldSpec) -> "Poly":
        return cls.constant(1, nvars, field)

    @classmethod
    def var(cls, i: int, nvars: int, field: FieldSpec) -> "Poly":
        if not 0 <= i < nvars:
            raise ValueError(f"x{i} is not a variable of a ring with {nvars} variables")
        m = [0] * nvars
        m[i] = 1
        return cls._raw(nvars, field, {tuple(m): field.one()})

    @classmethod
    def monomial(cls, m: Monomial, coeff: Scalarish, field: FieldSpec) -> "Poly":
        return cls(len(m), field, {tuple(m): coeff})

    @classmethod
    def from_text(cls, text: str, nvars: int, field: FieldSpec) -> "Poly":
        return parse_poly(text, nvars, field)

    # -- queries --

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def constant_term(self) -> FieldScalar:
        return self.terms.get((0,) * self.nvars, self.field.zero())

    def coefficient(self, m: Monomial) -> FieldScalar:
        return self.terms.get(tuple(m), self.field.zero())

    def variables(self) -> List[int]:
        return sorted({i for m in self.terms for i, e in enumerate(m) if e})

    def leading_term(self, order: TermOrder = GREVLEX) -> Tuple[Monomial, FieldScalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        lead = self._lead.get(order)
        if lead is None:
            m = max(self.terms, key=order.key)
            lead = (m, self.terms[m])
            self._lead[order] = lead
        return lead

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: TermOrder = GREVLEX) -> FieldScalar:
        return self.leading_term(order)[1]

    def sorted_terms(self, order: TermOrder = GREVLEX) -> List[Tuple[Monomial, FieldScalar]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic --

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars or other.field != self.field:
                raise ValueError(
                    f"mismatched rings: {self.nvars} vars over {self.field.label} "
                    f"vs {other.nvars} vars over {other.field.label}"
                )
            return other
        if isinstance(other, (FieldScalar, int, Fraction)):
            return Poly.constant(other, self.nvars, self.field)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
        return Poly._raw(self.nvars, self.field, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c: Scalarish) -> "Poly":
        c = self.field.element(c)
        if c.is_zero():
            return Poly.zero(self.nvars, self.field)
        return Poly._raw(self.nvars, self.field, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: Scalarish) -> "Poly":
        c = self.field.element(c)
        if c.is_zero():
            return Poly.zero(self.nvars, self.field)
        return Poly._raw(
            self.nvars, self.field, {monomial_mul(m, mono): v * c for m, v in self.terms.items()}
        )

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (FieldScalar, int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        out: Dict[Monomial, FieldScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = monomial_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return Poly._raw(self.nvars, self.field, {m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        acc = Poly.one(self.nvars, self.field)
        base = self
        while exponent:
            if exponent & 1:
                acc = acc * base
            exponent >>= 1
            if exponent:
                base = base * base
        return acc

    def monic(self, order: TermOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coeff(order)
        if lc == 1:
            return self
        return self.scale(lc.inv())

    def __eq__(self, other) -> bool:
        if isinstance(other, (FieldScalar, int, Fraction)):
            other = Poly.constant(other, self.nvars, self.field)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, self.field, frozenset(self.terms.items())))

    def to_text(self, order: TermOrder = GREVLEX) -> str:
        return format_poly(self, order)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, nvars={self.nvars}, field={self.field.label})"


def _format_mono(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(f: Poly, order: TermOrder = GREVLEX) -> str:
    """Canonical text, terms in descending ``order`` (grevlex by default)."""
    if f.is_zero():
        return "0"
    pieces = []
    for m, c in f.sorted_terms(order):
        mono = _format_mono(m)
        negative = False
        if c.field.kind == CYCLOTOMIC and not c.is_rational():
            coeff = f"({serialize(c)})"
        else:
            if c.field.kind == CYCLOTOMIC:
                val = c.value[0]
                negative = val < 0
                coeff = str(abs(val))
            else:
                coeff = str(c.value)
        if not mono:
            body = coeff
        elif coeff == "1":
            body = mono
        else:
            body = f"{coeff}*{mono}"
        pieces.append((negative, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse_poly(text: str, nvars: int, field: FieldSpec) -> Poly:
    return parse_expression(
        text,
        number=lambda q: Poly.constant(q, nvars, field),
        root_power=lambda k: Poly.constant(root_power(field, k), nvars, field),
        variable=lambda i: Poly.var(i, nvars, field),
    )


@dataclass(frozen=True)
class RingHom:
    """Substitution x_i -> images[i]; all images share one target ring."""

    images: Tuple[Poly, ...]

    def __post_init__(self):
        if not self.images:
            raise ValueError("ring homomorphism needs at least one image")
        first = self.images[0]
        for img in self.images[1:]:
            if img.nvars != first.nvars or img.field != first.field:
                raise ValueError("images of a ring homomorphism must share a target ring")

    @property
    def source_nvars(self) -> int:
        return len(self.images)

    @property
    def target_nvars(self) -> int:
        return self.images[0].nvars

    @property
    def field(self) -> FieldSpec:
        return self.images[0].field

    def describe(self) -> Dict[str, str]:
        return {f"x{i}": str(img) for i, img in enumerate(self.images)}


def identity_hom(nvars: int, field: FieldSpec) -> RingHom:
    return RingHom(tuple(Poly.var(i, nvars, field) for i in range(nvars)))


def evaluation_hom(N: int, field: FieldSpec) -> RingHom:
    """x_N -> 1 and x_i -> x_i for i < N, from N+1 to N variables."""
    if N < 1:
        raise ValueError("evaluation homomorphism needs N >= 1")
    images = [Poly.var(i, N, field) for i in range(N)]
    images.append(Poly.one(N, field))
    return RingHom(tuple(images))


def apply_hom(h: RingHom, f: Poly) -> Poly:
    if f.nvars != h.source_nvars:
        raise ValueError(f"homomorphism expects {h.source_nvars} variables, polynomial has {f.nvars}")
    if f.field != h.field:
        raise ValueError("homomorphism and polynomial use different fields")
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in powers:
            powers[key] = h.images[i] ** e
        return powers[key]

    acc: Dict[Monomial, FieldScalar] = {}
    one = Poly.one(h.target_nvars, h.field)
    for m, c in f.terms.items():
        img = one
        for i, e in enumerate(m):
            if e:
                img = img * power(i, e)
        for mm, cc in img.terms.items():
            v = cc * c
            s = acc.get(mm)
            acc[mm] = v if s is None else s + v
    return Poly._raw(h.target_nvars, h.field, {m: c for m, c in acc.items() if not c.is_zero()})


def exact_divide(f: Poly, d: Poly, order: TermOrder = GREVLEX) -> Poly:
    """Return q with f = d * q, or raise ``NotDivisible``."""
    if d.is_zero():
        raise ValueError("exact_divide by the zero polynomial")
    d._coerce(f)
    lm_d, lc_d = d.leading_term(order)
    inv = lc_d.inv()
    quotient: Dict[Monomial, FieldScalar] = {}
    rem = f
    while not rem.is_zero():
        lm_r, lc_r = rem.leading_term(order)
        shift = monomial_div(lm_r, lm_d)
        if shift is None:
            raise NotDivisible(f"leading term x^{lm_r} is not divisible by x^{lm_d}")
        c = lc_r * inv
        quotient[shift] = c
        rem = rem - d.mul_term(shift, c)
    q = Poly._raw(f.nvars, f.field, quotient)
    if d * q != f:
        raise NotDivisible("re-multiplication does not reproduce the dividend")
    return q


def random_poly(
    rng: random.Random,
    nvars: int,
    field: FieldSpec,
    max_degree: int = 4,
    max_terms: int = 4,
    homogeneous: bool = False,
) -> Poly:
    """A small random polynomial; used by randomized test suites and scripts."""
    terms: Dict[Monomial, FieldScalar] = {}
    degree = rng.randint(0, max_degree)
    for _ in range(rng.randint(1, max_terms)):
        d = degree if homogeneous else rng.randint(0, max_degree)
        m = [0] * nvars
        for _ in range(d):
            m[rng.randrange(nvars)] += 1
        terms[tuple(m)] = field.random_element(rng)
    return Poly(nvars, field, terms)


def product(polys: Iterable[Poly], nvars: int, field: FieldSpec) -> Poly:
    acc = Poly.one(nvars, field)
    for p in polys:
        acc = acc * p
    return acc
