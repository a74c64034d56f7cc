"""Exact coefficient fields.

Two backends are supported:

- ``prime``: the prime field F_p, usable when n divides p - 1.
- ``cyclotomic``: Q[t]/(Phi_n(t)), the authoritative characteristic-0 field.
  Elements are tuples of ``Fraction`` of length deg Phi_n, always reduced.

Both expose a primitive n-th root of unity ``e`` (written ``e^k`` in text).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple, Union
import logging
import random

from sympy.polys.domains import GF, QQ, Domain

log = logging.getLogger(__name__)

PRIME = "prime"
CYCLOTOMIC = "cyclotomic"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# --- integer / rational polynomials in t, coefficient lists low-to-high ---

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_poly_divide_exact(num: list, den: list) -> list:
    """Exact division of integer polynomials with monic ``den``."""
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        raise ValueError("divisor degree exceeds dividend degree")
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        quot[k - dd] = c
        for i, di in enumerate(den):
            num[k - dd + i] -= c * di
    if any(num):
        raise ValueError("cyclotomic division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """Return Phi_n as integer coefficients, lowest degree first.

    Computed by dividing t^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic_poly requires n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_divide_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _rat_divmod(a: list, b: list):
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    a = _trim(a)
    while len(a) >= len(b):
        c = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
        _trim(a)
    return _trim(q), a


def _rat_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _trim(out)


def _rat_sub(a: list, b: list) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field containing a primitive n-th root of unity."""

    kind: str
    n: int
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (PRIME, CYCLOTOMIC):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("root of unity order n must be a positive integer")
        if self.kind == PRIME:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p!r}")
            if (self.p - 1) % self.n:
                raise ValueError(
                    f"F_{self.p} has no primitive {self.n}-th root of unity: {self.n} does not divide {self.p - 1}"
                )
        elif self.p is not None:
            raise ValueError("cyclotomic field takes no modulus")

    @classmethod
    def prime(cls, p: int, n: int) -> "FieldSpec":
        return cls(PRIME, n, p)

    @classmethod
    def cyclotomic(cls, n: int) -> "FieldSpec":
        return cls(CYCLOTOMIC, n)

    @classmethod
    def parse(cls, text: str, n: int) -> "FieldSpec":
        """Parse ``cyclotomic``, ``prime:p`` or a bare prime ``p``."""
        raw = (text or "").strip().lower()
        if raw in ("cyclotomic", "cyc", "q"):
            return cls.cyclotomic(n)
        if raw.startswith("prime:"):
            raw = raw[len("prime:"):]
        try:
            p = int(raw)
        except ValueError:
            raise ValueError(f"unrecognized field {text!r}; use 'cyclotomic' or 'prime:p'")
        return cls.prime(p, n)

    @property
    def label(self) -> str:
        if self.kind == PRIME:
            return f"prime:{self.p}"
        return f"cyclotomic:{self.n}"

    @property
    def proof_grade(self) -> bool:
        return self.kind == CYCLOTOMIC

    @property
    def modulus(self) -> Tuple[int, ...]:
        return cyclotomic_poly(self.n)

    @property
    def degree(self) -> int:
        return 1 if self.kind == PRIME else len(self.modulus) - 1

    # -- element construction --

    def _reduce_cyc(self, coeffs) -> tuple:
        c = [Fraction(x) for x in coeffs]
        mod = self.modulus
        d = len(mod) - 1
        for k in range(len(c) - 1, d - 1, -1):
            ck = c[k]
            if ck:
                for i in range(d):
                    if mod[i]:
                        c[k - d + i] -= ck * mod[i]
                c[k] = Fraction(0)
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return tuple(c)

    def element(self, value) -> "FieldScalar":
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise ValueError(f"scalar from {value.field.label} used in {self.label}")
            return value
        if self.kind == PRIME:
            if isinstance(value, Fraction):
                num = value.numerator % self.p
                den = value.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"denominator vanishes in F_{self.p}")
                return FieldScalar(self, num * pow(den, self.p - 2, self.p) % self.p)
            return FieldScalar(self, int(value) % self.p)
        if isinstance(value, (tuple, list)):
            return FieldScalar(self, self._reduce_cyc(value))
        return FieldScalar(self, self._reduce_cyc([Fraction(value)]))

    def zero(self) -> "FieldScalar":
        return self.element(0)

    def one(self) -> "FieldScalar":
        return self.element(1)

    def random_element(self, rng: random.Random, bound: int = 5) -> "FieldScalar":
        if self.kind == PRIME:
            return self.element(rng.randrange(self.p))
        coeffs = []
        for _ in range(self.degree):
            num = rng.randint(-bound, bound)
            den = rng.randint(1, 3)
            coeffs.append(Fraction(num, den))
        return self.element(coeffs)


Operand = Union["FieldScalar", int, Fraction]


@dataclass(frozen=True)
class FieldScalar:
    """Immutable field element; arithmetic dispatches on ``field.kind``."""

    field: FieldSpec
    value: object

    def _coerce(self, other: Operand) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise ValueError(f"cannot combine {self.field.label} with {other.field.label}")
            return other
        return self.field.element(other)

    def is_zero(self) -> bool:
        if self.field.kind == PRIME:
            return self.value == 0
        return not any(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.field.kind == PRIME or not any(self.value[1:])

    def __add__(self, other: Operand) -> "FieldScalar":
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        o = self._coerce(other)
        if self.field.kind == PRIME:
            return FieldScalar(self.field, (self.value + o.value) % self.field.p)
        return FieldScalar(self.field, tuple(a + b for a, b in zip(self.value, o.value)))

    __radd__ = __add__

    def __neg__(self) -> "FieldScalar":
        if self.field.kind == PRIME:
            return FieldScalar(self.field, (-self.value) % self.field.p)
        return FieldScalar(self.field, tuple(-a for a in self.value))

    def __sub__(self, other: Operand) -> "FieldScalar":
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: Operand) -> "FieldScalar":
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other: Operand) -> "FieldScalar":
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        o = self._coerce(other)
        f = self.field
        if f.kind == PRIME:
            return FieldScalar(f, (self.value * o.value) % f.p)
        if o.is_rational():
            c = o.value[0]
            return FieldScalar(f, tuple(a * c for a in self.value))
        if self.is_rational():
            c = self.value[0]
            return FieldScalar(f, tuple(c * b for b in o.value))
        return FieldScalar(f, f._reduce_cyc(_rat_mul(list(self.value), list(o.value)) or [0]))

    __rmul__ = __mul__

    def inv(self) -> "FieldScalar":
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in {self.field.label}")
        f = self.field
        if f.kind == PRIME:
            return FieldScalar(f, pow(self.value, f.p - 2, f.p))
        if self.is_rational():
            return f.element(1 / self.value[0])
        # extended Euclid in Q[t]: s * a + u * Phi = const
        old_r, r = _trim(list(self.value)), [Fraction(c) for c in f.modulus]
        old_s, s = [Fraction(1)], []
        while r:
            q, rem = _rat_divmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, _rat_sub(old_s, _rat_mul(q, s))
        const = old_r[0]
        return f.element([c / const for c in old_s])

    def __truediv__(self, other: Operand) -> "FieldScalar":
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other: Operand) -> "FieldScalar":
        if not isinstance(other, _OPERANDS):
            return NotImplemented
        return self._coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> "FieldScalar":
        if exponent < 0:
            return self.inv() ** (-exponent)
        acc = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base
            exponent >>= 1
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"FieldScalar({self.field.label}, {serialize(self)})"


_OPERANDS = (FieldScalar, int, Fraction)


@lru_cache(maxsize=None)
def primitive_root(field: FieldSpec) -> FieldScalar:
    """Return a primitive n-th root of unity of ``field``.

    Prime fields: the smallest residue of exact order n.
    Cyclotomic fields: the class of t.
    """
    n = field.n
    if field.kind == CYCLOTOMIC:
        return field.element([0, 1])
    for w in range(1, field.p):
        if pow(w, n, field.p) != 1:
            continue
        if all(pow(w, k, field.p) != 1 for k in range(1, n)):
            return field.element(w)
    raise ValueError(f"no primitive {n}-th root of unity found in F_{field.p}")


def root_power(field: FieldSpec, k: int) -> FieldScalar:
    return primitive_root(field) ** (k % field.n)


def serialize(x: FieldScalar) -> str:
    """Canonical text: residues for prime fields, sums of ``c*e^k`` otherwise."""
    if x.field.kind == PRIME:
        return str(x.value)
    parts = []
    for k, c in enumerate(x.value):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = f"e^{k}"
        else:
            body = f"{abs(c)}*e^{k}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_scalar(text: str, field: FieldSpec) -> FieldScalar:
    from algebra.grammar import parse_expression

    return parse_expression(
        text,
        number=field.element,
        root_power=lambda k: root_power(field, k),
        variable=None,
    )


# --- sympy ground domains, used by the matrix routines ---

@lru_cache(maxsize=None)
def sympy_domain(field: FieldSpec) -> Domain:
    """The sympy domain realizing ``field``: GF(p), QQ, or QQ(zeta_n)."""
    if field.kind == PRIME:
        return GF(field.p, symmetric=False)
    if field.degree == 1:
        return QQ
    return QQ.cyclotomic_field(field.n)


def to_domain(x: FieldScalar):
    field = x.field
    K = sympy_domain(field)
    if field.kind == PRIME:
        return K(x.value)
    coeffs = [QQ(c.numerator, c.denominator) for c in x.value]
    if field.degree == 1:
        return coeffs[0]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    # dense representation is highest power first
    return K(coeffs[::-1])


def from_domain(a, field: FieldSpec) -> FieldScalar:
    if field.kind == PRIME:
        return field.element(int(a))
    if field.degree == 1:
        return field.element(Fraction(int(a.numerator), int(a.denominator)))
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in a.to_list()]
    return field.element(coeffs[::-1])
