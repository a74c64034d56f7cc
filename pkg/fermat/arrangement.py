"""Fermat (Ceva) configurations.

F_{N,n} = prod_{i<j} (x_i^n - x_j^n); its linear factors x_i - e^a x_j cut out
codimension-two flats. The flats met by at least three factors are

- C-type (x_i, x_j), where the n factors of x_i^n - x_j^n meet;
- J-type (x_i - e^a x_j, x_i - e^b x_l), where exactly three factors meet.

I_{N,n} is the intersection of all these primes.
"""
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple
import hashlib
import json
import logging

from algebra.coeff import FieldScalar, FieldSpec, root_power
from algebra.groebner import Ideal, ResourceGuard, intersect_all, normal_form, same_ideal
from algebra.linear import rank, span_key
from algebra.multipoly import GREVLEX, Poly, product

log = logging.getLogger(__name__)

SCHEMA = 1


def linear_coefficients(form: Poly) -> Tuple[FieldScalar, ...]:
    """Coefficient vector of a homogeneous linear form."""
    coeffs = [form.field.zero()] * form.nvars
    for m, c in form.terms.items():
        if sum(m) != 1:
            raise ValueError(f"{form} is not a homogeneous linear form")
        coeffs[m.index(1)] = c
    return tuple(coeffs)


def binomial_form(i: int, j: int, a: int, nvars: int, field: FieldSpec) -> Poly:
    """x_i - e^a x_j"""
    return Poly.var(i, nvars, field) - Poly.var(j, nvars, field).scale(root_power(field, a))


@dataclass(frozen=True)
class LinearPrime:
    """Codimension-two prime generated by two independent linear forms."""

    tag: Tuple
    forms: Tuple[Poly, Poly]

    def __post_init__(self):
        if self.tag[0] not in ("C", "J"):
            raise ValueError(f"unknown prime tag {self.tag!r}")
        if rank(self.rows, self.field) != 2:
            raise ValueError(f"forms of {self.label} are linearly dependent")

    @property
    def kind(self) -> str:
        return self.tag[0]

    @property
    def label(self) -> str:
        if self.kind == "C":
            return f"C({self.tag[1]},{self.tag[2]})"
        _, i, j, l, a, b = self.tag
        return f"J({i},{j},{l};{a},{b})"

    @property
    def indices(self) -> Tuple[int, ...]:
        return self.tag[1:3] if self.kind == "C" else self.tag[1:4]

    @property
    def field(self) -> FieldSpec:
        return self.forms[0].field

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    @cached_property
    def rows(self) -> List[Tuple[FieldScalar, ...]]:
        return [linear_coefficients(f) for f in self.forms]

    @cached_property
    def key(self) -> tuple:
        return span_key(self.rows, self.field)

    def ideal(self) -> Ideal:
        return Ideal(self.forms, self.nvars, self.field)

    def contains_form(self, form: Poly) -> bool:
        return rank(self.rows + [linear_coefficients(form)], self.field) == 2

    def to_dict(self) -> Dict:
        return {"tag": self.label, "kind": self.kind, "forms": [f.to_text() for f in self.forms]}


def c_prime(i: int, j: int, nvars: int, field: FieldSpec) -> LinearPrime:
    return LinearPrime(("C", i, j), (Poly.var(i, nvars, field), Poly.var(j, nvars, field)))


def j_prime(i: int, j: int, l: int, a: int, b: int, nvars: int, field: FieldSpec) -> LinearPrime:
    return LinearPrime(
        ("J", i, j, l, a, b),
        (binomial_form(i, j, a, nvars, field), binomial_form(i, l, b, nvars, field)),
    )


@dataclass(eq=False)
class Configuration:
    N: int
    n: int
    field: FieldSpec
    primes: Tuple[LinearPrime, ...]
    F: Poly
    _ideal: Optional[Ideal] = dc_field(default=None, repr=False)

    @property
    def nvars(self) -> int:
        return self.N + 1

    @property
    def j_primes(self) -> List[LinearPrime]:
        return [P for P in self.primes if P.kind == "J"]

    @property
    def c_primes(self) -> List[LinearPrime]:
        return [P for P in self.primes if P.kind == "C"]

    def prime(self, label: str) -> LinearPrime:
        for P in self.primes:
            if P.label == label:
                return P
        raise KeyError(label)

    def ideal(self, guard: Optional[ResourceGuard] = None) -> Ideal:
        """Explicit I_{N,n}; expensive beyond N = 2."""
        if self._ideal is None:
            log.info("computing I_{%d,%d} as an intersection of %d primes", self.N, self.n, len(self.primes))
            self._ideal = intersect_all((P.ideal() for P in self.primes), guard)
        return self._ideal

    def to_dict(self) -> Dict:
        return {
            "schema": SCHEMA,
            "N": self.N,
            "n": self.n,
            "field": {"kind": self.field.kind, "n": self.field.n, "p": self.field.p, "label": self.field.label},
            "counts": {"primes": len(self.primes), "J": len(self.j_primes), "C": len(self.c_primes)},
            "degree_F": self.F.degree(),
            "primes": [P.to_dict() for P in self.primes],
            "F": self.F.to_text(),
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


def expected_prime_count(N: int, n: int) -> int:
    return comb(N + 1, 3) * n * n + comb(N + 1, 2)


def fermat_form(N: int, n: int, field: FieldSpec) -> Poly:
    nvars = N + 1
    powers = [Poly.var(i, nvars, field) ** n for i in range(nvars)]
    return product((powers[i] - powers[j] for i, j in combinations(range(nvars), 2)), nvars, field)


def build_config(N: int, n: int, field: FieldSpec) -> Configuration:
    if not isinstance(N, int) or N < 2:
        raise ValueError(f"N must be an integer >= 2, got {N!r}")
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    if field.n != n:
        raise ValueError(f"field {field.label} carries roots of order {field.n}, configuration needs {n}")
    nvars = N + 1
    primes: List[LinearPrime] = []
    seen = set()
    for i, j, l in combinations(range(nvars), 3):
        for a in range(n):
            for b in range(n):
                P = j_prime(i, j, l, a, b, nvars, field)
                if P.key in seen:
                    log.debug("dropping %s: same flat as an earlier label", P.label)
                    continue
                seen.add(P.key)
                primes.append(P)
    for i, j in combinations(range(nvars), 2):
        P = c_prime(i, j, nvars, field)
        if P.key not in seen:
            seen.add(P.key)
            primes.append(P)
    cfg = Configuration(N, n, field, tuple(primes), fermat_form(N, n, field))
    log.debug("built configuration (%d,%d) over %s: %d primes", N, n, field.label, len(primes))
    return cfg


def hyperplane_factors(cfg: Configuration) -> List[Poly]:
    """The n*C(N+1,2) forms x_i - e^a x_j, monic under grevlex."""
    return [
        binomial_form(i, j, a, cfg.nvars, cfg.field).monic(GREVLEX)
        for i, j in combinations(range(cfg.nvars), 2)
        for a in range(cfg.n)
    ]


@dataclass
class Flat:
    key: tuple
    rows: List[Tuple[FieldScalar, ...]]
    factors: Tuple[int, ...]


def enumerate_flats(factors: Sequence[Poly], min_count: int = 3) -> List[Flat]:
    """Codimension-two flats lying on at least ``min_count`` of the given hyperplanes."""
    if not factors:
        return []
    field = factors[0].field
    vectors = [linear_coefficients(f) for f in factors]
    found: Dict[tuple, Flat] = {}
    visited = set()
    for a, b in combinations(range(len(vectors)), 2):
        rows = [vectors[a], vectors[b]]
        if rank(rows, field) != 2:
            continue
        key = span_key(rows, field)
        if key in visited:
            continue
        visited.add(key)
        on_flat = tuple(k for k, v in enumerate(vectors) if rank(rows + [v], field) == 2)
        if len(on_flat) >= min_count:
            found[key] = Flat(key, rows, on_flat)
    return list(found.values())


@dataclass
class Lemma1Report:
    N: int
    n: int
    backend: str
    rows: List[Dict]
    flats_found: int
    missing: List[str]
    extra: List[Dict]
    duplicates: List[str]
    c_generation: Dict[str, bool]

    @property
    def passed(self) -> bool:
        return (
            all(row["ok"] for row in self.rows)
            and not self.missing
            and not self.extra
            and not self.duplicates
            and all(self.c_generation.values())
        )

    def to_dict(self) -> Dict:
        return {
            "N": self.N,
            "n": self.n,
            "backend": self.backend,
            "passed": self.passed,
            "primes": len(self.rows),
            "flats_found": self.flats_found,
            "missing": self.missing,
            "extra": self.extra,
            "duplicates": self.duplicates,
            "c_generation": self.c_generation,
            "rows": self.rows,
        }


def verify_lemma1(cfg: Configuration) -> Lemma1Report:
    """Check that the listed primes are exactly the flats on >= 3 hyperplanes."""
    factors = hyperplane_factors(cfg)
    rows = []
    for P in cfg.primes:
        G = P.ideal().groebner(GREVLEX)
        vanishing = [f for f in factors if normal_form(f, G).is_zero()]
        expected = 3 if P.kind == "J" else cfg.n
        rows.append({
            "prime": P.label,
            "vanishing_factors": len(vanishing),
            "expected": expected,
            "ok": len(vanishing) >= 3 and len(vanishing) == expected,
        })

    c_generation = {}
    for P in cfg.c_primes:
        i, j = P.indices
        generated = Ideal(
            tuple(binomial_form(i, j, a, cfg.nvars, cfg.field) for a in range(cfg.n)), cfg.nvars, cfg.field
        )
        c_generation[P.label] = same_ideal(P.ideal(), generated)

    by_key: Dict[tuple, List[str]] = {}
    for P in cfg.primes:
        by_key.setdefault(P.key, []).append(P.label)
    duplicates = [", ".join(labels) for labels in by_key.values() if len(labels) > 1]

    flats = enumerate_flats(factors, 3)
    flat_keys = {fl.key for fl in flats}
    missing = [labels[0] for key, labels in by_key.items() if key not in flat_keys]
    extra = [
        {"factors": [factors[k].to_text() for k in fl.factors], "count": len(fl.factors)}
        for fl in flats
        if fl.key not in by_key
    ]
    report = Lemma1Report(
        cfg.N, cfg.n, cfg.field.label, rows, len(flats), missing, extra, duplicates, c_generation
    )
    if not report.passed:
        log.warning("flat verification failed for (%d,%d): missing=%s extra=%d", cfg.N, cfg.n, missing, len(extra))
    return report
