"""Exact row reduction over a ``FieldSpec`` on sympy's ``DomainMatrix``."""
from typing import List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from algebra.coeff import FieldScalar, FieldSpec, from_domain, sympy_domain, to_domain

Row = Tuple[FieldScalar, ...]


def to_matrix(rows: Sequence[Sequence[FieldScalar]], field: FieldSpec) -> DomainMatrix:
    K = sympy_domain(field)
    width = len(rows[0]) if rows else 0
    data = [[to_domain(field.element(c)) for c in row] for row in rows]
    return DomainMatrix(data, (len(data), width), K)


def from_matrix(M: DomainMatrix, field: FieldSpec) -> List[Row]:
    return [tuple(from_domain(a, field) for a in row) for row in M.to_list()]


def rref(
    rows: Sequence[Sequence[FieldScalar]],
    field: FieldSpec,
    columns: Optional[Sequence[int]] = None,
) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form; pivots are searched in ``columns`` order.

    ``columns`` must be a permutation of the column indices. Returns the
    nonzero rows (ordered by pivot discovery) and their pivot columns.
    """
    if not rows:
        return [], []
    width = len(rows[0])
    order = list(columns) if columns is not None else list(range(width))
    if sorted(order) != list(range(width)):
        raise ValueError(f"column order {order} is not a permutation of {width} columns")
    permuted = [[row[c] for c in order] for row in rows]
    reduced, pivots = to_matrix(permuted, field).rref()
    back = {j: c for j, c in enumerate(order)}
    out = []
    for row in from_matrix(reduced, field)[:len(pivots)]:
        full = [field.zero()] * width
        for j, v in enumerate(row):
            full[back[j]] = v
        out.append(tuple(full))
    return out, [back[j] for j in pivots]


def rank(rows: Sequence[Sequence[FieldScalar]], field: FieldSpec) -> int:
    if not rows:
        return 0
    return to_matrix(rows, field).rank()


def span_key(rows: Sequence[Sequence[FieldScalar]], field: FieldSpec) -> tuple:
    """Hashable canonical form of the row space."""
    reduced, _ = rref(rows, field)
    return tuple(tuple(c.value for c in row) for row in reduced)


def invert(matrix: Sequence[Sequence[FieldScalar]], field: FieldSpec) -> List[Row]:
    try:
        inverse = to_matrix(matrix, field).inv()
    except DMNonInvertibleMatrixError:
        raise ValueError("matrix is singular")
    return from_matrix(inverse, field)
