"""Enumeration of the finite Grassmannian Gr(i, F^n) and incidence queries.

Subspaces are represented by their unique reduced-row-echelon bases, so each
subspace has exactly one representative.  Enumeration order is fixed:
lexicographic by pivot-column set, then by the free entries under the
canonical element order.  The position of a subspace in that order is its
``id``; it is stable across runs and can be recomputed arithmetically from
the basis alone (:func:`subspace_rank`), without building the whole table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field

from .ffield import FiniteField, MatGF, row_reduce

#: refuse to materialize tables above this many subspaces
MAX_TABLE_SIZE = 10_000_000


class TooLargeError(ValueError):
    """Raised when a requested table would exceed the memory guard."""


class AmbientMismatchError(ValueError):
    """Raised when two subspaces do not live in the same ambient space."""


def gaussian_binomial(n: int, i: int, q: int) -> int:
    """Number of i-dimensional subspaces of F_q^n (exact integer)."""
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got i={i}, n={n}")
    if q < 2:
        raise ValueError(f"need a prime power q >= 2, got {q}")
    num = 1
    den = 1
    for a in range(i):
        num *= q ** (n - a) - 1
        den *= q ** (a + 1) - 1
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Subspace:
    """An i-dimensional subspace of F^n, held as its rref basis."""

    field: FiniteField
    n: int
    dim: int
    basis: MatGF   # dim x n, reduced row echelon form, no zero rows
    id: int        # position in the fixed enumeration of Gr(dim, F^n)

    def pivots(self) -> tuple:
        return tuple(
            next(c for c in range(self.n) if row[c]) for row in self.basis.to_lists()
        )


@dataclass
class GrassmannTable:
    """All of Gr(dim, F^n) in enumeration order, with a basis -> id lookup."""

    field: FiniteField
    n: int
    dim: int
    subspaces: tuple
    index: dict = dataclass_field(repr=False, default_factory=dict)

    def __len__(self):
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    def __getitem__(self, sid) -> Subspace:
        return self.subspaces[sid]

    def lookup(self, basis: MatGF) -> int:
        """Id of the subspace with the given rref basis."""
        return self.index[basis.entries]


def _free_cells(pivots, n):
    piv = set(pivots)
    return [
        (r, c)
        for r in range(len(pivots))
        for c in range(n)
        if c not in piv and c > pivots[r]
    ]


def enumerate_subspaces(n: int, dim: int, field: FiniteField) -> GrassmannTable:
    """Materialize Gr(dim, F^n) in the fixed enumeration order."""
    if not 0 < dim < n:
        raise ValueError(f"need 0 < dim < n, got dim={dim}, n={n}")
    count = gaussian_binomial(n, dim, field.q)
    if count > MAX_TABLE_SIZE:
        raise TooLargeError(
            f"Gr({dim}, F^{n}) over GF({field.q}) has {count} subspaces; "
            f"guard is {MAX_TABLE_SIZE}"
        )
    order = field._order
    one = field.one
    subspaces = []
    index = {}
    for pivots in itertools.combinations(range(n), dim):
        cells = _free_cells(pivots, n)
        base = [[0] * n for _ in range(dim)]
        for r, c in enumerate(pivots):
            base[r][c] = one
        for values in itertools.product(order, repeat=len(cells)):
            rows = [row[:] for row in base]
            for (r, c), v in zip(cells, values):
                rows[r][c] = v
            basis = MatGF.from_rows(field, rows)
            sid = len(subspaces)
            subspaces.append(Subspace(field, n, dim, basis, sid))
            index[basis.entries] = sid
    assert len(subspaces) == count
    return GrassmannTable(field, n, dim, tuple(subspaces), index)


def subspace_rank(field: FiniteField, n: int, rows) -> int:
    """Position of the subspace with rref basis ``rows`` in enumeration order.

    Computed arithmetically: the number of subspaces belonging to earlier
    pivot patterns, plus the rank of the free-entry assignment.
    """
    rows = [list(r) for r in rows]
    dim = len(rows)
    pivots = tuple(next(c for c in range(n) if row[c]) for row in rows)
    q = field.q
    offset = 0
    for combo in itertools.combinations(range(n), dim):
        if combo == pivots:
            break
        offset += q ** len(_free_cells(combo, n))
    else:
        raise ValueError("rows are not an echelon basis")
    rank_of = field._rank_of
    r = 0
    for row, col in _free_cells(pivots, n):
        r = r * q + rank_of[rows[row][col]]
    return offset + r


def subspace_from_basis(field: FiniteField, n: int, rows) -> Subspace:
    """Canonical Subspace spanned by ``rows`` (any spanning set, need not be rref)."""
    if isinstance(rows, MatGF):
        rows = rows.to_lists()
    reduced, pivots = row_reduce(field, rows)
    basis_rows = reduced[: len(pivots)]
    basis = MatGF.from_rows(field, basis_rows)
    sid = subspace_rank(field, n, basis_rows)
    return Subspace(field, n, len(pivots), basis, sid)


def contains(l: Subspace, L: Subspace) -> bool:
    """True iff every vector of ``l`` lies in ``L``."""
    if l.field != L.field or l.n != L.n:
        raise AmbientMismatchError("subspaces live in different ambient spaces")
    sub = l.field._sub
    mul = l.field._mul
    big_rows = L.basis.to_lists()
    big_pivots = L.pivots()
    for vec in l.basis.to_lists():
        v = list(vec)
        for row, pcol in zip(big_rows, big_pivots):
            c = v[pcol]
            if c:
                v = [sub[a][mul[c][b]] for a, b in zip(v, row)]
        if any(v):
            return False
    return True


@dataclass
class NestingIncidence:
    """Bipartite containment relation between Gr(i, F^n) and Gr(j, F^n).

    ``adjacency[lid]`` is the ascending tuple of right ids L with l < L.
    Every left vertex has degree ``gaussian_binomial(n-i, j-i, q)``; every
    right vertex has degree ``gaussian_binomial(j, i, q)``.
    """

    left: GrassmannTable
    right: GrassmannTable
    adjacency: tuple

    @property
    def field(self):
        return self.left.field

    @property
    def n(self):
        return self.left.n

    @property
    def i(self):
        return self.left.dim

    @property
    def j(self):
        return self.right.dim

    @property
    def left_degree(self):
        return len(self.adjacency[0])


def incidence_graph(i: int, j: int, n: int, field: FiniteField) -> NestingIncidence:
    """Build the containment graph between Gr(i, F^n) and Gr(j, F^n).

    For each left subspace l the right neighbours are generated directly:
    the j-spaces containing l correspond bijectively to the (j-i)-subspaces
    of the quotient F^n / l, realized on the non-pivot coordinates of l.
    """
    if not 1 <= i < j <= n - 1:
        raise ValueError(f"need 1 <= i < j <= n-1, got i={i}, j={j}, n={n}")
    left = enumerate_subspaces(n, i, field)
    right = enumerate_subspaces(n, j, field)
    quot = enumerate_subspaces(n - i, j - i, field)
    right_index = right.index
    adjacency = []
    for l in left.subspaces:
        l_rows = l.basis.to_lists()
        piv = set(l.pivots())
        nonpiv = [c for c in range(n) if c not in piv]
        ids = []
        for s in quot.subspaces:
            lifted = [row[:] for row in l_rows]
            for srow in s.basis.to_lists():
                w = [0] * n
                for idx, c in enumerate(nonpiv):
                    w[c] = srow[idx]
                lifted.append(w)
            reduced, pivots = row_reduce(field, lifted)
            key = tuple(e for row in reduced[: len(pivots)] for e in row)
            ids.append(right_index[key])
        ids.sort()
        assert all(a < b for a, b in zip(ids, ids[1:]))
        adjacency.append(tuple(ids))
    return NestingIncidence(left, right, tuple(adjacency))


def table_lines(table: GrassmannTable):
    """Line-oriented export: id then the flattened basis entries, tab-separated."""
    for s in table.subspaces:
        yield "\t".join(str(x) for x in (s.id, *s.basis.entries))


def write_table(table: GrassmannTable, fh) -> None:
    for line in table_lines(table):
        fh.write(line + "\n")
