"""Exact arithmetic in small finite fields GF(p^k) and dense matrices over them.

Elements of GF(p^k) are plain integers in ``range(q)``: the element with
polynomial-basis coordinates ``(a_0, ..., a_{k-1})``, i.e.
``a_0 + a_1*x + ... + a_{k-1}*x^{k-1}`` modulo the field modulus, is encoded
as ``a_0 + a_1*p + ... + a_{k-1}*p^{k-1}``.  Every element has exactly one
code, so equality, hashing and dict keys come for free.  The canonical
element order -- used wherever enumeration order matters -- is lexicographic
on the coordinate tuples; ``FiniteField.elements()`` yields codes in that
order (for prime fields it coincides with plain integer order).

All arithmetic is table-driven integer lookup; there is no floating point
anywhere in this package.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import isqrt


class NotPrimeError(ValueError):
    """Raised when a field characteristic is not a prime number."""


class BadModulusError(ValueError):
    """Raised when an extension-field modulus is missing, malformed or reducible."""


# Monic irreducible moduli (coefficient tuples, constant term first) for the
# prime powers a desk-scale run can request without supplying its own.
_BUILTIN_MODULI = {
    4: (1, 1, 1),                # x^2 + x + 1
    8: (1, 1, 0, 1),             # x^3 + x + 1
    9: (1, 0, 1),                # x^2 + 1
    16: (1, 1, 0, 0, 1),         # x^4 + x + 1
    25: (2, 0, 1),               # x^2 + 2
    27: (1, 2, 0, 1),            # x^3 + 2x + 1
    32: (1, 0, 1, 0, 0, 1),      # x^5 + x^2 + 1
    49: (1, 0, 1),               # x^2 + 1
    64: (1, 1, 0, 0, 0, 0, 1),   # x^6 + x + 1
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, isqrt(p) + 1))


def _gfp_divmod(num, den, p):
    """Polynomial divmod over GF(p); coefficient lists, lowest degree first."""
    num = [c % p for c in num]
    den = [c % p for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(den[-1], p - 2, p)
    quot = [0] * max(len(num) - len(den) + 1, 0)
    rem = num[:]
    while len(rem) >= len(den) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(den):
            break
        shift = len(rem) - len(den)
        factor = (rem[-1] * lead_inv) % p
        quot[shift] = factor
        for t, c in enumerate(den):
            rem[shift + t] = (rem[shift + t] - factor * c) % p
    return quot, rem


def _is_irreducible_mod_p(modulus, p, k):
    # exhaustive factor search: enough at table sizes (q <= 64 built in)
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]  # monic candidate divisor of degree d
            _, rem = _gfp_divmod(list(modulus), den, p)
            if not any(rem):
                return False
    return True


class FiniteField:
    """GF(p^k) with table-driven arithmetic on integer element codes.

    Construct through :func:`field_make`, which validates the parameters and
    caches one instance per field.  Instances are immutable after
    construction and safe to share between threads.
    """

    def __init__(self, p: int, k: int, modulus):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus  # None iff k == 1
        self.zero = 0
        self.one = 1
        q = self.q
        if k == 1:
            self._add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self._sub = [[(a - b) % p for b in range(p)] for a in range(p)]
            self._neg = [(-a) % p for a in range(p)]
            self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            coeffs = [self._decode(e) for e in range(q)]
            enc = self._encode
            self._add = [
                [enc([(x + y) % p for x, y in zip(ca, cb)]) for cb in coeffs]
                for ca in coeffs
            ]
            self._sub = [
                [enc([(x - y) % p for x, y in zip(ca, cb)]) for cb in coeffs]
                for ca in coeffs
            ]
            self._neg = [enc([(-x) % p for x in ca]) for ca in coeffs]
            self._mul = [
                [enc(self._mul_mod(ca, cb)) for cb in coeffs] for ca in coeffs
            ]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul[a]
            inv[a] = next(b for b in range(1, q) if row[b] == 1)
        self._inv = inv
        # canonical order: lexicographic on coordinate tuples
        self._order = sorted(range(q), key=self.coeffs)
        self._rank_of = [0] * q
        for r, e in enumerate(self._order):
            self._rank_of[e] = r

    def _decode(self, e):
        # little-endian digits: constant term first
        out = []
        for _ in range(self.k):
            e, r = divmod(e, self.p)
            out.append(r)
        return out

    def _encode(self, coeffs):
        e = 0
        for c in reversed(coeffs):
            e = e * self.p + c
        return e

    def _mul_mod(self, ca, cb):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for t in range(k):
                    prod[deg - k + t] = (prod[deg - k + t] - c * self.modulus[t]) % p
        return prod[:k]

    # -- element arithmetic -------------------------------------------------

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._sub[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return self._inv[a]

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = self.one
        while e:
            if e & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            e >>= 1
        return r

    # -- element representation ---------------------------------------------

    def coeffs(self, a) -> tuple:
        """Polynomial-basis coordinates of element code ``a``, constant first."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def element(self, coeffs) -> int:
        """Element code for the given coordinate sequence."""
        coeffs = tuple(coeffs)
        if len(coeffs) != self.k or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError("bad coordinate vector")
        return self._encode(coeffs)

    def elements(self):
        """All element codes, in the canonical (coordinate-lexicographic) order."""
        return iter(self._order)

    def element_rank(self, a) -> int:
        """Position of element ``a`` in the canonical order."""
        return self._rank_of[a]

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))


def field_make(p: int, k: int = 1, modulus=None) -> FiniteField:
    """Build GF(p^k), validating primality and (for k > 1) the modulus.

    ``modulus`` is a coefficient sequence, constant term first, of a monic
    irreducible degree-k polynomial over GF(p).  When omitted and k > 1, a
    built-in modulus is used (available for q <= 64).  Instances are cached,
    so repeated calls with equal parameters return the same object.
    """
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _field_make_cached(int(p), int(k), modulus)


@functools.cache
def _field_make_cached(p, k, modulus):
    if not _is_prime(p):
        raise NotPrimeError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        if modulus is not None:
            raise BadModulusError("prime fields take no modulus")
        return FiniteField(p, 1, None)
    if modulus is None:
        modulus = _BUILTIN_MODULI.get(p ** k)
        if modulus is None:
            raise BadModulusError(
                f"no built-in modulus for GF({p ** k}); provide one"
            )
    modulus = tuple(c % p for c in modulus)
    if len(modulus) != k + 1:
        raise BadModulusError(f"modulus must have degree {k}")
    if modulus[-1] != 1:
        raise BadModulusError("modulus must be monic")
    if not _is_irreducible_mod_p(modulus, p, k):
        raise BadModulusError("modulus is reducible over the prime field")
    return FiniteField(p, k, modulus)


@dataclass(frozen=True)
class MatGF:
    """A dense rows x cols matrix over a finite field, entries row-major."""

    field: FiniteField
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        q = self.field.q
        if any(not 0 <= e < q for e in self.entries):
            raise ValueError("entry out of range for field")

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), ncols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, field, n):
        one = field.one
        return cls.from_rows(
            field, [[one if a == b else 0 for b in range(n)] for a in range(n)]
        )

    def row(self, r) -> tuple:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> "MatGF":
        e = self.entries
        c = self.cols
        return MatGF(
            self.field, c, self.rows,
            tuple(e[r * c + t] for t in range(c) for r in range(self.rows)),
        )

    def neg(self) -> "MatGF":
        neg = self.field._neg
        return MatGF(self.field, self.rows, self.cols,
                     tuple(neg[e] for e in self.entries))

    def matmul(self, other: "MatGF") -> "MatGF":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        add = self.field._add
        mul = self.field._mul
        a = self.to_lists()
        b = other.to_lists()
        out = []
        for r in range(self.rows):
            ar = a[r]
            for c in range(other.cols):
                s = 0
                for t in range(self.cols):
                    x = ar[t]
                    if x:
                        s = add[s][mul[x][b[t][c]]]
                out.append(s)
        return MatGF(self.field, self.rows, other.cols, tuple(out))


def row_reduce(field, rows):
    """Reduced row echelon form of ``rows`` (lists of element codes).

    Returns ``(reduced, pivots)``: a new list with the same number of rows
    (zero rows at the bottom) and the pivot column of each nonzero row,
    ascending.  The reduction is deterministic: the first row with a nonzero
    entry in the current column becomes the pivot row.
    """
    sub = field._sub
    mul = field._mul
    inv = field._inv
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((t for t in range(r, nrows) if m[t][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        head = m[r][c]
        if head != 1:
            f = inv[head]
            m[r] = [mul[f][x] for x in m[r]]
        row_r = m[r]
        for t in range(nrows):
            if t != r and m[t][c]:
                f = m[t][c]
                m[t] = [sub[a][mul[f][b]] for a, b in zip(m[t], row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


@dataclass(frozen=True)
class RrefResult:
    matrix: MatGF
    pivots: tuple
    rank: int


def rref(m: MatGF) -> RrefResult:
    """Unique reduced row echelon form of ``m`` (same shape, zero rows last)."""
    reduced, pivots = row_reduce(m.field, m.to_lists())
    mat = MatGF.from_rows(m.field, reduced)
    return RrefResult(mat, tuple(pivots), len(pivots))


def invertible_matrices(field, n):
    """Yield every invertible n x n matrix over ``field``, in a fixed order.

    Rows are chosen depth-first in code order, skipping anything already in
    the span of the previous rows, so the sequence is reproducible.
    """
    q = field.q
    add = field._add
    mul = field._mul
    all_vecs = list(itertools.product(range(q), repeat=n))
    zero = (0,) * n

    def grow(rows, span):
        if len(rows) == n:
            yield MatGF.from_rows(field, rows)
            return
        for v in all_vecs:
            if v in span:
                continue
            new_span = set()
            for s in span:
                for c in range(q):
                    new_span.add(tuple(add[a][mul[c][b]] for a, b in zip(s, v)))
            yield from grow(rows + [v], new_span)

    yield from grow([], {zero})
