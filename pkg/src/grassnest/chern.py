"""Truncated symmetric-polynomial calculus for total Chern classes.

Everything happens in the ring of integer polynomials in i variables,
truncated past a fixed total degree D.  Truncation models the relevant
quotient ring exactly: the discarded ideal is generated in degrees above D,
so sums, products and inverses of classes of degree <= D are unaffected.

The two central objects are the alternating elementary-symmetric product
``prod (1 - x_a)`` (the total Chern class of the tautological subbundle) and
its truncated inverse ``1 + h_1 + ... + h_D`` (the total Chern class of the
quotient bundle), where h_d is the complete homogeneous polynomial: the sum
of all monomials of degree d.  The irreducibility of ``1 + h_1 + ... + h_D``
-- equivalently of its homogenization h_D(x_0, ..., x_i) -- is what rules
out any factorization forced by a nesting map; the boundary step of that
irreducibility induction reduces to coprimality of the univariate sums
``u_d(z) = 1 + z + ... + z^d``, certified here by exact rational gcds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations


class NotAUnitError(ValueError):
    """Raised when a truncated inverse is requested of a series without constant term 1."""


def _clean(terms, trunc_degree):
    return {e: c for e, c in terms.items() if c and sum(e) <= trunc_degree}


@dataclass(frozen=True)
class TruncPoly:
    """Sparse integer polynomial in ``num_vars`` variables, truncated past ``trunc_degree``."""

    num_vars: int
    trunc_degree: int
    terms: dict

    @classmethod
    def from_terms(cls, terms, num_vars, trunc_degree):
        return cls(num_vars, trunc_degree, _clean(dict(terms), trunc_degree))

    @classmethod
    def zero(cls, num_vars, trunc_degree):
        return cls(num_vars, trunc_degree, {})

    @classmethod
    def constant(cls, c, num_vars, trunc_degree):
        e = (0,) * num_vars
        return cls(num_vars, trunc_degree, {e: c} if c else {})

    @classmethod
    def one(cls, num_vars, trunc_degree):
        return cls.constant(1, num_vars, trunc_degree)

    @classmethod
    def variable(cls, index, num_vars, trunc_degree):
        e = tuple(1 if a == index else 0 for a in range(num_vars))
        return cls.from_terms({e: 1}, num_vars, trunc_degree)

    def _check_compatible(self, other):
        if (self.num_vars, self.trunc_degree) != (other.num_vars, other.trunc_degree):
            raise ValueError("operands live in different truncated rings")

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return TruncPoly(self.num_vars, self.trunc_degree, _clean(terms, self.trunc_degree))

    def __neg__(self):
        return TruncPoly(self.num_vars, self.trunc_degree,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_compatible(other)
        d = self.trunc_degree
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > d:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncPoly(self.num_vars, d, _clean(out, d))

    __rmul__ = __mul__

    def scale(self, c: int):
        if c == 0:
            return TruncPoly.zero(self.num_vars, self.trunc_degree)
        return TruncPoly(self.num_vars, self.trunc_degree,
                         {e: c * v for e, v in self.terms.items()})

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.num_vars, 0)

    def homogeneous_component(self, d: int) -> "TruncPoly":
        return TruncPoly(self.num_vars, self.trunc_degree,
                         {e: c for e, c in self.terms.items() if sum(e) == d})

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.num_vars: 1}

    def sorted_terms(self):
        # graded lexicographic: by total degree, then lex with x_1 > x_2 > ...
        return sorted(self.terms.items(),
                      key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"x{a + 1}^{p}" if p > 1 else f"x{a + 1}"
                       for a, p in enumerate(e) if p]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def trunc_mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    """Product modulo terms of degree above the truncation bound."""
    return a * b


def trunc_inverse(a: TruncPoly) -> TruncPoly:
    """Multiplicative inverse of a series with constant term 1, degree by degree."""
    if a.constant_term() != 1:
        raise NotAUnitError("truncated inverse needs constant term 1")
    d_max = a.trunc_degree
    nv = a.num_vars
    comps_a = [a.homogeneous_component(d) for d in range(d_max + 1)]
    comps_b = [TruncPoly.one(nv, d_max)]
    for d in range(1, d_max + 1):
        acc = TruncPoly.zero(nv, d_max)
        for e in range(1, d + 1):
            acc = acc + comps_a[e] * comps_b[d - e]
        comps_b.append(-acc)
    out = TruncPoly.zero(nv, d_max)
    for comp in comps_b:
        out = out + comp
    return out


def partial_derivative(a: TruncPoly, var: int) -> TruncPoly:
    terms = {}
    for e, c in a.terms.items():
        p = e[var]
        if p:
            e2 = tuple(x - 1 if t == var else x for t, x in enumerate(e))
            terms[e2] = terms.get(e2, 0) + c * p
    return TruncPoly(a.num_vars, a.trunc_degree, _clean(terms, a.trunc_degree))


def embed(a: TruncPoly, num_vars: int, offset: int) -> TruncPoly:
    """Reinterpret ``a`` inside a larger ring, its variables shifted by ``offset``."""
    if offset < 0 or offset + a.num_vars > num_vars:
        raise ValueError("embedding does not fit")
    pad_hi = num_vars - offset - a.num_vars
    terms = {(0,) * offset + e + (0,) * pad_hi: c for e, c in a.terms.items()}
    return TruncPoly(num_vars, a.trunc_degree, terms)


def elementary_symmetric(r: int, num_vars: int, trunc_degree: int) -> TruncPoly:
    """Sum of all squarefree degree-r monomials in ``num_vars`` variables."""
    if not 0 <= r <= num_vars:
        raise ValueError(f"need 0 <= r <= num_vars, got r={r}")
    if r > trunc_degree:
        raise ValueError("degree r exceeds the truncation bound")
    terms = {}
    for subset in combinations(range(num_vars), r):
        e = tuple(1 if a in subset else 0 for a in range(num_vars))
        terms[e] = 1
    return TruncPoly(num_vars, trunc_degree, terms)


def _exponents_of_degree(d, parts):
    if parts == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _exponents_of_degree(d - first, parts - 1):
            yield (first, *rest)


def complete_homogeneous(d: int, num_vars: int, trunc_degree: int) -> TruncPoly:
    """Sum of all monomials of total degree d in ``num_vars`` variables."""
    if not 0 <= d <= trunc_degree:
        raise ValueError(f"need 0 <= d <= trunc_degree, got d={d}")
    terms = {e: 1 for e in _exponents_of_degree(d, num_vars)}
    return TruncPoly(num_vars, trunc_degree, terms)


def tautological_total_chern(i: int, trunc_degree: int) -> TruncPoly:
    """The product (1 - x_1)(1 - x_2)...(1 - x_i), expanded in the truncated ring.

    Its degree-r part is (-1)^r times the r-th elementary symmetric
    polynomial: the r-th Chern class of the rank-i tautological subbundle.
    When ``trunc_degree < i`` the top elementary terms fall to the
    truncation, exactly as they vanish in the quotient ring.
    """
    if i < 1 or trunc_degree < 1:
        raise ValueError("need i >= 1 and trunc_degree >= 1")
    out = TruncPoly.one(i, trunc_degree)
    for a in range(i):
        factor = TruncPoly.one(i, trunc_degree) - TruncPoly.variable(a, i, trunc_degree)
        out = out * factor
    return out


def quotient_total_chern(i: int, n: int) -> TruncPoly:
    """Total Chern class of the rank n-i quotient bundle, truncated at n-i.

    Equals 1 + h_1 + ... + h_{n-i} (complete homogeneous sums); multiplying
    by :func:`tautological_total_chern` gives exactly 1, the total Chern
    class of the trivial bundle (Whitney identity under truncation).
    """
    if not 1 <= i <= n - 1:
        raise ValueError(f"need 1 <= i <= n-1, got i={i}, n={n}")
    d_max = n - i
    out = TruncPoly.one(i, d_max)
    for d in range(1, d_max + 1):
        out = out + complete_homogeneous(d, i, d_max)
    return out


# -- identities of the complete homogeneous sums ------------------------------


@dataclass(frozen=True)
class HomogeneousIdentityReport:
    ok: bool
    failures: tuple  # (identity name, d, first offending term) triples

    def __bool__(self):
        return self.ok


def verify_homogeneous_identities(d_max: int) -> HomogeneousIdentityReport:
    """Check two exact identities of h_d in three variables for 2 <= d <= d_max.

    Recursion:   h_d(x, y, z) = x * h_{d-1}(x, y, z) + h_d(y, z)
    Derivative:  (d/dx + d/dy + d/dz) h_d(x, y, z) = (d + 2) * h_{d-1}(x, y, z)
    """
    if d_max < 2:
        raise ValueError("need d_max >= 2")
    failures = []
    for d in range(2, d_max + 1):
        h_d = complete_homogeneous(d, 3, d)
        h_prev = complete_homogeneous(d - 1, 3, d)
        x = TruncPoly.variable(0, 3, d)
        rhs = x * h_prev + embed(complete_homogeneous(d, 2, d), 3, 1)
        diff = h_d - rhs
        if diff.terms:
            failures.append(("recursion", d, str(diff.sorted_terms()[0])))
        deriv = TruncPoly.zero(3, d)
        for var in range(3):
            deriv = deriv + partial_derivative(h_d, var)
        diff = deriv - (d + 2) * h_prev
        if diff.terms:
            failures.append(("derivative", d, str(diff.sorted_terms()[0])))
    return HomogeneousIdentityReport(not failures, tuple(failures))


# -- univariate rational polynomials and the boundary gcd certificate ---------


@dataclass(frozen=True)
class UniPolyQ:
    """Dense univariate polynomial over Q, coefficients lowest degree first."""

    coeffs: tuple  # Fractions, no trailing zeros; () is the zero polynomial

    @classmethod
    def from_ints(cls, ints):
        return cls._norm([Fraction(c) for c in ints])

    @classmethod
    def _norm(cls, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def monic(self) -> "UniPolyQ":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return UniPolyQ(tuple(c / lead for c in self.coeffs))

    def __divmod__(self, other: "UniPolyQ"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        while len(rem) >= len(other.coeffs):
            f = rem[-1] / lead
            shift = len(rem) - len(other.coeffs)
            quot[shift] = f
            for t, c in enumerate(other.coeffs):
                rem[shift + t] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
            if not rem:
                break
        return UniPolyQ._norm(quot), UniPolyQ._norm(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other: "UniPolyQ") -> "UniPolyQ":
        """Monic greatest common divisor by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()


def unit_sum_poly(d: int) -> UniPolyQ:
    """The univariate sum 1 + z + ... + z^d."""
    return UniPolyQ.from_ints([1] * (d + 1))


@dataclass(frozen=True)
class CertificateEntry:
    d: int
    current: UniPolyQ    # u_d
    previous: UniPolyQ   # u_{d-1}
    gcd: UniPolyQ


@dataclass(frozen=True)
class CertificateChain:
    """Boundary certificates for the irreducibility induction on h_d.

    For each d the roots of u_d = 1 + z + ... + z^d are the nontrivial
    (d+1)-th roots of unity and those of u_{d-1} the nontrivial d-th roots;
    gcd(u_d, u_{d-1}) = 1 certifies they never coincide, which is the
    boundary contradiction of the induction.  The interior step (a singular
    point off the coordinate triangle descends to the previous curve) is a
    cited assumption, recorded here, not machine-checked.
    """

    d_max: int
    entries: tuple
    passed: bool

    def to_json(self) -> dict:
        return {
            "dMax": self.d_max,
            "entries": [{"d": e.d, "gcdDegree": e.gcd.degree} for e in self.entries],
            "pass": self.passed,
        }


def smoothness_certificate(d_max: int) -> CertificateChain:
    """Compute gcd(u_d, u_{d-1}) over Q for every d in 2..d_max."""
    if d_max < 2:
        raise ValueError("need d_max >= 2")
    entries = []
    passed = True
    for d in range(2, d_max + 1):
        u, v = unit_sum_poly(d), unit_sum_poly(d - 1)
        g = u.gcd(v)
        entries.append(CertificateEntry(d, u, v, g))
        passed = passed and g.is_one()
    return CertificateChain(d_max, tuple(entries), passed)


def _det_fractions(m):
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pr = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def quadratic_gram_determinant(a: TruncPoly) -> Fraction:
    """Determinant of the symmetric Gram matrix of a quadratic form.

    Nonzero determinant means the projective quadric it cuts out is smooth,
    hence irreducible; for h_2 in three variables the value is exactly 1/2.
    """
    nv = a.num_vars
    if any(sum(e) != 2 for e in a.terms):
        raise ValueError("polynomial is not homogeneous of degree 2")
    m = [[Fraction(0)] * nv for _ in range(nv)]
    for e, c in a.terms.items():
        support = [t for t, p in enumerate(e) if p]
        if len(support) == 1:
            m[support[0]][support[0]] = Fraction(c)
        else:
            s, t = support
            m[s][t] = m[t][s] = Fraction(c, 2)
    return _det_fractions(m)


# -- obstruction to factoring the quotient total Chern class ------------------


@dataclass(frozen=True)
class FactorizationVerdict:
    """Outcome of the factorization obstruction for a nesting map Gr(i) -> Gr(j).

    For i >= 2, ``no_factorization`` holds when the certificate chain for
    h_{n-i} passes: the truncated quotient class is irreducible, so it
    cannot split into factors of degrees n-j and j-i.  For i = 1 the ring is
    univariate and factorizations do exist; the verdict then lists the j
    values that survive the integrality filters of the univariate analysis.
    """

    n: int
    i: int
    j: int
    no_factorization: bool
    certificate: CertificateChain | None
    surviving_j: tuple | None


def factorization_obstruction(n: int, i: int, j: int) -> FactorizationVerdict:
    if not 1 <= i < j <= n - 1:
        raise ValueError(f"need 1 <= i < j <= n-1, got i={i}, j={j}, n={n}")
    if i >= 2:
        chain = smoothness_certificate(n - i)
        return FactorizationVerdict(n, i, j, chain.passed, chain, None)
    from . import schwarzenberger  # local import: that module depends on nothing here

    table = schwarzenberger.classify_chern_splits(n)
    surviving = tuple(sorted({e.j for e in table.survivors}))
    return FactorizationVerdict(n, i, j, j not in surviving, None, surviving)
