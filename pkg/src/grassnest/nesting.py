"""Nesting maps between Grassmannians over a finite field.

A map f : Gr(i, F^n) -> Gr(j, F^n) is *nesting* when l is contained in f(l)
for every l.  When i + j = n the two Grassmannians are equinumerous and a
bijective nesting map exists; this module finds one as a perfect matching in
the containment graph (a system of distinct representatives for the sets
X_l = { L : l < L }), provides the explicit witness l |-> perp(l) coming
from an alternating bilinear form, and classifies which invertible Gram
matrices induce nesting maps on lines (exactly the alternating ones).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .ffield import FiniteField, MatGF, row_reduce, rref
from .grassmann import (
    AmbientMismatchError,
    GrassmannTable,
    NestingIncidence,
    Subspace,
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    subspace_from_basis,
)


class OddDimensionError(ValueError):
    """Raised when an alternating form is requested in odd ambient dimension."""


class SingularMatrixError(ValueError):
    """Raised when a Gram matrix that must be invertible is singular."""


@dataclass(frozen=True)
class AlternatingForm:
    """A non-degenerate bilinear form with w(v, v) = 0 for every v.

    Encoded by its Gram matrix G: w(u, v) = u^T G v.  The two conditions
    ``G^T == -G`` and zero diagonal together say that the form vanishes on
    the diagonal in every characteristic (in characteristic 2 they reduce to
    "symmetric with zero diagonal").
    """

    field: FiniteField
    n: int
    gram: MatGF

    def __post_init__(self):
        g = self.gram
        if g.rows != self.n or g.cols != self.n or g.field != self.field:
            raise ValueError("Gram matrix does not match the declared space")
        if rref(g).rank != self.n:
            raise SingularMatrixError("Gram matrix is singular")
        if not _is_alternating(g):
            raise ValueError("Gram matrix is not alternating")


def _is_alternating(gram: MatGF) -> bool:
    n = gram.rows
    rows = gram.to_lists()
    neg = gram.field._neg
    if any(rows[a][a] != 0 for a in range(n)):
        return False
    return all(
        rows[a][b] == neg[rows[b][a]] for a in range(n) for b in range(a + 1, n)
    )


def standard_alternating_form(field: FiniteField, n: int) -> AlternatingForm:
    """The block form pairing e1 with e2, e3 with e4, and so on."""
    if n % 2:
        raise OddDimensionError(f"alternating invertible form needs even n, got {n}")
    one = field.one
    rows = [[0] * n for _ in range(n)]
    for b in range(0, n, 2):
        rows[b][b + 1] = one
        rows[b + 1][b] = field._neg[one]
    return AlternatingForm(field, n, MatGF.from_rows(field, rows))


# -- maximum matching ---------------------------------------------------------


def maximum_bipartite_matching(adjacency, num_right):
    """Deterministic Hopcroft-Karp: BFS phases plus batched augmenting DFS.

    Left vertices are processed in id order and adjacency lists are scanned
    as given (ascending), so ties always resolve to the smallest right id
    and the result is identical across runs and platforms.

    Returns ``(match_l, match_r)`` with -1 for unmatched vertices.
    """
    num_left = len(adjacency)
    nil = num_left
    inf = num_left + num_right + 1
    match_l = [-1] * num_left
    match_r = [-1] * num_right
    dist = [inf] * (num_left + 1)

    def bfs():
        queue = deque()
        for u in range(num_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        dist[nil] = inf
        while queue:
            u = queue.popleft()
            if dist[u] < dist[nil]:
                for v in adjacency[u]:
                    w = match_r[v]
                    nxt = nil if w == -1 else w
                    if dist[nxt] == inf:
                        dist[nxt] = dist[u] + 1
                        if nxt != nil:
                            queue.append(nxt)
        return dist[nil] != inf

    def dfs(u):
        for v in adjacency[u]:
            w = match_r[v]
            nxt = nil if w == -1 else w
            if dist[nxt] == dist[u] + 1 and (nxt == nil or dfs(nxt)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = inf
        return False

    while bfs():
        for u in range(num_left):
            if match_l[u] == -1:
                dfs(u)
    return match_l, match_r


@dataclass
class Matching:
    """A partial injective nesting assignment left id -> right id.

    ``saturating`` means every left vertex is matched; ``perfect`` means both
    sides are.  Every stored pair satisfies the containment l < f(l); the
    constructors re-verify this exhaustively.  ``incidence`` is kept when the
    matching came from a materialized containment graph.
    """

    left: GrassmannTable
    right: GrassmannTable
    pairs: dict
    saturating: bool
    perfect: bool
    incidence: NestingIncidence | None = None


def verify_matching_nesting(matching: Matching) -> bool:
    """Exhaustively re-check injectivity and containment of every pair."""
    pairs = matching.pairs
    if len(set(pairs.values())) != len(pairs):
        return False
    left, right = matching.left, matching.right
    return all(contains(left[l], right[r]) for l, r in pairs.items())


def find_bijective_nesting(inc: NestingIncidence) -> Matching:
    """Maximum nesting matching of the containment graph.

    When i + j = n the sides are equinumerous and the matching found is
    perfect, which is exactly a bijective nesting map; for other (i, j) the
    maximum matching is returned and the flags report saturation.
    """
    match_l, match_r = maximum_bipartite_matching(inc.adjacency, len(inc.right))
    pairs = {u: v for u, v in enumerate(match_l) if v >= 0}
    saturating = len(pairs) == len(inc.left)
    perfect = saturating and all(w >= 0 for w in match_r)
    matching = Matching(inc.left, inc.right, pairs, saturating, perfect, inc)
    if not verify_matching_nesting(matching):
        raise RuntimeError("matching failed its own nesting verification")
    return matching


# -- Hall diagnostics ---------------------------------------------------------


@dataclass(frozen=True)
class HallSubsetStats:
    union_size: int
    slack: int          # |X_{l_1} u ... u X_{l_k}| - k
    pairs: int          # |W| = number of incident pairs with left end in the subset
    k_n: int            # k * N, N = common left degree


@dataclass(frozen=True)
class HallReport:
    """Sampled evidence for the marriage condition, aggregated over subsets.

    ``double_count_pairs`` and ``k_n`` are totals over all sampled subsets;
    the double-counting identity |W| = kN holds per subset (enforced during
    sampling, summarized by ``double_count_ok``), hence also in total.
    """

    checked_subsets: int
    min_slack: int
    double_count_pairs: int
    k_n: int
    double_count_ok: bool


def hall_subset_stats(inc: NestingIncidence, ids) -> HallSubsetStats:
    """Exact union size, slack and pair counts for one subset of left ids."""
    adjacency = inc.adjacency
    union = set()
    pairs = 0
    for l in ids:
        adj = adjacency[l]
        union.update(adj)
        pairs += len(adj)
    k = len(ids)
    big_n = inc.left_degree
    return HallSubsetStats(len(union), len(union) - k, pairs, k * big_n)


def hall_check(inc: NestingIncidence, subset_samples: int, seed: int) -> HallReport:
    """Sample random left subsets and report the worst union slack.

    Requires i + j = n (the regime where both sides are equinumerous and the
    counting argument applies).  For each sampled subset the double count
    |W| = kN and the inequality kN <= |union| * N are checked exactly.
    Sampling is diagnostic only: the definitive certificate that the
    marriage condition holds is a perfect matching itself.
    """
    if inc.i + inc.j != inc.n:
        raise ValueError(
            f"hall_check needs i + j = n, got i={inc.i}, j={inc.j}, n={inc.n}"
        )
    rng = random.Random(seed)
    num_left = len(inc.left)
    big_n = inc.left_degree
    assert big_n == gaussian_binomial(inc.n - inc.i, inc.j - inc.i, inc.field.q)
    min_slack = None
    total_pairs = 0
    total_kn = 0
    ok = True
    for _ in range(subset_samples):
        k = rng.randint(1, num_left)
        ids = rng.sample(range(num_left), k)
        st = hall_subset_stats(inc, ids)
        if min_slack is None or st.slack < min_slack:
            min_slack = st.slack
        total_pairs += st.pairs
        total_kn += st.k_n
        ok = ok and st.pairs == st.k_n and st.k_n <= st.union_size * big_n
    return HallReport(subset_samples, min_slack, total_pairs, total_kn, ok)


# -- the symplectic witness ---------------------------------------------------


def perp(l: Subspace, form: AlternatingForm) -> Subspace:
    """Orthogonal complement { w : w(v, w) = 0 for all v in l }.

    Since the form is non-degenerate the complement has dimension
    n - dim(l), and perp is an inclusion-reversing involution.  For lines,
    l < perp(l): that is the nesting property of the form.
    """
    if l.field != form.field or l.n != form.n:
        raise AmbientMismatchError(
            f"subspace in GF({l.field.q})^{l.n} vs form on GF({form.field.q})^{form.n}"
        )
    field = l.field
    constraints = l.basis.matmul(form.gram).to_lists()
    kernel = _kernel_basis(field, constraints, l.n)
    return subspace_from_basis(field, l.n, kernel)


def _kernel_basis(field, rows, n):
    reduced, pivots = row_reduce(field, rows)
    neg = field._neg
    piv_set = set(pivots)
    free = [c for c in range(n) if c not in piv_set]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = field.one
        for r, p in enumerate(pivots):
            vec[p] = neg[reduced[r][f]]
        basis.append(vec)
    return basis


def symplectic_nesting_map(form: AlternatingForm) -> Matching:
    """The explicit bijective nesting map l |-> perp(l) on all lines.

    Packaged as a matching from Gr(1, F^n) to Gr(n-1, F^n); bijectivity and
    the containment of every pair are verified exhaustively during
    construction.
    """
    if form.n % 2:
        raise OddDimensionError("nesting perp map needs even ambient dimension")
    field, n = form.field, form.n
    lines = enumerate_subspaces(n, 1, field)
    hypers = enumerate_subspaces(n, n - 1, field)
    pairs = {}
    for l in lines.subspaces:
        image = perp(l, form)
        if not contains(l, image):
            raise RuntimeError("perp image does not contain its line")
        pairs[l.id] = image.id
    perfect = len(set(pairs.values())) == len(hypers) == len(lines)
    return Matching(lines, hypers, pairs, True, perfect, None)


# -- linear nesting maps <-> alternating forms --------------------------------


@dataclass(frozen=True)
class LinearNestingVerdict:
    is_alternating: bool
    is_nesting_exhaustive: bool

    @property
    def agree(self):
        return self.is_alternating == self.is_nesting_exhaustive


@lru_cache(maxsize=None)
def _line_reps(field: FiniteField, n: int):
    # one canonical (rref) representative per line of F^n
    reps = []
    one = field.one
    for c in range(n):
        for values in product(field._order, repeat=n - c - 1):
            v = [0] * n
            v[c] = one
            v[c + 1:] = list(values)
            reps.append(tuple(v))
    return tuple(reps)


def linear_nesting_classifier(gram: MatGF) -> LinearNestingVerdict:
    """Decide whether v |-> v^perp is nesting on lines, two independent ways.

    ``is_alternating`` inspects the matrix shape (skew with zero diagonal);
    ``is_nesting_exhaustive`` evaluates w(v, v) = 0 over every line of the
    Grassmannian, which is exactly the condition l < l^perp for the line l
    spanned by v.  The two answers agree for every invertible Gram matrix.
    """
    if gram.rows != gram.cols:
        raise ValueError("Gram matrix must be square")
    n = gram.rows
    field = gram.field
    if rref(gram).rank != n:
        raise SingularMatrixError("Gram matrix is singular")
    is_alt = _is_alternating(gram)
    rows = gram.to_lists()
    add = field._add
    mul = field._mul
    nesting = True
    for v in _line_reps(field, n):
        acc = 0
        for a in range(n):
            va = v[a]
            if va:
                row = rows[a]
                s = 0
                for b in range(n):
                    vb = v[b]
                    if vb:
                        s = add[s][mul[row[b]][vb]]
                acc = add[acc][mul[va][s]]
        if acc:
            nesting = False
            break
    return LinearNestingVerdict(is_alt, nesting)


# -- exports ------------------------------------------------------------------


def matching_lines(matching: Matching):
    """Text export: one ``leftId<TAB>rightId`` line per pair, left id ascending."""
    for l in sorted(matching.pairs):
        yield f"{l}\t{matching.pairs[l]}"


def matching_report(matching: Matching, params: dict, elapsed_ms: int = 0) -> dict:
    """JSON-able report for a matching run."""
    return {
        "kind": "nest-match",
        "params": params,
        "perfect": matching.perfect,
        "saturating": matching.saturating,
        "pairs": [[l, matching.pairs[l]] for l in sorted(matching.pairs)],
        "verifiedNesting": verify_matching_nesting(matching),
        "elapsedMs": elapsed_ms,
    }
