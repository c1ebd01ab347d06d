"""Integer character lattice of the parameter torus.

Each triple (i, j, k) determines a character on the torus of commutation
parameters: the exponent vector of q_ij * q_jk * q_ik^-1 over the coordinate
functions q_uv, u < v.  Sub-tori cut out by sets of such characters are
compared through the integer span of their characters; membership is exact
integer membership (no saturation), which is what keeps torsion solutions
such as sign matrices distinguishable from the identity component.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from functools import lru_cache
from math import comb

from .triples import Triple, TripleSet, all_triples, check_triple


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs (i, j) with i < j, lexicographically; the coordinates of
    the parameter torus."""
    return tuple(itertools.combinations(range(n + 1), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(pair_list(n))}


def num_pairs(n: int) -> int:
    return comb(n + 1, 2)


def triple_char(t: Triple, n: int) -> tuple[int, ...]:
    """Character vector of a triple: +1 at (i,j), +1 at (j,k), -1 at (i,k)."""
    i, j, k = check_triple(t, n)
    idx = pair_index(n)
    v = [0] * num_pairs(n)
    v[idx[(i, j)]] += 1
    v[idx[(j, k)]] += 1
    v[idx[(i, k)]] -= 1
    return tuple(v)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(x, y, g) with x*a + y*b == g == gcd(a, b)."""
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


class SubLattice:
    """Integer row span kept in echelon form, with exact membership.

    Rows have strictly increasing pivot columns.  Membership requires exact
    divisibility at every pivot, so the lattice is never silently saturated.
    """

    __slots__ = ("dim", "rows", "pivots")

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @classmethod
    def span(cls, vectors, dim: int) -> "SubLattice":
        lat = cls(dim)
        for v in vectors:
            lat.add(v)
        return lat

    def copy(self) -> "SubLattice":
        other = SubLattice(self.dim)
        other.rows = [row.copy() for row in self.rows]
        other.pivots = self.pivots.copy()
        return other

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec) -> bool:
        """Add a vector to the span; returns True if the lattice grew."""
        if len(vec) != self.dim:
            raise ValueError("vector dimension mismatch")
        vec = list(vec)
        grew = False
        pos = 0
        while True:
            j = next((c for c in range(pos, self.dim) if vec[c]), None)
            if j is None:
                return grew
            r = bisect_left(self.pivots, j)
            if r == len(self.pivots) or self.pivots[r] != j:
                if vec[j] < 0:
                    vec = [-v for v in vec]
                self.rows.insert(r, vec)
                self.pivots.insert(r, j)
                return True
            row = self.rows[r]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for c in range(j, self.dim):
                    vec[c] -= q * row[c]
            else:
                x, y, g = _xgcd(a, b)
                ag, bg = a // g, b // g
                for c in range(j, self.dim):
                    rc, vc = row[c], vec[c]
                    row[c] = x * rc + y * vc
                    vec[c] = ag * vc - bg * rc
                grew = True  # pivot shrank from |a| to g
            pos = j + 1

    def contains(self, vec) -> bool:
        if len(vec) != self.dim:
            raise ValueError("vector dimension mismatch")
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if vec[p] == 0:
                continue
            q, r = divmod(vec[p], row[p])
            if r != 0:
                return False
            for c in range(p, self.dim):
                vec[c] -= q * row[c]
        return not any(vec)

    def basis(self) -> tuple[tuple[int, ...], ...]:
        """Canonical Hermite-form basis: positive pivots, entries above each
        pivot reduced into [0, pivot)."""
        rows = [
            [-v for v in row] if row[p] < 0 else row.copy()
            for row, p in zip(self.rows, self.pivots)
        ]
        # reduce left-to-right so later reductions never touch earlier pivots
        for r in range(len(rows)):
            p = self.pivots[r]
            for above in range(r):
                q = rows[above][p] // rows[r][p]
                if q:
                    for c in range(p, self.dim):
                        rows[above][c] -= q * rows[r][c]
        return tuple(tuple(row) for row in rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubLattice):
            return NotImplemented
        return self.dim == other.dim and self.basis() == other.basis()

    def __repr__(self) -> str:
        return f"SubLattice(dim={self.dim}, rank={self.rank})"


def span(J: TripleSet) -> SubLattice:
    """Integer span of the characters of a triple set."""
    n = J.n
    return SubLattice.span((triple_char(t, n) for t in J), num_pairs(n))


def member(v, M: SubLattice) -> bool:
    return M.contains(v)


def closure(J: TripleSet, _lat: SubLattice | None = None) -> TripleSet:
    """Largest triple set cutting out the same sub-torus as J.

    A triple belongs to the closure exactly when its character is an integer
    combination of the characters of J.  The operator is extensive, monotone
    and idempotent.
    """
    lat = span(J) if _lat is None else _lat
    n = J.n
    members = frozenset(
        t for t in all_triples(n) if t in J.triples or lat.contains(triple_char(t, n))
    )
    return TripleSet(n, members)


def quartet_saturate(J: TripleSet) -> TripleSet:
    """Least fixed point of the four-index completion rule.

    Among any four indices i < j < k < l the four triple characters satisfy
    one linear relation, so whenever three of the four triples are present
    the fourth is forced.  Always contained in closure(J).
    """
    n = J.n
    current = set(J.triples)
    changed = True
    while changed:
        changed = False
        for quad in itertools.combinations(range(n + 1), 4):
            trips = list(itertools.combinations(quad, 3))
            present = [t in current for t in trips]
            if sum(present) == 3:
                missing = trips[present.index(False)]
                current.add(missing)
                changed = True
    return TripleSet(n, frozenset(current))


def closure_rule_gap(n: int) -> list[TripleSet]:
    """Triple sets where the four-index rule saturates to less than the full
    character closure.  Empty for n = 3; any nonempty answer documents that
    the rule is weaker than span membership for that dimension."""
    from .triples import num_triples

    gaps = []
    for mask in range(1 << num_triples(n)):
        J = TripleSet.from_mask(n, mask)
        if quartet_saturate(J) != closure(J):
            gaps.append(J)
    return gaps


def node_label(J: TripleSet, _lat: SubLattice | None = None) -> int:
    """Dimension of the sub-torus cut out by J, minus the n dimensions of
    the everywhere-free rescaling action.  The commutative node has label 0;
    the fully generic node has the largest label."""
    lat = span(J) if _lat is None else _lat
    return num_pairs(J.n) - lat.rank - J.n


def kernel_rank(n: int) -> int:
    """Rank of the span of all triple characters; its corank in the pair
    lattice is the dimension n of the free rescaling torus."""
    return span(TripleSet.full(n)).rank


def smith_normal_form(
    matrix: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form D = U @ A @ V with U, V unimodular.

    Returns (D, U, V).  D is diagonal with d_i >= 0 and d_i | d_{i+1}.
    Intended for the small systems of this package (at most ~20 x ~60).
    """
    A = [row.copy() for row in matrix]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i: int, j: int, x: int, y: int, xx: int, yy: int) -> None:
        # rows_i, rows_j <- x*rows_i + y*rows_j, xx*rows_i + yy*rows_j
        for M in (A, U):
            ri, rj = M[i], M[j]
            for c in range(len(ri)):
                a, b = ri[c], rj[c]
                ri[c] = x * a + y * b
                rj[c] = xx * a + yy * b

    def col_op(i: int, j: int, x: int, y: int, xx: int, yy: int) -> None:
        for M in (A, V):
            for row in M:
                a, b = row[i], row[j]
                row[i] = x * a + y * b
                row[j] = xx * a + yy * b

    def swap_rows(i: int, j: int) -> None:
        for M in (A, U):
            M[i], M[j] = M[j], M[i]

    def swap_cols(i: int, j: int) -> None:
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    k = 0
    size = min(nrows, ncols)
    while k < size:
        # move a nonzero pivot of minimal magnitude into (k, k)
        pivot = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            for i in range(k + 1, nrows):
                if A[i][k]:
                    if A[i][k] % A[k][k] == 0:
                        row_op(k, i, 1, 0, -(A[i][k] // A[k][k]), 1)
                    else:
                        # gcd rotation; strictly shrinks |A[k][k]|
                        x, y, g = _xgcd(A[k][k], A[i][k])
                        ag, bg = A[k][k] // g, A[i][k] // g
                        row_op(k, i, x, y, -bg, ag)
            if any(A[k][j] for j in range(k + 1, ncols)):
                for j in range(k + 1, ncols):
                    if A[k][j]:
                        if A[k][j] % A[k][k] == 0:
                            col_op(k, j, 1, 0, -(A[k][j] // A[k][k]), 1)
                        else:
                            x, y, g = _xgcd(A[k][k], A[k][j])
                            ag, bg = A[k][k] // g, A[k][j] // g
                            col_op(k, j, x, y, -bg, ag)
                continue  # column clearing may have refilled the k-th column
            if not any(A[i][k] for i in range(k + 1, nrows)):
                break
        # enforce divisibility d_k | A[i][j] on the trailing block
        offender = None
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                if A[i][j] % A[k][k]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(k, offender, 1, 1, 0, 1)  # add offending row to row k
            continue  # redo elimination at the same k
        if A[k][k] < 0:
            for M in (A, U):
                M[k] = [-v for v in M[k]]
        k += 1
    return A, U, V


def snf_diagonal(D: list[list[int]]) -> list[int]:
    size = min(len(D), len(D[0]) if D else 0)
    return [D[i][i] for i in range(size)]
