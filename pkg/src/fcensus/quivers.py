"""Balanced-quiver combinatorics for the eigenspace-intersection strata.

A quiver is stored as its dense vertex-count + multiplicity matrix,
since every formula used here is a sum over the multiplicities.  Quivers
are compared up to isomorphism through a brute-force canonical form
(minimum over all vertex relabelings), which is plenty at <= 8 vertices.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import NotBalanced, NotSemisimple, OutOfRange, TooManyVertices
from .matrices import EigenData, Matrix, intersect_dim, is_semisimple

CANONICAL_VERTEX_CAP = 8
ENUMERATION_EDGE_CAP = 7


class Quiver:
    """Directed multigraph on r vertices with multiplicity matrix mult.

    Construction does not require balance or the absence of isolated
    vertices; both are exposed as predicates because the quiver attached
    to a matrix outside the commuting locus can fail either one.
    """

    __slots__ = ("r", "mult")

    def __init__(self, mult: Sequence[Sequence[int]]):
        r = len(mult)
        if r < 1:
            raise OutOfRange("quiver needs at least one vertex")
        rows = []
        for row in mult:
            if len(row) != r:
                raise OutOfRange("multiplicity matrix must be square")
            if any(m < 0 for m in row):
                raise OutOfRange("edge multiplicities must be >= 0")
            rows.append(tuple(int(m) for m in row))
        self.r = r
        self.mult = tuple(rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and self.mult == other.mult

    def __hash__(self) -> int:
        return hash(self.mult)

    def __repr__(self) -> str:
        return f"Quiver({[list(r) for r in self.mult]})"

    def out_degree(self, i: int) -> int:
        return sum(self.mult[i])

    def in_degree(self, i: int) -> int:
        return sum(row[i] for row in self.mult)

    def has_isolated_vertex(self) -> bool:
        return any(
            self.out_degree(i) + self.in_degree(i) == 0 for i in range(self.r)
        )


def degree(Q: Quiver, i: int) -> int:
    """Common in/out degree of vertex i (requires balance to be the same)."""
    return Q.out_degree(i)


def edge_count(Q: Quiver) -> int:
    return sum(sum(row) for row in Q.mult)


def is_balanced(Q: Quiver) -> bool:
    return all(Q.out_degree(i) == Q.in_degree(i) for i in range(Q.r))


def canonicalize(Q: Quiver) -> Quiver:
    """Lexicographically smallest flattened relabeling over all r! vertex
    permutations; two quivers are isomorphic exactly when their canonical
    forms agree.

    The minimum is found by depth-first search over label prefixes.  With
    k labels placed, the earliest flat positions whose values are already
    fixed are the first k entries of row zero, so candidates whose row-zero
    prefix exceeds the incumbent's can be cut without losing the optimum.
    """
    if Q.r > CANONICAL_VERTEX_CAP:
        raise TooManyVertices(
            f"canonicalization capped at {CANONICAL_VERTEX_CAP} vertices"
        )
    r = Q.r
    mult = Q.mult
    best: list[int] | None = None

    def dfs(prefix: list[int], used: list[bool]) -> None:
        nonlocal best
        k = len(prefix)
        if best is not None and k >= 2:
            row0 = mult[prefix[0]]
            for j in range(k):
                v = row0[prefix[j]]
                b = best[j]
                if v < b:
                    break
                if v > b:
                    return
        if k == r:
            cand = [mult[prefix[i]][prefix[j]] for i in range(r) for j in range(r)]
            if best is None or cand < best:
                best = cand
            return
        for v in range(r):
            if not used[v]:
                used[v] = True
                prefix.append(v)
                dfs(prefix, used)
                prefix.pop()
                used[v] = False

    dfs([], [False] * r)
    assert best is not None
    return Quiver([best[i * r : (i + 1) * r] for i in range(r)])


def quiver_of_matrix(M: Matrix, eigen: Sequence[EigenData]) -> Quiver:
    """Eigenspace-intersection quiver of a semisimple matrix.

    One vertex per eigenvalue (ordered by the deterministic coordinate
    key), with mult[i][j] = dim(E_i intersect sigma(E_j)).
    """
    if not is_semisimple(M):
        raise NotSemisimple("quiver_of_matrix requires a semisimple matrix")
    data = sorted(eigen, key=lambda ed: ed.value.owner.elt_key(ed.value.val))
    spaces = [ed.eigenspace for ed in data]
    shifted = [sp.frobenius_image(1) for sp in spaces]
    mult = [
        [intersect_dim(spaces[i], shifted[j]) for j in range(len(data))]
        for i in range(len(data))
    ]
    return Quiver(mult)


def _degree_partitions(n: int, r: int, maximum: int) -> Iterator[tuple[int, ...]]:
    # weakly decreasing positive degree sequences summing to n
    if r == 0:
        if n == 0:
            yield ()
        return
    lo = (n + r - 1) // r
    for first in range(min(n - r + 1, maximum), lo - 1, -1):
        for rest in _degree_partitions(n - first, r - 1, first):
            yield (first,) + rest


def _matrices_with_margins(degrees: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    # all non-negative integer matrices with row sums = column sums = degrees
    r = len(degrees)
    col_left = list(degrees)

    def rows_from(i: int, acc: list[tuple[int, ...]]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == r:
            yield tuple(acc)
            return
        for row in _compositions_bounded(degrees[i], col_left):
            for j in range(r):
                col_left[j] -= row[j]
            acc.append(row)
            yield from rows_from(i + 1, acc)
            acc.pop()
            for j in range(r):
                col_left[j] += row[j]

    yield from rows_from(0, [])


def _compositions_bounded(total: int, bounds: list[int]) -> Iterator[tuple[int, ...]]:
    k = len(bounds)

    def rec(i: int, left: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i == k - 1:
            if left <= bounds[i]:
                acc.append(left)
                yield tuple(acc)
                acc.pop()
            return
        for v in range(min(left, bounds[i]) + 1):
            acc.append(v)
            yield from rec(i + 1, left - v, acc)
            acc.pop()

    if k == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total, [])


def _transposition_minimal(
    mult: tuple[tuple[int, ...], ...], degs: tuple[int, ...], r: int
) -> bool:
    # cheap filter: among labelings with this (weakly decreasing) degree
    # sequence, the lex-minimal one cannot improve under a swap of two
    # adjacent equal-degree labels, so dropping swap-improvable matrices
    # keeps at least one representative per isomorphism class
    for a in range(r - 1):
        if degs[a] != degs[a + 1]:
            continue
        b = a + 1
        sw = list(range(r))
        sw[a], sw[b] = b, a
        for idx in range(r * r):
            i, j = divmod(idx, r)
            v = mult[sw[i]][sw[j]]
            f = mult[i][j]
            if v < f:
                return False
            if v > f:
                break
    return True


def enumerate_bal(n: int) -> list[Quiver]:
    """All isomorphism classes of balanced quivers with n edges and no
    isolated vertices, as canonical forms sorted deterministically.

    Generation runs over weakly decreasing degree sequences (every class
    has such a representative) and over multiplicity matrices with the
    prescribed row and column sums; duplicates collapse by canonical form.
    """
    if n < 1:
        raise OutOfRange("edge count must be >= 1")
    if n > ENUMERATION_EDGE_CAP:
        raise OutOfRange(f"enumeration capped at {ENUMERATION_EDGE_CAP} edges")
    seen: set[Quiver] = set()
    for r in range(1, n + 1):
        for degs in _degree_partitions(n, r, n):
            for mult in _matrices_with_margins(degs):
                if _transposition_minimal(mult, degs, r):
                    seen.add(canonicalize(Quiver(mult)))
    return sorted(seen, key=lambda Q: (Q.r, Q.mult))


def dim_X_diag(Q: Quiver) -> int:
    """Dimension of the stratum of semisimple commuting matrices with
    this quiver: |V| + sum of squared degrees - sum of squared
    multiplicities."""
    if not is_balanced(Q):
        raise NotBalanced("dimension formula needs a balanced quiver")
    return (
        Q.r
        + sum(degree(Q, i) ** 2 for i in range(Q.r))
        - sum(m * m for row in Q.mult for m in row)
    )


def octopus(n: int) -> Quiver:
    """Hub-and-legs maximizer: k = [n/3] two-cycle legs at a central
    vertex carrying the remaining n - 2k loops; k+1 vertices."""
    if n < 1:
        raise OutOfRange("octopus needs n >= 1")
    k = (n + 1) // 3  # integer closest to n/3; never ambiguous
    r = k + 1
    mult = [[0] * r for _ in range(r)]
    mult[0][0] = n - 2 * k
    for i in range(1, r):
        mult[0][i] = 1
        mult[i][0] = 1
    return Quiver(mult)


def dumbbell() -> Quiver:
    """Two looped vertices joined by a two-cycle (4 edges)."""
    return Quiver([[1, 1], [1, 1]])


def maximizers(n: int) -> tuple[int, list[Quiver]]:
    """Maximum of dim_X_diag over all balanced classes with n edges,
    together with every class attaining it (canonical, sorted)."""
    best = None
    cls: list[Quiver] = []
    for Q in enumerate_bal(n):
        d = dim_X_diag(Q)
        if best is None or d > best:
            best = d
            cls = [Q]
        elif d == best:
            cls.append(Q)
    return best, cls
