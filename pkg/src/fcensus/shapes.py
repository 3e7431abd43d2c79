"""Jordan-shape combinatorics and numeric centralizer dimensions.

A shape is a multiset of integer partitions, one per abstract
eigenvalue; partition entry k counts the Jordan blocks of size at least
k.  Shapes are canonicalized by sorting the partitions in descending
lexicographic order, so multiset equality is plain tuple equality.

The dimension formulas are verified numerically by solving the defining
linear systems over a finite field: the systems have prime-field
coefficients, so their kernel dimensions do not depend on which
(sufficiently large) field is used; tests run them over two fields and
compare.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import DuplicateEigenvalues, NotNilpotent, OutOfRange
from .fields import FieldDescriptor, FieldElement
from .matrices import Matrix, Subspace, eigen_data, kernel_basis, mat_mul, rref

SHAPE_SIZE_CAP = 10

Partition = tuple[int, ...]
JordanShape = tuple[Partition, ...]


def canonical_shape(parts: Sequence[Sequence[int]]) -> JordanShape:
    """Validate and sort a multiset of partitions into canonical order."""
    out = []
    for part in parts:
        t = tuple(int(x) for x in part)
        if not t or any(x < 1 for x in t) or any(a < b for a, b in zip(t, t[1:])):
            raise OutOfRange(f"not a partition: {part}")
        out.append(t)
    if not out:
        raise OutOfRange("a shape needs at least one partition")
    return tuple(sorted(out, reverse=True))


def shape_size(S: JordanShape) -> int:
    return sum(sum(p) for p in S)


def iter_partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Weakly decreasing positive partitions of n, largest part first."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(max_part, n)
    for first in range(top, 0, -1):
        for rest in iter_partitions(n - first, first):
            yield (first,) + rest


def enumerate_shapes(n: int) -> list[JordanShape]:
    """All multisets of partitions with total weight n, canonical order."""
    if n < 1:
        raise OutOfRange("shape size must be >= 1")
    if n > SHAPE_SIZE_CAP:
        raise OutOfRange(f"shape enumeration capped at size {SHAPE_SIZE_CAP}")
    out: list[JordanShape] = []

    def rec(remaining: int, bound: Partition | None, acc: list[Partition]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for w in range(remaining, 0, -1):
            for part in iter_partitions(w):
                if bound is not None and part > bound:
                    continue
                acc.append(part)
                rec(remaining - w, part, acc)
                acc.pop()

    rec(n, None, [])
    return sorted(set(out), reverse=True)


def shape_of_matrix(M: Matrix) -> JordanShape:
    """Canonical shape of M from its eigenvalue kernel filtrations."""
    return canonical_shape([ed.filtration for ed in eigen_data(M)])


def block_sizes(partition: Partition) -> list[int]:
    """Jordan block sizes for one eigenvalue: e(k) - e(k+1) blocks of
    size k (the conjugate partition), listed largest block first."""
    sizes = []
    for k in range(1, len(partition) + 1):
        nxt = partition[k] if k < len(partition) else 0
        sizes.extend([k] * (partition[k - 1] - nxt))
    return sorted(sizes, reverse=True)


def build_jordan_matrix(S, lambdas) -> Matrix:
    """Block-diagonal Jordan matrix with the given shape and eigenvalues.

    Blocks for eigenvalue i precede those for eigenvalue j when i < j;
    blocks sharing an eigenvalue are ordered by decreasing size.
    """
    S = canonical_shape(S)
    vals = []
    field: FieldDescriptor | None = None
    for lam in lambdas:
        if isinstance(lam, FieldElement):
            field = lam.owner
            vals.append(lam.val)
        else:
            vals.append(int(lam))
    if field is None:
        raise OutOfRange("at least one eigenvalue must carry its field")
    if len(vals) != len(S):
        raise DuplicateEigenvalues(
            f"shape has {len(S)} eigenvalues, got {len(vals)} values"
        )
    if len(set(vals)) != len(vals):
        raise DuplicateEigenvalues("eigenvalues must be distinct")
    n = shape_size(S)
    M = [[0] * n for _ in range(n)]
    pos = 0
    for part, lam in zip(S, vals):
        for size in block_sizes(part):
            for k in range(size):
                M[pos + k][pos + k] = lam
                if k + 1 < size:
                    M[pos + k][pos + k + 1] = 1
            pos += size
    return Matrix.from_rows(field, M)


def dim_cent(S) -> int:
    """Centralizer dimension of any matrix with this shape: the sum of
    the squared filtration entries."""
    S = canonical_shape(S)
    return sum(e * e for part in S for e in part)


def dim_E(S) -> int:
    """Dimension of the commuting matrices sharing all eigenspaces:
    sum of products of consecutive filtration entries."""
    S = canonical_shape(S)
    total = 0
    for part in S:
        for a, b in zip(part, part[1:]):
            total += a * b
    return total


def dim_X_eig(S) -> int:
    """Stratum dimension for matrices with rational eigenspaces: the
    eigenvalue count plus dim_E."""
    S = canonical_shape(S)
    return len(S) + dim_E(S)


def optimal_shapes(n: int) -> tuple[int, list[JordanShape]]:
    """Maximum of dim_X_eig over shapes of size n with all maximizers."""
    best = None
    cls: list[JordanShape] = []
    for S in enumerate_shapes(n):
        d = dim_X_eig(S)
        if best is None or d > best:
            best = d
            cls = [S]
        elif d == best:
            cls.append(S)
    return best, sorted(cls, reverse=True)


# ---------------------------------------------------------------------------
# Numeric verification by exact linear algebra
# ---------------------------------------------------------------------------


def commutation_operator_rows(A: Matrix) -> list[list[int]]:
    """Matrix of B -> AB - BA acting on the n^2 coordinates of B.

    Row (i, j) and column (k, l) carry A[i,k] when l == j minus A[l,j]
    when k == i.
    """
    F = A.field
    n = A.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = F.add(row[k * n + j], A.entries[i * n + k])
            for l in range(n):
                row[i * n + l] = F.sub(row[i * n + l], A.entries[l * n + j])
            rows.append(row)
    return rows


def centralizer_space(A: Matrix) -> Subspace:
    """Solution space of AB = BA inside the flattened matrix space."""
    F = A.field
    n = A.n
    rows = commutation_operator_rows(A)
    op = Matrix(F, n * n, [v for row in rows for v in row])
    return kernel_basis(op)


def cent_dim_numeric(A: Matrix) -> int:
    """Exact kernel dimension of the commutation operator of A."""
    return centralizer_space(A).dim


def restricted_space_dim_numeric(A: Matrix) -> int:
    """Dimension of {B : AB = BA and B vanishes on ker A} for nilpotent A.

    The kernel condition is imposed row by row: for every kernel basis
    vector v, each coordinate of Bv must vanish.
    """
    F = A.field
    n = A.n
    P = A
    nilpotent = False
    for _ in range(n):
        if all(v == 0 for v in P.entries):
            nilpotent = True
            break
        P = mat_mul(P, A)
    if not nilpotent and any(v != 0 for v in P.entries):
        raise NotNilpotent("matrix is not nilpotent")
    rows = commutation_operator_rows(A)
    for kvec in kernel_basis(A).rows:
        for i in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[i * n + k] = kvec[k]
            rows.append(row)
    reduced = rref(F, rows)
    return n * n - len(reduced)
