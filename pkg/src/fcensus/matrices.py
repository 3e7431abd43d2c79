"""Exact dense linear algebra over a FieldDescriptor.

Matrices store their entries as a flat row-major tuple of integer
encodings; all the arithmetic goes through the owning field's integer
operations, so everything here is exact in any characteristic.
Subspaces are canonicalized by reduced row echelon form, which makes
subspace equality plain representational equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import (
    AmbientMismatch,
    FieldTooLarge,
    MixedFields,
    OutOfRange,
    SizeMismatch,
)
from .fields import (
    FIELD_SIZE_CAP,
    FieldDescriptor,
    FieldElement,
    Poly,
    get_embedding,
    make_field,
    poly_gcd,
    poly_is_squarefree,
)

MATRIX_SIZE_CAP = 6


class Matrix:
    """Dense n-by-n matrix over one field."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: FieldDescriptor, n: int, entries: Sequence[int]):
        if n < 1:
            raise OutOfRange("matrix size must be >= 1")
        if len(entries) != n * n:
            raise SizeMismatch(f"expected {n * n} entries, got {len(entries)}")
        self.field = field
        self.n = n
        self.entries = tuple(
            c.val if isinstance(c, FieldElement) else int(c) for c in entries
        )

    @classmethod
    def from_rows(cls, field: FieldDescriptor, rows) -> "Matrix":
        flat = [c for row in rows for c in row]
        return cls(field, len(rows), flat)

    @classmethod
    def identity(cls, field: FieldDescriptor, n: int) -> "Matrix":
        return cls(field, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, field: FieldDescriptor, n: int) -> "Matrix":
        return cls(field, n, [0] * (n * n))

    @classmethod
    def scalar(cls, field: FieldDescriptor, n: int, lam) -> "Matrix":
        v = lam.val if isinstance(lam, FieldElement) else int(lam)
        return cls(field, n, [v if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.entries[i * self.n + j])

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.n : (i + 1) * self.n]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.n, self.entries))

    def __repr__(self) -> str:
        rows = [
            " ".join(repr(FieldElement(self.field, v)) for v in self.row(i))
            for i in range(self.n)
        ]
        return "Matrix[" + "; ".join(rows) + "]"

    def add(self, other: "Matrix") -> "Matrix":
        _check_pair(self, other)
        F = self.field
        return Matrix(
            F, self.n, [F.add(a, b) for a, b in zip(self.entries, other.entries)]
        )

    def sub(self, other: "Matrix") -> "Matrix":
        _check_pair(self, other)
        F = self.field
        return Matrix(
            F, self.n, [F.sub(a, b) for a, b in zip(self.entries, other.entries)]
        )

    def sub_scalar(self, lam) -> "Matrix":
        """self - lam * I."""
        v = lam.val if isinstance(lam, FieldElement) else int(lam)
        F = self.field
        out = list(self.entries)
        for i in range(self.n):
            k = i * self.n + i
            out[k] = F.sub(out[k], v)
        return Matrix(F, self.n, out)

    def map_field(self, target: FieldDescriptor, mapping: Callable[[int], int]) -> "Matrix":
        return Matrix(target, self.n, [mapping(v) for v in self.entries])


def _check_pair(A: Matrix, B: Matrix) -> None:
    if A.field != B.field:
        raise MixedFields("matrices over different fields")
    if A.n != B.n:
        raise SizeMismatch(f"sizes {A.n} and {B.n} differ")


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    _check_pair(A, B)
    F = A.field
    n = A.n
    a = A.entries
    b = B.entries
    out = [0] * (n * n)
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = F.add(acc, F.mul(a[i * n + k], b[k * n + j]))
            out[i * n + j] = acc
    return Matrix(F, n, out)


def commutes(A: Matrix, B: Matrix) -> bool:
    """AB == BA, compared entrywise with early exit."""
    _check_pair(A, B)
    F = A.field
    n = A.n
    a = A.entries
    b = B.entries
    for i in range(n):
        for j in range(n):
            s1 = 0
            s2 = 0
            for k in range(n):
                s1 = F.add(s1, F.mul(a[i * n + k], b[k * n + j]))
                s2 = F.add(s2, F.mul(b[i * n + k], a[k * n + j]))
            if s1 != s2:
                return False
    return True


def mat_frobenius(M: Matrix, r: int = 1) -> Matrix:
    """Entrywise x -> x^(p^r)."""
    F = M.field
    return Matrix(F, M.n, [F.frob(v, r) for v in M.entries])


# ---------------------------------------------------------------------------
# Echelon forms, kernels, subspaces
# ---------------------------------------------------------------------------


def rref(field: FieldDescriptor, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Reduced row echelon form; returns only the nonzero rows."""
    work = [list(r) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    pivot_row = 0
    for col in range(ncols):
        pr = None
        for r in range(pivot_row, len(work)):
            if work[r][col] != 0:
                pr = r
                break
        if pr is None:
            continue
        work[pivot_row], work[pr] = work[pr], work[pivot_row]
        inv = field.inv(work[pivot_row][col])
        if inv != 1:
            work[pivot_row] = [field.mul(inv, v) for v in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col] != 0:
                c = work[r][col]
                work[r] = [
                    field.sub(v, field.mul(c, w))
                    for v, w in zip(work[r], work[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == len(work):
            break
    return [r for r in work[:pivot_row]]


class Subspace:
    """Linear subspace of F^n, canonicalized by its RREF basis."""

    __slots__ = ("field", "ambient", "rows")

    def __init__(self, field: FieldDescriptor, ambient: int, vectors: Sequence[Sequence[int]] = ()):
        clean = []
        for v in vectors:
            clean.append(
                [c.val if isinstance(c, FieldElement) else int(c) for c in v]
            )
        self.field = field
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rref(field, clean))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.ambient, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def contains(self, vector: Sequence[int]) -> bool:
        v = [c.val if isinstance(c, FieldElement) else int(c) for c in vector]
        stacked = rref(self.field, list(self.rows) + [v])
        return len(stacked) == self.dim

    def frobenius_image(self, r: int = 1) -> "Subspace":
        F = self.field
        return Subspace(F, self.ambient, [[F.frob(c, r) for c in row] for row in self.rows])


def kernel_basis(M: Matrix) -> Subspace:
    """Null space of M, from the RREF of M."""
    F = M.field
    n = M.n
    red = rref(F, [list(M.row(i)) for i in range(n)])
    pivots = []
    for r in red:
        for j, v in enumerate(r):
            if v != 0:
                pivots.append(j)
                break
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        vec = [0] * n
        vec[j] = 1
        for rowi, pc in enumerate(pivots):
            # pivot variable = -(coefficient of the free column)
            vec[pc] = F.neg(red[rowi][j])
        basis.append(vec)
    return Subspace(F, n, basis)


def rank(M: Matrix) -> int:
    return len(rref(M.field, [list(M.row(i)) for i in range(M.n)]))


def subspace_defined_over(V: Subspace, r: int) -> bool:
    """True when applying the p^r-power map fixes V as a set."""
    return V.frobenius_image(r) == V


def intersect(V: Subspace, W: Subspace) -> Subspace:
    """Intersection via the Zassenhaus double-block elimination."""
    if V.field != W.field or V.ambient != W.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    F = V.field
    n = V.ambient
    rows = [list(r) + list(r) for r in V.rows]
    rows += [list(r) + [0] * n for r in W.rows]
    red = rref(F, rows)
    inter = []
    for row in red:
        if all(v == 0 for v in row[:n]):
            inter.append(row[n:])
    return Subspace(F, n, inter)


def intersect_dim(V: Subspace, W: Subspace) -> int:
    """dim(V + W) complement formula: dim V + dim W - rank(stacked)."""
    if V.field != W.field or V.ambient != W.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    stacked = rref(V.field, [list(r) for r in V.rows] + [list(r) for r in W.rows])
    return V.dim + W.dim - len(stacked)


# ---------------------------------------------------------------------------
# Characteristic / minimal polynomials and eigen-structure
# ---------------------------------------------------------------------------


def char_poly(M: Matrix) -> Poly:
    """det(xI - M) by cofactor expansion over the polynomial ring.

    Interpolation would need more than n distinct sample points, which
    tiny fields cannot supply; cofactor expansion is uniform and exact.
    """
    if M.n > MATRIX_SIZE_CAP:
        raise OutOfRange(f"char_poly capped at n <= {MATRIX_SIZE_CAP}")
    F = M.field
    n = M.n
    grid = [
        [
            Poly(F, (F.neg(M.entries[i * n + j]), 1))
            if i == j
            else Poly(F, (F.neg(M.entries[i * n + j]),))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return _det_poly(F, grid)


def _det_poly(F: FieldDescriptor, grid: list[list[Poly]]) -> Poly:
    m = len(grid)
    if m == 1:
        return grid[0][0]
    acc = Poly(F)
    sign = 1
    for j in range(m):
        top = grid[0][j]
        if not top.is_zero():
            minor = [[grid[i][k] for k in range(m) if k != j] for i in range(1, m)]
            term = top * _det_poly(F, minor)
            if sign < 0:
                term = term.scale(F.neg(1))
            acc = acc + term
        sign = -sign
    return acc


def min_poly(M: Matrix) -> Poly:
    """Lowest-degree monic dependency among the flattened powers of M."""
    if M.n > MATRIX_SIZE_CAP:
        raise OutOfRange(f"min_poly capped at n <= {MATRIX_SIZE_CAP}")
    F = M.field
    n = M.n
    powers = [Matrix.identity(F, n)]
    for _ in range(n):
        powers.append(mat_mul(powers[-1], M))
    vecs = [list(P.entries) for P in powers]
    for k in range(1, n + 1):
        coeffs = _solve_combination(F, vecs[:k], vecs[k])
        if coeffs is not None:
            # M^k = sum coeffs[i] M^i, so min poly is x^k - sum coeffs[i] x^i
            out = [F.neg(c) for c in coeffs] + [1]
            return Poly(F, out)
    raise AssertionError("no dependency up to degree n")  # Cayley-Hamilton


def _solve_combination(F: FieldDescriptor, basis: list[list[int]], target: list[int]):
    """Coefficients c with sum c_i basis_i = target, or None if outside."""
    k = len(basis)
    m = len(target)
    rows = [[basis[i][r] for i in range(k)] + [target[r]] for r in range(m)]
    red = rref(F, rows)
    sol = [0] * k
    for row in red:
        pivot = None
        for j in range(k):
            if row[j] != 0:
                pivot = j
                break
        if pivot is None:
            if row[k] != 0:
                return None  # inconsistent
            continue
        sol[pivot] = row[k]
    # verify (guards against under-determined reads; basis is independent)
    for r in range(m):
        acc = 0
        for i in range(k):
            acc = F.add(acc, F.mul(sol[i], basis[i][r]))
        if acc != target[r]:
            return None
    return sol


def is_semisimple(M: Matrix) -> bool:
    """Diagonalizable over the closure: squarefree minimal polynomial."""
    return poly_is_squarefree(min_poly(M))


@dataclass(frozen=True)
class EigenData:
    """One eigenvalue with its eigenspace and kernel filtration.

    filtration[k-1] = dim ker(M - value)^k - dim ker(M - value)^(k-1);
    entries are the per-size-threshold Jordan block counts.
    """

    value: FieldElement
    eigenspace: Subspace
    filtration: tuple[int, ...]

    @property
    def algebraic_multiplicity(self) -> int:
        return sum(self.filtration)


def splitting_data(field: FieldDescriptor, f: Poly):
    """(L, roots) with roots = ((encoding, multiplicity), ...) in F_{q^L}.

    L is the lcm of the degrees of the irreducible factors of f, found by
    scanning successive extensions and stripping the factors whose roots
    appear there; the final root list comes from one exhaustive scan of
    F_{q^L}.  Results are cached on the field per coefficient tuple.
    """
    f = f.monic()
    key = f.coeffs
    cached = field._root_cache.get(key)
    if cached is not None:
        return cached
    degs: set[int] = set()
    remaining = f
    d = 1
    while remaining.degree > 0:
        if d > remaining.degree:
            raise AssertionError("factor degree exceeded remaining degree")
        if field.p ** (field.e * d) > FIELD_SIZE_CAP:
            raise FieldTooLarge(
                f"splitting field degree {d} over GF({field.p}^{field.e}) exceeds the cap"
            )
        ext = make_field(field.p, field.e * d)
        emb = get_embedding(field, ext)
        g = remaining.map_field(ext, emb.fwd)
        roots = [t for t in range(ext.q) if g.eval_enc(t) == 0]
        if roots:
            degs.add(d)
            for t in roots:
                lin = Poly(ext, (ext.neg(t), 1))
                while True:
                    quo, rem = divmod(g, lin)
                    if not rem.is_zero():
                        break
                    g = quo
            back = []
            for c in g.coeffs:
                b = emb.bwd(c)
                if b is None:
                    raise AssertionError("quotient coefficient outside base field")
                back.append(b)
            remaining = Poly(field, back)
        d += 1
    L = 1
    for d0 in degs:
        L = L * d0 // math.gcd(L, d0)
    target = make_field(field.p, field.e * L)
    emb = get_embedding(field, target)
    g = f.map_field(target, emb.fwd)
    found: list[tuple[int, int]] = []
    for t in range(target.q):
        if g.eval_enc(t) == 0:
            lin = Poly(target, (target.neg(t), 1))
            mult = 0
            h = g
            while True:
                quo, rem = divmod(h, lin)
                if not rem.is_zero():
                    break
                mult += 1
                h = quo
            found.append((t, mult))
    found.sort(key=lambda rm: target.elt_key(rm[0]))
    if sum(m for _, m in found) != f.degree:
        raise AssertionError("polynomial did not split in the computed field")
    result = (L, tuple(found))
    field._root_cache[key] = result
    return result


def eigen_data(M: Matrix) -> list[EigenData]:
    """Eigenvalues of M in the single splitting extension F_{q^L}.

    Materializing every eigenvalue in one field keeps cross-eigenvalue
    intersections well-typed.  For each eigenvalue the kernel filtration
    of (M - lambda) is computed over that extension.
    """
    if M.n > MATRIX_SIZE_CAP:
        raise OutOfRange(f"eigen_data capped at n <= {MATRIX_SIZE_CAP}")
    F = M.field
    f = char_poly(M)
    L, roots = splitting_data(F, f)
    target = make_field(F.p, F.e * L)
    emb = get_embedding(F, target)
    Me = M.map_field(target, emb.fwd)
    out = []
    for enc, mult in roots:
        B = Me.sub_scalar(enc)
        dims = []
        prev = 0
        P = B
        while True:
            d = M.n - rank(P)
            step = d - prev
            if step <= 0:
                break
            dims.append(step)
            prev = d
            if prev >= mult:
                break
            P = mat_mul(P, B)
        eigenspace = kernel_basis(B)
        out.append(EigenData(FieldElement(target, enc), eigenspace, tuple(dims)))
    total = sum(e.algebraic_multiplicity for e in out)
    if total != M.n:
        raise AssertionError("filtrations do not sum to the matrix size")
    return out
