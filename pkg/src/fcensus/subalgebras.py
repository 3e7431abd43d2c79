"""Enumeration of commutative and diagonalizable subalgebras of M_n(F_p).

Everything here works over the prime field, so matrices are plain
residue tuples and the linear algebra is integer arithmetic mod p.
Subalgebras are unital by convention (they contain the identity); the
non-unital reading is available behind a flag for exploration but no
verified count uses it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import DegenerateV, OutOfRange, WorkCapExceeded
from .fields import make_field
from .formulas import gaussian_binomial
from .matrices import Subspace

DEFAULT_CANDIDATE_CAP = 10_000_000

FlatMat = tuple[int, ...]


def _matmul(a: FlatMat, b: FlatMat, n: int, p: int) -> FlatMat:
    out = [0] * (n * n)
    for i in range(n):
        for k in range(n):
            aik = a[i * n + k]
            if aik:
                for j in range(n):
                    out[i * n + j] = (out[i * n + j] + aik * b[k * n + j]) % p
    return tuple(out)


def _identity(n: int) -> FlatMat:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def _rref_mod(rows: list[list[int]], p: int) -> list[list[int]]:
    work = [list(r) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    pr = 0
    for col in range(ncols):
        piv = next((r for r in range(pr, len(work)) if work[r][col] % p), None)
        if piv is None:
            continue
        work[pr], work[piv] = work[piv], work[pr]
        inv = pow(work[pr][col], -1, p)
        work[pr] = [(v * inv) % p for v in work[pr]]
        for r in range(len(work)):
            if r != pr and work[r][col] % p:
                c = work[r][col]
                work[r] = [(v - c * w) % p for v, w in zip(work[r], work[pr])]
        pr += 1
        if pr == len(work):
            break
    return [r for r in work[:pr] if any(r)]


def _in_span(rref_rows: list[list[int]], vec: Sequence[int], p: int) -> bool:
    v = [x % p for x in vec]
    for row in rref_rows:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is not None and v[lead]:
            c = v[lead]
            v = [(a - c * b) % p for a, b in zip(v, row)]
    return not any(v)


@dataclass(frozen=True)
class SubalgebraBasis:
    """Echelonized basis of a multiplication-closed subspace of M_n(F_p)."""

    n: int
    p: int
    dim: int
    rows: tuple[FlatMat, ...]  # RREF over the flattened coordinates

    def matrices(self) -> list[FlatMat]:
        return [tuple(r) for r in self.rows]


def _make_basis(n: int, p: int, mats: Sequence[FlatMat]) -> SubalgebraBasis:
    rows = _rref_mod([list(m) for m in mats], p)
    return SubalgebraBasis(n=n, p=p, dim=len(rows), rows=tuple(tuple(r) for r in rows))


def is_commutative_subalgebra(span: Sequence[Sequence[int]], n: int, p: int, unital: bool = True) -> bool:
    """Does the given span contain I, close under products, and commute?

    ``span`` is a list of flattened n*n matrices over the prime field.
    With unital=False the identity requirement is dropped (exploratory
    variant; no verified count relies on it).
    """
    rows = _rref_mod([list(m) for m in span], p)
    if unital and not _in_span(rows, _identity(n), p):
        return False
    basis = [tuple(r) for r in rows]
    for a, b in product(basis, repeat=2):
        ab = _matmul(a, b, n, p)
        if not _in_span(rows, ab, p):
            return False
    for a, b in combinations(basis, 2):
        if _matmul(a, b, n, p) != _matmul(b, a, n, p):
            return False
    return True


def _quotient_units(n: int) -> list[int]:
    # flattened positions of the matrix units spanning a complement of <I>:
    # all units except the last diagonal one
    return [i * n + j for i in range(n) for j in range(n) if not (i == j == n - 1)]


def _iter_rref_subspaces(ncols: int, k: int, p: int) -> Iterator[list[list[int]]]:
    """All k-dimensional subspaces of F_p^ncols as RREF bases."""
    if k == 0:
        yield []
        return
    for pivots in combinations(range(ncols), k):
        free_pos = []
        for row_i, pc in enumerate(pivots):
            for col in range(pc + 1, ncols):
                if col not in pivots:
                    free_pos.append((row_i, col))
        for assignment in product(range(p), repeat=len(free_pos)):
            rows = [[0] * ncols for _ in range(k)]
            for row_i, pc in enumerate(pivots):
                rows[row_i][pc] = 1
            for (row_i, col), v in zip(free_pos, assignment):
                rows[row_i][col] = v
            yield rows


def commutative_census(
    p: int,
    n: int,
    d: int,
    unital: bool = True,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
) -> tuple[int, list[SubalgebraBasis]]:
    """All d-dimensional commutative unital subalgebras of M_n(F_p).

    Enumerates (d-1)-dimensional subspaces of the quotient by <I> (every
    subspace containing I corresponds to exactly one of them), lifts each
    through a fixed complement of <I>, and keeps the lifts that are
    multiplication-closed with commuting basis elements.
    """
    if n > 3 or p > 3:
        raise OutOfRange("commutative census supported for n <= 3, p <= 3")
    if not 1 <= d <= n * n:
        raise OutOfRange(f"dimension {d} outside [1, {n * n}]")
    if not unital:
        raise OutOfRange("only the unital census is verified; see the flag note")
    ncols = n * n - 1
    n_candidates = gaussian_binomial(ncols, d - 1, p)
    if n_candidates > candidate_cap:
        raise WorkCapExceeded(
            f"{n_candidates} candidate subspaces exceed the cap {candidate_cap}"
        )
    units = _quotient_units(n)
    ident = _identity(n)
    found: list[SubalgebraBasis] = []
    for rows in _iter_rref_subspaces(ncols, d - 1, p):
        lifted = [ident]
        for row in rows:
            mat = [0] * (n * n)
            for pos, v in zip(units, row):
                mat[pos] = v
            lifted.append(tuple(mat))
        if _closed_commutative(lifted, n, p):
            found.append(_make_basis(n, p, lifted))
    return len(found), found


def _closed_commutative(basis: list[FlatMat], n: int, p: int) -> bool:
    rows = _rref_mod([list(m) for m in basis], p)
    mats = basis[1:]  # identity needs no checking
    for i, a in enumerate(mats):
        for b in mats[i:]:
            ab = _matmul(a, b, n, p)
            if not _in_span(rows, ab, p):
                return False
            if a is not b:
                if ab != _matmul(b, a, n, p):
                    return False
                if not _in_span(rows, _matmul(b, a, n, p), p):
                    return False
    return True


def diag_subalgebra_census(
    p: int, n: int, candidate_cap: int = DEFAULT_CANDIDATE_CAP
) -> int:
    """Count the n-dimensional diagonalizable subalgebras of M_n(F_p).

    Each such subalgebra corresponds to an unordered n-set of lines of
    the splitting space in direct sum and permuted by the p-power map.
    Lines are enumerated inside the single field F_{p^L}, L = lcm(1..n);
    a line in a stable n-set returns to itself within at most n steps of
    the power map, so only lines fixed by some sigma^m with m <= n can
    occur and the candidate list is filtered accordingly.
    """
    if n > 3 or p > 5:
        raise OutOfRange("diagonalizable census supported for n <= 3, p <= 5")
    L = 1
    for m in range(2, n + 1):
        L = L * m // math.gcd(L, m)
    field = make_field(p, L)
    q = field.q

    def normalize(vec: tuple[int, ...]) -> tuple[int, ...]:
        lead = next(v for v in vec if v)
        inv = field.inv(lead)
        return tuple(field.mul(inv, v) for v in vec)

    lines: list[tuple[int, ...]] = []
    for lead_pos in range(n):
        tail = n - lead_pos - 1
        for code in range(q**tail):
            vec = [0] * lead_pos + [1]
            t = code
            for _ in range(tail):
                t, r = divmod(t, q)
                vec.append(r)
            lines.append(tuple(vec))

    def sigma_line(vec: tuple[int, ...]) -> tuple[int, ...]:
        return normalize(tuple(field.frob(v) for v in vec))

    candidates = []
    for vec in lines:
        img = vec
        for _ in range(n):
            img = sigma_line(img)
            if img == vec:
                candidates.append(vec)
                break

    n_combos = math.comb(len(candidates), n)
    if n_combos > candidate_cap:
        raise WorkCapExceeded(
            f"{n_combos} line combinations exceed the cap {candidate_cap}"
        )

    sigma_cache = {vec: sigma_line(vec) for vec in candidates}
    count = 0
    for combo in combinations(candidates, n):
        cset = set(combo)
        if any(sigma_cache[vec] not in cset for vec in combo):
            continue
        if _full_rank(field, combo, n):
            count += 1
    return count


def _full_rank(field, vectors, n: int) -> bool:
    rows = [list(v) for v in vectors]
    pr = 0
    for col in range(n):
        piv = next((r for r in range(pr, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        inv = field.inv(rows[pr][col])
        rows[pr] = [field.mul(inv, v) for v in rows[pr]]
        for r in range(len(rows)):
            if r != pr and rows[r][col]:
                c = rows[r][col]
                rows[r] = [field.sub(v, field.mul(c, w)) for v, w in zip(rows[r], rows[pr])]
        pr += 1
    return pr == n


def schur_algebra(V: Subspace) -> SubalgebraBasis:
    """The commutative algebra of maps through V plus scalars.

    For a proper nonzero subspace V of the prime-field column space, the
    matrices with image inside V and kernel containing V multiply to
    zero pairwise, so together with the identity they span a commutative
    unital subalgebra of dimension dim(V) * (n - dim V) + 1.
    """
    field = V.field
    if field.e != 1:
        raise OutOfRange("schur_algebra is defined over the prime field")
    n = V.ambient
    k = V.dim
    if not 0 < k < n:
        raise DegenerateV("V must be a proper nonzero subspace")
    p = field.p
    # annihilator of V: kernel of the padded basis matrix
    from .matrices import Matrix, kernel_basis

    padded = [list(r) for r in V.rows] + [[0] * n for _ in range(n - k)]
    ann = kernel_basis(Matrix(field, n, [v for row in padded for v in row]))
    mats: list[FlatMat] = [_identity(n)]
    for v in V.rows:
        for w in ann.rows:
            mats.append(
                tuple((v[i] * w[j]) % p for i in range(n) for j in range(n))
            )
    basis = _make_basis(n, p, mats)
    if basis.dim != k * (n - k) + 1:
        raise AssertionError("schur algebra has unexpected dimension")
    return basis
