"""Exhaustive census of M_n(F_q): the brute-force oracle.

Matrices are enumerated by their base-p digit index in [0, q^(n^2)),
which makes work partitioning into contiguous ranges (and deterministic
re-runs under any worker count) trivial.  The cheap commutation predicate
runs in a compiled kernel (numpy fallback); the expensive per-member
classification into the semisimple / rational-eigenspace classes and the
optional quiver and shape strata happens in Python on the survivors,
which are only about q^2 of the q^(n^2) candidates at n = 2.

Work caps are configuration, not constants; anything above the hard cap
of 2e9 index points is refused outright.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    InsufficientData,
    OutOfRange,
    WorkCapExceeded,
    WrongSize,
    ZeroCount,
)
from .fields import FieldDescriptor, FieldElement, Poly, make_field
from .matrices import (
    Matrix,
    Subspace,
    char_poly,
    commutes,
    eigen_data,
    is_semisimple,
    kernel_basis,
    mat_frobenius,
    mat_mul,
    rank,
    subspace_defined_over,
)
from .quivers import Quiver, canonicalize, quiver_of_matrix
from .shapes import JordanShape, canonical_shape

try:  # compiled kernel is optional; the numpy path is always available
    from . import _censuskernel as _compiled_kernel
except ImportError:  # pragma: no cover - depends on the build environment
    _compiled_kernel = None
from . import _kernel_py as _pure_kernel

DEFAULT_WORK_CAP = 200_000_000
DEFAULT_STRATA_WORK_CAP = 1_000_000
HARD_WORK_CAP = 2_000_000_000
DEFAULT_CHUNK_SIZE = 1 << 16

CLASS_KEYS = ("X", "X_diag", "X_inf", "X_inf_diag", "X_eig_fp", "total")


def active_kernel():
    if _compiled_kernel is not None and not os.environ.get("FCENSUS_PURE"):
        return _compiled_kernel
    return _pure_kernel


def kernel_backend() -> str:
    return active_kernel().BACKEND


def matrix_from_index(field: FieldDescriptor, n: int, index: int) -> Matrix:
    """Decode a census index into a matrix (row-major, entry (0,0) in the
    least significant digit)."""
    q = field.q
    entries = []
    for _ in range(n * n):
        index, r = divmod(index, q)
        entries.append(r)
    return Matrix(field, n, entries)


def matrix_to_index(M: Matrix) -> int:
    q = M.field.q
    out = 0
    for v in reversed(M.entries):
        out = out * q + v
    return out


@dataclass
class CensusReport:
    """Exact class counts for one field, plus optional strata."""

    p: int
    e: int
    n: int
    q: int
    counts: dict[str, int]
    strata_by_quiver: list[tuple[Quiver, int]] | None = None
    strata_by_shape: list[tuple[JordanShape, int, int]] | None = None
    elapsed_ms: float = 0.0

    def to_json_dict(self) -> dict:
        """Schema-stable dict; counts as decimal strings, no timings."""
        out = {
            "schema_version": 1,
            "p": self.p,
            "e": self.e,
            "n": self.n,
            "q": self.q,
            "counts": {k: str(self.counts[k]) for k in CLASS_KEYS},
        }
        if self.strata_by_quiver is not None:
            out["strata_by_quiver"] = [
                {"quiver": [list(row) for row in Q.mult], "count": str(c)}
                for Q, c in self.strata_by_quiver
            ]
        if self.strata_by_shape is not None:
            out["strata_by_shape"] = [
                {
                    "shape": [list(part) for part in S],
                    "count_X": str(cx),
                    "count_eig": str(ce),
                }
                for S, cx, ce in self.strata_by_shape
            ]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        lines = ["section,key,count,count_eig"]
        for k in CLASS_KEYS:
            lines.append(f"class,{k},{self.counts[k]},")
        if self.strata_by_quiver is not None:
            for Q, c in self.strata_by_quiver:
                key = json.dumps([list(r) for r in Q.mult], separators=(",", ":"))
                lines.append(f'quiver,"{key}",{c},')
        if self.strata_by_shape is not None:
            for S, cx, ce in self.strata_by_shape:
                key = json.dumps([list(p) for p in S], separators=(",", ":"))
                lines.append(f'shape,"{key}",{cx},{ce}')
        return "\n".join(lines) + "\n"


def _resolve_caps(work_cap, strata: bool) -> int:
    if work_cap is None:
        env = os.environ.get("FCENSUS_WORK_CAP")
        if env:
            work_cap = int(env)
        else:
            work_cap = DEFAULT_STRATA_WORK_CAP if strata else DEFAULT_WORK_CAP
    return min(int(work_cap), HARD_WORK_CAP)


def census(
    p: int,
    e: int,
    n: int,
    strata: bool = False,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    work_cap: int | None = None,
) -> CensusReport:
    """Classify every matrix in M_n(F_q), q = p^e.

    Membership tests, in evaluation order per matrix M:
      X         commutes with the entrywise p-th power image sigma(M);
      X_inf     commutes with sigma^i(M) for all 1 <= i < e (pairwise
                commutation of the full power orbit reduces to these
                because sigma^e fixes M and twisting a pairwise condition
                by sigma^-i shifts it to one of this form);
      X_diag    in X with squarefree minimal polynomial;
      X_eig_fp  in X with every eigenspace fixed by the p-power map.
    """
    t0 = time.monotonic()
    field = make_field(p, e)
    q = field.q
    total = q ** (n * n)
    cap = _resolve_caps(work_cap, strata)
    if total > cap:
        raise WorkCapExceeded(
            f"q^(n^2) = {total} exceeds the work cap of {cap}"
            + (" (strata)" if strata else "")
        )
    mul, add, frob = field.dense_tables()
    kernel = active_kernel()

    ranges = []
    startv = 0
    while startv < total:
        stopv = min(startv + chunk_size, total)
        ranges.append((startv, stopv))
        startv = stopv

    def run_range(rng):
        lo, hi = rng
        members = np.empty(hi - lo, dtype=np.int64)
        flags = np.empty(hi - lo, dtype=np.int8)
        xc, xic, mc = kernel.count_commuting_range(
            lo, hi, n, q, e, mul, add, frob, members, flags
        )
        return xc, xic, members[:mc].copy(), flags[:mc].copy()

    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_range, ranges))
    else:
        results = [run_range(rng) for rng in ranges]

    x_count = sum(r[0] for r in results)
    xinf_count = sum(r[1] for r in results)
    member_arrays = [r[2] for r in results]
    flag_arrays = [r[3] for r in results]
    members = (
        np.concatenate(member_arrays) if member_arrays else np.empty(0, np.int64)
    )
    flags = np.concatenate(flag_arrays) if flag_arrays else np.empty(0, np.int8)

    cls = _classify_members(field, n, members, flags, strata)

    counts = {
        "X": int(x_count),
        "X_diag": cls["X_diag"],
        "X_inf": int(xinf_count),
        "X_inf_diag": cls["X_inf_diag"],
        "X_eig_fp": cls["X_eig_fp"],
        "total": total,
    }
    report = CensusReport(
        p=p,
        e=e,
        n=n,
        q=q,
        counts=counts,
        strata_by_quiver=cls["quiver_strata"] if strata else None,
        strata_by_shape=cls["shape_strata"] if strata else None,
        elapsed_ms=(time.monotonic() - t0) * 1000.0,
    )
    return report


def _rational_roots(field: FieldDescriptor, f: Poly) -> list[tuple[int, int]]:
    """Roots of f in the base field with multiplicities, cached."""
    key = ("rational-roots", f.coeffs)
    cached = field._root_cache.get(key)
    if cached is not None:
        return cached
    roots = []
    g = f
    for t in range(field.q):
        if f.eval_enc(t) == 0:
            lin = Poly(field, (field.neg(t), 1))
            mult = 0
            while True:
                quo, rem = divmod(g, lin)
                if not rem.is_zero():
                    break
                mult += 1
                g = quo
            roots.append((t, mult))
    field._root_cache[key] = roots
    return roots


def _eigenspaces_rational(field: FieldDescriptor, M: Matrix) -> bool:
    """True when every eigenspace of M is fixed by the p-power map.

    An eigenspace fixed by the p-power map has a prime-field basis, and a
    prime-field eigenvector of a matrix over F_q forces its eigenvalue
    into F_q.  So a characteristic polynomial that does not split over
    F_q rules membership out, and otherwise only the rational eigenspaces
    need the invariance check.  (Tests cross-check this against the full
    splitting-field eigenspace computation.)
    """
    f = char_poly(M)
    roots = _rational_roots(field, f)
    if sum(m for _, m in roots) < M.n:
        return False
    for t, _ in roots:
        V = kernel_basis(M.sub_scalar(t))
        if not subspace_defined_over(V, 1):
            return False
    return True


def _classify_members(
    field: FieldDescriptor,
    n: int,
    members: np.ndarray,
    flags: np.ndarray,
    strata: bool,
) -> dict:
    x_diag = 0
    x_inf_diag = 0
    x_eig = 0
    quiver_tally: dict[Quiver, int] = {}
    shape_tally: dict[JordanShape, list[int]] = {}
    for idx, inf in zip(members.tolist(), flags.tolist()):
        M = matrix_from_index(field, n, int(idx))
        ss = is_semisimple(M)
        eig_ok = _eigenspaces_rational(field, M)
        if ss:
            x_diag += 1
            if inf:
                x_inf_diag += 1
        if eig_ok:
            x_eig += 1
        if strata:
            ed = eigen_data(M)
            S = canonical_shape([d.filtration for d in ed])
            row = shape_tally.setdefault(S, [0, 0])
            row[0] += 1
            if eig_ok:
                row[1] += 1
                _assert_generalized_kernels_rational(M, ed)
            if ss:
                Q0 = quiver_of_matrix(M, ed)
                _assert_quiver_invariants(Q0, n, ed)
                Q = canonicalize(Q0)
                quiver_tally[Q] = quiver_tally.get(Q, 0) + 1
    out = {
        "X_diag": x_diag,
        "X_inf_diag": x_inf_diag,
        "X_eig_fp": x_eig,
        "quiver_strata": None,
        "shape_strata": None,
    }
    if strata:
        out["quiver_strata"] = sorted(
            quiver_tally.items(), key=lambda kv: (kv[0].r, kv[0].mult)
        )
        out["shape_strata"] = [
            (S, c[0], c[1]) for S, c in sorted(shape_tally.items(), reverse=True)
        ]
    return out


def _assert_quiver_invariants(Q0: Quiver, n: int, ed) -> None:
    # the quiver of a commuting semisimple member must be balanced with
    # exactly n edges and vertex degrees equal to the eigenspace dims
    from .quivers import edge_count, is_balanced

    if not is_balanced(Q0) or edge_count(Q0) != n:
        raise AssertionError("stratum quiver violates the balance invariant")
    data = sorted(ed, key=lambda d: d.value.owner.elt_key(d.value.val))
    for i, d in enumerate(data):
        if sum(Q0.mult[i]) != d.eigenspace.dim:
            raise AssertionError("quiver degree differs from eigenspace dim")


def _assert_generalized_kernels_rational(M: Matrix, ed) -> None:
    # every generalized kernel of a rational-eigenspace member must again
    # be fixed by the p-power map; violations would be implementation bugs
    for data in ed:
        target = data.value.owner
        from .fields import get_embedding

        emb = get_embedding(M.field, target)
        Me = M.map_field(target, emb.fwd)
        B = Me.sub_scalar(data.value.val)
        P = B
        for _ in range(len(data.filtration)):
            V = kernel_basis(P)
            if not subspace_defined_over(V, 1):
                raise AssertionError(
                    "generalized kernel not fixed by the p-power map"
                )
            P = mat_mul(P, B)


def census_by_quiver(
    p: int, e: int, n: int, work_cap: int | None = None, workers: int = 1
) -> dict[Quiver, int]:
    """Per-quiver counts over the semisimple commuting matrices."""
    report = census(p, e, n, strata=True, work_cap=work_cap, workers=workers)
    return dict(report.strata_by_quiver)


def census_by_shape(
    p: int, e: int, n: int, work_cap: int | None = None, workers: int = 1
) -> dict[JordanShape, tuple[int, int]]:
    """Per-shape counts of commuting matrices and of the rational-
    eigenspace members."""
    report = census(p, e, n, strata=True, work_cap=work_cap, workers=workers)
    return {S: (cx, ce) for S, cx, ce in report.strata_by_shape}


# ---------------------------------------------------------------------------
# Small brute-force counts used by the flag/filtration analysis
# ---------------------------------------------------------------------------


def w_q_bruteforce(
    e_list: Sequence[int], p: int, e: int, work_cap: int | None = None
) -> int:
    """Count nilpotent M over F_q commuting with sigma(M) whose kernel
    filtration is exactly the standard coordinate flag with jumps e_list.

    Enumeration runs over matrices whose first e_list[0] columns vanish;
    that is not a heuristic but the definition of ker M containing the
    first coordinate subspace (column i is the image of basis vector i).
    The remaining conditions are checked by exact rank computations.
    """
    dims = [int(x) for x in e_list]
    if not dims or any(d < 1 for d in dims):
        raise OutOfRange("filtration jumps must be positive")
    m = sum(dims)
    if m > 4:
        raise OutOfRange("w_q brute force capped at total size 4")
    field = make_field(p, e)
    q = field.q
    cap = _resolve_caps(work_cap, strata=True)
    if q ** (m * m) > cap:
        raise WorkCapExceeded(
            f"q^(m^2) = {q ** (m * m)} exceeds the work cap of {cap}"
        )
    cum = []
    acc = 0
    for d in dims:
        acc += d
        cum.append(acc)
    flags = [
        Subspace(field, m, [[1 if j == i else 0 for j in range(m)] for i in range(c)])
        for c in cum
    ]
    k1 = dims[0]
    free_cells = m * (m - k1)
    count = 0
    for code in range(q**free_cells):
        entries = [0] * (m * m)
        t = code
        for row in range(m):
            for col in range(k1, m):
                t, r = divmod(t, q)
                entries[row * m + col] = r
        M = Matrix(field, m, entries)
        ok = True
        P = M
        for kstep, V in enumerate(flags):
            if kernel_basis(P) != V:
                ok = False
                break
            if kstep + 1 < len(flags):
                P = mat_mul(P, M)
        if not ok:
            continue
        # the full flag forces ker M^s = everything, hence nilpotency
        if not commutes(M, mat_frobenius(M)):
            continue
        count += 1
    return count


def count_vw(
    a: int, p: int, e: int, v: Sequence[int], w: Sequence[int], work_cap: int | None = None
) -> int:
    """Count invertible a-by-a matrices N over F_q with N w = sigma(N) v."""
    if a > 2:
        raise OutOfRange("count_vw capped at a <= 2")
    field = make_field(p, e)
    q = field.q
    cap = _resolve_caps(work_cap, strata=True)
    if q ** (a * a) > cap:
        raise WorkCapExceeded("enumeration exceeds the work cap")
    vv = [x.val if isinstance(x, FieldElement) else int(x) for x in v]
    ww = [x.val if isinstance(x, FieldElement) else int(x) for x in w]
    count = 0
    for code in range(q ** (a * a)):
        N = matrix_from_index(field, a, code)
        if rank(N) < a:
            continue
        Ns = mat_frobenius(N)
        ok = True
        for i in range(a):
            lhs = 0
            rhs = 0
            for k in range(a):
                lhs = field.add(lhs, field.mul(N.entries[i * a + k], ww[k]))
                rhs = field.add(rhs, field.mul(Ns.entries[i * a + k], vv[k]))
            if lhs != rhs:
                ok = False
                break
        if ok:
            count += 1
    return count


def x2_projective_predicate(M: Matrix) -> bool:
    """For 2-by-2 matrices: scalar, or the projective point made of the
    off-diagonal entries and the diagonal difference is fixed by the
    p-power map (equivalently has prime-field coordinates)."""
    if M.n != 2:
        raise WrongSize("predicate defined for 2-by-2 matrices")
    F = M.field
    aa, bb, cc, dd = M.entries
    coords = [bb, cc, F.sub(dd, aa)]
    nz = next((c for c in coords if c != 0), None)
    if nz is None:
        return True  # scalar matrix
    inv = F.inv(nz)
    return all(F.frob(F.mul(c, inv)) == F.mul(c, inv) for c in coords)


@dataclass(frozen=True)
class FitResult:
    """Leading-exponent estimate from the tail of an integer count series."""

    exponent: int
    coefficient: Fraction
    exponent_raw: float
    coefficient_raw: float


def fit_exponent(series: Sequence[tuple[int, int]]) -> FitResult:
    """Estimate count ~ c * q^k from at least three (q, count) points.

    The exponent comes from the log ratio of the last two points rounded
    to the nearest integer; the coefficient is count / q^exponent at the
    largest q, kept as an exact rational alongside the raw float.
    """
    import math

    pts = [(int(q), int(c)) for q, c in series]
    if len(pts) < 3:
        raise InsufficientData("need at least three points")
    qs = [q for q, _ in pts]
    if any(q2 <= q1 for q1, q2 in zip(qs, qs[1:])):
        raise InsufficientData("q values must be strictly increasing")
    for _, c in pts:
        if c <= 0:
            raise ZeroCount("counts must be positive for a log fit")
    (q1, c1), (q2, c2) = pts[-2], pts[-1]
    raw = math.log(c2 / c1) / math.log(q2 / q1)
    k = round(raw)
    coeff = Fraction(c2, q2**k)
    return FitResult(
        exponent=k,
        coefficient=coeff,
        exponent_raw=raw,
        coefficient_raw=float(coeff),
    )
