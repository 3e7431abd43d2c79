"""Acceptance checks: every verified claim as one machine-checkable item.

Each check returns a VerifyOutcome; exact checks carry tolerance
"exact", asymptotic ones an explicit engineering band (the theory only
promises decay rates, never effective constants, so every band is a
choice and is labeled as such).  Census results are cached per process
so overlapping checks do not recount; the determinism check bypasses
the cache on purpose.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import census as census_mod
from . import formulas, quivers, shapes, subalgebras
from .census import census, fit_exponent, w_q_bruteforce, x2_projective_predicate
from .fields import FieldElement, make_field
from .matrices import commutes, mat_frobenius


@dataclass
class VerifyOutcome:
    check_id: str
    status: str  # pass | fail | expected-band-miss
    observed: object
    expected: object
    tolerance: str
    elapsed_ms: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "status": self.status,
            "observed": self.observed,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }


_census_cache: dict = {}


def _cached_census(p, e, n, strata=False, workers=1):
    key = (p, e, n, strata, workers)
    if key not in _census_cache:
        _census_cache[key] = census(p, e, n, strata=strata, workers=workers)
    return _census_cache[key]


def _outcome(check_id, ok, observed, expected, tolerance, t0) -> VerifyOutcome:
    return VerifyOutcome(
        check_id=check_id,
        status="pass" if ok else "fail",
        observed=observed,
        expected=expected,
        tolerance=tolerance,
        elapsed_ms=(time.monotonic() - t0) * 1000.0,
    )


def check_n2_exact_law(fast: bool = False) -> VerifyOutcome:
    """Exact 2x2 law and the collapse of the orbit condition at n = 2."""
    t0 = time.monotonic()
    pairs = [(2, e) for e in range(1, 7)] + [(3, e) for e in range(1, 5)]
    if fast:
        pairs = [(p, e) for p, e in pairs if (p, e) not in {(2, 6), (3, 4)}]
    observed = {}
    expected = {}
    ok = True
    for p, e in pairs:
        rep = _cached_census(p, e, 2)
        want = formulas.exact_X_n2(p, rep.q)
        observed[f"({p},{e})"] = {"X": rep.counts["X"], "X_inf": rep.counts["X_inf"]}
        expected[f"({p},{e})"] = {"X": want, "X_inf": want}
        ok = ok and rep.counts["X"] == want and rep.counts["X_inf"] == want
    return _outcome("crit-01-n2-exact-law", ok, observed, expected, "exact", t0)


def check_projective_characterization(fast: bool = False) -> VerifyOutcome:
    """The 2x2 membership test equals the projective-point predicate."""
    t0 = time.monotonic()
    cases = [(2, 2), (2, 3), (3, 2)]  # q = 4, 8, 9
    mismatches = 0
    total = 0
    for p, e in cases:
        F = make_field(p, e)
        for code in range(F.q**4):
            M = census_mod.matrix_from_index(F, 2, code)
            total += 1
            if x2_projective_predicate(M) != commutes(M, mat_frobenius(M)):
                mismatches += 1
    return _outcome(
        "crit-02-projective-characterization",
        mismatches == 0,
        {"matrices": total, "mismatches": mismatches},
        {"mismatches": 0},
        "exact",
        t0,
    )


def check_diag_subalgebra_count(fast: bool = False) -> VerifyOutcome:
    """Three independent computations of the diagonalizable count agree."""
    t0 = time.monotonic()
    table = {(2, 2): 4, (3, 2): 9, (5, 2): 25, (2, 3): 64}
    observed = {}
    ok = True
    for (p, n), want in table.items():
        brute = subalgebras.diag_subalgebra_census(p, n)
        via_pi = formulas.diag_count_via_pi(p, n)
        closed = formulas.c_inf_diag(p, n)
        observed[f"({p},{n})"] = {"brute": brute, "cycle_sum": via_pi, "closed": closed}
        ok = ok and brute == via_pi == closed == want
    return _outcome("crit-03-diag-subalgebra-count", ok, observed, table, "exact", t0)


def check_partition_identity(fast: bool = False) -> VerifyOutcome:
    """Cycle-type sum identity and the part-removal bijection."""
    t0 = time.monotonic()
    ok = True
    detail = {}
    for p in (2, 3, 5):
        for n in range(1, 13):
            lhs, rhs = formulas.partition_sum_identity(p, n)
            if lhs != rhs:
                ok = False
                detail[f"identity({p},{n})"] = [str(lhs), str(rhs)]
    checked = 0
    for s in range(1, 41):
        by_parts: dict[int, list] = {}
        for lam in shapes.iter_partitions(s):
            by_parts.setdefault(len(lam), []).append(lam)
        for n in range(1, 11):
            if n > s:
                continue
            A = by_parts.get(n, [])
            B = [mu for mu in shapes.iter_partitions(s - n) if not mu or mu[0] <= n]
            if len(A) != len(B):
                ok = False
                detail[f"cardinality(s={s},n={n})"] = [len(A), len(B)]
            images = set()
            for lam in A:
                mu = formulas.partition_bijection(lam, n)
                if sum(mu) != s - n or (mu and mu[0] > n):
                    ok = False
                    detail[f"codomain({lam},{n})"] = list(mu)
                if formulas.partition_bijection_inverse(mu, n, s) != lam:
                    ok = False
                    detail[f"roundtrip({lam},{n})"] = list(mu)
                images.add(mu)
                checked += 1
            if len(images) != len(A):
                ok = False
                detail[f"injectivity(s={s},n={n})"] = len(images)
    return _outcome(
        "crit-04-partition-identity",
        ok,
        {"bijection_cases": checked, "failures": detail},
        {"failures": {}},
        "exact",
        t0,
    )


def check_commutative_subalgebras(fast: bool = False) -> VerifyOutcome:
    """Maximal commutative subalgebra dimensions and counts by brute force."""
    t0 = time.monotonic()
    observed = {}
    c22, _ = subalgebras.commutative_census(2, 2, 2)
    c23, _ = subalgebras.commutative_census(2, 2, 3)
    c33, _ = subalgebras.commutative_census(2, 3, 3)
    observed["M2(F2) dim2"] = c22
    observed["M2(F2) dim3"] = c23
    observed["M3(F2) dim3"] = c33
    ok = c22 == 7 and c23 == 0 and c33 == formulas.c_inf(2, 3) == 183
    if not fast:
        c34, _ = subalgebras.commutative_census(2, 3, 4)
        observed["M3(F2) dim4"] = c34
        ok = ok and c34 == 0
    expected = {"M2(F2) dim2": 7, "M2(F2) dim3": 0, "M3(F2) dim3": 183, "M3(F2) dim4": 0}
    return _outcome("crit-05-commutative-subalgebras", ok, observed, expected, "exact", t0)


def _expected_quiver_classes(n: int) -> set:
    classes = {quivers.canonicalize(quivers.octopus(n))}
    if n == 2:
        classes.add(quivers.canonicalize(quivers.Quiver([[1, 0], [0, 1]])))
    if n == 4:
        classes.add(quivers.canonicalize(quivers.dumbbell()))
    return classes


def check_quiver_maximizers(fast: bool = False) -> VerifyOutcome:
    t0 = time.monotonic()
    expected_counts = {2: 2, 3: 1, 4: 2, 5: 1, 6: 1, 7: 1}
    ok = True
    observed = {}
    for n in range(2, 8):
        mx, cls = quivers.maximizers(n)
        want_max = n * n // 3 + 1
        want_cls = _expected_quiver_classes(n)
        observed[n] = {"max": mx, "classes": len(cls)}
        ok = ok and mx == want_max and set(cls) == want_cls
        ok = ok and len(cls) == expected_counts[n]
    return _outcome(
        "crit-06-quiver-maximizers",
        ok,
        observed,
        {n: {"max": n * n // 3 + 1, "classes": expected_counts[n]} for n in range(2, 8)},
        "exact",
        t0,
    )


def _expected_shape_classes(n: int) -> set:
    if n == 2:
        return {((1, 1),), ((1,), (1,))}
    if n == 3:
        return {((2, 1),), ((1, 1, 1),), ((1, 1), (1,)), ((1,), (1,), (1,))}
    m = n // 2
    if n % 2 == 0:
        return {((m, m),)}
    return {((m + 1, m),), ((m, m, 1),)}


def check_shape_maximizers(fast: bool = False) -> VerifyOutcome:
    t0 = time.monotonic()
    ok = True
    observed = {}
    for n in range(2, 11):
        mx, cls = shapes.optimal_shapes(n)
        observed[n] = {"max": mx, "classes": len(cls)}
        ok = ok and mx == n * n // 4 + 1 and set(cls) == _expected_shape_classes(n)
    return _outcome(
        "crit-07-shape-maximizers",
        ok,
        observed,
        {n: {"max": n * n // 4 + 1, "classes": len(_expected_shape_classes(n))} for n in range(2, 11)},
        "exact",
        t0,
    )


def check_dimension_oracles(fast: bool = False) -> VerifyOutcome:
    """Numeric centralizer and restricted-space dimensions match the
    combinatorial formulas, identically over two characteristics."""
    t0 = time.monotonic()
    ok = True
    detail = {}
    checked = 0
    for n in range(1, 5):
        for S in shapes.enumerate_shapes(n):
            r = len(S)
            results = []
            for p in (2, 3):
                deg = 1
                while p**deg < r:
                    deg += 1
                F = make_field(p, deg)
                lams = [FieldElement(F, v) for v in range(r)]
                A = shapes.build_jordan_matrix(S, lams)
                results.append(shapes.cent_dim_numeric(A))
            want = shapes.dim_cent(S)
            if not (results[0] == results[1] == want):
                ok = False
                detail[f"cent{S}"] = results + [want]
            checked += 1
            if r == 1:
                rest = []
                for p in (2, 3):
                    F = make_field(p, 1)
                    A = shapes.build_jordan_matrix(S, [FieldElement(F, 0)])
                    rest.append(shapes.restricted_space_dim_numeric(A))
                want_rest = shapes.dim_E(S)
                if not (rest[0] == rest[1] == want_rest):
                    ok = False
                    detail[f"restricted{S}"] = rest + [want_rest]
                checked += 1
    return _outcome(
        "crit-08-dimension-oracles",
        ok,
        {"checked": checked, "failures": detail},
        {"failures": {}},
        "exact",
        t0,
    )


def check_w_counts(fast: bool = False) -> VerifyOutcome:
    """Flag-filtration counts: exact single-jump and two-jump laws, plus
    the flagged engineering band for the (1,1,1) filtration."""
    t0 = time.monotonic()
    ok = True
    detail = {}
    cap = 100_000_000
    for m in (1, 2, 3):
        for p, e in ((2, 1), (3, 1), (2, 2)):
            w = w_q_bruteforce((m,), p, e, work_cap=cap)
            if w != 1:
                ok = False
            detail[f"w(({m},)) q={p**e}"] = w
    for a, b in ((1, 1), (2, 1), (2, 2)):
        for q in (2, 3):
            w = w_q_bruteforce((a, b), q, 1, work_cap=cap)
            want = formulas.rank_count(a, b, q)
            detail[f"w(({a},{b})) q={q}"] = {"got": w, "want": want}
            ok = ok and w == want
    band = {}
    for p, e in ((2, 1), (3, 1), (2, 2)):
        q = p**e
        w = w_q_bruteforce((1, 1, 1), p, e, work_cap=cap)
        band[f"q={q}"] = {"w": w, "target": q * q, "band": 4 * q}
        ok = ok and abs(w - q * q) <= 4 * q
    return _outcome(
        "crit-09-w-counts",
        ok,
        {"exact": detail, "band": band},
        {"w(m)": 1, "w(a,b)": "rank count", "w(1,1,1)": "|w - q^2| <= 4q"},
        "exact laws plus flagged band |w - q^2| <= 4q",
        t0,
    )


def check_leading_term_convergence(fast: bool = False) -> VerifyOutcome:
    """Class-count ratios against their leading coefficients at n = 2,
    p = 2 over q = 4, 16, 64: distances non-increasing and within the
    flagged band at the largest field."""
    t0 = time.monotonic()
    targets = {"X_diag": 4, "X_inf_diag": 4, "X_eig_fp": 6, "X_inf": 7}
    qs = [(2, 2), (2, 4), (2, 6)]
    reports = [_cached_census(p, e, 2) for p, e in qs]
    ok = True
    observed = {}
    for key, target in targets.items():
        ratios = [Fraction(rep.counts[key], rep.q**2) for rep in reports]
        dists = [abs(r - target) for r in ratios]
        monotone = all(a >= b for a, b in zip(dists, dists[1:]))
        inside = dists[-1] <= 1
        observed[key] = {
            "ratios": [f"{float(r):.4f}" for r in ratios],
            "monotone": monotone,
            "final_distance": f"{float(dists[-1]):.4f}",
        }
        ok = ok and monotone and inside
    return _outcome(
        "crit-10-leading-term-convergence",
        ok,
        observed,
        targets,
        "engineering band: monotone distances, |ratio - target| <= 1.0 at q = 64",
        t0,
    )


def check_quiver_stratum_consistency(fast: bool = False) -> VerifyOutcome:
    """n = 3 strata keys are legal balanced quivers; the hub-quiver
    stratum at q = 4 sits inside a wide flagged band."""
    t0 = time.monotonic()
    legal = set(quivers.enumerate_bal(3))
    ok = True
    observed = {}
    for p, e in ((2, 1), (2, 2)):
        rep = _cached_census(p, e, 3, strata=True)
        keys = [Q for Q, _ in rep.strata_by_quiver]
        subset = all(Q in legal for Q in keys)
        wellformed = all(
            quivers.is_balanced(Q)
            and quivers.edge_count(Q) == 3
            and not Q.has_isolated_vertex()
            for Q in keys
        )
        total = sum(c for _, c in rep.strata_by_quiver)
        partition_ok = total == rep.counts["X_diag"]
        observed[f"q={rep.q}"] = {
            "keys": len(keys),
            "subset_of_enumeration": subset,
            "well_formed": wellformed,
            "partition_sum_ok": partition_ok,
        }
        ok = ok and subset and wellformed and partition_ok
    rep4 = _cached_census(2, 2, 3, strata=True)
    octo = quivers.canonicalize(quivers.octopus(3))
    octo_count = dict(rep4.strata_by_quiver).get(octo, 0)
    q4 = rep4.q**4
    inside = q4 / 50 <= octo_count <= 50 * q4
    observed["octopus-stratum-q4"] = {
        "count": octo_count,
        "band": [q4 / 50, 50 * q4],
    }
    ok = ok and inside
    return _outcome(
        "crit-11-quiver-stratum-consistency",
        ok,
        observed,
        {"keys": "subset of the balanced enumeration", "octopus": "inside band"},
        "exact keys plus flagged band [q^4/50, 50 q^4]",
        t0,
    )


def check_determinism(fast: bool = False) -> VerifyOutcome:
    """Reports are byte-identical under different worker counts."""
    t0 = time.monotonic()
    pairs = [(2, e, 2, False) for e in range(1, 7)]
    pairs += [(3, e, 2, False) for e in range(1, 5)]
    if fast:
        pairs = [t for t in pairs if (t[0], t[1]) not in {(2, 6), (3, 4)}]
    ok = True
    observed = {}
    for p, e, n, strata in pairs:
        base = _cached_census(p, e, n, strata=strata, workers=1).to_json()
        multi = census(p, e, n, strata=strata, workers=4).to_json()
        same = base == multi
        observed[f"({p},{e})"] = same
        ok = ok and same
    return _outcome(
        "crit-12-determinism",
        ok,
        observed,
        {k: True for k in observed},
        "byte-identical JSON, 1 vs 4 workers",
        t0,
    )


def diagnostic_exponent_fit(fast: bool = True) -> VerifyOutcome:
    """Non-acceptance probe: fit the 2x2 class growth from the censuses."""
    t0 = time.monotonic()
    series = [
        (_cached_census(2, e, 2).q, _cached_census(2, e, 2).counts["X"])
        for e in (2, 4, 6)
    ]
    fit = fit_exponent(series)
    ok = fit.exponent == 2 and abs(fit.coefficient_raw - 7) <= 0.5
    return VerifyOutcome(
        check_id="diag-exponent-fit-n2",
        status="pass" if ok else "expected-band-miss",
        observed={
            "exponent": fit.exponent,
            "exponent_raw": round(fit.exponent_raw, 4),
            "coefficient": f"{fit.coefficient_raw:.4f}",
        },
        expected={"exponent": 2, "coefficient": "about 7"},
        tolerance="diagnostic only",
        elapsed_ms=(time.monotonic() - t0) * 1000.0,
    )


def diagnostic_xinf_strictness(fast: bool = True) -> VerifyOutcome:
    """Non-acceptance probe: is the orbit condition strictly stronger
    than single-step commutation at n = 3?

    At q = 4 the orbit has length two, so equality is forced; the full
    suite also probes q = 8, where strictness is possible in principle
    but the leading terms (q^4 versus 183 q^3 at p = 2) only separate
    far beyond enumerable sizes.
    """
    t0 = time.monotonic()
    observed = {}
    strict = False
    rep = _cached_census(2, 2, 3, strata=True)
    observed["q=4"] = {"X": rep.counts["X"], "X_inf": rep.counts["X_inf"]}
    if not fast:
        rep8 = _cached_census(2, 3, 3)
        observed["q=8"] = {"X": rep8.counts["X"], "X_inf": rep8.counts["X_inf"]}
        strict = rep8.counts["X_inf"] < rep8.counts["X"]
    return VerifyOutcome(
        check_id="diag-xinf-strict-n3",
        status="pass" if strict else "expected-band-miss",
        observed=observed,
        expected={"note": "strictness anticipated asymptotically, not asserted"},
        tolerance="diagnostic only",
        elapsed_ms=(time.monotonic() - t0) * 1000.0,
    )


CHECKS: list[tuple[str, Callable[[bool], VerifyOutcome]]] = [
    ("crit-01-n2-exact-law", check_n2_exact_law),
    ("crit-02-projective-characterization", check_projective_characterization),
    ("crit-03-diag-subalgebra-count", check_diag_subalgebra_count),
    ("crit-04-partition-identity", check_partition_identity),
    ("crit-05-commutative-subalgebras", check_commutative_subalgebras),
    ("crit-06-quiver-maximizers", check_quiver_maximizers),
    ("crit-07-shape-maximizers", check_shape_maximizers),
    ("crit-08-dimension-oracles", check_dimension_oracles),
    ("crit-09-w-counts", check_w_counts),
    ("crit-10-leading-term-convergence", check_leading_term_convergence),
    ("crit-11-quiver-stratum-consistency", check_quiver_stratum_consistency),
    ("crit-12-determinism", check_determinism),
]

DIAGNOSTICS = [diagnostic_exponent_fit, diagnostic_xinf_strictness]


def run_suite(suite: str = "fast", with_diagnostics: bool = True) -> list[VerifyOutcome]:
    """Run every acceptance check (suite 'fast' trims the heaviest
    parameter points; 'full' runs the complete sets)."""
    if suite not in ("fast", "full"):
        raise ValueError(f"unknown suite {suite!r}")
    fast = suite == "fast"
    outcomes = [fn(fast) for _, fn in CHECKS]
    if with_diagnostics:
        outcomes.extend(fn(fast) for fn in DIAGNOSTICS)
    return outcomes
