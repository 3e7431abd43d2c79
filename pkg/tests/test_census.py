"""Census counts, strata, determinism, serialization, small brute counts."""

import json
from collections import Counter
from fractions import Fraction

import pytest

import fcensus.census as census_mod
from fcensus.census import (
    CensusReport,
    census,
    census_by_quiver,
    census_by_shape,
    count_vw,
    fit_exponent,
    matrix_from_index,
    matrix_to_index,
    w_q_bruteforce,
    x2_projective_predicate,
)
from fcensus.errors import InsufficientData, WorkCapExceeded, WrongSize, ZeroCount
from fcensus.fields import make_field
from fcensus.formulas import exact_X_n2, rank_count
from fcensus.matrices import (
    commutes,
    eigen_data,
    is_semisimple,
    mat_frobenius,
    subspace_defined_over,
)
from fcensus.quivers import enumerate_bal


def test_census_examples():
    rep = census(2, 1, 2)
    assert rep.counts["X"] == 16 == rep.counts["total"]
    rep = census(2, 2, 2)
    assert rep.counts["X"] == 88
    assert rep.counts["X_inf"] == 88
    rep = census(2, 1, 3)
    assert rep.counts["X"] == 512


def test_census_count_inequalities():
    for p, e, n in ((2, 2, 2), (3, 2, 2), (2, 2, 3)):
        rep = census(p, e, n, strata=(n == 3))
        c = rep.counts
        assert c["X_inf_diag"] <= min(c["X_inf"], c["X_diag"])
        assert c["X_diag"] <= c["X"] <= c["total"]
        assert c["X_inf"] <= c["X"]
        assert c["X_eig_fp"] <= c["X"]


def test_census_work_caps():
    with pytest.raises(WorkCapExceeded):
        census(2, 3, 3, strata=True)  # 2^27 over the strata default
    with pytest.raises(WorkCapExceeded):
        census(2, 5, 2, work_cap=1000)


def test_index_roundtrip():
    F9 = make_field(3, 2)
    for code in (0, 1, 6560, 500, 6000):
        M = matrix_from_index(F9, 2, code)
        assert matrix_to_index(M) == code


def test_classification_against_direct_predicates():
    # exhaustive dual-route check of every class over two fields,
    # including the eigenspace test through the full splitting machinery
    for p, e in ((2, 2), (3, 2)):
        F = make_field(p, e)
        rep = census(p, e, 2)
        tallies = Counter()
        for code in range(F.q**4):
            M = matrix_from_index(F, 2, code)
            in_x = commutes(M, mat_frobenius(M))
            if not in_x:
                continue
            tallies["X"] += 1
            if is_semisimple(M):
                tallies["X_diag"] += 1
            if all(
                subspace_defined_over(ed.eigenspace, 1) for ed in eigen_data(M)
            ):
                tallies["X_eig_fp"] += 1
        assert tallies["X"] == rep.counts["X"]
        assert tallies["X_diag"] == rep.counts["X_diag"]
        assert tallies["X_eig_fp"] == rep.counts["X_eig_fp"]


def test_frobenius_closure_of_classes():
    # applying the power map to the whole index stream permutes each class
    F = make_field(2, 2)
    rep = census(2, 2, 2)
    tallies = Counter()
    for code in range(256):
        M = matrix_from_index(F, 2, code)
        S = mat_frobenius(M)
        if commutes(S, mat_frobenius(S)):
            tallies["X"] += 1
            if is_semisimple(S):
                tallies["X_diag"] += 1
    assert tallies["X"] == rep.counts["X"]
    assert tallies["X_diag"] == rep.counts["X_diag"]


def test_determinism_across_workers():
    for workers in (1, 2, 4):
        rep = census(3, 2, 2, workers=workers, chunk_size=500)
        assert rep.counts["X"] == exact_X_n2(3, 9)
    a = census(2, 2, 2, workers=1, chunk_size=16).to_json()
    b = census(2, 2, 2, workers=4, chunk_size=16).to_json()
    assert a == b


def test_pure_and_compiled_kernels_agree(monkeypatch):
    if census_mod._compiled_kernel is None:
        pytest.skip("compiled kernel unavailable")
    rep_compiled = census(3, 2, 2)
    monkeypatch.setenv("FCENSUS_PURE", "1")
    rep_pure = census(3, 2, 2)
    assert rep_compiled.to_json() == rep_pure.to_json()


def test_census_by_quiver_partition():
    strata = census_by_quiver(2, 1, 2)
    rep = census(2, 1, 2, strata=True)
    assert sum(strata.values()) == rep.counts["X_diag"]
    legal = set(enumerate_bal(2))
    assert set(strata) <= legal


def test_census_by_shape_partition():
    strata = census_by_shape(2, 2, 2)
    rep = census(2, 2, 2, strata=True)
    assert sum(cx for cx, _ in strata.values()) == rep.counts["X"]
    assert sum(ce for _, ce in strata.values()) == rep.counts["X_eig_fp"]
    scalars_shape = ((2,),)
    assert strata[scalars_shape][0] >= 4  # scalars always commute


def test_w_q_examples():
    cap = 50_000_000
    for m in (1, 2, 3):
        for p, e in ((2, 1), (3, 1), (2, 2)):
            assert w_q_bruteforce((m,), p, e, work_cap=cap) == 1
    assert w_q_bruteforce((1, 1), 3, 1, work_cap=cap) == 2
    for a, b in ((1, 1), (2, 1)):
        for q in (2, 3):
            assert w_q_bruteforce((a, b), q, 1, work_cap=cap) == rank_count(a, b, q)


def test_w_q_cap():
    with pytest.raises(WorkCapExceeded):
        w_q_bruteforce((2, 2), 3, 1)  # 3^16 over the strata default


def test_count_vw_examples():
    # a = 1, v = w = 1: n = n^p forces n = 1 over F_4
    assert count_vw(1, 2, 2, (1,), (1,)) == 1
    # generic case stays within a band around q^(a(a-1)) = q
    F4 = make_field(2, 2)
    c = count_vw(2, 2, 2, (1, 0), (0, 1))
    q = 4
    assert abs(c - q * q) <= 4 * q
    # degenerate case (w = power image of v up to scalar): the first
    # column must be fixed by the power map, so 3 nonzero prime-field
    # columns times 12 completions to an invertible matrix
    c_deg = count_vw(2, 2, 2, (1, 0), (1, 0))
    assert c_deg == 3 * (q * q - q) == 36
    assert c_deg <= (2**2) * q * q  # the generic upper bound for this case


def test_fit_exponent():
    series = [(q, exact_X_n2(2, q)) for q in (4, 16, 64)]
    fit = fit_exponent(series)
    assert fit.exponent == 2
    assert abs(fit.coefficient_raw - 7) < 0.1
    fit = fit_exponent([(2, 5), (4, 5), (8, 5)])
    assert fit.exponent == 0 and fit.coefficient == 5
    fit = fit_exponent([(2, 8), (4, 64), (8, 512)])
    assert fit.exponent == 3 and fit.coefficient == Fraction(1)
    with pytest.raises(InsufficientData):
        fit_exponent([(2, 1), (4, 2)])
    with pytest.raises(InsufficientData):
        fit_exponent([(4, 1), (2, 2), (8, 3)])
    with pytest.raises(ZeroCount):
        fit_exponent([(2, 1), (4, 0), (8, 2)])


def test_x2_projective_predicate():
    F4 = make_field(2, 2)
    assert x2_projective_predicate(matrix_from_index(F4, 2, 0))
    for code in range(256):
        M = matrix_from_index(F4, 2, code)
        assert x2_projective_predicate(M) == commutes(M, mat_frobenius(M))
    with pytest.raises(WrongSize):
        x2_projective_predicate(matrix_from_index(F4, 3, 0))


def test_report_serialization_and_schema():
    import jsonschema
    from importlib import resources

    schema = json.loads(
        resources.files("fcensus").joinpath("schemas/census_report.schema.json").read_text()
    )
    for strata in (False, True):
        rep = census(2, 2, 2, strata=strata)
        doc = json.loads(rep.to_json())
        jsonschema.validate(doc, schema)
        assert doc["counts"]["X"] == "88"
        # CSV carries the same counts
        csv_lines = rep.to_csv().strip().splitlines()
        csv_counts = {}
        for line in csv_lines[1:]:
            parts = line.split(",")
            if parts[0] == "class":
                csv_counts[parts[1]] = parts[2]
        assert csv_counts == doc["counts"]


def test_strata_sorted_canonically():
    rep = census(2, 2, 2, strata=True)
    quivs = [Q.mult for Q, _ in rep.strata_by_quiver]
    assert quivs == sorted(quivs, key=lambda m: (len(m), m))
    shapes_list = [S for S, _, _ in rep.strata_by_shape]
    assert shapes_list == sorted(shapes_list, reverse=True)
