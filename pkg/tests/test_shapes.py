"""Shape enumeration, Jordan constructions, numeric dimension oracles."""

import pytest

from fcensus.errors import DuplicateEigenvalues, NotNilpotent, OutOfRange
from fcensus.fields import FieldElement, make_field
from fcensus.matrices import Matrix
from fcensus.shapes import (
    build_jordan_matrix,
    canonical_shape,
    cent_dim_numeric,
    centralizer_space,
    dim_E,
    dim_X_eig,
    dim_cent,
    enumerate_shapes,
    optimal_shapes,
    restricted_space_dim_numeric,
    shape_of_matrix,
    shape_size,
)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F8 = make_field(2, 3)


def test_enumerate_shapes_examples():
    assert enumerate_shapes(1) == [((1,),)]
    assert set(enumerate_shapes(2)) == {((2,),), ((1, 1),), ((1,), (1,))}
    for n in range(1, 7):
        for S in enumerate_shapes(n):
            assert shape_size(S) == n
            assert S == canonical_shape(S)


def test_shape_of_matrix_examples():
    blocks21 = build_jordan_matrix([(2, 1)], [FieldElement(F2, 0)])
    assert shape_of_matrix(blocks21) == ((2, 1),)
    D = Matrix.from_rows(F2, [[0, 0], [0, 1]])
    assert shape_of_matrix(D) == ((1,), (1,))
    assert shape_of_matrix(Matrix.identity(F2, 2)) == ((2,),)


def test_build_jordan_matrix_block_convention():
    # filtration (1,1) means one block of size two; (2,) means two of size one
    J = build_jordan_matrix([(1, 1)], [FieldElement(F2, 0)])
    assert J.entries == (0, 1, 0, 0)
    Z = build_jordan_matrix([(2,)], [FieldElement(F2, 0)])
    assert Z == Matrix.zero(F2, 2)
    D = build_jordan_matrix([(1,), (1,)], [FieldElement(F2, 0), FieldElement(F2, 1)])
    assert D.entries == (0, 0, 0, 1)
    with pytest.raises(DuplicateEigenvalues):
        build_jordan_matrix([(1,), (1,)], [FieldElement(F2, 1), FieldElement(F2, 1)])


def test_roundtrip_all_shapes_up_to_4():
    for n in range(1, 5):
        for S in enumerate_shapes(n):
            lams = [FieldElement(F8, v) for v in range(len(S))]
            M = build_jordan_matrix(S, lams)
            assert shape_of_matrix(M) == S


def test_dim_formula_examples():
    assert dim_cent([(2, 1)]) == 5
    assert dim_cent([(1,)] * 4) == 4  # distinct eigenvalues, diagonal centralizer
    assert dim_cent([(1, 1, 1)]) == 3  # one size-3 block, polynomials in it
    assert dim_cent([(5,)]) == 25  # scalar: five size-1 blocks, everything commutes
    assert dim_E([(2, 1)]) == 2
    assert dim_X_eig([(2, 1)]) == 3
    assert dim_X_eig([(3, 3)]) == 10
    assert dim_X_eig([(1,), (1,)]) == 2
    for m in range(1, 5):
        assert dim_X_eig([(m, m)]) == 1 + m * m


def test_optimal_shapes_table():
    expected_counts = {2: 2, 3: 4, 4: 1, 5: 2, 6: 1, 7: 2, 8: 1, 9: 2, 10: 1}
    for n in range(2, 11):
        mx, cls = optimal_shapes(n)
        assert mx == n * n // 4 + 1
        assert len(cls) == expected_counts[n]
    assert set(optimal_shapes(2)[1]) == {((1, 1),), ((1,), (1,))}
    assert set(optimal_shapes(6)[1]) == {((3, 3),)}
    assert set(optimal_shapes(7)[1]) == {((4, 3),), ((3, 3, 1),)}


def _field_with_room(p, r):
    deg = 1
    while p**deg < r:
        deg += 1
    return make_field(p, deg)


def test_cent_dim_numeric_examples():
    assert cent_dim_numeric(build_jordan_matrix([(1, 1)], [FieldElement(F2, 0)])) == 2
    assert cent_dim_numeric(build_jordan_matrix([(2, 1)], [FieldElement(F2, 0)])) == 5
    D = Matrix.from_rows(F2, [[0, 0], [0, 1]])
    assert cent_dim_numeric(D) == 2


def test_cent_dim_matches_formula_two_characteristics():
    for n in range(1, 5):
        for S in enumerate_shapes(n):
            want = dim_cent(S)
            for p in (2, 3):
                F = _field_with_room(p, len(S))
                lams = [FieldElement(F, v) for v in range(len(S))]
                assert cent_dim_numeric(build_jordan_matrix(S, lams)) == want


def test_cent_space_independent_of_eigenvalues():
    # same solution subspace for two different eigenvalue tuples
    for n in range(1, 5):
        for S in enumerate_shapes(n):
            r = len(S)
            if F8.q < 2 * r:
                continue
            lams1 = [FieldElement(F8, v) for v in range(r)]
            lams2 = [FieldElement(F8, v + r) for v in range(r)]
            A1 = build_jordan_matrix(S, lams1)
            A2 = build_jordan_matrix(S, lams2)
            assert centralizer_space(A1) == centralizer_space(A2)


def test_restricted_space_examples_and_formula():
    assert restricted_space_dim_numeric(
        build_jordan_matrix([(1, 1)], [FieldElement(F2, 0)])
    ) == 1
    assert restricted_space_dim_numeric(Matrix.zero(F2, 2)) == 0
    assert restricted_space_dim_numeric(
        build_jordan_matrix([(2, 1)], [FieldElement(F2, 0)])
    ) == 2
    with pytest.raises(NotNilpotent):
        restricted_space_dim_numeric(Matrix.identity(F2, 2))
    # single-eigenvalue shapes up to size 5, both characteristics
    for n in range(1, 6):
        for S in enumerate_shapes(n):
            if len(S) != 1:
                continue
            want = dim_E(S)
            for F in (F2, F3):
                A = build_jordan_matrix(S, [FieldElement(F, 0)])
                assert restricted_space_dim_numeric(A) == want


def test_shape_validation():
    with pytest.raises(OutOfRange):
        canonical_shape([(1, 2)])  # increasing
    with pytest.raises(OutOfRange):
        canonical_shape([()])
    with pytest.raises(OutOfRange):
        enumerate_shapes(11)
