"""Commutative and diagonalizable subalgebra censuses."""

import pytest

from fcensus.errors import DegenerateV, OutOfRange, WorkCapExceeded
from fcensus.fields import make_field
from fcensus.formulas import c_inf, diag_count_via_pi
from fcensus.matrices import Subspace
from fcensus.subalgebras import (
    _identity,
    commutative_census,
    diag_subalgebra_census,
    is_commutative_subalgebra,
    schur_algebra,
)

F2 = make_field(2, 1)


def test_is_commutative_subalgebra_examples():
    I2 = _identity(2)
    assert is_commutative_subalgebra([I2], 2, 2)
    assert is_commutative_subalgebra([I2, (0, 1, 0, 0)], 2, 2)
    assert not is_commutative_subalgebra([I2, (0, 1, 0, 0), (0, 0, 1, 0)], 2, 2)
    # without the identity, closure fails the unital requirement
    assert not is_commutative_subalgebra([(0, 1, 0, 0)], 2, 2)
    assert is_commutative_subalgebra([(0, 1, 0, 0)], 2, 2, unital=False)


def test_commutative_census_m2():
    count, algs = commutative_census(2, 2, 2)
    assert count == 7  # p^2 + p + 1 lines, each closed by the quadratic relation
    assert all(a.dim == 2 for a in algs)
    count, _ = commutative_census(2, 2, 3)
    assert count == 0
    count, _ = commutative_census(2, 2, 1)
    assert count == 1
    # every maximal algebra on 2x2 is spanned by I and one non-scalar matrix
    for alg in commutative_census(2, 2, 2)[1]:
        mats = alg.matrices()
        assert is_commutative_subalgebra(mats, 2, 2)


def test_commutative_census_m3():
    count, _ = commutative_census(2, 3, 3)
    assert count == 183 == c_inf(2, 3)


def test_commutative_census_m2f3():
    count, _ = commutative_census(3, 2, 2)
    assert count == 13 == c_inf(3, 2)
    count, _ = commutative_census(3, 2, 3)
    assert count == 0


def test_maximal_m2_algebras_are_spanned_by_identity_and_one_matrix():
    # the quadratic relation closes any span{I, M}; conversely every
    # 2-dimensional algebra found has such a basis
    I2 = _identity(2)
    for alg in commutative_census(2, 2, 2)[1]:
        assert alg.dim == 2
        rows = list(alg.rows)
        non_scalar = [m for m in rows if m[1] or m[2] or m[0] != m[3]]
        assert non_scalar
        M = non_scalar[0]
        assert is_commutative_subalgebra([I2, M], 2, 2)
        regen = _rref_of([I2, M])
        assert set(regen) == set(alg.rows)


def _rref_of(mats):
    from fcensus.subalgebras import _rref_mod

    return [tuple(r) for r in _rref_mod([list(m) for m in mats], 2)]


def test_commutative_census_caps_and_domain():
    with pytest.raises(WorkCapExceeded):
        commutative_census(2, 3, 5, candidate_cap=100)
    with pytest.raises(OutOfRange):
        commutative_census(5, 3, 2)
    with pytest.raises(OutOfRange):
        commutative_census(2, 2, 0)


def test_diag_subalgebra_census_values():
    assert diag_subalgebra_census(2, 2) == 4
    assert diag_subalgebra_census(3, 2) == 9
    assert diag_subalgebra_census(5, 2) == 25
    assert diag_subalgebra_census(2, 3) == 64
    for p, n in ((2, 2), (3, 2), (5, 2), (2, 3)):
        assert diag_subalgebra_census(p, n) == diag_count_via_pi(p, n) == p ** (n * n - n)


def test_schur_algebra_examples():
    V = Subspace(F2, 2, [[1, 0]])
    alg = schur_algebra(V)
    assert alg.dim == 2
    assert set(alg.rows) == {(1, 0, 0, 1), (0, 1, 0, 0)}  # I and E_12

    V4 = Subspace(F2, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    alg4 = schur_algebra(V4)
    assert alg4.dim == 5  # floor(16/4) + 1
    assert is_commutative_subalgebra(list(alg4.rows), 4, 2)

    # near-half splits reach the maximal dimension at n = 5 too
    for k in (2, 3):
        rows = [[1 if j == i else 0 for j in range(5)] for i in range(k)]
        alg5 = schur_algebra(Subspace(F2, 5, rows))
        assert alg5.dim == 25 // 4 + 1
        assert is_commutative_subalgebra(list(alg5.rows), 5, 2)

    with pytest.raises(DegenerateV):
        schur_algebra(Subspace(F2, 2, [[1, 0], [0, 1]]))
    with pytest.raises(DegenerateV):
        schur_algebra(Subspace(F2, 2, []))


def test_schur_algebra_every_proper_subspace_commutes():
    from itertools import product

    seen = set()
    for bits in product(range(2), repeat=3 * 3):
        rows = [list(bits[i * 3 : (i + 1) * 3]) for i in range(3)]
        V = Subspace(F2, 3, rows)
        if not 0 < V.dim < 3 or V.rows in seen:
            continue
        seen.add(V.rows)
        alg = schur_algebra(V)
        assert alg.dim == V.dim * (3 - V.dim) + 1
        assert is_commutative_subalgebra(list(alg.rows), 3, 2)
