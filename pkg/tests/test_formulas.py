"""Closed-form counts against independent brute-force oracles."""

from fractions import Fraction
from itertools import product

import pytest

from fcensus.errors import (
    NotAPartition,
    NotAPowerOfP,
    OutOfRange,
    WrongPartCount,
)
from fcensus.fields import make_field
from fcensus.formulas import (
    N_pi_count,
    c_diag,
    c_eig,
    c_inf,
    c_inf_diag,
    conjugate_partition,
    diag_count_via_pi,
    exact_X_n2,
    gaussian_binomial,
    gl_order,
    leading_term,
    partition_bijection,
    partition_bijection_inverse,
    partition_sum_identity,
    rank_count,
)
from fcensus.shapes import iter_partitions


def _count_subspaces_bruteforce(n, k, p):
    """Independent oracle: distinct RREF spans of k-tuples of vectors."""
    vectors = list(product(range(p), repeat=n))
    seen = set()
    for combo in product(vectors, repeat=k):
        rows = [list(v) for v in combo]
        # tiny RREF over F_p
        pr = 0
        for col in range(n):
            piv = next((r for r in range(pr, k) if rows[r][col] % p), None)
            if piv is None:
                continue
            rows[pr], rows[piv] = rows[piv], rows[pr]
            inv = pow(rows[pr][col], -1, p)
            rows[pr] = [(v * inv) % p for v in rows[pr]]
            for r in range(k):
                if r != pr and rows[r][col] % p:
                    c = rows[r][col]
                    rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[pr])]
            pr += 1
        if pr == k:
            seen.add(tuple(tuple(r) for r in rows[:k]))
    return len(seen)


def test_gaussian_binomial_examples_and_oracle():
    assert gaussian_binomial(3, 0, 2) == 1
    assert gaussian_binomial(3, 1, 2) == 7 == _count_subspaces_bruteforce(3, 1, 2)
    assert gaussian_binomial(4, 2, 2) == 35 == _count_subspaces_bruteforce(4, 2, 2)
    assert gaussian_binomial(3, 1, 3) == 13 == _count_subspaces_bruteforce(3, 1, 3)
    with pytest.raises(OutOfRange):
        gaussian_binomial(3, 4, 2)


def test_gaussian_binomial_symmetry():
    for n in range(11):
        for k in range(n + 1):
            for p in (2, 3):
                assert gaussian_binomial(n, k, p) == gaussian_binomial(n, n - k, p)


def _count_invertible_bruteforce(n, p):
    F = make_field(p, 1)
    from fcensus.matrices import Matrix, rank

    total = 0
    for code in range(p ** (n * n)):
        entries = []
        t = code
        for _ in range(n * n):
            t, r = divmod(t, p)
            entries.append(r)
        if rank(Matrix(F, n, entries)) == n:
            total += 1
    return total


def test_gl_order_examples_and_oracle():
    assert gl_order(1, 2) == 1
    assert gl_order(2, 2) == 6 == _count_invertible_bruteforce(2, 2)
    assert gl_order(3, 2) == 168 == _count_invertible_bruteforce(3, 2)
    assert gl_order(2, 3) == 48 == _count_invertible_bruteforce(2, 3)


def test_leading_coefficients():
    assert c_diag(2, 2) == 4
    assert c_diag(3, 4) == 2
    assert c_diag(2, 5) == 1
    assert c_inf(2, 2) == 7
    assert c_inf(2, 3) == 183
    assert c_inf_diag(2, 2) == 4
    assert c_inf_diag(3, 2) == 9
    assert c_eig(2, 2) == 6
    assert c_eig(2, 3) == 140
    with pytest.raises(OutOfRange):
        c_eig(2, 1)
    for n in range(4, 11):
        want = gaussian_binomial(n, n // 2, 2)
        assert c_inf(2, n) == (want if n % 2 == 0 else 2 * want)
        if n % 2 == 0:
            assert c_eig(2, n) == want
        else:
            assert c_eig(2, n) == want + want * gaussian_binomial((n + 1) // 2, 1, 2)


def test_exact_X_n2_examples():
    assert exact_X_n2(2, 2) == 16  # everything commutes over the prime field
    assert exact_X_n2(2, 4) == 88
    assert exact_X_n2(3, 3) == 81
    with pytest.raises(NotAPowerOfP):
        exact_X_n2(2, 6)


def test_exact_X_n2_against_direct_enumeration():
    from fcensus.matrices import Matrix, commutes, mat_frobenius

    F4 = make_field(2, 2)
    total = sum(
        1
        for code in range(256)
        if commutes(
            Matrix(F4, 2, [(code >> (2 * k)) & 3 for k in range(4)]),
            mat_frobenius(Matrix(F4, 2, [(code >> (2 * k)) & 3 for k in range(4)])),
        )
    )
    assert total == exact_X_n2(2, 4) == 88


def test_leading_term_examples():
    lt = leading_term("X_diag", 2, 2)
    assert (lt.coefficient, lt.exponent) == (4, 2)
    lt = leading_term("X_inf_diag", 3, 2)
    assert (lt.coefficient, lt.exponent) == (9, 2)
    lt = leading_term("X_eig_fp", 2, 2)
    assert (lt.coefficient, lt.exponent) == (6, 2)
    lt = leading_term("X_inf", 2, 3)
    assert (lt.coefficient, lt.exponent) == (183, 3)
    lt = leading_term("X_n2_exact", 5, 2)
    assert (lt.coefficient, lt.exponent) == (31, 2)
    with pytest.raises(OutOfRange):
        leading_term("X_n2_exact", 2, 3)
    with pytest.raises(OutOfRange):
        leading_term("nonsense", 2, 2)


def test_partition_sum_identity_examples():
    for p in (2, 3, 5):
        lhs, rhs = partition_sum_identity(p, 1)
        assert lhs == rhs == Fraction(1, p - 1)
    lhs, rhs = partition_sum_identity(2, 2)
    assert lhs == rhs == Fraction(2, 3)
    for p in (2, 3, 5):
        for n in range(1, 13):
            lhs, rhs = partition_sum_identity(p, n)
            assert lhs == rhs


def test_partition_bijection_examples():
    assert partition_bijection((3, 1), 2) == (1, 1)
    assert partition_bijection((1, 1), 2) == ()
    assert partition_bijection((1,) * 5, 5) == ()
    with pytest.raises(WrongPartCount):
        partition_bijection((3, 1), 3)
    with pytest.raises(NotAPartition):
        partition_bijection((1, 3), 2)


def test_partition_bijection_roundtrip_and_cardinality():
    for s in range(1, 26):
        for n in range(1, min(s, 11)):
            A = [lam for lam in iter_partitions(s) if len(lam) == n]
            B = [mu for mu in iter_partitions(s - n) if not mu or mu[0] <= n]
            assert len(A) == len(B)
            images = set()
            for lam in A:
                mu = partition_bijection(lam, n)
                assert sum(mu) == s - n
                assert not mu or mu[0] <= n
                assert partition_bijection_inverse(mu, n, s) == lam
                images.add(mu)
            assert len(images) == len(A)


def test_conjugate_partition():
    assert conjugate_partition((3, 1)) == (2, 1, 1)
    assert conjugate_partition(()) == ()
    assert conjugate_partition((2, 2)) == (2, 2)


def test_N_pi_and_diag_count():
    assert N_pi_count((2,), 2) == 2
    assert N_pi_count((1, 1), 2) == 6
    assert diag_count_via_pi(2, 2) == 4
    for p in (2, 3, 5):
        for n in range(1, 7):
            assert diag_count_via_pi(p, n) == p ** (n * n - n)
    with pytest.raises(NotAPartition):
        N_pi_count((0, 2), 2)


def test_rank_count_examples_and_oracle():
    assert rank_count(1, 1, 5) == 4
    assert rank_count(2, 1, 3) == 8
    assert rank_count(2, 2, 2) == 6 == gl_order(2, 2)
    with pytest.raises(OutOfRange):
        rank_count(1, 2, 2)
