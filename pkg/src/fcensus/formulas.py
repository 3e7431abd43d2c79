"""Closed-form counting predictions and exact combinatorial identities.

Everything here is exact: arbitrary-precision integers and Fractions,
no floating point.  The case splits for small n are table-driven so each
branch can be tested on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    NonIntegerResult,
    NotAPartition,
    NotAPowerOfP,
    OutOfRange,
    WrongPartCount,
)
from .shapes import iter_partitions

CLASS_TAGS = ("X_diag", "X_inf", "X_inf_diag", "X_eig_fp", "X_n2_exact")


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over
    the field with p elements, by exact division."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")
    num = 1
    den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    if num % den:
        raise NonIntegerResult("gaussian binomial did not divide exactly")
    return num // den


def gl_order(n: int, p: int) -> int:
    """Number of invertible n-by-n matrices over the prime field."""
    if n < 1:
        raise OutOfRange("n must be >= 1")
    out = 1
    for i in range(n):
        out *= p**n - p**i
    return out


def c_diag(p: int, n: int) -> int:
    """Leading coefficient for semisimple matrices commuting with their
    entrywise p-th power (exponent floor(n^2/3) + 1)."""
    if n < 2:
        raise OutOfRange("defined for n >= 2")
    if n == 2:
        return p * p
    if n == 4:
        return 2
    return 1


def c_inf(p: int, n: int) -> int:
    """Leading coefficient for matrices commuting with their whole
    power-map orbit (exponent floor(n^2/4) + 1): the number of
    commutative subalgebras of maximal dimension."""
    if n < 2:
        raise OutOfRange("defined for n >= 2")
    if n == 2:
        return p * p + p + 1
    if n == 3:
        return p**6 + p**5 + 3 * p**4 + 3 * p**3 + 3 * p**2 + p + 1
    if n % 2 == 0:
        return gaussian_binomial(n, n // 2, p)
    return 2 * gaussian_binomial(n, n // 2, p)


def c_inf_diag(p: int, n: int) -> int:
    """Count of n-dimensional diagonalizable subalgebras: p^(n^2 - n)."""
    if n < 1:
        raise OutOfRange("defined for n >= 1")
    return p ** (n * n - n)


def c_eig(p: int, n: int) -> int:
    """Leading coefficient for matrices whose eigenspaces all have
    prime-field-rational bases (exponent floor(n^2/4) + 1)."""
    if n < 2:
        raise OutOfRange("defined for n >= 2")
    if n == 2:
        v = Fraction((p + 2) * (p + 1), 2)
    elif n == 3:
        v = Fraction(
            (p**2 + p + 1) * (p**4 + 7 * p**3 + 6 * p**2 + 6 * p + 12), 6
        )
    elif n % 2 == 0:
        v = Fraction(gaussian_binomial(n, n // 2, p))
    else:
        half = gaussian_binomial(n, n // 2, p)
        v = Fraction(half + half * gaussian_binomial((n + 1) // 2, 1, p))
    if v.denominator != 1:
        raise NonIntegerResult(f"c_eig({p},{n}) came out non-integral")
    return int(v)


def exact_X_n2(p: int, q: int) -> int:
    """Exact number of 2-by-2 matrices over F_q commuting with their
    entrywise p-th power: q + (p^2 + p + 1)(q - 1)q."""
    qq = q
    while qq % p == 0:
        qq //= p
    if qq != 1 or q < p:
        raise NotAPowerOfP(f"q={q} is not a power of p={p}")
    return q + (p * p + p + 1) * (q - 1) * q


@dataclass(frozen=True)
class LeadingTerm:
    """coefficient * q^exponent leading behavior for one matrix class."""

    coefficient: int
    exponent: int
    class_tag: str


def leading_term(class_tag: str, p: int, n: int) -> LeadingTerm:
    """Leading coefficient and q-exponent for the requested class."""
    if class_tag == "X_diag":
        return LeadingTerm(c_diag(p, n), n * n // 3 + 1, class_tag)
    if class_tag == "X_inf":
        return LeadingTerm(c_inf(p, n), n * n // 4 + 1, class_tag)
    if class_tag == "X_inf_diag":
        return LeadingTerm(c_inf_diag(p, n), n, class_tag)
    if class_tag == "X_eig_fp":
        return LeadingTerm(c_eig(p, n), n * n // 4 + 1, class_tag)
    if class_tag == "X_n2_exact":
        if n != 2:
            raise OutOfRange("the exact law is specific to n = 2")
        return LeadingTerm(p * p + p + 1, 2, class_tag)
    raise OutOfRange(f"unknown class tag {class_tag!r}")


# ---------------------------------------------------------------------------
# Partition identities behind the diagonalizable-subalgebra count
# ---------------------------------------------------------------------------


def _multiplicities(partition) -> dict[int, int]:
    mult: dict[int, int] = {}
    for part in partition:
        mult[part] = mult.get(part, 0) + 1
    return mult


def partition_sum_identity(p: int, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of the cycle-type sum identity.

    lhs sums 1 / prod(l^m * m! * (p^l - 1)^m) over partitions of n with
    m parts of size l; rhs is p^(n^2-n) / |GL_n(F_p)|.  The two agree.
    """
    if n < 1 or n > 14:
        raise OutOfRange("identity evaluation capped at n <= 14")
    lhs = Fraction(0)
    for partition in iter_partitions(n):
        den = 1
        for ell, m in _multiplicities(partition).items():
            den *= ell**m * factorial(m) * (p**ell - 1) ** m
        lhs += Fraction(1, den)
    rhs = Fraction(p ** (n * n - n), gl_order(n, p))
    return lhs, rhs


def conjugate_partition(partition) -> tuple[int, ...]:
    parts = tuple(partition)
    if not parts:
        return ()
    out = []
    for k in range(1, parts[0] + 1):
        out.append(sum(1 for x in parts if x >= k))
    return tuple(out)


def partition_bijection(partition, n: int) -> tuple[int, ...]:
    """Map a partition of s with exactly n parts to one of s - n with all
    parts at most n: subtract one from each part, drop zeros, conjugate."""
    parts = tuple(int(x) for x in partition)
    if any(x < 1 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise NotAPartition(f"not a partition: {partition}")
    if len(parts) != n:
        raise WrongPartCount(f"expected exactly {n} parts, got {len(parts)}")
    reduced = tuple(x - 1 for x in parts if x > 1)
    return conjugate_partition(reduced)


def partition_bijection_inverse(partition, n: int, s: int) -> tuple[int, ...]:
    """Inverse map: conjugate, pad to n parts with zeros, add one to each."""
    parts = tuple(int(x) for x in partition)
    if any(x < 1 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        if parts:
            raise NotAPartition(f"not a partition: {partition}")
    if parts and parts[0] > n:
        raise OutOfRange("parts must be at most n")
    if sum(parts) != s - n:
        raise OutOfRange("partition weight must be s - n")
    conj = conjugate_partition(parts)
    padded = list(conj) + [0] * (n - len(conj))
    if len(padded) != n:
        raise WrongPartCount("conjugate has more than n parts")
    return tuple(x + 1 for x in padded)


def N_pi_count(cycle_type, p: int) -> int:
    """Ordered sigma-compatible line tuples for one permutation cycle
    type: |GL_n(F_p)| divided by prod(p^l - 1) over the cycle lengths."""
    parts = tuple(int(x) for x in cycle_type)
    if not parts or any(x < 1 for x in parts) or any(
        a < b for a, b in zip(parts, parts[1:])
    ):
        raise NotAPartition(f"not a partition: {cycle_type}")
    n = sum(parts)
    den = 1
    for ell in parts:
        den *= p**ell - 1
    num = gl_order(n, p)
    if num % den:
        raise NonIntegerResult("N_pi_count did not divide exactly")
    return num // den


def diag_count_via_pi(p: int, n: int) -> int:
    """Diagonalizable-subalgebra count as the cycle-type weighted average
    of N_pi_count over the symmetric group; must equal p^(n^2-n)."""
    if n < 1:
        raise OutOfRange("n must be >= 1")
    total = Fraction(0)
    for cycle_type in iter_partitions(n):
        perms = factorial(n)
        for ell, m in _multiplicities(cycle_type).items():
            perms //= ell**m * factorial(m)
        total += Fraction(perms * N_pi_count(cycle_type, p))
    total /= factorial(n)
    if total.denominator != 1:
        raise NonIntegerResult("diag_count_via_pi came out non-integral")
    return int(total)


def rank_count(a: int, b: int, q: int) -> int:
    """Number of a-by-b matrices over F_q of full column rank b:
    prod over i < b of (q^a - q^i)."""
    if not a >= b >= 0:
        raise OutOfRange(f"need a >= b >= 0, got a={a}, b={b}")
    out = 1
    for i in range(b):
        out *= q**a - q**i
    return out
