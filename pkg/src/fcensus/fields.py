"""Explicit construction of the finite fields F_{p^e} with exact arithmetic.

Elements are encoded as integers in [0, q): the base-p digits of the
encoding are the coefficients of the element in the polynomial basis,
constant term first.  Under this encoding the integers 0..p-1 are the
prime subfield, 0 is the additive and 1 the multiplicative identity.

Fields with at most ``table_threshold`` elements get log/antilog tables
(plus Zech logarithms for addition in odd characteristic); larger fields
fall back to polynomial arithmetic modulo the defining polynomial.  The
modulus is always the lexicographically smallest monic irreducible
polynomial of the right degree, coefficients compared from the constant
term upward, so construction is deterministic.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import (
    DivisionByZero,
    FieldTooLarge,
    MixedFields,
    NoEmbedding,
    NonPrime,
    OutOfRange,
)

FIELD_SIZE_CAP = 1 << 20
DEFAULT_TABLE_THRESHOLD = 1 << 16
_DENSE_TABLE_CAP = 1 << 10
DEFAULT_ROOT_DEGREE_CAP = 6


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Raw polynomial arithmetic over the prime field (coefficient tuples,
# constant term first, no trailing zeros).  Used for the modulus search and
# as the table-free arithmetic backend.
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pf_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pf_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    binv = pow(b[-1], -1, p)
    quo = [0] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        lead = r[-1]
        if lead:
            c = (lead * binv) % p
            shift = len(r) - 1 - db
            quo[shift] = c
            for i, bi in enumerate(b):
                r[shift + i] = (r[shift + i] - c * bi) % p
        r.pop()
    return _trim(quo), _trim(r)


def _pf_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    return _pf_divmod(a, m, p)[1]


def _pf_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _trim(out)


def _tuples(p: int, k: int) -> Iterator[tuple[int, ...]]:
    # lexicographic order, position 0 (constant term) most significant
    if k == 0:
        yield ()
        return
    for head in range(p):
        for tail in _tuples(p, k - 1):
            yield (head,) + tail


def _lex_smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e over F_p, lexicographically first.

    Irreducibility is decided by trial division against every monic
    polynomial of degree at most e // 2.
    """
    divisors: list[tuple[int, ...]] = []
    for d in range(1, e // 2 + 1):
        for tail in _tuples(p, d):
            divisors.append(tail + (1,))
    for head in _tuples(p, e):
        cand = head + (1,)
        if all(_pf_mod(cand, div, p) for div in divisors):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldDescriptor:
    """One field F_{p^e}; immutable after construction, safe to share.

    All arithmetic methods work on the integer encodings; FieldElement is
    a thin value wrapper over them.  Embedding and root caches fill
    lazily and idempotently, so concurrent first use is safe.
    """

    __slots__ = (
        "p",
        "e",
        "q",
        "modulus",
        "table_threshold",
        "_exp",
        "_log",
        "_zech",
        "_frob_tab",
        "_neg_tab",
        "_embed_cache",
        "_root_cache",
        "_dense",
    )

    def __init__(self, p: int, e: int, table_threshold: int = DEFAULT_TABLE_THRESHOLD):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = _lex_smallest_irreducible(p, e)
        self.table_threshold = table_threshold
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._zech: list[int] | None = None
        self._frob_tab: list[int] | None = None
        self._neg_tab: list[int] | None = None
        self._embed_cache: dict = {}
        self._root_cache: dict = {}
        self._dense = None
        if self.q <= table_threshold:
            self._build_tables()

    # -- encoding helpers ------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Base-p digits of the encoding: polynomial coordinates of x."""
        out = []
        for _ in range(self.e):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + (c % self.p)
        return x

    def elt_key(self, x: int) -> tuple[int, ...]:
        """Deterministic ordering key: coefficients, constant term first."""
        return self.coeffs(x)

    # -- table construction ------------------------------------------------

    def _poly_mul_raw(self, x: int, y: int) -> int:
        a = self.coeffs(x)
        b = self.coeffs(y)
        return self.encode(_pf_mod(_pf_mul(a, b, self.p), self.modulus, self.p))

    def _pow_raw(self, x: int, k: int) -> int:
        r = 1
        b = x
        while k:
            if k & 1:
                r = self._poly_mul_raw(r, b)
            b = self._poly_mul_raw(b, b)
            k >>= 1
        return r

    def _find_generator(self) -> int:
        order = self.q - 1
        primes = []
        m = order
        d = 2
        while d * d <= m:
            if m % d == 0:
                primes.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            primes.append(m)
        for g in range(1, self.q):
            if all(self._pow_raw(g, order // ell) != 1 for ell in primes):
                return g
        raise AssertionError("no multiplicative generator found")  # unreachable

    def _build_tables(self) -> None:
        q = self.q
        if q == 2:
            self._exp = [1]
            self._log = [0, 0]
            self._frob_tab = [0, 1]
            return
        g = self._find_generator()
        exp = [1] * (q - 1)
        log = [0] * q
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = self._poly_mul_raw(x, g)
        self._exp = exp
        self._log = log
        if self.p > 2:
            zech = [-1] * (q - 1)
            for k in range(q - 1):
                s = self._digit_add(1, exp[k])
                zech[k] = log[s] if s else -1
            self._zech = zech
            self._neg_tab = [self._digit_neg(x) for x in range(q)]
        self._frob_tab = [self._pow_raw(x, self.p) for x in range(q)]

    def _digit_add(self, x: int, y: int) -> int:
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((x % p + y % p) % p) * mult
            x //= p
            y //= p
            mult *= p
        return out

    def _digit_neg(self, x: int) -> int:
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((p - x % p) % p) * mult
            x //= p
            mult *= p
        return out

    # -- arithmetic on integer encodings -----------------------------------

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self._zech is not None:
            if x == 0:
                return y
            if y == 0:
                return x
            log = self._log
            lx = log[x]
            d = (log[y] - lx) % (self.q - 1)
            z = self._zech[d]
            if z < 0:
                return 0
            return self._exp[(lx + z) % (self.q - 1)]
        return self._digit_add(x, y)

    def neg(self, x: int) -> int:
        if self.p == 2:
            return x
        if self._neg_tab is not None:
            return self._neg_tab[x]
        return self._digit_neg(x)

    def sub(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self._exp is not None:
            if x == 0 or y == 0:
                return 0
            return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]
        return self._poly_mul_raw(x, y)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)]
        # extended Euclid on coefficient tuples
        p = self.p
        r0, r1 = self.modulus, _trim(list(self.coeffs(x)))
        s0, s1 = (), (1,)
        while r1:
            quo, rem = _pf_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _pf_sub(s0, _pf_mul(quo, s1, p), p)
        cinv = pow(r0[0], -1, p)
        return self.encode(_pf_mod(_pf_mul(s0, (cinv,), p), self.modulus, p))

    def pow_(self, x: int, k: int) -> int:
        """Square-and-multiply with an arbitrary-precision exponent."""
        if k < 0:
            return self.pow_(self.inv(x), -k)
        if x == 0:
            return 1 if k == 0 else 0
        r = 1
        b = x
        while k:
            if k & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            k >>= 1
        return r

    def frob(self, x: int, r: int = 1) -> int:
        """x raised to the p^r-th power; the identity when r % e == 0."""
        if r < 0:
            raise OutOfRange("frobenius iterate count must be >= 0")
        r %= self.e
        if self._frob_tab is not None:
            for _ in range(r):
                x = self._frob_tab[x]
            return x
        for _ in range(r):
            x = self.pow_(x, self.p)
        return x

    # -- dense tables for the census kernel ---------------------------------

    def dense_tables(self):
        """(mul, add, frob) as read-only int32 numpy arrays, built lazily.

        Only sensible for the small fields the census enumerates; capped so
        nobody asks for a gigabyte of tables by accident.
        """
        if self._dense is not None:
            return self._dense
        if self.q > _DENSE_TABLE_CAP:
            raise FieldTooLarge(
                f"dense tables capped at q <= {_DENSE_TABLE_CAP}, got q={self.q}"
            )
        import numpy as np

        q = self.q
        if self.p == 2:
            ar = np.arange(q, dtype=np.int32)
            add = np.bitwise_xor.outer(ar, ar).astype(np.int32)
        else:
            rest = np.arange(q, dtype=np.int64)
            add = np.zeros((q, q), dtype=np.int64)
            mult = 1
            for _ in range(self.e):
                d = rest % self.p
                rest = rest // self.p
                add += ((d[:, None] + d[None, :]) % self.p) * mult
                mult *= self.p
            add = add.astype(np.int32)
        mul = np.zeros((q, q), dtype=np.int32)
        if q > 2:
            lg = np.array([0] + [self._log[x] for x in range(1, q)], dtype=np.int64)
            ex = np.array(self._exp, dtype=np.int64)
            mul[1:, 1:] = ex[(lg[1:, None] + lg[None, 1:]) % (q - 1)].astype(np.int32)
        else:
            mul[1, 1] = 1
        frob = np.array([self.frob(x) for x in range(q)], dtype=np.int32)
        mul.setflags(write=False)
        add.setflags(write=False)
        frob.setflags(write=False)
        self._dense = (mul, add, frob)
        return self._dense

    # -- conveniences --------------------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x in F_p[x]/(modulus) when e > 1, else 1."""
        return FieldElement(self, self.p if self.e > 1 else 1)

    def elem(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.owner != self:
                raise MixedFields("element belongs to a different field")
            return value
        v = int(value)
        if not 0 <= v < self.q:
            raise OutOfRange(f"encoding {v} outside [0, {self.q})")
        return FieldElement(self, v)

    def elements(self) -> Iterator["FieldElement"]:
        for x in range(self.q):
            yield FieldElement(self, x)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, FieldDescriptor)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))


class FieldElement:
    """Value-type element of a FieldDescriptor."""

    __slots__ = ("owner", "val")

    def __init__(self, owner: FieldDescriptor, val: int):
        self.owner = owner
        self.val = val

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.owner.coeffs(self.val)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.owner != self.owner:
                raise MixedFields("operands belong to different fields")
            return other.val
        if isinstance(other, int):
            return other % self.owner.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.owner, self.owner.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.owner, self.owner.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.owner, self.owner.sub(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.owner, self.owner.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.owner, self.owner.mul(self.val, self.owner.inv(v)))

    def __pow__(self, k: int):
        return FieldElement(self.owner, self.owner.pow_(self.val, k))

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg(self.val))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.owner == other.owner and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.owner.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.owner.p, self.owner.e, self.val))

    def __bool__(self) -> bool:
        return self.val != 0

    def __repr__(self) -> str:
        cs = self.coeffs
        if self.owner.e == 1 or all(c == 0 for c in cs[1:]):
            return str(cs[0] if cs else 0)
        terms = []
        for i, c in enumerate(cs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                base = "g" if i == 1 else f"g^{i}"
                terms.append(base if c == 1 else f"{c}{base}")
        return "+".join(terms)


_FIELD_CACHE: dict[tuple[int, int, int], FieldDescriptor] = {}


def make_field(
    p: int, e: int, table_threshold: int = DEFAULT_TABLE_THRESHOLD
) -> FieldDescriptor:
    """Deterministically construct F_{p^e}.

    Raises NonPrime for composite p and FieldTooLarge when p^e exceeds
    the implementation cap (2^20 elements).
    """
    if not _is_prime(p):
        raise NonPrime(f"p={p} is not prime")
    if e < 1:
        raise OutOfRange(f"extension degree must be >= 1, got {e}")
    if p**e > FIELD_SIZE_CAP:
        raise FieldTooLarge(f"p^e = {p}^{e} exceeds the cap of {FIELD_SIZE_CAP}")
    key = (p, e, table_threshold)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = FieldDescriptor(p, e, table_threshold)
        _FIELD_CACHE[key] = field
    return field


def field_arith(kind: str, x: FieldElement, y=None) -> FieldElement:
    """Dispatch one arithmetic operation by name.

    ``y`` is the second FieldElement for add/sub/mul, an integer exponent
    for pow, and ignored for inv.
    """
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "inv":
        return FieldElement(x.owner, x.owner.inv(x.val))
    if kind == "pow":
        return x ** int(y)
    raise OutOfRange(f"unknown arithmetic kind {kind!r}")


def frobenius(x: FieldElement, r: int = 1) -> FieldElement:
    """x^(p^r); applying it e times is the identity on F_{p^e}."""
    return FieldElement(x.owner, x.owner.frob(x.val, r))


# ---------------------------------------------------------------------------
# Polynomials over a field
# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial over one field; coefficients constant-term first.

    The zero polynomial is the empty coefficient tuple and reports the
    sentinel degree -1; nonzero polynomials never carry trailing zeros.
    Coefficients are stored as integer encodings.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs=()):
        vals = []
        for c in coeffs:
            vals.append(c.val if isinstance(c, FieldElement) else int(c))
        while vals and vals[-1] == 0:
            vals.pop()
        self.field = field
        self.coeffs = tuple(vals)

    @classmethod
    def x(cls, field: FieldDescriptor) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FieldDescriptor, c: int) -> "Poly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "Poly") -> None:
        if self.field != other.field:
            raise MixedFields("polynomials over different fields")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.e, self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        out = [0] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        out = [0] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = F.sub(out[i], c)
        return Poly(F, out)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other: "Poly"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        d = other.degree
        binv = F.inv(other.coeffs[-1])
        quo = [0] * max(len(r) - d, 0)
        while len(r) - 1 >= d and r:
            lead = r[-1]
            if lead:
                c = F.mul(lead, binv)
                shift = len(r) - 1 - d
                quo[shift] = c
                for i, bi in enumerate(other.coeffs):
                    r[shift + i] = F.sub(r[shift + i], F.mul(c, bi))
            r.pop()
        return Poly(F, quo), Poly(F, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            scalar = i % F.p
            out.append(F.mul(scalar, c) if scalar else 0)
        return Poly(F, out)

    def eval_enc(self, x: int) -> int:
        """Evaluate at an integer-encoded point, returning an encoding."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.owner != self.field:
            raise MixedFields("evaluation point in a different field")
        return FieldElement(self.field, self.eval_enc(x.val))

    def map_field(self, target: FieldDescriptor, mapping) -> "Poly":
        """Apply an encoding-level map (e.g. an embedding) to coefficients."""
        return Poly(target, [mapping(c) for c in self.coeffs])

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            ce = FieldElement(self.field, c)
            if i == 0:
                terms.append(f"{ce!r}")
            elif i == 1:
                terms.append("x" if c == 1 else f"({ce!r})x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"({ce!r})x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm; gcd(f, 0) = monic(f)."""
    if f.field != g.field:
        raise MixedFields("polynomials over different fields")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_is_squarefree(f: Poly) -> bool:
    """True when gcd(f, f') is constant, i.e. no repeated roots anywhere."""
    if f.is_zero():
        raise OutOfRange("squarefreeness of the zero polynomial is undefined")
    g = poly_gcd(f, f.derivative())
    return g.degree == 0


# ---------------------------------------------------------------------------
# Embeddings and root finding in extensions
# ---------------------------------------------------------------------------


class _Embedding:
    """Ring embedding F_{p^r} -> F_{p^(r*s)}, cached per field pair."""

    __slots__ = ("src", "dst", "gen_powers", "_fwd", "_bwd")

    def __init__(self, src: FieldDescriptor, dst: FieldDescriptor):
        self.src = src
        self.dst = dst
        # image of the source generator: lexicographically smallest root of
        # the source modulus in the target (coefficient order, constant first)
        best = None
        best_key = None
        mod = src.modulus  # prime-field coefficients are target encodings as-is
        for t in range(dst.q):
            acc = 0
            for c in reversed(mod):
                acc = dst.add(dst.mul(acc, t), c)
            if acc == 0:
                key = dst.elt_key(t)
                if best_key is None or key < best_key:
                    best, best_key = t, key
        if best is None:
            raise AssertionError("source modulus has no root in target")
        powers = [1]
        for _ in range(src.e - 1):
            powers.append(dst.mul(powers[-1], best))
        self.gen_powers = powers
        self._fwd: dict[int, int] = {}
        self._bwd: dict[int, int] = {}

    def fwd(self, x: int) -> int:
        y = self._fwd.get(x)
        if y is None:
            dst = self.dst
            y = 0
            for c, tp in zip(self.src.coeffs(x), self.gen_powers):
                if c:
                    y = dst.add(y, dst.mul(c, tp))
            self._fwd[x] = y
            self._bwd[y] = x
        return y

    def bwd(self, y: int) -> int | None:
        """Preimage of y, or None when y is outside the embedded subfield."""
        if y in self._bwd:
            return self._bwd[y]
        # fill the forward table on demand; sources are small by the cap
        for x in range(self.src.q):
            self.fwd(x)
        return self._bwd.get(y)


def get_embedding(src: FieldDescriptor, dst: FieldDescriptor) -> _Embedding:
    if src.p != dst.p or dst.e % src.e != 0:
        raise NoEmbedding(
            f"no embedding GF({src.p}^{src.e}) -> GF({dst.p}^{dst.e})"
        )
    key = (dst.p, dst.e)
    emb = src._embed_cache.get(key)
    if emb is None:
        emb = _Embedding(src, dst)
        src._embed_cache[key] = emb
    return emb


def embed(x: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Embed x into the target extension field.

    The embedding is determined by sending the source generator to the
    lexicographically smallest root of the source modulus in the target,
    and is cached so repeated calls are consistent.
    """
    emb = get_embedding(x.owner, target)
    return FieldElement(target, emb.fwd(x.val))


def poly_roots_in_extension(
    f: Poly, k: int, degree_cap: int = DEFAULT_ROOT_DEGREE_CAP
) -> list[FieldElement]:
    """All roots of f in F_{q^k}, with multiplicity, by exhaustive scan.

    Determinism beats asymptotics at these sizes: the scan visits every
    element of the extension and repeated synthetic division supplies
    multiplicities.  Complete for factor degrees d | k since a degree-d
    irreducible factor splits in F_{q^d} <= F_{q^k}.
    """
    F = f.field
    if f.degree > degree_cap:
        raise OutOfRange(f"degree {f.degree} above the root-finding cap {degree_cap}")
    if k < 1:
        raise OutOfRange("extension degree must be >= 1")
    target = make_field(F.p, F.e * k)
    emb = get_embedding(F, target)
    g = f.map_field(target, emb.fwd)
    roots: list[int] = []
    for t in range(target.q):
        if g.eval_enc(t) == 0:
            roots.append(t)
    roots.sort(key=target.elt_key)
    out: list[FieldElement] = []
    for r in roots:
        lin = Poly(target, (target.neg(r), 1))
        h = g
        while True:
            quo, rem = divmod(h, lin)
            if not rem.is_zero():
                break
            out.append(FieldElement(target, r))
            h = quo
    return out
