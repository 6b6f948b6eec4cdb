"""Exact arithmetic in GF(p) and GF(p^s).

Field elements are stored as plain integers in [0, p^s).  The base-p
digits of the integer are the coefficients of the residue polynomial,
constant term first, so for p = 2 this is the usual packed-bits
representation.  Every constructed field carries discrete log/exp
tables (numpy arrays), which gives the same fast path to scalar and
vectorized operands.

Construction is deterministic: the modulus is the lexicographically
smallest monic irreducible polynomial of its degree, the generator is
the smallest element of full multiplicative order.  Two calls to
``build_field(p, s)`` therefore always produce identical arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

_PRIME_LIMIT = 2**32
_TABLE_LIMIT = 2**20


class FieldError(ValueError):
    """Invalid field construction or field operation."""


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test for n < 2^32."""
    if n >= _PRIME_LIMIT:
        raise FieldError(f"characteristic {n} too large (limit 2^32)")
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def order_mod(p: int, n: int) -> int:
    """Least s >= 1 with p^s = 1 (mod n).

    Requires gcd(p, n) = 1; the result divides the totient of n.
    """
    if n < 1:
        raise FieldError(f"length must be positive, got {n}")
    if n == 1:
        return 1
    import math

    if math.gcd(p, n) != 1:
        raise FieldError(
            f"characteristic divides length: gcd({p},{n}) != 1, no such order exists"
        )
    s = 1
    x = p % n
    while x != 1:
        x = (x * p) % n
        s += 1
    return s


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficient lists with constant term first
# ---------------------------------------------------------------------------


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num / den over GF(p).  den must be monic."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return num[:dd]


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    s = len(poly) - 1
    for d in range(1, s // 2 + 1):
        for code in range(p**d):
            den = _digits_of(code, p, d) + [1]
            if not any(_poly_mod(poly, den, p)):
                return False
    return True


def _digits_of(code: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        out.append(code % p)
        code //= p
    return out


def _code_of(digits, p: int) -> int:
    code = 0
    for d in reversed(list(digits)):
        code = code * p + int(d)
    return code


class GF:
    """The finite field GF(p^s) with fixed modulus and generator."""

    def __init__(self, p: int, s: int = 1, modulus: tuple[int, ...] | None = None,
                 generator: int | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if s < 1:
            raise FieldError(f"extension degree must be positive, got {s}")
        q = p**s
        if q > _TABLE_LIMIT:
            raise FieldError(f"field order {q} exceeds supported limit {_TABLE_LIMIT}")
        self.p = p
        self.s = s
        self.q = q
        if s == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = self._find_modulus(p, s)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != s + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree s")
            if not _is_irreducible(list(modulus), p):
                raise FieldError(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        self._init_digit_tables()
        if generator is None:
            generator = self._find_generator()
        else:
            if self._order_of_raw(generator) != q - 1:
                raise FieldError(f"{generator} is not a generator of GF({q})")
        self.generator = generator
        self._init_log_tables()

    # -- construction internals ------------------------------------------

    @staticmethod
    def _find_modulus(p: int, s: int) -> tuple[int, ...]:
        for code in range(p**s):
            poly = _digits_of(code, p, s) + [1]
            if _is_irreducible(poly, p):
                return tuple(poly)
        raise FieldError(f"no irreducible polynomial of degree {s} found over GF({p})")

    def _init_digit_tables(self):
        p, s, q = self.p, self.s, self.q
        codes = np.arange(q, dtype=np.int64)
        digs = np.empty((q, s), dtype=np.int64)
        rem = codes.copy()
        for i in range(s):
            digs[:, i] = rem % p
            rem //= p
        self._digits = digs
        self._powers = np.array([p**i for i in range(s)], dtype=np.int64)

    def _raw_mul(self, a: int, b: int) -> int:
        """Table-free product, used to bootstrap the log tables."""
        p, s = self.p, self.s
        if s == 1:
            return (a * b) % p
        if p == 2:
            mod_bits = _code_of(self.modulus, 2)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> s) & 1:
                    a ^= mod_bits
            return r
        da = _digits_of(a, p, s)
        db = _digits_of(b, p, s)
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(self.modulus), p)
        return _code_of(rem, p)

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _order_of_raw(self, a: int) -> int:
        if a == 0:
            return 0
        order = self.q - 1
        for ell in prime_factors(self.q - 1):
            while order % ell == 0 and self._raw_pow(a, order // ell) == 1:
                order //= ell
        return order

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        for g in range(2, self.q):
            if self._order_of_raw(g) == self.q - 1:
                return g
        raise FieldError("no generator found")  # unreachable for a true field

    def _init_log_tables(self):
        q = self.q
        self._LOG0 = 2 * (q - 1) if q > 2 else 4
        log = np.full(q, self._LOG0, dtype=np.int64)
        exp = np.zeros(2 * self._LOG0 + 1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, self.generator)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._log = log
        self._exp = exp

    # -- arithmetic on int codes / numpy arrays of codes ------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b if np.isscalar(a) and np.isscalar(b) else np.bitwise_xor(a, b)
        if self.s == 1:
            return (a + b) % self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        digs = (self._digits[a] + self._digits[b]) % self.p
        out = digs @ self._powers
        return int(out) if out.ndim == 0 else out

    def neg(self, a):
        if self.p == 2:
            return a
        if self.s == 1:
            return (self.p - a) % self.p if np.isscalar(a) else (self.p - np.asarray(a)) % self.p
        a = np.asarray(a, dtype=np.int64)
        digs = (self.p - self._digits[a]) % self.p
        out = digs @ self._powers
        return int(out) if out.ndim == 0 else out

    def sub(self, a, b):
        if self.p == 2:
            return self.add(a, b)
        if self.s == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if np.isscalar(a) and np.isscalar(b):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if np.isscalar(a):
            if a == 0:
                raise ZeroDivisionError("inversion of zero field element")
            return int(self._exp[(self.q - 1) - self._log[a]])
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inversion of zero field element")
        return self._exp[(self.q - 1) - self._log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        """a**e with integer exponent; 0**0 = 1 by convention."""
        if np.isscalar(a):
            if a == 0:
                return 1 if e == 0 else 0
            return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        out = np.asarray(self._exp[(self._log[a] * e) % (self.q - 1)])
        zero = a == 0
        if np.any(zero):
            out = out.copy()
            out[zero] = 1 if e == 0 else 0
        return out

    def frobenius(self, a, k: int = 1):
        """The k-fold Frobenius map x -> x^(p^k); a field automorphism."""
        return self.pow(a, self.p**k)

    def conjugate(self, a):
        """x -> x^(p^(s/2)), the conjugation under the Hermitian inner
        product on GF(p^s) with s even."""
        if self.s % 2 != 0:
            raise FieldError("Hermitian conjugation needs an even extension degree")
        return self.frobenius(a, self.s // 2)

    # -- element order machinery ------------------------------------------

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        order = self.q - 1
        for ell in prime_factors(self.q - 1):
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    def element_of_order(self, n: int) -> int:
        """An element of exact multiplicative order n, deterministic.

        Computed as generator^((q-1)/n) and then order-verified.
        """
        if n < 1:
            raise FieldError(f"order must be positive, got {n}")
        if (self.q - 1) % n != 0:
            raise FieldError(
                f"no element of order {n} in GF({self.p}^{self.s}): "
                f"{n} does not divide {self.q - 1}"
            )
        w = self.pow(self.generator, (self.q - 1) // n)
        if self.element_order(w) != n:
            raise FieldError(f"order verification failed for {w}")  # defensive
        return w

    # -- representation helpers -------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p digits of the code, constant term first."""
        return tuple(_digits_of(int(a), self.p, self.s))

    def from_coeffs(self, coeffs) -> int:
        return _code_of([c % self.p for c in coeffs], self.p)

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, int(code) % self.q)

    def elements(self):
        return range(self.q)

    def nonzero_elements(self):
        return range(1, self.q)

    def header(self) -> str:
        """Serialization header: ``GF p s`` plus modulus coefficients
        (constant term first) for extension fields."""
        if self.s == 1:
            return f"GF {self.p} 1"
        return f"GF {self.p} {self.s} " + " ".join(str(c) for c in self.modulus)

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.s, self.modulus, self.generator)
            == (other.p, other.s, other.modulus, other.generator)
        )

    def __hash__(self):
        return hash((self.p, self.s, self.modulus, self.generator))

    def __repr__(self):
        if self.s == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.s})"


def build_field(p: int, s: int = 1) -> GF:
    """Construct GF(p^s) with the deterministic modulus and generator."""
    return GF(p, s)


def parse_field_header(line: str) -> GF:
    parts = line.split()
    if not parts or parts[0] != "GF":
        raise FieldError(f"bad field header: {line!r}")
    p, s = int(parts[1]), int(parts[2])
    if s == 1:
        return GF(p, 1)
    modulus = tuple(int(c) for c in parts[3:])
    return GF(p, s, modulus=modulus)


@dataclass(frozen=True)
class FieldElement:
    """A single field element; convenience wrapper over the int codes."""

    field: GF
    code: int

    def _lift(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements from different fields")
            return other.code
        return int(other) % self.field.q

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._lift(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._lift(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._lift(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def __int__(self):
        return self.code

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        return self.code == other

    def __hash__(self):
        return hash((id(self.field), self.code))

    def __repr__(self):
        return f"{self.field!r}:{self.code}"
