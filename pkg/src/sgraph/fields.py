"""Finite fields GF(p^k) and the projective line over them.

Field elements are integers ``0 .. q-1``; the base-``p`` digits of an
element are its polynomial coefficients, lowest degree first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import FieldError
from .perm import Permutation, is_prime, prime_divisors

MAX_FIELD_SIZE = 1 << 20


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over GF(p)."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int):
    for coeffs in itertools.product(range(p), repeat=degree):
        yield list(coeffs) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree up to half."""
    k = len(poly) - 1
    if k <= 0:
        return False
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True)
class FieldGF:
    p: int
    k: int
    modulus: tuple[int, ...]
    primitive: int = field(compare=False)
    _exp: list[int] = field(repr=False, compare=False)
    _log: list[int] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.p ** self.k

    def elements(self) -> range:
        return range(self.order)

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        n = 0
        for c in reversed(list(ds)):
            n = n * self.p + c % self.p
        return n

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[a] % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inverse(b))

    def power(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def frobenius(self, a: int, e: int = 1) -> int:
        """``a -> a**(p**e)``."""
        return self.power(a, self.p ** e)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 is not a unit")
        n = self.order - 1
        for r in prime_divisors(n):
            while n % r == 0 and self.power(a, n // r) == 1:
                n //= r
        return n


def _slow_mul(a: int, b: int, p: int, k: int, modulus: list[int]) -> int:
    def digits(x):
        out = []
        for _ in range(k):
            x, r = divmod(x, p)
            out.append(r)
        return out

    da, db = digits(a), digits(b)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    rem = _poly_mod(prod, modulus, p)
    n = 0
    for c in reversed(rem):
        n = n * p + c
    return n


def field_gf(p: int, k: int = 1) -> FieldGF:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Candidate moduli ``[c0, c1, ..., 1]`` are compared as lists, constant
    term first.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be positive")
    q = p ** k
    if q > MAX_FIELD_SIZE:
        raise FieldError(f"field size {q} exceeds {MAX_FIELD_SIZE}")
    modulus = next(m for m in _monic_polys(p, k) if is_irreducible(m, p))
    n = q - 1
    factors = prime_divisors(n)
    prim = None
    for g in range(1, q):
        if all(_slow_pow(g, n // r, p, k, modulus) != 1 for r in factors):
            prim = g
            break
    exp = [0] * n
    log = [0] * q
    x = 1
    for i in range(n):
        exp[i] = x
        log[x] = i
        x = _slow_mul(x, prim, p, k, modulus)
    if x != 1:
        raise FieldError("primitive element check failed")
    return FieldGF(p, k, tuple(modulus), prim, exp, log)


def _slow_pow(a: int, n: int, p: int, k: int, modulus: list[int]) -> int:
    result, base = 1, a
    while n:
        if n & 1:
            result = _slow_mul(result, base, p, k, modulus)
        base = _slow_mul(base, base, p, k, modulus)
        n >>= 1
    return result


INFINITY = None


class ProjectiveLine:
    """Points ``[inf, 0, 1, ..., q-1]``; point ``x`` has index ``x + 1``, infinity index 0."""

    def __init__(self, F: FieldGF):
        self.field = F
        self.size = F.order + 1

    def index(self, x) -> int:
        return 0 if x is INFINITY else x + 1

    def point(self, i: int):
        return INFINITY if i == 0 else i - 1

    def points(self) -> list:
        return [self.point(i) for i in range(self.size)]

    def mobius(self, a: int, b: int, c: int, d: int) -> Permutation:
        """The map ``x -> (a x + b) / (c x + d)`` for an invertible matrix [[a, b], [c, d]]."""
        F = self.field
        det = F.sub(F.mul(a, d), F.mul(b, c))
        if det == 0:
            raise FieldError("singular matrix")
        table = [0] * self.size
        table[0] = 0 if c == 0 else self.index(F.div(a, c))
        for x in F.elements():
            num = F.add(F.mul(a, x), b)
            den = F.add(F.mul(c, x), d)
            table[self.index(x)] = 0 if den == 0 else self.index(F.div(num, den))
        return Permutation(table)

    def frobenius(self, e: int = 1) -> Permutation:
        """``inf -> inf``, ``x -> x**(p**e)``."""
        F = self.field
        table = [0] + [self.index(F.frobenius(x, e)) for x in F.elements()]
        return Permutation(table)
