"""Permutations of {1..n}, cycle notation and small integer helpers.

Internally a permutation is a tuple ``table`` of 0-based images:
``table[i]`` is the image of point ``i + 1`` minus one.  All text I/O is
1-based, matching the usual cycle notation.  Products are read left to
right: ``a * b`` applies ``a`` first, then ``b``.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from operator import itemgetter
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DegreeMismatch, PermutationError


class Permutation:
    __slots__ = ("table", "_hash")

    def __init__(self, table: Sequence[int], check: bool = True):
        table = tuple(table)
        if check:
            if not table:
                raise PermutationError("degree must be positive")
            if sorted(table) != list(range(len(table))):
                raise PermutationError(f"not a bijection of {len(table)} points: {table}")
        self.table = table
        self._hash = hash(table)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise PermutationError("degree must be positive")
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based disjoint cycles; unmentioned points are fixed."""
        table = list(range(degree))
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 1 <= pt <= degree:
                    raise PermutationError(f"point {pt} out of range 1..{degree}")
                if pt in seen:
                    raise PermutationError(f"point {pt} repeated across cycles")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                table[a - 1] = b - 1
        return cls(table, check=False)

    @property
    def degree(self) -> int:
        return len(self.table)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.table[point - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.table == other.table

    def __lt__(self, other: "Permutation") -> bool:
        return self.table < other.table

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.table))

    def order(self) -> int:
        return element_order(self)

    def support(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self.table) if i != x]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.table[start] == start:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.table[j]
            out.append(tuple(cyc))
        return out

    def cycle_lengths(self) -> list[int]:
        return [len(c) for c in self.cycles()]

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation({self}, degree={self.degree})"


def _apply_table(a: tuple, b: tuple) -> tuple:
    # b[a[0]], b[a[1]], ...
    if len(a) == 1:
        return (b[a[0]],)
    return itemgetter(*a)(b)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a``, then ``b``."""
    if a.degree != b.degree:
        raise DegreeMismatch(a.degree, b.degree)
    return Permutation(_apply_table(a.table, b.table), check=False)


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, x in enumerate(a.table):
        inv[x] = i
    return Permutation(inv, check=False)


def element_order(a: Permutation) -> int:
    return reduce(math.lcm, a.cycle_lengths(), 1)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """[a, b] = a^-1 b^-1 a b."""
    return inverse(a) * inverse(b) * a * b


def conjugate(a: Permutation, g: Permutation) -> Permutation:
    """a^g = g^-1 a g."""
    return inverse(g) * a * g


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``."""
    if degree < 1:
        raise PermutationError("degree must be positive")
    s = text.strip()
    if not s:
        raise PermutationError("empty permutation text")
    pos = 0
    cycles = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise PermutationError(f"malformed cycle notation at position {pos}: {text!r}")
        if m.group(1):
            cycles.append([int(x) for x in re.split(r"\s*,\s*", m.group(1))])
        pos = m.end()
    return Permutation.from_cycles(cycles, degree)


def read_generator_file(path) -> tuple[int, list[Permutation]]:
    """Read ``degree N`` followed by one permutation per line."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise PermutationError(f"{path}: empty generator file")
    m = re.fullmatch(r"degree\s+(\d+)", lines[0])
    if m is None:
        raise PermutationError(f"{path}: first line must be 'degree N'")
    degree = int(m.group(1))
    return degree, [parse_permutation(ln, degree) for ln in lines[1:]]


def write_generator_file(path, degree: int, gens: Iterable[Permutation]) -> None:
    body = "".join(f"{g}\n" for g in gens)
    Path(path).write_text(f"degree {degree}\n{body}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; ``factorize(1) == {}``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k``, or None."""
    f = factorize(n) if n > 1 else {}
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k
